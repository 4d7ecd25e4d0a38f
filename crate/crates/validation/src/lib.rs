//! Reference data and independent checkers used by the acceptance suite.

pub mod naive;
pub mod random;
pub mod tables;
