//! Minimum-cardinality PMU placement for topological observability of power
//! networks.
//!
//! The crate is organised bottom-up:
//!
//! * [`netmodel`] holds the immutable [`Network`] topology, its
//!   [`ConnectivityMatrix`] and the case-file readers.
//! * [`observability`] implements the coverage rule, zero-injection-bus
//!   inference and the single-contingency robustness checks.
//! * [`hbmo`] is the honey bee mating optimisation solver.
//! * [`oracle`] provides exhaustive and greedy baselines for certification.
//!
//! Costs and fitness values are generic over a [`Scalar`]; the aliases below
//! fix the common choices.

pub mod cases;
pub mod hbmo;
mod improve;
pub mod netmodel;
pub mod observability;
pub mod oracle;
mod scalar;

pub use fixedbitset::FixedBitSet;
pub use num_rational::Rational64;

pub use hbmo::{Execution, HbmoError, HbmoParams, SolveResult};
pub use netmodel::{
    connectivity_matrix, line_outage_matrix, parse_case, Branch, CaseFormat, ConnectivityMatrix,
    Network, NetworkError, ParseError,
};
pub use observability::{
    ContingencySpec, ContingencyVerdict, Evaluator, ObservabilityError, ObservabilityReport,
    Placement, PmuLossMode, Regime,
};
pub use oracle::{OracleError, OracleOptions, OracleResult};
pub use scalar::Scalar;

/// Network with double-precision costs.
pub type Network64 = Network<f64>;
/// Network with single-precision costs.
pub type Network32 = Network<f32>;
/// Network with exact rational costs.
pub type ExactNetwork = Network<Rational64>;

pub type HbmoParams64 = HbmoParams<f64>;
pub type SolveResult64 = SolveResult<f64>;
pub type ExactSolveResult = SolveResult<Rational64>;
