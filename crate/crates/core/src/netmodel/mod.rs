//! Network topology, connectivity matrices and case-file readers.

mod connectivity;
mod network;
mod parse;

pub use connectivity::{connectivity_matrix, line_outage_matrix, ConnectivityMatrix};
pub use network::{Branch, Network, NetworkError};
pub use parse::{parse_case, CaseFormat, ParseError};
