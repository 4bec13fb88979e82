//! Exact state-vector oracle for the two-sided teleportation protocol on
//! small Brownian-coupled Majorana systems.
//!
//! Everything here is brute force on 2^{n} amplitudes: the pair state is
//! built from its annihilation property, disorder is sampled per Trotter
//! slice, and slice propagation is exact to Krylov tolerance. The module
//! exists to validate the response-function definitions and the operator
//! size representation at desk scale, not to approach the large-N limit.

pub mod brownian;
pub mod config;
pub mod epr;
pub mod error;
pub mod evolve;
pub mod majorana;
pub mod pauli;
pub mod protocol;
pub mod response;
pub mod stats;

pub use config::OracleConfig;
pub use error::{OracleError, Result};
pub use majorana::MajoranaAlgebra;
pub use protocol::{run_protocol, ProtocolOutcome};
pub use response::{
    convention_self_test, kubo_response, mean_shifted_size, size_representation_response,
    ResponseStats, SizeComparison,
};
pub use stats::Stats;
