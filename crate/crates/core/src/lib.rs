//! Large-N teleportation channel of a Brownian SYK system coupled to an
//! environment: closed-form solutions, a numerical Schwinger-Dyson solver,
//! two-qubit channel metrics, phase scans, and finite-size boundaries.
//!
//! Conventions used throughout:
//! - the intra-system coupling J = 1/4 is the energy unit, so all times are
//!   in units of 1/J and the decay rate is Γ = 1 + γ with γ = V/J;
//! - everything is at infinite temperature (the resource state is the EPR
//!   pair, not a finite-β thermofield double);
//! - the response 𝒦 carries the Wightman sign: g > 0 gives 𝒦(t,t) < 0.

pub mod analytic;
pub mod channel;
pub mod error;
pub mod finite_size;
pub mod model;
pub mod scan;
pub mod sd;

pub use analytic::{Branch, DiagonalProfile};
pub use channel::ChannelState;
pub use error::{Error, Result};
pub use model::{ModelParams, Regime, TimeGrid};
pub use scan::{Source, SweepRow, TimeTrace};
pub use sd::{KickKind, WightmanField};
