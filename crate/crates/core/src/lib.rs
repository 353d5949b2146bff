//! Entanglement shared between crystallites by a single cavity mode:
//! closed forms, a truncated Fock-space reference, Wootters concurrence and
//! intensity optimization.

// `!(a < b)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod density;
pub mod dissipative;
pub mod entanglement;
pub mod error;
pub mod fockspace;
pub mod model;
pub mod optimize;

pub use density::{QubitBasis, TwoQubitDensity};
pub use entanglement::concurrence;
pub use error::{Error, Result};
pub use model::{CouplingProfile, InitialField, PairIndex, ParityKind, SystemParams};
