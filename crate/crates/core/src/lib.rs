//! Exact verification engine for GKN boundary conditions of integer powers
//! of the Legendre differential expression `ℓ[y] = −((1 − x²) y')'`.
//!
//! * [`exactnum`]: rationals, harmonic and Legendre–Stirling numbers.
//! * [`classical`]: `P_k`, `Q_k` and their inner products.
//! * [`bracket`]: closed-form boundary brackets.
//! * [`gkn`]: boundary-form matrices, exact rank and determinant.
//! * [`oracle`]: independent symbolic evaluation of the same brackets.
//! * [`sweep`]: exhaustive selection sweeps, parallel when enabled.

pub mod bracket;
pub mod classical;
pub mod error;
pub mod exactnum;
pub mod gkn;
pub mod oracle;
pub mod poly;
pub mod sweep;

pub use bracket::{bracket, bracket_decomposed, BracketValue};
pub use classical::{ClassicalFunction, Kind};
pub use error::{Error, Result};
pub use exactnum::{PiPair, Rational};
pub use gkn::{BracketMatrix, IndexSelection};
pub use poly::Poly;

/// Version string recorded in sweep ledgers.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));
