//! Weighted R-polynomials, parabolic Kazhdan–Lusztig polynomials and their
//! inverses for finite weighted Coxeter systems, in exact integer arithmetic.
//!
//! * [`coxeter`]: group models, Bruhat order, `D_J`, descent classes.
//! * [`laurent`]: Laurent polynomials in `q^{1/2}`.
//! * [`heckemod`]: the Hecke algebra and the parabolic module `M(D_J)`.
//! * [`klcore`]: `R`, `R~`, `P`, `Q` and the KL basis by recursion.
//! * [`chains`]: the chain and multichain formulas and coefficient sums.
//! * [`verify`]: named self-check suites.

pub mod chains;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod heckemod;
pub mod klcore;
pub mod laurent;
mod memo;
pub mod verify;

pub use error::{Error, Result};
