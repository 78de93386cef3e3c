//! Finite free probability over real-rooted polynomials.
//!
//! The crate implements the symmetric additive (`⊞`) and multiplicative (`⊠`)
//! polynomial convolutions together with the machinery built around them: the
//! U transform of a root multiset, the m-finite K/R and N/S transforms, mixed
//! discriminants and finite free position of symmetric matrices, additive
//! compound matrices and majorization, and the finite analogues of the
//! classical limit laws (constant/LLN, Gaussian/CLT, Poisson, compound
//! Poisson) plus the restricted-invertibility expected characteristic
//! polynomial.
//!
//! Everything is generic over a scalar mode: [`scalar::Rat`] (exact big
//! rationals) for identity checks and `f64` for Monte Carlo and root work.
//! Conversion between modes is always explicit.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the CLI live
//! in the companion `ffp-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
// Indexed loops over matrix entries and `!(a > b)` NaN-rejecting guards are
// deliberate; quadrature node tables keep their published digits.
#![allow(
    clippy::needless_range_loop,
    clippy::neg_cmp_op_on_partial_ord,
    clippy::excessive_precision,
    clippy::manual_is_multiple_of,
    clippy::assign_op_pattern
)]

#[macro_use]
extern crate alloc;

pub mod compound;
pub mod conv;
pub mod dist;
pub mod error;
pub mod freepos;
pub mod limits;
pub mod matrix;
pub mod mixed;
pub mod poly;
pub mod quad;
pub mod ri;
pub mod rng;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod transforms;
pub mod utransform;
pub mod voiculescu;

pub use error::{Error, Result};
pub use matrix::{Mat, SymMatrix};
pub use poly::{Multiset, Poly};
pub use scalar::{Rat, Scalar};
pub use series::{LaurentK, TruncatedSeries};
