//! Computable hyperreals: finite series in an infinite hyperinteger `H` and
//! the infinitesimal `eps = 10^(-H)`, with non-standard calculus on top.
//!
//! All arithmetic is generic over the coefficient [`Scalar`]; the aliases
//! below fix the common choices.
//!
//! ```
//! use hyperdec_core::{BigRational, Hyper, NumContext};
//! use std::cmp::Ordering;
//!
//! let ctx = NumContext::exact();
//! let x = &Hyper::one(&ctx) - &Hyper::tau(&ctx);
//! assert_eq!(x.compare(&Hyper::one(&ctx)).unwrap(), Ordering::Less);
//! assert_eq!(x.standard_part().unwrap(), BigRational::from_integer(1.into()));
//! ```

pub mod context;
pub mod error;
pub mod hypercalc;
pub mod hyperfield;
pub mod lightstone;
pub mod scalar;
pub mod shell;
pub mod transfer;

pub use context::{Mode, NumContext};
pub use error::{HyperError, Result};
pub use hyperfield::{ExponentPair, HyperValue, Magnitude, Term};
pub use scalar::{DecFloat, Scalar};
pub use transfer::FuncExpr;

pub use num_rational::BigRational;

/// Exact rational coefficients.
pub type Hyper = HyperValue<BigRational>;
/// Decimal float coefficients at the context precision.
pub type HyperFloat = HyperValue<DecFloat>;
/// Machine-float coefficients.
pub type Hyper64 = HyperValue<f64>;
