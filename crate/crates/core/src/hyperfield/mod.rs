//! The ordered field of finite series in `H` (written `omega`) and
//! `eps = 10^(-H)` (written `tau`), with truncation to a fixed term budget.

mod arith;
mod exponent;
mod floor;
mod json;
mod order;
mod value;

pub use exponent::{ExponentPair, Magnitude};
pub use floor::{Decomposition, RawSplit};
pub use json::{HyperRecord, TermRecord};
pub use order::Classification;
pub use value::{HyperValue, Term};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::scalar::{pow10_rational, Scalar};

/// `.99…9` with `n` nines, built digit by digit.
pub fn nines<C: Scalar>(n: u32, ctx: &NumContext) -> HyperValue<C> {
    let mut acc = BigRational::from_integer(0.into());
    for i in 1..=n {
        acc += BigRational::from_integer(9.into()) * pow10_rational(&BigInt::from(-(i as i64)));
    }
    HyperValue::from_rational(&acc, ctx)
}

/// `.99…9` with `H` nines: the transferred closed form `1 - 10^(-H)`.
pub fn nines_hyper<C: Scalar>(ctx: &NumContext) -> HyperValue<C> {
    &HyperValue::one(ctx) - &HyperValue::tau(ctx)
}

/// `10^(k*H + j)` as the monomial `10^j * eps^(-k)`.
pub fn pow10_hyper<C: Scalar>(k: i64, j: &BigRational, ctx: &NumContext) -> Result<HyperValue<C>> {
    let c = C::pow10(j, ctx)
        .ok_or_else(|| HyperError::ExactTranscendental(format!("10^({j})")))?;
    Ok(HyperValue::monomial(c, ExponentPair::integers(-k, 0), ctx))
}
