//! Coefficient scalars.
//!
//! Every series operation is generic over [`Scalar`]. Three implementations
//! ship with the crate: exact [`BigRational`], the decimal float
//! [`DecFloat`], and plain `f64` for quick experiments.

mod decimal;
mod native;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::context::{Mode, NumContext};

pub use decimal::DecFloat;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The context mode this scalar implements.
    const MODE: Mode;

    fn from_rational(q: &BigRational, ctx: &NumContext) -> Self;

    /// Significant decimal digits carried, or `None` when exact.
    fn working_digits(ctx: &NumContext) -> Option<u32>;

    /// The exact rational this scalar denotes, if it has one.
    fn to_rational(&self) -> Option<BigRational>;

    // Transcendental kernels. `None` means the value is not representable by
    // this scalar (exact mode); domain checks are the caller's job.
    fn exp(&self, ctx: &NumContext) -> Option<Self>;
    fn ln(&self, ctx: &NumContext) -> Option<Self>;
    fn sin(&self, ctx: &NumContext) -> Option<Self>;
    fn cos(&self, ctx: &NumContext) -> Option<Self>;
    fn sqrt(&self, ctx: &NumContext) -> Option<Self>;
    fn pi(ctx: &NumContext) -> Option<Self>;
    fn e(ctx: &NumContext) -> Option<Self>;

    /// Agreement test used where a result may carry rounding noise.
    fn close_to(&self, other: &Self, ctx: &NumContext) -> bool;

    /// Text used in the JSON coefficient field.
    fn to_coeff_string(&self) -> String;
    fn parse_coeff(s: &str, ctx: &NumContext) -> Option<Self>;

    fn from_int(v: i64, ctx: &NumContext) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)), ctx)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_integer(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_integer())
    }

    /// `10^j` for a rational `j`.
    fn pow10(j: &BigRational, ctx: &NumContext) -> Option<Self> {
        if j.is_integer() {
            let n = j.to_integer();
            let p = pow10_rational(&n);
            return Some(Self::from_rational(&p, ctx));
        }
        let ten = Self::from_int(10, ctx);
        let ln10 = ten.ln(ctx)?;
        (Self::from_rational(j, ctx) * ln10).exp(ctx)
    }
}

/// `10^n` as an exact rational, `n` possibly negative.
pub(crate) fn pow10_rational(n: &BigInt) -> BigRational {
    let mag: u32 = n.abs().try_into().expect("decimal exponent out of range");
    let p = num_traits::pow(BigInt::from(10), mag as usize);
    if n.is_negative() {
        BigRational::new(BigInt::one(), p)
    } else {
        BigRational::from_integer(p)
    }
}

/// `true` when the denominator of `q` has no prime factors besides 2 and 5.
pub fn is_terminating_decimal(q: &BigRational) -> bool {
    let mut d = q.denom().clone();
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    d.is_one()
}

/// Number of digits after the decimal point of a terminating decimal.
pub fn decimal_length(q: &BigRational) -> Option<u32> {
    if !is_terminating_decimal(q) {
        return None;
    }
    let mut len = 0u32;
    let mut v = q.clone();
    let ten = BigRational::from_integer(BigInt::from(10));
    while !v.is_integer() {
        v *= &ten;
        len += 1;
    }
    Some(len)
}

/// Parses `p`, `p/q`, or a plain decimal like `-0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    parse_decimal(s)
}

/// Parses a decimal literal with optional exponent (`1.5e-3`).
pub(crate) fn parse_decimal(s: &str) -> Option<BigRational> {
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mant: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let scale = exp - frac_part.len() as i64;
    let mut q = BigRational::from_integer(mant) * pow10_rational(&BigInt::from(scale));
    if neg {
        q = -q;
    }
    Some(q)
}
