use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::expr::{Elementary, FuncExpr, NamedConst};
use crate::error::{HyperError, Result};
use crate::hyperfield::{pow10_hyper, ExponentPair, HyperValue};
use crate::scalar::Scalar;

/// The natural extension `f*` evaluated at a hyperreal point.
///
/// Arithmetic nodes use field operations. An elementary function `g` at
/// `x = s + d` (`s` standard, `d` infinitesimal) becomes the Taylor series
/// `sum g^(k)(s)/k! * d^k`, cut to the context's term budget.
pub fn eval_star<C: Scalar>(f: &FuncExpr, x: &HyperValue<C>) -> Result<HyperValue<C>> {
    use FuncExpr::*;
    let ctx = *x.ctx();
    let go = |e: &FuncExpr| eval_star(e, x);
    match f {
        Var => Ok(x.clone()),
        Const(q) => Ok(HyperValue::from_rational(q, &ctx)),
        Named(c) => {
            let (v, name) = match c {
                NamedConst::Pi => (C::pi(&ctx), "pi"),
                NamedConst::E => (C::e(&ctx), "e"),
            };
            v.map(|v| HyperValue::from_scalar(v, &ctx))
                .ok_or_else(|| HyperError::ExactTranscendental(name.into()))
        }
        Add(a, b) => go(a)?.add(&go(b)?),
        Sub(a, b) => go(a)?.sub(&go(b)?),
        Mul(a, b) => go(a)?.mul(&go(b)?),
        Div(a, b) => go(a)?.div(&go(b)?),
        Neg(a) => Ok(go(a)?.neg()),
        Pow(a, n) => go(a)?.powi(*n),
        Pow10(a) => pow10_of(&go(a)?),
        Apply(g, a) => apply(*g, &go(a)?),
    }
}

/// `10^v` for `v = k*H + j` with integer `k`.
fn pow10_of<C: Scalar>(v: &HyperValue<C>) -> Result<HyperValue<C>> {
    let unsupported = || {
        HyperError::UnsupportedExponential(format!(
            "10^({v}) needs an exponent of the form k*H + j"
        ))
    };
    let mut k = 0i64;
    let mut j = BigRational::zero();
    for t in v.terms() {
        let q = t.coeff.to_rational().ok_or_else(unsupported)?;
        if t.exp == ExponentPair::OMEGA {
            if !q.is_integer() {
                return Err(unsupported());
            }
            k = q.to_integer().to_i64().ok_or_else(unsupported)?;
        } else if t.exp == ExponentPair::ONE {
            j = q;
        } else {
            return Err(unsupported());
        }
    }
    pow10_hyper(k, &j, v.ctx())
}

fn apply<C: Scalar>(g: Elementary, x: &HyperValue<C>) -> Result<HyperValue<C>> {
    if g == Elementary::Abs {
        return Ok(x.abs());
    }
    if !x.is_finite() {
        return Err(HyperError::InfiniteArgument);
    }
    let ctx = *x.ctx();
    let s = x.standard_part()?;
    match g {
        Elementary::Log if !s.is_positive() => {
            return Err(HyperError::DomainError(format!("log needs a positive argument, got st = {s}")));
        }
        Elementary::Sqrt if x.is_zero() => return Ok(x.clone()),
        Elementary::Sqrt if !s.is_positive() => {
            return Err(HyperError::DomainError(format!(
                "sqrt needs a positive standard part, got st = {s}"
            )));
        }
        _ => {}
    }
    let delta = x.sub(&HyperValue::from_scalar(s.clone(), &ctx))?;
    let exact = |v: Option<C>| v.ok_or_else(|| HyperError::ExactTranscendental(format!("{g}({s})")));
    let int = |n: usize| C::from_int(n as i64, &ctx);

    match g {
        Elementary::Exp => {
            let es = exact(s.exp(&ctx))?;
            let mut fact = C::one();
            HyperValue::power_series(&delta, |k| {
                if k > 0 {
                    fact = fact.clone() * int(k);
                }
                Ok(es.clone() / fact.clone())
            })
        }
        Elementary::Log => {
            let ls = exact(s.ln(&ctx))?;
            let inv = C::one() / s.clone();
            let mut power = C::one();
            HyperValue::power_series(&delta, |k| {
                if k == 0 {
                    return Ok(ls.clone());
                }
                power = power.clone() * inv.clone();
                let c = power.clone() / int(k);
                Ok(if k % 2 == 0 { -c } else { c })
            })
        }
        Elementary::Sin | Elementary::Cos => {
            let sin = exact(s.sin(&ctx))?;
            let cos = exact(s.cos(&ctx))?;
            // derivatives cycle through sin, cos, -sin, -cos
            let cycle = [sin.clone(), cos.clone(), -sin, -cos];
            let shift = if g == Elementary::Sin { 0 } else { 1 };
            let mut fact = C::one();
            HyperValue::power_series(&delta, |k| {
                if k > 0 {
                    fact = fact.clone() * int(k);
                }
                Ok(cycle[(k + shift) % 4].clone() / fact.clone())
            })
        }
        Elementary::Sqrt => {
            let rs = exact(s.sqrt(&ctx))?;
            let inv = C::one() / s.clone();
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let mut binom = BigRational::one();
            let mut power = C::one();
            HyperValue::power_series(&delta, |k| {
                if k > 0 {
                    binom = binom.clone() * (&half - BigInt::from(k - 1)) / BigInt::from(k);
                    power = power.clone() * inv.clone();
                }
                Ok(rs.clone() * C::from_rational(&binom, &ctx) * power.clone())
            })
        }
        Elementary::Abs => unreachable!("handled above"),
    }
}
