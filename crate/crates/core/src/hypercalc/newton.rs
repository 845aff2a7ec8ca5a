use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::hyperfield::HyperValue;
use crate::scalar::{pow10_rational, Scalar};
use crate::transfer::{derivative, eval_star, FuncExpr, ProbeSet};

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Halt {
    /// All requested steps ran.
    Completed,
    /// `f(x_n) = 0` exactly.
    ExactRoot,
    /// The next iterate would lie within `10^-(P-2)` of 1, below what the
    /// working precision can tell apart from 1. It is not recorded.
    PrecisionExhausted { step: usize },
}

impl fmt::Display for Halt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Halt::Completed => f.write_str("completed"),
            Halt::ExactRoot => f.write_str("exact root reached"),
            Halt::PrecisionExhausted { step } => {
                write!(f, "precision exhausted before step {step}")
            }
        }
    }
}

/// Newton iterates `x_{n+1} = x_n + |f(x_n)| / f'(x_n)` and their
/// calculator displays.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonTrace<C> {
    pub f: FuncExpr,
    pub x0: BigRational,
    pub iterates: Vec<C>,
    /// `|f(x_n)| / f'(x_n)` for each recorded step.
    pub increments: Vec<C>,
    pub display_digits: u32,
    pub displays: Vec<String>,
    pub halt: Halt,
    pub ctx: NumContext,
}

fn standard_value<C: Scalar>(f: &FuncExpr, x: &C, ctx: &NumContext) -> Result<C> {
    eval_star(f, &HyperValue::from_scalar(x.clone(), ctx))?.standard_part()
}

pub fn newton_trace<C: Scalar>(
    f: &FuncExpr,
    x0: &BigRational,
    steps: usize,
    display_digits: u32,
    ctx: &NumContext,
) -> Result<NewtonTrace<C>> {
    if display_digits == 0 {
        return Err(HyperError::InvalidArgument("display needs at least one digit".into()));
    }
    let one = C::one();
    let start = C::from_rational(x0, ctx);
    if start >= one {
        return Err(HyperError::DomainError(format!("x0 = {x0} must lie below the root at 1")));
    }
    if !standard_value(f, &start, ctx)?.is_negative() {
        return Err(HyperError::DomainError(format!("f(x0) must be negative at x0 = {x0}")));
    }
    let resolution = C::working_digits(ctx).map(|p| {
        C::from_rational(&pow10_rational(&BigInt::from(-(i64::from(p) - 2))), ctx)
    });
    let probes = ProbeSet::standard(ctx);
    let mut iterates = vec![start];
    let mut increments = Vec::new();
    let mut halt = Halt::Completed;
    for n in 0..steps {
        let x = iterates[n].clone();
        let fx = standard_value(f, &x, ctx)?;
        if fx.is_zero() {
            halt = Halt::ExactRoot;
            break;
        }
        let slope = derivative(f, &x, &probes)?;
        if slope.is_zero() {
            return Err(HyperError::DerivativeVanishes(n));
        }
        let step = fx.abs() / slope;
        let next = x + step.clone();
        if let Some(r) = &resolution {
            if one.clone() - next.clone() < *r {
                halt = Halt::PrecisionExhausted { step: n + 1 };
                break;
            }
        }
        increments.push(step);
        iterates.push(next);
    }
    if halt == Halt::Completed {
        let last = iterates.last().expect("x0 is recorded");
        if standard_value(f, last, ctx)?.is_zero() {
            halt = Halt::ExactRoot;
        }
    }
    let displays = iterates
        .iter()
        .map(|v| calculator_display(v, display_digits))
        .collect();
    Ok(NewtonTrace {
        f: f.clone(),
        x0: x0.clone(),
        iterates,
        increments,
        display_digits,
        displays,
        halt,
        ctx: *ctx,
    })
}

/// Truncates toward zero to `digits` fractional digits, zero-padded.
pub fn calculator_display<C: Scalar>(v: &C, digits: u32) -> String {
    let q = v.to_rational().unwrap_or_default();
    let scaled = (Signed::abs(&q) * pow10_rational(&BigInt::from(digits))).trunc().to_integer();
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let (whole, frac) = (&scaled / &scale, &scaled % &scale);
    let sign = if Signed::is_negative(&q) && !scaled.is_zero() { "-" } else { "" };
    format!("{sign}{whole}.{frac:0>width$}", width = digits as usize)
}

impl<C: Scalar> NewtonTrace<C> {
    /// `(1 - x_{n+1}) / (1 - x_n)^2` for every step with `1 - x_n < 1/10`.
    pub fn convergence_ratios(&self) -> Vec<(usize, C)> {
        let one = C::one();
        let tenth = C::from_rational(&BigRational::new(1.into(), 10.into()), &self.ctx);
        self.iterates
            .windows(2)
            .enumerate()
            .filter_map(|(n, w)| {
                let e0 = one.clone() - w[0].clone();
                let e1 = one.clone() - w[1].clone();
                (e0 < tenth && !e0.is_zero()).then(|| (n, e1 / (e0.clone() * e0)))
            })
            .collect()
    }

    /// The largest convergence ratio, a constant `C` with
    /// `1 - x_{n+1} <= C (1 - x_n)^2` on the recorded tail.
    pub fn quadratic_constant(&self) -> Option<C> {
        self.convergence_ratios()
            .into_iter()
            .map(|(_, c)| c)
            .reduce(|a, b| if b > a { b } else { a })
    }

    /// First index from which every display reads `0.99…9`.
    pub fn first_all_nines(&self) -> Option<usize> {
        let target = format!("0.{}", "9".repeat(self.display_digits as usize));
        let tail = self.displays.iter().rev().take_while(|d| **d == target).count();
        (tail > 0).then(|| self.displays.len() - tail)
    }

    pub fn final_display(&self) -> &str {
        self.displays.last().expect("x0 is recorded")
    }
}
