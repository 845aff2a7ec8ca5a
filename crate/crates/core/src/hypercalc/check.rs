use serde::Serialize;

use super::newton::{newton_trace, Halt, NewtonTrace};
use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::scalar::Scalar;
use crate::transfer::FuncExpr;
use num_rational::BigRational;

/// Margins of the three per-step inequalities. Each must be positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepCheck {
    pub n: usize,
    pub x_n: String,
    /// `1 - x_n`
    pub margin_lt1: String,
    /// `x_{n+1} - x_n`
    pub margin_monotone: Option<String>,
    /// `(1 - x_n) - |f(x_n)|/f'(x_n)`
    pub mvt_margin: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Boundary {
    pub n: usize,
    pub assertion: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub steps: Vec<StepCheck>,
    /// Margins that came out exactly zero: a weakly concave input.
    pub boundary: Vec<Boundary>,
    pub halt: Halt,
    pub first_all_nines: Option<usize>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Runs the iteration and checks `x_n < 1`, `x_{n+1} > x_n` and the mean
/// value bound `|f(x_n)|/f'(x_n) < 1 - x_n` at every step.
pub fn theorem_check<C: Scalar>(
    f: &FuncExpr,
    x0: &BigRational,
    steps: usize,
    ctx: &NumContext,
) -> Result<CheckReport> {
    let trace: NewtonTrace<C> = newton_trace(f, x0, steps, 6, ctx)?;
    check_trace(&trace)
}

pub fn check_trace<C: Scalar>(trace: &NewtonTrace<C>) -> Result<CheckReport> {
    let one = C::one();
    let mut steps = Vec::new();
    let mut boundary = Vec::new();
    let mut judge = |n: usize, assertion: &'static str, margin: &C| -> Result<()> {
        if margin.is_zero() {
            boundary.push(Boundary { n, assertion });
            Ok(())
        } else if margin.is_negative() {
            Err(HyperError::AssertionFailed {
                index: n,
                assertion: assertion.to_string(),
                margin: margin.to_string(),
            })
        } else {
            Ok(())
        }
    };
    for (n, x) in trace.iterates.iter().enumerate() {
        let lt1 = one.clone() - x.clone();
        judge(n, "x_n < 1", &lt1)?;
        let monotone = trace.iterates.get(n + 1).map(|next| next.clone() - x.clone());
        if let Some(m) = &monotone {
            judge(n, "x_{n+1} > x_n", m)?;
        }
        let mvt = trace.increments.get(n).map(|inc| lt1.clone() - inc.clone());
        if let Some(m) = &mvt {
            judge(n, "|f(x_n)|/f'(x_n) < 1 - x_n", m)?;
        }
        steps.push(StepCheck {
            n,
            x_n: x.to_string(),
            margin_lt1: lt1.to_string(),
            margin_monotone: monotone.map(|m| m.to_string()),
            mvt_margin: mvt.map(|m| m.to_string()),
        });
    }
    Ok(CheckReport {
        steps,
        boundary,
        halt: trace.halt,
        first_all_nines: trace.first_all_nines(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DecFloat;

    type Q = BigRational;

    fn x() -> FuncExpr {
        FuncExpr::var()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn log_holds_everywhere() {
        let ctx = NumContext::float(50).unwrap();
        for x0 in [q(1, 2), q(99, 100), q(3, 10)] {
            let r = theorem_check::<DecFloat>(&x().log(), &x0, 10, &ctx).unwrap();
            assert!(r.boundary.is_empty());
            assert!(r.steps.len() >= 4);
        }
    }

    #[test]
    fn affine_is_a_boundary_case() {
        let ctx = NumContext::exact();
        let r = theorem_check::<Q>(&(x() - FuncExpr::int(1)), &q(1, 2), 5, &ctx).unwrap();
        assert_eq!(r.halt, Halt::ExactRoot);
        assert!(r.boundary.contains(&Boundary { n: 1, assertion: "x_n < 1" }));
        assert!(r.boundary.iter().any(|b| b.n == 0 && b.assertion.starts_with("|f")));
    }

    #[test]
    fn convex_input_is_caught() {
        // x^2 - 1 is convex: Newton from below overshoots the root
        let ctx = NumContext::exact();
        let f = x().pow(2) - FuncExpr::int(1);
        let err = theorem_check::<Q>(&f, &q(1, 2), 5, &ctx).unwrap_err();
        assert!(matches!(err, HyperError::AssertionFailed { index: 0, .. }), "{err:?}");
    }

    #[test]
    fn report_serializes_per_step() {
        let ctx = NumContext::exact();
        let f = FuncExpr::int(1) - FuncExpr::int(1) / x();
        let r = theorem_check::<Q>(&f, &q(1, 2), 3, &ctx).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let first = &v["steps"][0];
        assert_eq!(first["n"], 0);
        assert_eq!(first["x_n"], "1/2");
        assert_eq!(first["margin_lt1"], "1/2");
        assert!(first["margin_monotone"].is_string());
        assert!(first["mvt_margin"].is_string());
    }
}
