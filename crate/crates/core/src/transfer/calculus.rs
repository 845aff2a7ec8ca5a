use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use super::eval::eval_star;
use super::expr::FuncExpr;
use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::hyperfield::{ExponentPair, HyperValue};
use crate::scalar::Scalar;

/// Infinitesimals and infinite points used to probe a function.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSet<C> {
    infinitesimals: Vec<HyperValue<C>>,
    infinite_points: Vec<HyperValue<C>>,
    ctx: NumContext,
}

impl<C: Scalar> ProbeSet<C> {
    /// `{eps, 2eps, 1/H, 1/H^2}` and `{H, H^2, 1/eps}`.
    pub fn standard(ctx: &NumContext) -> Self {
        let mono = |c: i64, b: i64, a: i64| {
            HyperValue::monomial(C::from_int(c, ctx), ExponentPair::integers(b, a), ctx)
        };
        ProbeSet {
            infinitesimals: vec![mono(1, 1, 0), mono(2, 1, 0), mono(1, 0, -1), mono(1, 0, -2)],
            infinite_points: vec![mono(1, 0, 1), mono(1, 0, 2), mono(1, -1, 0)],
            ctx: *ctx,
        }
    }

    pub fn new(
        infinitesimals: Vec<HyperValue<C>>,
        infinite_points: Vec<HyperValue<C>>,
        ctx: &NumContext,
    ) -> Result<Self> {
        for e in &infinitesimals {
            if e.is_zero() || !e.is_infinitesimal() {
                return Err(HyperError::InvalidArgument(format!("{e} is not a nonzero infinitesimal")));
            }
        }
        for p in &infinite_points {
            if p.is_finite() {
                return Err(HyperError::InvalidArgument(format!("{p} is not infinite")));
            }
        }
        if infinitesimals.iter().chain(&infinite_points).any(|v| v.ctx() != ctx) {
            return Err(HyperError::ContextMismatch);
        }
        Ok(ProbeSet {
            infinitesimals,
            infinite_points,
            ctx: *ctx,
        })
    }

    pub fn infinitesimals(&self) -> &[HyperValue<C>] {
        &self.infinitesimals
    }

    pub fn infinite_points(&self) -> &[HyperValue<C>] {
        &self.infinite_points
    }

    pub fn ctx(&self) -> &NumContext {
        &self.ctx
    }

    /// Each probe followed by its negative.
    fn signed(&self) -> impl Iterator<Item = HyperValue<C>> + '_ {
        self.infinitesimals.iter().flat_map(|e| [e.clone(), e.neg()])
    }
}

/// `st((f(x0 + e) - f(x0)) / e)`, required to agree over every probe `±e`.
pub fn derivative<C: Scalar>(f: &FuncExpr, x0: &C, probes: &ProbeSet<C>) -> Result<C> {
    let ctx = probes.ctx;
    let x = HyperValue::from_scalar(x0.clone(), &ctx);
    let fx = eval_star(f, &x)?;
    let mut common: Option<(C, HyperValue<C>)> = None;
    for eps in probes.signed() {
        let q = eval_star(f, &x.add(&eps)?)?.sub(&fx)?.div(&eps)?;
        let slope = q.standard_part().map_err(|_| {
            HyperError::NoDerivative(format!("difference quotient {q} at step {eps} is infinite"))
        })?;
        match &common {
            None => common = Some((slope, eps)),
            Some((first, first_eps)) if !first.close_to(&slope, &ctx) => {
                return Err(HyperError::NoDerivative(format!(
                    "step {first_eps} gives {first} but step {eps} gives {slope}"
                )));
            }
            Some(_) => {}
        }
    }
    common
        .map(|(d, _)| d)
        .ok_or_else(|| HyperError::InvalidArgument("empty probe set".into()))
}

/// Outcome of a limit evaluated at an infinite index.
#[derive(Debug, Clone, PartialEq)]
pub enum SeqLimit<C> {
    Converges(C),
    Diverges(i8),
    Indeterminate(String),
}

impl<C: fmt::Display> fmt::Display for SeqLimit<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqLimit::Converges(l) => write!(f, "converges to {l}"),
            SeqLimit::Diverges(s) if *s < 0 => f.write_str("diverges to -inf"),
            SeqLimit::Diverges(_) => f.write_str("diverges to +inf"),
            SeqLimit::Indeterminate(why) => write!(f, "indeterminate ({why})"),
        }
    }
}

fn classify_term<C: Scalar>(v: Result<HyperValue<C>>) -> (SeqLimit<C>, Option<HyperValue<C>>) {
    match v {
        Err(e) => (SeqLimit::Indeterminate(e.to_string()), None),
        Ok(v) => match v.standard_part() {
            Ok(l) => (SeqLimit::Converges(l), Some(v)),
            Err(_) => (SeqLimit::Diverges(v.signum()), Some(v)),
        },
    }
}

/// `st(u_H)` with `H` the model's infinite hyperinteger.
pub fn limit_seq<C: Scalar>(u: &FuncExpr, ctx: &NumContext) -> SeqLimit<C> {
    classify_term(eval_star(u, &HyperValue::<C>::omega(ctx))).0
}

/// The limit at `H` together with a second evaluation at `H^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqLimitReport<C> {
    pub at_omega: SeqLimit<C>,
    pub value_at_omega: Option<HyperValue<C>>,
    pub at_omega_squared: SeqLimit<C>,
    /// False when the two infinite indices give different answers.
    pub consistent: bool,
}

pub fn limit_seq_report<C: Scalar>(u: &FuncExpr, ctx: &NumContext) -> SeqLimitReport<C> {
    let (at_omega, value_at_omega) = classify_term(eval_star(u, &HyperValue::<C>::omega(ctx)));
    let w2 = HyperValue::monomial(C::one(), ExponentPair::integers(0, 2), ctx);
    let (at_omega_squared, _) = classify_term(eval_star(u, &w2));
    let consistent = match (&at_omega, &at_omega_squared) {
        (SeqLimit::Converges(a), SeqLimit::Converges(b)) => a.close_to(b, ctx),
        (SeqLimit::Diverges(a), SeqLimit::Diverges(b)) => a == b,
        (SeqLimit::Indeterminate(_), SeqLimit::Indeterminate(_)) => true,
        _ => false,
    };
    SeqLimitReport {
        at_omega,
        value_at_omega,
        at_omega_squared,
        consistent,
    }
}

/// `L` with `st(f(a ± e)) = L` for every probe `e`.
pub fn limit_fun<C: Scalar>(f: &FuncExpr, a: &C, probes: &ProbeSet<C>) -> Result<C> {
    let ctx = probes.ctx;
    let at = HyperValue::from_scalar(a.clone(), &ctx);
    let mut common: Option<C> = None;
    for eps in probes.signed() {
        let v = eval_star(f, &at.add(&eps)?)?;
        let l = v
            .standard_part()
            .map_err(|_| HyperError::NoLimit(format!("f({a} + {eps}) = {v} is infinite")))?;
        match &common {
            None => common = Some(l),
            Some(first) if !first.close_to(&l, &ctx) => {
                return Err(HyperError::NoLimit(format!(
                    "values {first} and {l} near {a} are not infinitely close"
                )));
            }
            Some(_) => {}
        }
    }
    common.ok_or_else(|| HyperError::InvalidArgument("empty probe set".into()))
}

/// A certified discontinuity: `f(point + epsilon) - f(point)` is not
/// infinitesimal.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<C> {
    pub point: HyperValue<C>,
    pub epsilon: HyperValue<C>,
    pub image_difference: HyperValue<C>,
}

impl<C: Scalar> fmt::Display for Witness<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let other = self.point.add(&self.epsilon).map_err(|_| fmt::Error)?;
        write!(
            f,
            "x = {}, y = {}, f(y) - f(x) = {}",
            self.point, other, self.image_difference
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Continuity<C> {
    Pass,
    Fail(Witness<C>),
    Inconclusive(String),
}

/// Checks `f(x ± e) ≈ f(x)` over the probes.
pub fn continuity_probe<C: Scalar>(
    f: &FuncExpr,
    x: &HyperValue<C>,
    probes: &ProbeSet<C>,
) -> Continuity<C> {
    let fx = match eval_star(f, x) {
        Ok(v) => v,
        Err(e) => return Continuity::Inconclusive(format!("f({x}): {e}")),
    };
    for eps in probes.signed() {
        let y = match x.add(&eps) {
            Ok(y) => y,
            Err(e) => return Continuity::Inconclusive(e.to_string()),
        };
        let diff = match eval_star(f, &y).and_then(|fy| fy.sub(&fx)) {
            Ok(d) => d,
            Err(e) => return Continuity::Inconclusive(format!("f({y}): {e}")),
        };
        if !diff.is_infinitesimal() {
            return Continuity::Fail(Witness {
                point: x.clone(),
                epsilon: eps,
                image_difference: diff,
            });
        }
    }
    Continuity::Pass
}

#[derive(Debug, Clone, PartialEq)]
pub enum UniformContinuity<C> {
    /// Every probe passed. Evidence only: the probes are finitely many.
    PassAllProbes,
    Fail(Witness<C>),
    Inconclusive(String),
}

impl<C: Scalar> fmt::Display for UniformContinuity<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniformContinuity::PassAllProbes => {
                f.write_str("pass on all probes (evidence, not a proof)")
            }
            UniformContinuity::Fail(w) => write!(f, "fail (certified): {w}"),
            UniformContinuity::Inconclusive(why) => write!(f, "inconclusive: {why}"),
        }
    }
}

/// Standard sample points for the uniform check.
pub const STANDARD_SAMPLES: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];

/// Continuity probes at standard samples and at every infinite point.
///
/// Samples outside the domain of `f` are skipped. A failure anywhere is a
/// certified counterexample.
pub fn uniform_continuity_probe<C: Scalar>(
    f: &FuncExpr,
    probes: &ProbeSet<C>,
) -> UniformContinuity<C> {
    let ctx = probes.ctx;
    let mut inconclusive: Option<String> = None;
    let standard = STANDARD_SAMPLES.iter().filter_map(|&(n, d)| {
        let x = HyperValue::from_rational(&BigRational::new(n.into(), d.into()), &ctx);
        eval_star(f, &x).ok().map(|_| x)
    });
    let points: Vec<HyperValue<C>> = standard.chain(probes.infinite_points.iter().cloned()).collect();
    for x in &points {
        match continuity_probe(f, x, probes) {
            Continuity::Pass => {}
            Continuity::Fail(w) => return UniformContinuity::Fail(w),
            Continuity::Inconclusive(why) => {
                inconclusive.get_or_insert(why);
            }
        }
    }
    match inconclusive {
        Some(why) => UniformContinuity::Inconclusive(why),
        None => UniformContinuity::PassAllProbes,
    }
}

/// One row of the extreme-value refinement table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvtRow {
    pub n: u64,
    pub index: u64,
    #[serde(serialize_with = "crate::transfer::serialize_display")]
    pub x: BigRational,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvtReport {
    pub index: u64,
    #[serde(serialize_with = "crate::transfer::serialize_display")]
    pub x: BigRational,
    pub value: String,
    pub refinement: Vec<EvtRow>,
}

pub const EVT_MAX_N: u64 = 1_000_000;

/// First maximizing index of `f(i/n)` over `i = 0..=n`.
fn argmax<C: Scalar>(f: &FuncExpr, n: u64, ctx: &NumContext) -> Result<(u64, C)> {
    let mut best: Option<(u64, C)> = None;
    for i in 0..=n {
        let x = BigRational::new(i.into(), n.into());
        let v = eval_star(f, &HyperValue::<C>::from_rational(&x, ctx))?
            .standard_part()?;
        match &best {
            Some((_, b)) if v <= *b => {}
            _ => best = Some((i, v)),
        }
    }
    Ok(best.expect("at least one partition point"))
}

/// The finite-step extreme value construction on `[0, 1]`: argmax over the
/// partition `i/n`, then the same search for `2n, 4n, …` (`levels` rows,
/// stopping at `n = 10^6`).
pub fn evt_demo<C: Scalar>(f: &FuncExpr, n: u64, levels: usize, ctx: &NumContext) -> Result<EvtReport> {
    if n == 0 || n > EVT_MAX_N {
        return Err(HyperError::InvalidArgument(format!(
            "partition size must be in 1..={EVT_MAX_N}, got {n}"
        )));
    }
    let mut refinement = Vec::new();
    let mut m = n;
    for _ in 0..levels.max(1) {
        if m > EVT_MAX_N {
            break;
        }
        let (index, value) = argmax::<C>(f, m, ctx)?;
        refinement.push(EvtRow {
            n: m,
            index,
            x: BigRational::new(index.into(), m.into()),
            value: value.to_string(),
        });
        m *= 2;
    }
    let first = refinement[0].clone();
    Ok(EvtReport {
        index: first.index,
        x: first.x,
        value: first.value,
        refinement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;
    type H = HyperValue<Q>;

    fn x() -> FuncExpr {
        FuncExpr::var()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn probes() -> ProbeSet<Q> {
        ProbeSet::standard(&NumContext::exact())
    }

    #[test]
    fn standard_probes_are_classified() {
        let p = probes();
        assert!(p.infinitesimals().iter().all(|e| e.is_infinitesimal() && !e.is_zero()));
        assert!(p.infinite_points().iter().all(|w| !w.is_finite()));
        let ctx = NumContext::exact();
        assert!(ProbeSet::new(vec![H::one(&ctx)], vec![], &ctx).is_err());
        assert!(ProbeSet::new(vec![], vec![H::tau(&ctx)], &ctx).is_err());
    }

    #[test]
    fn derivatives() {
        let p = probes();
        assert_eq!(derivative(&x().pow(2), &q(1, 1), &p), Ok(q(2, 1)));
        assert_eq!(derivative(&FuncExpr::int(5), &q(3, 1), &p), Ok(q(0, 1)));
        assert_eq!(derivative(&x().pow(3), &q(2, 1), &p), Ok(q(12, 1)));
        assert_eq!(derivative(&x().log(), &q(1, 1), &p), Ok(q(1, 1)));
        assert_eq!(derivative(&(FuncExpr::int(1) / x()), &q(2, 1), &p), Ok(q(-1, 4)));
    }

    #[test]
    fn corner_has_no_derivative() {
        let p = probes();
        assert!(matches!(derivative(&x().abs(), &q(0, 1), &p), Err(HyperError::NoDerivative(_))));
        assert_eq!(derivative(&x().abs(), &q(-3, 1), &p), Ok(q(-1, 1)));
    }

    #[test]
    fn float_derivatives() {
        let ctx = NumContext::float(40).unwrap();
        let p = ProbeSet::<crate::scalar::DecFloat>::standard(&ctx);
        let half = crate::scalar::DecFloat::from_rational(&q(1, 2), &ctx);
        let d = derivative(&x().sin(), &half, &p).unwrap();
        let want = half.cos(&ctx).unwrap();
        assert!(d.close_to(&want, &ctx), "{d} vs {want}");
    }

    #[test]
    fn sequence_limits() {
        let ctx = NumContext::exact();
        let u = FuncExpr::int(1) - FuncExpr::pow10(-x());
        assert_eq!(limit_seq::<Q>(&u, &ctx), SeqLimit::Converges(q(1, 1)));
        let v = x() / (x() + FuncExpr::int(1));
        let report = limit_seq_report::<Q>(&v, &ctx);
        assert_eq!(report.at_omega, SeqLimit::Converges(q(1, 1)));
        assert!(report.consistent);
        let inner = report.value_at_omega.unwrap();
        assert_eq!(inner.terms()[1].coeff, q(-1, 1));
        assert_eq!(inner.terms()[1].exp, ExponentPair::integers(0, -1));
        assert_eq!(limit_seq::<Q>(&x().pow(2), &ctx), SeqLimit::Diverges(1));
        assert_eq!(limit_seq::<Q>(&-x(), &ctx), SeqLimit::Diverges(-1));
        assert!(matches!(limit_seq::<Q>(&x().sin(), &ctx), SeqLimit::Indeterminate(_)));
    }

    #[test]
    fn function_limits() {
        let p = probes();
        let slope = (x().pow(2) - FuncExpr::int(1)) / (x() - FuncExpr::int(1));
        assert_eq!(limit_fun(&slope, &q(1, 1), &p), Ok(q(2, 1)));
        assert_eq!(limit_fun(&x(), &q(5, 1), &p), Ok(q(5, 1)));
        assert!(matches!(
            limit_fun(&(FuncExpr::int(1) / x()), &q(0, 1), &p),
            Err(HyperError::NoLimit(_))
        ));
        assert!(matches!(
            limit_fun(&(x().abs() / x()), &q(0, 1), &p),
            Err(HyperError::NoLimit(_))
        ));
    }

    #[test]
    fn continuity() {
        let p = probes();
        let ctx = NumContext::exact();
        assert_eq!(continuity_probe(&x().pow(2), &H::one(&ctx), &p), Continuity::Pass);
        let w = H::omega(&ctx);
        match continuity_probe(&x().pow(2), &w, &p) {
            Continuity::Fail(wit) => {
                assert_eq!(wit.epsilon, H::omega(&ctx).inv().unwrap());
                assert_eq!(wit.image_difference.to_string(), "2 + H^(-2)");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(continuity_probe(&x().sin(), &w, &p), Continuity::Inconclusive(_)));
    }

    #[test]
    fn uniform_continuity() {
        let p = probes();
        match uniform_continuity_probe(&x().pow(2), &p) {
            UniformContinuity::Fail(w) => {
                assert_eq!(w.point.to_string(), "H");
                assert_eq!(w.epsilon, H::omega(&NumContext::exact()).inv().unwrap());
                assert_eq!(w.image_difference.standard_part(), Ok(q(2, 1)));
            }
            other => panic!("{other:?}"),
        }
        let affine = FuncExpr::int(2) * x() + FuncExpr::int(3);
        assert_eq!(uniform_continuity_probe(&affine, &p), UniformContinuity::PassAllProbes);
        assert!(matches!(uniform_continuity_probe(&x().sin(), &p), UniformContinuity::Inconclusive(_)));
    }

    #[test]
    fn extreme_values() {
        let ctx = NumContext::exact();
        let f = x() * (FuncExpr::int(1) - x());
        let r = evt_demo::<Q>(&f, 10, 3, &ctx).unwrap();
        assert_eq!((r.index, r.value.as_str()), (5, "1/4"));
        assert_eq!(r.refinement.len(), 3);
        assert!(r.refinement.iter().all(|row| row.x == q(1, 2)));
        let c = evt_demo::<Q>(&FuncExpr::int(7), 10, 1, &ctx).unwrap();
        assert_eq!((c.index, c.value.as_str()), (0, "7"));
        let id = evt_demo::<Q>(&x(), 4, 1, &ctx).unwrap();
        assert_eq!((id.index, id.value.as_str()), (4, "1"));
        assert!(evt_demo::<Q>(&x(), 0, 1, &ctx).is_err());
        assert!(evt_demo::<Q>(&x(), 2_000_000, 1, &ctx).is_err());
    }
}
