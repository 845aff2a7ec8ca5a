use std::fmt;

use num_rational::BigRational;

use super::exponent::ExponentPair;
use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Term<C> {
    pub coeff: C,
    pub exp: ExponentPair,
}

impl<C> Term<C> {
    pub fn new(coeff: C, exp: ExponentPair) -> Self {
        Term { coeff, exp }
    }
}

/// A finite series `sum c_i * tau^b_i * omega^a_i`, kept sorted from the
/// largest monomial down, with at most `ctx.terms()` entries.
///
/// `truncated` is sticky: it records that some step producing this value
/// dropped a nonzero tail.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperValue<C> {
    pub(crate) terms: Vec<Term<C>>,
    pub(crate) truncated: bool,
    pub(crate) ctx: NumContext,
}

impl<C: Scalar> HyperValue<C> {
    pub fn zero(ctx: &NumContext) -> Self {
        HyperValue {
            terms: Vec::new(),
            truncated: false,
            ctx: *ctx,
        }
    }

    pub fn one(ctx: &NumContext) -> Self {
        Self::from_scalar(C::one(), ctx)
    }

    /// The infinite hyperinteger `H`.
    pub fn omega(ctx: &NumContext) -> Self {
        Self::monomial(C::one(), ExponentPair::OMEGA, ctx)
    }

    /// The infinitesimal `10^(-H)`.
    pub fn tau(ctx: &NumContext) -> Self {
        Self::monomial(C::one(), ExponentPair::TAU, ctx)
    }

    pub fn from_scalar(c: C, ctx: &NumContext) -> Self {
        Self::monomial(c, ExponentPair::ONE, ctx)
    }

    pub fn from_rational(q: &BigRational, ctx: &NumContext) -> Self {
        Self::from_scalar(C::from_rational(q, ctx), ctx)
    }

    pub fn from_int(v: i64, ctx: &NumContext) -> Self {
        Self::from_scalar(C::from_int(v, ctx), ctx)
    }

    pub fn monomial(c: C, exp: ExponentPair, ctx: &NumContext) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term::new(c, exp)]
        };
        HyperValue {
            terms,
            truncated: false,
            ctx: *ctx,
        }
    }

    /// Collects arbitrary terms: merges equal exponents, drops zeros, sorts,
    /// and truncates to the context's term budget.
    pub fn from_terms(terms: impl IntoIterator<Item = Term<C>>, ctx: &NumContext) -> Self {
        let (terms, truncated) = normalize(terms.into_iter().collect(), ctx.terms());
        HyperValue {
            terms,
            truncated,
            ctx: *ctx,
        }
    }

    pub(crate) fn from_normalized(terms: Vec<Term<C>>, truncated: bool, ctx: &NumContext) -> Self {
        let (terms, cut) = normalize(terms, ctx.terms());
        HyperValue {
            terms,
            truncated: truncated || cut,
            ctx: *ctx,
        }
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn ctx(&self) -> &NumContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn last(&self) -> Option<&Term<C>> {
        self.terms.last()
    }

    /// Coefficient of the given monomial, zero when absent.
    pub fn coeff(&self, exp: &ExponentPair) -> C {
        self.terms
            .iter()
            .find(|t| t.exp == *exp)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(C::zero)
    }

    /// `Some(c)` when the value is a plain standard number.
    pub fn as_standard(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [t] if t.exp.is_unit() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// Marks the value as carrying a dropped tail.
    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated |= truncated;
        self
    }

    pub(crate) fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(HyperError::ContextMismatch)
        }
    }
}

/// Sorts descending by magnitude, merges duplicates, removes zero
/// coefficients, and keeps at most `k` terms. Returns whether anything
/// nonzero was dropped.
pub(crate) fn normalize<C: Scalar>(mut terms: Vec<Term<C>>, k: usize) -> (Vec<Term<C>>, bool) {
    terms.sort_by_key(|t| std::cmp::Reverse(t.exp));
    let mut out: Vec<Term<C>> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.exp == t.exp => {
                last.coeff = last.coeff.clone() + t.coeff;
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    let cut = out.len() > k;
    out.truncate(k);
    (out, cut)
}

/// Canonical text in the expression language, e.g. `1 - eps`, `2*H + 1/2`.
impl<C: Scalar> fmt::Display for HyperValue<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let mag = t.coeff.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if t.exp.is_unit() {
                write!(f, "{mag}")?;
            } else if mag == C::one() {
                write!(f, "{}", t.exp)?;
            } else {
                write!(f, "{mag}*{}", t.exp)?;
            }
        }
        if self.truncated {
            f.write_str(" + …")?;
        }
        Ok(())
    }
}
