use std::ops::{Add, Div, Mul, Neg, Sub};


use super::exponent::ExponentPair;
use super::value::{HyperValue, Term};
use crate::error::{HyperError, Result};
use crate::scalar::Scalar;

impl<C: Scalar> HyperValue<C> {
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self::from_normalized(
            terms,
            self.truncated || other.truncated,
            &self.ctx,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HyperValue {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(-t.coeff.clone(), t.exp))
                .collect(),
            truncated: self.truncated,
            ctx: self.ctx,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term::new(a.coeff.clone() * b.coeff.clone(), a.exp + b.exp));
            }
        }
        Ok(Self::from_normalized(
            terms,
            self.truncated || other.truncated,
            &self.ctx,
        ))
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return HyperValue {
                terms: Vec::new(),
                truncated: self.truncated,
                ctx: self.ctx,
            };
        }
        HyperValue {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone() * c.clone(), t.exp))
                .collect(),
            truncated: self.truncated,
            ctx: self.ctx,
        }
    }

    /// Multiplies by the monomial `c * mu`; never truncates.
    pub fn mul_monomial(&self, c: &C, mu: ExponentPair) -> Self {
        let mut v = self.scale(c);
        for t in &mut v.terms {
            t.exp = t.exp + mu;
        }
        v
    }

    /// Long division: quotient terms are produced from the largest down, so
    /// the first K of them are exactly the leading terms of `self / other`.
    /// The result is untruncated only if the remainder reaches zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let lead = other.leading().ok_or(HyperError::DivisionByZero)?.clone();
        let k = self.ctx.terms();
        let divisor_tail = &other.terms[1..];

        let mut quotient: Vec<Term<C>> = Vec::new();
        let mut rem: Vec<Term<C>> = self.terms.clone();
        while let Some(first) = rem.first().cloned() {
            if quotient.len() == k {
                break;
            }
            let q = Term::new(first.coeff / lead.coeff.clone(), first.exp - lead.exp);
            // Drop the leading term explicitly so rounding cannot leave a residue.
            let mut next: Vec<Term<C>> = rem[1..].to_vec();
            for t in divisor_tail {
                next.push(Term::new(-(q.coeff.clone() * t.coeff.clone()), q.exp + t.exp));
            }
            rem = super::value::normalize(next, usize::MAX).0;
            quotient.push(q);
        }
        let inexact = !rem.is_empty();
        Ok(Self::from_normalized(
            quotient,
            self.truncated || other.truncated || inexact,
            &self.ctx,
        ))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(&self.ctx).div(self)
    }

    /// Integer power by repeated squaring; negative powers go through `inv`.
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        if let [t] = self.terms.as_slice() {
            let mut c = C::one();
            for _ in 0..n {
                c = c * t.coeff.clone();
            }
            return Ok(HyperValue::monomial(c, t.exp.scale(n), &self.ctx).with_truncated(self.truncated));
        }
        let mut result = Self::one(&self.ctx).with_truncated(self.truncated);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Product keeping every term whose monomial is at least `floor`, with no
    /// term-count limit.
    pub(crate) fn mul_above(&self, other: &Self, floor: ExponentPair) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exp + b.exp;
                if e >= floor {
                    terms.push(Term::new(a.coeff.clone() * b.coeff.clone(), e));
                }
            }
        }
        HyperValue {
            terms: super::value::normalize(terms, usize::MAX).0,
            truncated: self.truncated || other.truncated,
            ctx: self.ctx,
        }
    }

    /// Evaluates `sum_k coeff(k) * delta^k` for an infinitesimal `delta`,
    /// returning the K leading terms of the infinite sum.
    ///
    /// Terms are computed exactly above a cutoff monomial `lead(delta)^(K*t)`;
    /// the cutoff is lowered until at least K terms survive.
    pub(crate) fn power_series<F>(delta: &Self, mut coeff: F) -> Result<Self>
    where
        F: FnMut(usize) -> Result<C>,
    {
        let ctx = delta.ctx;
        let k = ctx.terms();
        let Some(lead) = delta.leading().map(|t| t.exp) else {
            return Ok(Self::from_scalar(coeff(0)?, &ctx));
        };
        debug_assert!(lead.is_infinitesimal());
        const MAX_ROUNDS: i64 = 6;
        let mut coeffs: Vec<C> = Vec::new();
        let mut result = Self::zero(&ctx);
        for round in 1..=MAX_ROUNDS {
            let order = k as i64 * round;
            let floor = lead.scale(order);
            while coeffs.len() <= order as usize {
                coeffs.push(coeff(coeffs.len())?);
            }
            let mut sum: Vec<Term<C>> = Vec::new();
            let mut power = Self::one(&ctx);
            for (i, c) in coeffs.iter().enumerate().take(order as usize + 1) {
                if i > 0 {
                    power = power.mul_above(delta, floor);
                }
                if !c.is_zero() {
                    sum.extend(
                        power
                            .terms
                            .iter()
                            .map(|t| Term::new(t.coeff.clone() * c.clone(), t.exp)),
                    );
                }
            }
            let (terms, _) = super::value::normalize(sum, usize::MAX);
            let enough = terms.len() >= k;
            result = HyperValue {
                terms,
                truncated: true,
                ctx,
            };
            if enough {
                break;
            }
        }
        result.terms.truncate(k);
        result.truncated = true;
        Ok(result.with_truncated(delta.truncated))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        /// Panics on a context mismatch; use the inherent method to handle it.
        impl<C: Scalar> $trait<&HyperValue<C>> for &HyperValue<C> {
            type Output = HyperValue<C>;

            fn $method(self, rhs: &HyperValue<C>) -> HyperValue<C> {
                HyperValue::$method(self, rhs).expect(concat!("HyperValue::", stringify!($method)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<C: Scalar> Neg for &HyperValue<C> {
    type Output = HyperValue<C>;

    fn neg(self) -> HyperValue<C> {
        HyperValue::neg(self)
    }
}

impl<C: Scalar> Neg for HyperValue<C> {
    type Output = HyperValue<C>;

    fn neg(self) -> HyperValue<C> {
        HyperValue::neg(&self)
    }
}
