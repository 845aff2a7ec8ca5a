use num_rational::BigRational;
use num_traits::Zero;

use super::value::{HyperValue, Term};
use crate::error::{HyperError, Result};
use crate::scalar::{is_terminating_decimal, Scalar};

/// `x = infinite + standard + infinitesimal`, no normalization applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSplit<C> {
    pub infinite: HyperValue<C>,
    pub standard: C,
    pub infinitesimal: HyperValue<C>,
}

/// `x = integer + fraction + infinitesimal` with `integer` a hyperinteger and
/// `fraction` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<C> {
    pub integer: HyperValue<C>,
    pub fraction: C,
    pub infinitesimal: HyperValue<C>,
}

impl<C: Scalar> HyperValue<C> {
    pub fn raw_split(&self) -> RawSplit<C> {
        let pick = |keep: fn(&Term<C>) -> bool| HyperValue {
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
            truncated: self.truncated,
            ctx: self.ctx,
        };
        RawSplit {
            infinite: pick(|t| t.exp.is_infinite()),
            standard: self
                .terms
                .iter()
                .find(|t| t.exp.is_unit())
                .map(|t| t.coeff.clone())
                .unwrap_or_else(C::zero),
            infinitesimal: pick(|t| t.exp.is_infinitesimal()),
        }
    }

    /// Checks that the infinite part is a hyperinteger the model can name:
    /// a sum of `c * omega^a * 10^(m*omega)` with `a, m` non-negative integers,
    /// `c` an integer when `m = 0`, and `c` a terminating decimal when `m > 0`
    /// (then `c * 10^(m*omega)` is an integer since `omega` exceeds every
    /// standard integer).
    pub fn check_hyperinteger_part(&self) -> Result<()> {
        for t in self.terms.iter().filter(|t| t.exp.is_infinite()) {
            if !t.exp.is_hyperinteger_monomial() {
                return Err(HyperError::FloorUndecidable(format!(
                    "monomial {} is not a hyperinteger",
                    t.exp
                )));
            }
            let q = t.coeff.to_rational().ok_or_else(|| {
                HyperError::FloorUndecidable("coefficient is not a number".into())
            })?;
            let ok = if t.exp.tau.is_zero() {
                q.is_integer()
            } else {
                is_terminating_decimal(&q)
            };
            if !ok {
                return Err(HyperError::FloorUndecidable(format!(
                    "integer part of {}*{} depends on residues of H",
                    t.coeff, t.exp
                )));
            }
        }
        Ok(())
    }

    /// Greatest hyperinteger not exceeding `self`.
    pub fn floor(&self) -> Result<Self> {
        self.check_hyperinteger_part()?;
        let split = self.raw_split();
        let f = split
            .standard
            .to_rational()
            .ok_or_else(|| HyperError::FloorUndecidable("standard part is not a number".into()))?;
        let mut q = f.floor();
        if f.is_integer() && split.infinitesimal.signum() < 0 {
            q -= BigRational::from_integer(1.into());
        }
        let q = HyperValue::from_rational(&q, &self.ctx);
        Ok(split.infinite.add(&q)?.with_truncated(self.truncated))
    }

    /// The triple sum `I + r + eps` with `r` in `[0, 1)`.
    ///
    /// `I` is the infinite part plus the floor of the standard part, so a
    /// value just below an integer, like `1 - eps`, splits as `1 + 0 - eps`.
    /// [`HyperValue::floor`] gives the other reading (`floor(1 - eps) = 0`).
    pub fn decompose(&self) -> Result<Decomposition<C>> {
        self.check_hyperinteger_part()?;
        let split = self.raw_split();
        let f = split
            .standard
            .to_rational()
            .ok_or_else(|| HyperError::FloorUndecidable("standard part is not a number".into()))?;
        let whole = f.floor();
        let fraction = C::from_rational(&(f - &whole), &self.ctx);
        let integer = split
            .infinite
            .add(&HyperValue::from_rational(&whole, &self.ctx))?;
        Ok(Decomposition {
            integer,
            fraction,
            infinitesimal: split.infinitesimal,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use super::*;
    use crate::context::NumContext;
    use crate::hyperfield::ExponentPair;

    type Q = BigRational;
    type H = HyperValue<Q>;

    fn ctx() -> NumContext {
        NumContext::exact()
    }

    fn val(terms: &[(i64, i64, i64, i64)]) -> H {
        H::from_terms(
            terms.iter().map(|&(n, d, b, a)| {
                Term::new(Q::new(n.into(), d.into()), ExponentPair::integers(b, a))
            }),
            &ctx(),
        )
    }

    #[test]
    fn floor_below_integer_boundary() {
        let x = val(&[(1, 1, 0, 0), (-1, 1, 1, 0)]);
        assert_eq!(x.floor().unwrap(), H::zero(&ctx()));
        let ten = val(&[(10, 1, 0, 0), (-10, 1, 1, 0)]);
        assert_eq!(ten.floor().unwrap(), val(&[(9, 1, 0, 0)]));
    }

    #[test]
    fn floor_of_infinite_values() {
        let x = val(&[(1, 1, 0, 1), (1, 2, 0, 0)]);
        assert_eq!(x.floor().unwrap(), H::omega(&ctx()));
        // 10^H / 10 is an integer
        let y = val(&[(1, 10, -1, 0), (-1, 10, 0, 0)]);
        assert_eq!(y.floor().unwrap(), val(&[(1, 10, -1, 0), (-1, 1, 0, 0)]));
    }

    #[test]
    fn floor_refuses_parity_questions() {
        let x = val(&[(1, 2, 0, 1)]);
        assert!(matches!(x.floor(), Err(HyperError::FloorUndecidable(_))));
        let y = val(&[(1, 3, -1, 0)]);
        assert!(matches!(y.floor(), Err(HyperError::FloorUndecidable(_))));
        let z = val(&[(1, 1, -1, -1)]);
        assert!(matches!(z.floor(), Err(HyperError::FloorUndecidable(_))));
    }

    #[test]
    fn floor_brackets_value() {
        for x in [
            val(&[(7, 3, 0, 0), (1, 1, 1, 0)]),
            val(&[(-7, 3, 0, 0)]),
            val(&[(-2, 1, 0, 0), (-1, 1, 0, -1)]),
            val(&[(3, 1, 0, 2), (5, 1, 0, 0), (1, 1, 2, 0)]),
        ] {
            let f = x.floor().unwrap();
            assert_ne!(f.compare(&x).unwrap(), Ordering::Greater);
            let f1 = f.add(&H::one(&ctx())).unwrap();
            assert_eq!(x.compare(&f1).unwrap(), Ordering::Less);
            assert_eq!(f.floor().unwrap(), f);
        }
    }

    #[test]
    fn triple_sum() {
        let x = val(&[(1, 1, 0, 1), (1, 2, 0, 0), (1, 1, 1, 0)]);
        let d = x.decompose().unwrap();
        assert_eq!(d.integer, H::omega(&ctx()));
        assert_eq!(d.fraction, Q::new(1.into(), 2.into()));
        assert_eq!(d.infinitesimal, H::tau(&ctx()));

        let z = H::zero(&ctx()).decompose().unwrap();
        assert!(z.integer.is_zero() && z.fraction.is_zero() && z.infinitesimal.is_zero());

        let n = val(&[(1, 1, 0, 0), (-1, 1, 1, 0)]);
        let d = n.decompose().unwrap();
        assert_eq!(d.integer, H::one(&ctx()));
        assert!(d.fraction.is_zero());
        assert_eq!(d.infinitesimal, val(&[(-1, 1, 1, 0)]));
        let raw = n.raw_split();
        assert!(raw.infinite.is_zero());
        assert_eq!(raw.standard, Q::from_integer(1.into()));
    }
}
