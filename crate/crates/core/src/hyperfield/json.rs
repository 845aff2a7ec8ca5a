use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::exponent::ExponentPair;
use super::value::{HyperValue, Term};
use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::scalar::Scalar;

/// Wire form of one term: coefficient and exponents as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub c: String,
    pub b: String,
    pub a: String,
}

/// Wire form of a value, terms leading-first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperRecord {
    pub truncated: bool,
    pub terms: Vec<TermRecord>,
}

fn exponent_string(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_exponent(s: &str) -> Result<Rational64> {
    let bad = || HyperError::InvalidJson(format!("bad exponent `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl<C: Scalar> HyperValue<C> {
    pub fn to_record(&self) -> HyperRecord {
        HyperRecord {
            truncated: self.truncated,
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord {
                    c: t.coeff.to_coeff_string(),
                    b: exponent_string(&t.exp.tau),
                    a: exponent_string(&t.exp.omega),
                })
                .collect(),
        }
    }

    /// Rebuilds a value, insisting on the canonical form: strictly
    /// descending exponents, no zero coefficients, at most K terms.
    pub fn from_record(record: &HyperRecord, ctx: &NumContext) -> Result<Self> {
        let mut terms: Vec<Term<C>> = Vec::with_capacity(record.terms.len());
        for r in &record.terms {
            let coeff = C::parse_coeff(&r.c, ctx)
                .ok_or_else(|| HyperError::InvalidJson(format!("bad coefficient `{}`", r.c)))?;
            if coeff.is_zero() {
                return Err(HyperError::InvalidJson("zero coefficient".into()));
            }
            let exp = ExponentPair::new(parse_exponent(&r.b)?, parse_exponent(&r.a)?);
            if let Some(prev) = terms.last() {
                if prev.exp <= exp {
                    return Err(HyperError::InvalidJson(
                        "terms must be sorted by strictly decreasing magnitude".into(),
                    ));
                }
            }
            terms.push(Term::new(coeff, exp));
        }
        if terms.len() > ctx.terms() {
            return Err(HyperError::InvalidJson(format!(
                "{} terms exceed the context limit of {}",
                terms.len(),
                ctx.terms()
            )));
        }
        Ok(HyperValue {
            terms,
            truncated: record.truncated,
            ctx: *ctx,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("records always serialize")
    }

    pub fn from_json(s: &str, ctx: &NumContext) -> Result<Self> {
        let record: HyperRecord =
            serde_json::from_str(s).map_err(|e| HyperError::InvalidJson(e.to_string()))?;
        Self::from_record(&record, ctx)
    }
}

impl<C: Scalar> Serialize for HyperValue<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::scalar::DecFloat;

    type H = HyperValue<BigRational>;

    #[test]
    fn exact_layout() {
        let ctx = NumContext::exact();
        let v = H::one(&ctx).sub(&H::tau(&ctx)).unwrap();
        let s = v.to_json();
        assert_eq!(
            s,
            r#"{"truncated":false,"terms":[{"c":"1","b":"0","a":"0"},{"c":"-1","b":"1","a":"0"}]}"#
        );
        assert_eq!(H::from_json(&s, &ctx).unwrap(), v);
    }

    #[test]
    fn rational_exponents_and_coefficients() {
        let ctx = NumContext::exact();
        let s = r#"{"truncated":true,"terms":[{"c":"-3/7","b":"-1/2","a":"2"}]}"#;
        let v = H::from_json(s, &ctx).unwrap();
        assert!(v.is_truncated());
        assert_eq!(v.to_json(), s);
    }

    #[test]
    fn rejects_non_canonical() {
        let ctx = NumContext::exact();
        let unsorted = r#"{"truncated":false,"terms":[{"c":"1","b":"1","a":"0"},{"c":"1","b":"0","a":"0"}]}"#;
        assert!(matches!(H::from_json(unsorted, &ctx), Err(HyperError::InvalidJson(_))));
        let zero = r#"{"truncated":false,"terms":[{"c":"0","b":"0","a":"0"}]}"#;
        assert!(H::from_json(zero, &ctx).is_err());
        assert!(H::from_json("{}", &ctx).is_err());
    }

    #[test]
    fn float_coefficients_are_decimal_strings() {
        let ctx = NumContext::float(20).unwrap();
        let third = HyperValue::<DecFloat>::from_rational(
            &BigRational::new(1.into(), 3.into()),
            &ctx,
        );
        let s = third.to_json();
        assert!(s.contains(r#""c":"0.33333333333333333333""#));
        assert_eq!(HyperValue::<DecFloat>::from_json(&s, &ctx).unwrap(), third);
    }
}
