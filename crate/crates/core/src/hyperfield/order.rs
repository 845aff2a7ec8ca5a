use std::cmp::Ordering;
use std::fmt;

use super::exponent::Magnitude;
use super::value::HyperValue;
use crate::error::{HyperError, Result};
use crate::scalar::Scalar;

/// Magnitude class and sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub magnitude: Magnitude,
    /// -1, 0 or 1.
    pub sign: i8,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.magnitude {
            Magnitude::Infinitesimal => "infinitesimal",
            Magnitude::Appreciable => "finite-appreciable",
            Magnitude::Infinite => "infinite",
        };
        let sign = match self.sign {
            1 => "+",
            -1 => "-",
            _ => "0",
        };
        write!(f, "{kind} {sign}")
    }
}

impl<C: Scalar> HyperValue<C> {
    /// -1, 0 or 1 from the leading coefficient.
    pub fn signum(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(t) if t.coeff.is_negative() => -1,
            Some(_) => 1,
        }
    }

    /// Orders by the sign of `self - other`.
    ///
    /// Refuses to call truncated values equal, and refuses any answer when the
    /// difference first shows up below the retained terms of a truncated
    /// operand.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        let d = self.sub(other)?;
        let Some(lead) = d.leading() else {
            if self.truncated || other.truncated {
                return Err(HyperError::TruncationAmbiguous);
            }
            return Ok(Ordering::Equal);
        };
        for operand in [self, other] {
            if operand.truncated {
                if let Some(last) = operand.last() {
                    if lead.exp < last.exp {
                        return Err(HyperError::TruncationAmbiguous);
                    }
                }
            }
        }
        Ok(if lead.coeff.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| !t.exp.is_infinite())
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_infinitesimal())
    }

    /// The real number infinitely close to a finite value.
    pub fn standard_part(&self) -> Result<C> {
        if !self.is_finite() {
            return Err(HyperError::NotFinite);
        }
        Ok(self
            .terms
            .iter()
            .find(|t| t.exp.is_unit())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(C::zero))
    }

    /// `x ≈ y`: the difference is zero or infinitesimal.
    pub fn approx_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_infinitesimal())
    }

    pub fn classify(&self) -> Classification {
        match self.leading() {
            None => Classification {
                magnitude: Magnitude::Infinitesimal,
                sign: 0,
            },
            Some(t) => Classification {
                magnitude: t.exp.magnitude(),
                sign: self.signum(),
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}
