use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{HyperError, Result};
use crate::hyperfield::{ExponentPair, HyperValue};
use crate::scalar::Scalar;

/// The decimal place `m*H + j`. Standard places have `m = 0, j >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub m: u32,
    pub j: i64,
}

impl Position {
    pub fn new(m: u32, j: i64) -> Result<Self> {
        if m == 0 && j < 1 {
            return Err(HyperError::InvalidArgument(format!(
                "standard decimal places start at 1, got {j}"
            )));
        }
        Ok(Position { m, j })
    }

    pub fn standard(j: i64) -> Result<Self> {
        Self::new(0, j)
    }

    /// The place `m*H` itself.
    pub fn hyper(m: u32) -> Self {
        Position { m, j: 0 }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.j) {
            (0, j) => write!(f, "{j}"),
            (1, 0) => f.write_str("H"),
            (m, 0) => write!(f, "{m}H"),
            (1, j) => write!(f, "H{j:+}"),
            (m, j) => write!(f, "{m}H{j:+}"),
        }
    }
}

/// `x * 10^(m*H + j)`.
fn shifted<C: Scalar>(x: &HyperValue<C>, m: u32, j: i64) -> HyperValue<C> {
    let ctx = x.ctx();
    let c = C::pow10(&BigRational::from_integer(BigInt::from(j)), ctx)
        .expect("integer powers of ten are representable");
    x.mul_monomial(&c, ExponentPair::integers(-i64::from(m), 0))
}

/// The digit of `x` at decimal place `p`:
/// `floor(10^p x) - 10 floor(10^(p-1) x)`.
///
/// For negative `x` this is the digit of `x - floor(x)`. A hyper place whose
/// floor depends on residues of `H` gives `PositionOutOfModel`.
pub fn digit_at<C: Scalar>(x: &HyperValue<C>, p: Position) -> Result<u8> {
    let floor_at = |j: i64| {
        shifted(x, p.m, j).floor().map_err(|e| match e {
            HyperError::FloorUndecidable(why) if p.m > 0 => {
                HyperError::PositionOutOfModel(format!("digit at place {p}: {why}"))
            }
            other => other,
        })
    };
    let hi = floor_at(p.j)?;
    let lo = floor_at(p.j - 1)?;
    let ten = C::from_int(10, x.ctx());
    let d = hi.sub(&lo.scale(&ten))?;
    d.as_standard()
        .and_then(|c| c.to_rational())
        .filter(|q| q.is_integer())
        .and_then(|q| q.to_integer().to_u8())
        .filter(|d| *d <= 9)
        .ok_or_else(|| HyperError::PositionOutOfModel(format!("digit at place {p} is not determined")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::NumContext;
    use crate::hyperfield::{nines, nines_hyper};

    type Q = BigRational;
    type H = HyperValue<Q>;

    fn ctx() -> NumContext {
        NumContext::exact()
    }

    #[test]
    fn hyper_place_of_nines() {
        let x: H = nines_hyper(&ctx());
        assert_eq!(digit_at(&x, Position::hyper(1)), Ok(9));
        for j in 1..40 {
            assert_eq!(digit_at(&x, Position::standard(j).unwrap()), Ok(9));
        }
        // past the last nine
        assert_eq!(digit_at(&x, Position { m: 1, j: 1 }), Ok(0));
    }

    #[test]
    fn tau_has_one_digit() {
        let t = H::tau(&ctx());
        assert_eq!(digit_at(&t, Position::hyper(1)), Ok(1));
        assert_eq!(digit_at(&t, Position { m: 1, j: -1 }), Ok(0));
        for j in 1..20 {
            assert_eq!(digit_at(&t, Position::standard(j).unwrap()), Ok(0));
        }
    }

    #[test]
    fn standard_decimals() {
        let q = H::from_rational(&Q::new(1.into(), 4.into()), &ctx());
        let digits: Vec<u8> = (1..=3)
            .map(|j| digit_at(&q, Position::standard(j).unwrap()).unwrap())
            .collect();
        assert_eq!(digits, vec![2, 5, 0]);
        let neg = H::from_rational(&Q::new((-1).into(), 4.into()), &ctx());
        assert_eq!(digit_at(&neg, Position::standard(1).unwrap()), Ok(7));
    }

    #[test]
    fn finite_nines_digits() {
        for n in 0..8u32 {
            let x: H = nines(n, &ctx());
            for j in 1..12i64 {
                let want = if j <= n as i64 { 9 } else { 0 };
                assert_eq!(digit_at(&x, Position::standard(j).unwrap()), Ok(want));
            }
        }
    }

    #[test]
    fn out_of_model() {
        let third = H::from_rational(&Q::new(1.into(), 3.into()), &ctx());
        assert_eq!(digit_at(&third, Position::standard(5).unwrap()), Ok(3));
        assert!(matches!(
            digit_at(&third, Position::hyper(1)),
            Err(HyperError::PositionOutOfModel(_))
        ));
        assert!(Position::new(0, 0).is_err());
    }

    #[test]
    fn positions_order_and_display() {
        assert!(Position::standard(100).unwrap() < Position { m: 1, j: -5 });
        assert_eq!(Position { m: 1, j: -2 }.to_string(), "H-2");
        assert_eq!(Position::hyper(2).to_string(), "2H");
    }
}
