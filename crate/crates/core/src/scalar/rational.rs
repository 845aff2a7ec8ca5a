use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, Scalar};
use crate::context::{Mode, NumContext};

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar for BigRational {
    const MODE: Mode = Mode::Exact;

    fn working_digits(_ctx: &NumContext) -> Option<u32> {
        None
    }

    fn from_rational(q: &BigRational, _ctx: &NumContext) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn exp(&self, _ctx: &NumContext) -> Option<Self> {
        self.is_zero().then(BigRational::one)
    }

    fn ln(&self, _ctx: &NumContext) -> Option<Self> {
        self.is_one().then(BigRational::zero)
    }

    fn sin(&self, _ctx: &NumContext) -> Option<Self> {
        self.is_zero().then(BigRational::zero)
    }

    fn cos(&self, _ctx: &NumContext) -> Option<Self> {
        self.is_zero().then(BigRational::one)
    }

    fn sqrt(&self, _ctx: &NumContext) -> Option<Self> {
        let n = exact_sqrt(self.numer())?;
        let d = exact_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn pi(_ctx: &NumContext) -> Option<Self> {
        None
    }

    fn e(_ctx: &NumContext) -> Option<Self> {
        None
    }

    fn close_to(&self, other: &Self, _ctx: &NumContext) -> bool {
        self == other
    }

    fn to_coeff_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse_coeff(s: &str, _ctx: &NumContext) -> Option<Self> {
        parse_rational(s)
    }
}
