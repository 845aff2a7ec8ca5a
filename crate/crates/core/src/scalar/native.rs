use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};

use super::{parse_rational, Scalar};
use crate::context::{Mode, NumContext};

// Machine floats: fast, ~16 digits, ignores the context precision.
impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn working_digits(_ctx: &NumContext) -> Option<u32> {
        Some(15)
    }

    fn from_rational(q: &BigRational, _ctx: &NumContext) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_f64(*self)
    }

    fn exp(&self, _ctx: &NumContext) -> Option<Self> {
        Some(f64::exp(*self))
    }

    fn ln(&self, _ctx: &NumContext) -> Option<Self> {
        (*self > 0.0).then(|| f64::ln(*self))
    }

    fn sin(&self, _ctx: &NumContext) -> Option<Self> {
        Some(f64::sin(*self))
    }

    fn cos(&self, _ctx: &NumContext) -> Option<Self> {
        Some(f64::cos(*self))
    }

    fn sqrt(&self, _ctx: &NumContext) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn pi(_ctx: &NumContext) -> Option<Self> {
        Some(std::f64::consts::PI)
    }

    fn e(_ctx: &NumContext) -> Option<Self> {
        Some(std::f64::consts::E)
    }

    fn close_to(&self, other: &Self, _ctx: &NumContext) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }

    fn to_coeff_string(&self) -> String {
        format!("{self:?}")
    }

    fn parse_coeff(s: &str, _ctx: &NumContext) -> Option<Self> {
        s.trim()
            .parse::<f64>()
            .ok()
            .or_else(|| parse_rational(s).and_then(|q| q.to_f64()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_text() {
        let ctx = NumContext::exact();
        let v = 0.1f64 + 0.2;
        assert_eq!(f64::parse_coeff(&v.to_coeff_string(), &ctx), Some(v));
        assert_eq!(f64::parse_coeff("1/4", &ctx), Some(0.25));
    }

    #[test]
    fn ln_domain() {
        let ctx = NumContext::exact();
        assert_eq!(Scalar::ln(&-1.0f64, &ctx), None);
        assert_eq!(Scalar::ln(&1.0f64, &ctx), Some(0.0));
    }
}
