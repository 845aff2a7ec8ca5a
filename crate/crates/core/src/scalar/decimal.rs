use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{parse_decimal, pow10_rational, Scalar};
use crate::context::{Mode, NumContext};

/// Arbitrary-precision decimal floating point: `mantissa * 10^exponent`.
///
/// Each value carries the number of significant digits it was rounded to;
/// `0` marks an exact value (the constants produced by `zero()`/`one()`).
/// Binary operations round to the larger precision of their operands.
#[derive(Clone, Debug)]
pub struct DecFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

const GUARD: u32 = 12;

fn pow10(n: u64) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

fn ndigits(n: &BigInt) -> i64 {
    if n.is_zero() {
        return 0;
    }
    n.magnitude().to_string().len() as i64
}

impl DecFloat {
    /// Builds `mant * 10^exp` exactly (no rounding).
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        DecFloat { mant, exp, prec: 0 }.normalized()
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_parts(n, 0)
    }

    /// Rounds to `prec` significant digits (half to even) and tags the result.
    pub fn with_precision(&self, prec: u32) -> Self {
        let mut v = self.clone().rounded(prec);
        v.prec = prec;
        v
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Decimal position of the leading digit: `v` lies in `[10^top, 10^(top+1))`.
    fn top(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + ndigits(&self.mant) - 1
        }
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let s = self.mant.magnitude().to_string();
        let tz = s.len() - s.trim_end_matches('0').len();
        if tz > 0 {
            self.mant /= pow10(tz as u64);
            self.exp += tz as i64;
        }
        self
    }

    fn rounded(mut self, prec: u32) -> Self {
        if prec == 0 {
            return self.normalized();
        }
        let excess = ndigits(&self.mant) - prec as i64;
        if excess > 0 {
            let divisor = pow10(excess as u64);
            let negative = self.mant.is_negative();
            let (mut q, r) = self.mant.magnitude().div_rem(divisor.magnitude());
            let twice = &r * 2u32;
            match twice.cmp(divisor.magnitude()) {
                Ordering::Greater => q += 1u32,
                Ordering::Equal if q.is_odd() => q += 1u32,
                _ => {}
            }
            let q = BigInt::from_biguint(Sign::Plus, q);
            self.mant = if negative { -q } else { q };
            self.exp += excess;
        }
        self.normalized()
    }

    fn finish(self, prec: u32) -> Self {
        let mut v = self.rounded(prec);
        v.prec = prec;
        v
    }

    fn aligned_sum(a: &DecFloat, b: &DecFloat, prec: u32) -> DecFloat {
        if a.mant.is_zero() {
            return b.clone().finish(prec);
        }
        if b.mant.is_zero() {
            return a.clone().finish(prec);
        }
        let (big, small) = if a.top() >= b.top() { (a, b) } else { (b, a) };
        let mut small = small.clone();
        if prec > 0 {
            // Anything this far below the rounding position only matters as a sticky bit.
            let floor_exp = big.top() - prec as i64 - 3;
            if small.top() < floor_exp && small.exp < floor_exp {
                small = DecFloat {
                    mant: small.mant.signum(),
                    exp: floor_exp - 1,
                    prec: 0,
                };
            }
        }
        let e = big.exp.min(small.exp);
        let mb = &big.mant * pow10((big.exp - e) as u64);
        let ms = &small.mant * pow10((small.exp - e) as u64);
        DecFloat {
            mant: mb + ms,
            exp: e,
            prec: 0,
        }
        .finish(prec)
    }

    fn quotient(a: &DecFloat, b: &DecFloat, prec: u32) -> DecFloat {
        assert!(!b.mant.is_zero(), "DecFloat division by zero");
        if a.mant.is_zero() {
            return DecFloat::zero().finish(prec);
        }
        let prec = if prec == 0 {
            NumContext::DEFAULT_PRECISION
        } else {
            prec
        };
        let want = prec as i64 + 2;
        let shift = (want + ndigits(&b.mant) - ndigits(&a.mant) + 1).max(0);
        let num = &a.mant * pow10(shift as u64);
        let (q, r) = num.div_rem(&b.mant);
        let (mant, exp) = if r.is_zero() {
            (q, a.exp - b.exp - shift)
        } else {
            let sticky = if (num.is_negative()) != (b.mant.is_negative()) {
                -1
            } else {
                1
            };
            (q * 10 + sticky, a.exp - b.exp - shift - 1)
        };
        DecFloat { mant, exp, prec: 0 }.finish(prec)
    }

    fn scaled_by_pow10(&self, k: i64) -> DecFloat {
        DecFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    fn small_int(v: i64, prec: u32) -> DecFloat {
        DecFloat::from_bigint(BigInt::from(v)).finish(prec)
    }

    fn add_p(&self, other: &DecFloat, prec: u32) -> DecFloat {
        Self::aligned_sum(self, other, prec)
    }

    fn sub_p(&self, other: &DecFloat, prec: u32) -> DecFloat {
        Self::aligned_sum(self, &-other.clone(), prec)
    }

    fn mul_p(&self, other: &DecFloat, prec: u32) -> DecFloat {
        DecFloat {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec: 0,
        }
        .finish(prec)
    }

    fn div_p(&self, other: &DecFloat, prec: u32) -> DecFloat {
        Self::quotient(self, other, prec)
    }

    /// `true` once `term` no longer affects a sum of magnitude `sum` at `prec` digits.
    fn negligible(term: &DecFloat, sum: &DecFloat, prec: u32) -> bool {
        term.mant.is_zero() || term.top() < sum.top() - prec as i64 - 2
    }

    fn exp_at(&self, prec: u32) -> DecFloat {
        if self.mant.is_zero() {
            return DecFloat::one().finish(prec);
        }
        let t = self.top();
        let halvings: u32 = if t + 4 > 0 {
            ((t + 4) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 1
        } else {
            0
        };
        let wp = prec + GUARD + halvings / 3 + 2;
        let two_k = DecFloat::from_bigint(num_traits::pow(BigInt::from(2), halvings as usize));
        let r = self.div_p(&two_k, wp);
        let mut sum = DecFloat::one().finish(wp);
        let mut term = sum.clone();
        let mut n = 1i64;
        loop {
            term = term.mul_p(&r, wp).div_p(&DecFloat::small_int(n, 0), wp);
            sum = sum.add_p(&term, wp);
            if Self::negligible(&term, &sum, wp) {
                break;
            }
            n += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul_p(&sum, wp);
        }
        sum.finish(prec)
    }

    fn atanh_at(z: &DecFloat, prec: u32) -> DecFloat {
        let z2 = z.mul_p(z, prec);
        let mut power = z.clone();
        let mut sum = z.clone();
        let mut n = 1i64;
        loop {
            power = power.mul_p(&z2, prec);
            let term = power.div_p(&DecFloat::small_int(2 * n + 1, 0), prec);
            sum = sum.add_p(&term, prec);
            if Self::negligible(&term, &sum, prec) {
                break;
            }
            n += 1;
        }
        sum
    }

    fn ln2_at(prec: u32) -> DecFloat {
        let third = DecFloat::one().div_p(&DecFloat::small_int(3, 0), prec);
        Self::atanh_at(&third, prec).mul_p(&DecFloat::small_int(2, 0), prec)
    }

    fn ln10_at(prec: u32) -> DecFloat {
        // ln 10 = 3 ln 2 + ln(5/4), and ln(5/4) = 2 atanh(1/9)
        let ninth = DecFloat::one().div_p(&DecFloat::small_int(9, 0), prec);
        let ln54 = Self::atanh_at(&ninth, prec).mul_p(&DecFloat::small_int(2, 0), prec);
        Self::ln2_at(prec)
            .mul_p(&DecFloat::small_int(3, 0), prec)
            .add_p(&ln54, prec)
    }

    fn ln_at(&self, prec: u32) -> Option<DecFloat> {
        if !self.mant.is_positive() {
            return None;
        }
        let wp = prec + GUARD + 3;
        let one = DecFloat::one();
        if *self == one {
            return Some(DecFloat::zero().finish(prec));
        }
        let d = self.sub_p(&one, 0);
        let two = DecFloat::small_int(2, 0);
        let half = DecFloat::from_parts(BigInt::from(5), -1);
        if d.abs() < half {
            let z = d.div_p(&self.add_p(&one, 0), wp);
            return Some(Self::atanh_at(&z, wp).mul_p(&two, wp).finish(prec));
        }
        let t = self.top() + 1;
        let mut y = self.scaled_by_pow10(-t);
        let mut doublings = 0i64;
        while y < half {
            y = y.mul_p(&two, 0);
            doublings += 1;
        }
        let z = y.sub_p(&one, 0).div_p(&y.add_p(&one, 0), wp);
        let mut acc = Self::atanh_at(&z, wp).mul_p(&two, wp);
        if doublings != 0 {
            acc = acc.sub_p(
                &Self::ln2_at(wp).mul_p(&DecFloat::small_int(doublings, 0), wp),
                wp,
            );
        }
        if t != 0 {
            acc = acc.add_p(&Self::ln10_at(wp).mul_p(&DecFloat::small_int(t, 0), wp), wp);
        }
        Some(acc.finish(prec))
    }

    fn atan_inv_at(m: i64, prec: u32) -> DecFloat {
        let m = DecFloat::small_int(m, 0);
        let m2 = m.mul_p(&m, 0);
        let mut power = DecFloat::one().div_p(&m, prec);
        let mut sum = power.clone();
        let mut n = 1i64;
        loop {
            power = power.div_p(&m2, prec);
            let term = power.div_p(&DecFloat::small_int(2 * n + 1, 0), prec);
            sum = if n % 2 == 1 {
                sum.sub_p(&term, prec)
            } else {
                sum.add_p(&term, prec)
            };
            if Self::negligible(&term, &sum, prec) {
                break;
            }
            n += 1;
        }
        sum
    }

    fn pi_at(prec: u32) -> DecFloat {
        let wp = prec + GUARD;
        let a = Self::atan_inv_at(5, wp).mul_p(&DecFloat::small_int(16, 0), wp);
        let b = Self::atan_inv_at(239, wp).mul_p(&DecFloat::small_int(4, 0), wp);
        a.sub_p(&b, wp).finish(prec)
    }

    /// Reduces to `[-pi, pi]` and runs the sine (`odd = true`) or cosine series.
    fn trig_at(&self, prec: u32, odd: bool) -> DecFloat {
        if self.mant.is_zero() {
            return if odd {
                DecFloat::zero().finish(prec)
            } else {
                DecFloat::one().finish(prec)
            };
        }
        let wp = prec + GUARD + self.top().max(0) as u32;
        let two_pi = Self::pi_at(wp).mul_p(&DecFloat::small_int(2, 0), wp);
        let turns = self
            .div_p(&two_pi, wp)
            .to_rational()
            .expect("finite decimal")
            .round()
            .to_integer();
        let r = self.sub_p(&two_pi.mul_p(&DecFloat::from_bigint(turns), 0), wp);
        let r2 = r.mul_p(&r, wp);
        let (mut term, mut n) = if odd {
            (r.clone(), 1i64)
        } else {
            (DecFloat::one().finish(wp), 0i64)
        };
        let mut sum = term.clone();
        loop {
            let denom = DecFloat::small_int((n + 1) * (n + 2), 0);
            term = -term.mul_p(&r2, wp).div_p(&denom, wp);
            sum = sum.add_p(&term, wp);
            n += 2;
            if Self::negligible(&term, &sum, wp) || term.top() < -(wp as i64) - 6 {
                break;
            }
        }
        sum.finish(prec)
    }

    fn sqrt_at(&self, prec: u32) -> Option<DecFloat> {
        if self.mant.is_negative() {
            return None;
        }
        if self.mant.is_zero() {
            return Some(DecFloat::zero().finish(prec));
        }
        let (mut m, mut e) = (self.mant.clone(), self.exp);
        if e.rem_euclid(2) == 1 {
            m *= 10;
            e -= 1;
        }
        let wp = prec as i64 + 2;
        let s = (wp - ndigits(&m) / 2 + 1).max(0);
        let n = m * pow10(2 * s as u64);
        let r = n.sqrt();
        let (mant, exp) = if &r * &r == n {
            (r, (e - 2 * s) / 2)
        } else {
            (r * 10 + 1, (e - 2 * s) / 2 - 1)
        };
        Some(DecFloat { mant, exp, prec: 0 }.finish(prec))
    }

    fn working(&self, ctx: &NumContext) -> u32 {
        self.prec.max(ctx.precision())
    }
}

impl PartialEq for DecFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && self.exp == other.exp
    }
}

impl PartialOrd for DecFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (sa, sb) = (self.mant.signum(), other.mant.signum());
        if sa != sb {
            return Some(sa.cmp(&sb));
        }
        if sa.is_zero() {
            return Some(Ordering::Equal);
        }
        let by_top = self.top().cmp(&other.top());
        if by_top != Ordering::Equal {
            return Some(if sa.is_positive() {
                by_top
            } else {
                by_top.reverse()
            });
        }
        let diff = Self::aligned_sum(self, &-other.clone(), 0);
        Some(diff.mant.sign().cmp(&Sign::NoSign))
    }
}

impl Zero for DecFloat {
    fn zero() -> Self {
        DecFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

impl One for DecFloat {
    fn one() -> Self {
        DecFloat {
            mant: BigInt::one(),
            exp: 0,
            prec: 0,
        }
    }
}

impl Neg for DecFloat {
    type Output = DecFloat;

    fn neg(mut self) -> DecFloat {
        self.mant = -self.mant;
        self
    }
}

impl Add for DecFloat {
    type Output = DecFloat;

    fn add(self, rhs: DecFloat) -> DecFloat {
        let p = self.prec.max(rhs.prec);
        self.add_p(&rhs, p)
    }
}

impl Sub for DecFloat {
    type Output = DecFloat;

    fn sub(self, rhs: DecFloat) -> DecFloat {
        let p = self.prec.max(rhs.prec);
        self.sub_p(&rhs, p)
    }
}

impl Mul for DecFloat {
    type Output = DecFloat;

    fn mul(self, rhs: DecFloat) -> DecFloat {
        let p = self.prec.max(rhs.prec);
        self.mul_p(&rhs, p)
    }
}

impl Div for DecFloat {
    type Output = DecFloat;

    fn div(self, rhs: DecFloat) -> DecFloat {
        let p = self.prec.max(rhs.prec);
        self.div_p(&rhs, p)
    }
}

impl fmt::Display for DecFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mant.is_zero() {
            return f.write_str("0");
        }
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let digits = self.mant.magnitude().to_string();
        let top = self.top();
        if self.exp >= 0 && top < 40 {
            write!(f, "{sign}{digits}{}", "0".repeat(self.exp as usize))
        } else if self.exp < 0 && top >= -20 {
            let frac_len = (-self.exp) as usize;
            if digits.len() > frac_len {
                let (i, fr) = digits.split_at(digits.len() - frac_len);
                write!(f, "{sign}{i}.{fr}")
            } else {
                write!(f, "{sign}0.{}{digits}", "0".repeat(frac_len - digits.len()))
            }
        } else {
            let (head, tail) = digits.split_at(1);
            if tail.is_empty() {
                write!(f, "{sign}{head}e{top}")
            } else {
                write!(f, "{sign}{head}.{tail}e{top}")
            }
        }
    }
}

impl Scalar for DecFloat {
    const MODE: Mode = Mode::Float;

    fn working_digits(ctx: &NumContext) -> Option<u32> {
        Some(ctx.precision())
    }

    fn from_rational(q: &BigRational, ctx: &NumContext) -> Self {
        let p = ctx.precision();
        let n = DecFloat::from_bigint(q.numer().clone());
        if q.denom().is_one() {
            return n.finish(p);
        }
        n.div_p(&DecFloat::from_bigint(q.denom().clone()), p)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.mant.clone()) * pow10_rational(&BigInt::from(self.exp)))
    }

    fn exp(&self, ctx: &NumContext) -> Option<Self> {
        Some(self.exp_at(self.working(ctx)))
    }

    fn ln(&self, ctx: &NumContext) -> Option<Self> {
        self.ln_at(self.working(ctx))
    }

    fn sin(&self, ctx: &NumContext) -> Option<Self> {
        Some(self.trig_at(self.working(ctx), true))
    }

    fn cos(&self, ctx: &NumContext) -> Option<Self> {
        Some(self.trig_at(self.working(ctx), false))
    }

    fn sqrt(&self, ctx: &NumContext) -> Option<Self> {
        self.sqrt_at(self.working(ctx))
    }

    fn pi(ctx: &NumContext) -> Option<Self> {
        Some(Self::pi_at(ctx.precision()))
    }

    fn e(ctx: &NumContext) -> Option<Self> {
        Some(DecFloat::one().exp_at(ctx.precision()))
    }

    fn close_to(&self, other: &Self, ctx: &NumContext) -> bool {
        let tol = DecFloat::from_parts(BigInt::one(), -((ctx.precision() / 2) as i64));
        self.sub_p(other, 0).abs() <= tol
    }

    fn to_coeff_string(&self) -> String {
        self.to_string()
    }

    fn parse_coeff(s: &str, ctx: &NumContext) -> Option<Self> {
        parse_decimal(s.trim()).map(|q| Self::from_rational(&q, ctx))
    }
}

impl DecFloat {
    fn abs(&self) -> DecFloat {
        DecFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Nearest `f64`, for plotting and display heuristics.
    pub fn to_f64(&self) -> f64 {
        self.to_rational()
            .and_then(|q| q.to_f64())
            .unwrap_or(f64::NAN)
    }
}
