use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Exponents of the monomial `tau^tau * omega^omega`, where `omega` is the
/// infinite hyperinteger H and `tau = 10^(-omega)`.
///
/// `Ord` is the magnitude order of the monomial: a smaller `tau` power is
/// larger, ties are broken by the larger `omega` power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentPair {
    pub tau: Rational64,
    pub omega: Rational64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Infinitesimal,
    Appreciable,
    Infinite,
}

impl ExponentPair {
    pub const ONE: ExponentPair = ExponentPair {
        tau: Rational64::new_raw(0, 1),
        omega: Rational64::new_raw(0, 1),
    };
    pub const OMEGA: ExponentPair = ExponentPair {
        tau: Rational64::new_raw(0, 1),
        omega: Rational64::new_raw(1, 1),
    };
    pub const TAU: ExponentPair = ExponentPair {
        tau: Rational64::new_raw(1, 1),
        omega: Rational64::new_raw(0, 1),
    };

    pub fn new(tau: Rational64, omega: Rational64) -> Self {
        ExponentPair { tau, omega }
    }

    pub fn integers(tau: i64, omega: i64) -> Self {
        ExponentPair {
            tau: Rational64::from_integer(tau),
            omega: Rational64::from_integer(omega),
        }
    }

    pub fn magnitude(&self) -> Magnitude {
        match self.cmp(&Self::ONE) {
            Ordering::Greater => Magnitude::Infinite,
            Ordering::Equal => Magnitude::Appreciable,
            Ordering::Less => Magnitude::Infinitesimal,
        }
    }

    pub fn is_infinite(&self) -> bool {
        *self > Self::ONE
    }

    pub fn is_infinitesimal(&self) -> bool {
        *self < Self::ONE
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::ONE
    }

    /// Exponents of the `k`-th power of the monomial.
    pub fn scale(&self, k: i64) -> Self {
        ExponentPair {
            tau: self.tau * k,
            omega: self.omega * k,
        }
    }

    /// `true` for products of non-negative powers of `omega` and `10^omega`,
    /// the monomials that are hyperintegers when multiplied by an integer.
    pub fn is_hyperinteger_monomial(&self) -> bool {
        self.tau.is_integer()
            && self.omega.is_integer()
            && !self.tau.is_positive()
            && !self.omega.is_negative()
    }
}

impl Ord for ExponentPair {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .tau
            .cmp(&self.tau)
            .then_with(|| self.omega.cmp(&other.omega))
    }
}

impl PartialOrd for ExponentPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExponentPair {
    type Output = ExponentPair;

    fn add(self, rhs: ExponentPair) -> ExponentPair {
        ExponentPair {
            tau: self.tau + rhs.tau,
            omega: self.omega + rhs.omega,
        }
    }
}

impl Sub for ExponentPair {
    type Output = ExponentPair;

    fn sub(self, rhs: ExponentPair) -> ExponentPair {
        self + (-rhs)
    }
}

impl Neg for ExponentPair {
    type Output = ExponentPair;

    fn neg(self) -> ExponentPair {
        ExponentPair {
            tau: -self.tau,
            omega: -self.omega,
        }
    }
}

fn power(f: &mut fmt::Formatter<'_>, base: &str, e: Rational64) -> fmt::Result {
    if e.is_one() {
        f.write_str(base)
    } else if e.is_integer() && e.is_positive() {
        write!(f, "{base}^{e}")
    } else {
        write!(f, "{base}^({e})")
    }
}

/// Prints in the expression language: `H^2*eps`, `eps^(-1)`, `1`.
impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        if !self.omega.is_zero() {
            power(f, "H", self.omega)?;
            if !self.tau.is_zero() {
                f.write_str("*")?;
            }
        }
        if !self.tau.is_zero() {
            power(f, "eps", self.tau)?;
        }
        Ok(())
    }
}
