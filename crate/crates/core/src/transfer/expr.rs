use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Elementary functions with a natural extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl Elementary {
    pub const ALL: [Elementary; 6] = [
        Elementary::Exp,
        Elementary::Log,
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Sqrt,
        Elementary::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Exp => "exp",
            Elementary::Log => "log",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Sqrt => "sqrt",
            Elementary::Abs => "abs",
        }
    }

    /// Accepts `ln` as an alias of `log`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "ln" => Some(Elementary::Log),
            _ => Self::ALL.into_iter().find(|e| e.name() == name),
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedConst {
    Pi,
    E,
}

/// A real function of one variable, built from the constructors below.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FuncExpr {
    Var,
    Const(BigRational),
    Named(NamedConst),
    Add(Box<FuncExpr>, Box<FuncExpr>),
    Sub(Box<FuncExpr>, Box<FuncExpr>),
    Mul(Box<FuncExpr>, Box<FuncExpr>),
    Div(Box<FuncExpr>, Box<FuncExpr>),
    Neg(Box<FuncExpr>),
    Pow(Box<FuncExpr>, i64),
    /// `10^e`; over hyperreals `e` must come out as `k*H + j`.
    Pow10(Box<FuncExpr>),
    Apply(Elementary, Box<FuncExpr>),
}

impl FuncExpr {
    pub fn var() -> Self {
        FuncExpr::Var
    }

    pub fn constant(q: BigRational) -> Self {
        FuncExpr::Const(q)
    }

    pub fn int(v: i64) -> Self {
        FuncExpr::Const(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        FuncExpr::Const(BigRational::new(n.into(), d.into()))
    }

    pub fn pow(self, n: i64) -> Self {
        FuncExpr::Pow(Box::new(self), n)
    }

    pub fn pow10(exponent: FuncExpr) -> Self {
        FuncExpr::Pow10(Box::new(exponent))
    }

    pub fn apply(g: Elementary, arg: FuncExpr) -> Self {
        FuncExpr::Apply(g, Box::new(arg))
    }

    pub fn exp(self) -> Self {
        Self::apply(Elementary::Exp, self)
    }

    pub fn log(self) -> Self {
        Self::apply(Elementary::Log, self)
    }

    pub fn sin(self) -> Self {
        Self::apply(Elementary::Sin, self)
    }

    pub fn cos(self) -> Self {
        Self::apply(Elementary::Cos, self)
    }

    pub fn sqrt(self) -> Self {
        Self::apply(Elementary::Sqrt, self)
    }

    pub fn abs(self) -> Self {
        Self::apply(Elementary::Abs, self)
    }

    /// `self` with every occurrence of the variable replaced by `inner`.
    pub fn compose(&self, inner: &FuncExpr) -> FuncExpr {
        use FuncExpr::*;
        let c = |e: &FuncExpr| Box::new(e.compose(inner));
        match self {
            Var => inner.clone(),
            Const(_) | Named(_) => self.clone(),
            Add(a, b) => Add(c(a), c(b)),
            Sub(a, b) => Sub(c(a), c(b)),
            Mul(a, b) => Mul(c(a), c(b)),
            Div(a, b) => Div(c(a), c(b)),
            Neg(a) => Neg(c(a)),
            Pow(a, n) => Pow(c(a), *n),
            Pow10(a) => Pow10(c(a)),
            Apply(g, a) => Apply(*g, c(a)),
        }
    }

    pub fn is_constant(&self) -> bool {
        use FuncExpr::*;
        match self {
            Var => false,
            Const(_) | Named(_) => true,
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.is_constant() && b.is_constant(),
            Neg(a) | Pow(a, _) | Pow10(a) | Apply(_, a) => a.is_constant(),
        }
    }

    fn as_const(&self) -> Option<&BigRational> {
        match self {
            FuncExpr::Const(q) => Some(q),
            _ => None,
        }
    }

    /// Symbolic derivative with light constant folding.
    pub fn symbolic_derivative(&self) -> FuncExpr {
        use FuncExpr::*;
        if self.is_constant() {
            return Self::int(0);
        }
        match self {
            Var => Self::int(1),
            Const(_) | Named(_) => Self::int(0),
            Add(a, b) => a.symbolic_derivative() + b.symbolic_derivative(),
            Sub(a, b) => a.symbolic_derivative() - b.symbolic_derivative(),
            Mul(a, b) => {
                a.symbolic_derivative() * (**b).clone() + (**a).clone() * b.symbolic_derivative()
            }
            Div(a, b) => {
                let num = a.symbolic_derivative() * (**b).clone()
                    - (**a).clone() * b.symbolic_derivative();
                num / (**b).clone().pow(2)
            }
            Neg(a) => -a.symbolic_derivative(),
            Pow(a, n) => Self::int(*n) * (**a).clone().pow(n - 1) * a.symbolic_derivative(),
            Pow10(a) => Self::int(10).log() * self.clone() * a.symbolic_derivative(),
            Apply(g, a) => {
                let u = (**a).clone();
                let outer = match g {
                    Elementary::Exp => u.exp(),
                    Elementary::Log => Self::int(1) / u,
                    Elementary::Sin => u.cos(),
                    Elementary::Cos => -u.sin(),
                    Elementary::Sqrt => Self::int(1) / (Self::int(2) * u.sqrt()),
                    Elementary::Abs => u.clone() / u.abs(),
                };
                outer * a.symbolic_derivative()
            }
        }
    }

    fn precedence(&self) -> u8 {
        use FuncExpr::*;
        match self {
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Const(q) if !q.is_integer() => 2,
            Neg(_) => 3,
            Const(q) if q.is_negative() => 3,
            Pow(..) | Pow10(_) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_bare(f)?;
            return f.write_str(")");
        }
        self.fmt_bare(f)
    }

    fn fmt_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FuncExpr::*;
        match self {
            Var => f.write_str("x"),
            Const(q) => write!(f, "{q}"),
            Named(NamedConst::Pi) => f.write_str("pi"),
            Named(NamedConst::E) => f.write_str("e"),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
                let (op, lp) = match self {
                    Add(..) => (" + ", 1),
                    Sub(..) => (" - ", 1),
                    Mul(..) => ("*", 2),
                    _ => ("/", 2),
                };
                a.fmt_at(f, lp)?;
                f.write_str(op)?;
                b.fmt_at(f, lp + 1)
            }
            Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 4)
            }
            Pow(a, n) => {
                a.fmt_at(f, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Pow10(a) => {
                f.write_str("10^")?;
                a.fmt_at(f, 5)
            }
            Apply(g, a) => {
                write!(f, "{g}(")?;
                a.fmt_bare(f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_bare(f)
    }
}

impl ops::Add for FuncExpr {
    type Output = FuncExpr;

    fn add(self, rhs: FuncExpr) -> FuncExpr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => FuncExpr::Const(a + b),
            (Some(a), _) if a.is_zero() => rhs,
            (_, Some(b)) if b.is_zero() => self,
            _ => FuncExpr::Add(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Sub for FuncExpr {
    type Output = FuncExpr;

    fn sub(self, rhs: FuncExpr) -> FuncExpr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => FuncExpr::Const(a - b),
            (_, Some(b)) if b.is_zero() => self,
            (Some(a), _) if a.is_zero() => -rhs,
            _ => FuncExpr::Sub(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Mul for FuncExpr {
    type Output = FuncExpr;

    fn mul(self, rhs: FuncExpr) -> FuncExpr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => FuncExpr::Const(a * b),
            (Some(a), _) | (_, Some(a)) if a.is_zero() => FuncExpr::int(0),
            (Some(a), _) if a.is_one() => rhs,
            (_, Some(b)) if b.is_one() => self,
            _ => FuncExpr::Mul(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Div for FuncExpr {
    type Output = FuncExpr;

    fn div(self, rhs: FuncExpr) -> FuncExpr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) if !b.is_zero() => FuncExpr::Const(a / b),
            (_, Some(b)) if b.is_one() => self,
            _ => FuncExpr::Div(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Neg for FuncExpr {
    type Output = FuncExpr;

    fn neg(self) -> FuncExpr {
        match self {
            FuncExpr::Const(q) => FuncExpr::Const(-q),
            FuncExpr::Neg(a) => *a,
            e => FuncExpr::Neg(Box::new(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> FuncExpr {
        FuncExpr::var()
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let f = (x().pow(2) - FuncExpr::int(1)) / (x() - FuncExpr::int(1));
        assert_eq!(f.to_string(), "(x^2 - 1)/(x - 1)");
        let g = FuncExpr::ratio(1, 2) * x();
        assert_eq!(g.to_string(), "1/2*x");
        let h = x() / FuncExpr::ratio(1, 2);
        assert_eq!(h.to_string(), "x/(1/2)");
        assert_eq!((-x()).pow(2).to_string(), "(-x)^2");
        assert_eq!((-(x().pow(2))).to_string(), "-x^2");
        assert_eq!(FuncExpr::pow10(-x()).to_string(), "10^(-x)");
        assert_eq!(x().pow(-1).to_string(), "x^(-1)");
        assert_eq!((x() - (x() - x())).to_string(), "x - (x - x)");
    }

    #[test]
    fn folding_in_builders() {
        assert_eq!(FuncExpr::int(2) * FuncExpr::int(3), FuncExpr::int(6));
        assert_eq!(FuncExpr::int(0) * x(), FuncExpr::int(0));
        assert_eq!(FuncExpr::int(1) * x(), x());
        assert_eq!(-(-x()), x());
    }

    #[test]
    fn derivative_of_polynomial() {
        let f = x().pow(3);
        assert_eq!(f.symbolic_derivative().to_string(), "3*x^2");
        assert_eq!(FuncExpr::int(7).symbolic_derivative(), FuncExpr::int(0));
    }

    #[test]
    fn compose_substitutes() {
        let f = x().pow(2) + FuncExpr::int(1);
        let g = x().sin();
        assert_eq!(f.compose(&g).to_string(), "sin(x)^2 + 1");
        assert_eq!(g.compose(&f).to_string(), "sin(x^2 + 1)");
    }

    #[test]
    fn names() {
        assert_eq!(Elementary::from_name("ln"), Some(Elementary::Log));
        assert_eq!(Elementary::from_name("sqrt"), Some(Elementary::Sqrt));
        assert_eq!(Elementary::from_name("tan"), None);
    }
}
