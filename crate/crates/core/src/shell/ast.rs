use std::fmt;

use crate::error::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

const UNARY: u8 = 3;
const ATOM: u8 = 5;

#[derive(Debug, Clone)]
pub enum ExprKind {
    /// Decimal literal as written, e.g. `3`, `0.25`, `.5`.
    Number(String),
    Ident(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    /// `lim(var -> inf, body)`
    Limit(String, Box<Expr>),
    /// `d/dvar(body)`
    Deriv(String, Box<Expr>),
}

/// An expression node with the byte range it was parsed from.
///
/// Equality ignores spans, so a reparsed printout compares equal to the
/// original tree.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Number(a), Number(b)) | (Ident(a), Ident(b)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Binary(o, a, b), Binary(p, c, d)) => o == p && a == c && b == d,
            (Call(f, a), Call(g, b)) => f == g && a == b,
            (Limit(v, a), Limit(w, b)) | (Deriv(v, a), Deriv(w, b)) => v == w && a == b,
            _ => false,
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Neg(_) => UNARY,
            ExprKind::Binary(op, ..) => op.precedence(),
            _ => ATOM,
        }
    }

    /// Identifiers that are not reserved names, in order of first use.
    /// Variables bound by `lim` and `d/dx` are excluded inside their body.
    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Number(_) => {}
            ExprKind::Ident(name) => {
                if !super::is_reserved(name) && !bound.contains(name) && !out.contains(name) {
                    out.push(name.clone());
                }
            }
            ExprKind::Neg(a) => a.collect_free(bound, out),
            ExprKind::Binary(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            ExprKind::Call(_, args) => args.iter().for_each(|a| a.collect_free(bound, out)),
            ExprKind::Limit(v, body) | ExprKind::Deriv(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match &self.kind {
            ExprKind::Number(s) | ExprKind::Ident(s) => f.write_str(s)?,
            ExprKind::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, UNARY)?;
            }
            ExprKind::Binary(BinOp::Pow, a, b) => {
                a.write_at(f, ATOM)?;
                f.write_str("^")?;
                b.write_at(f, UNARY)?;
            }
            ExprKind::Binary(op, a, b) => {
                let p = op.precedence();
                a.write_at(f, p)?;
                f.write_str(op.symbol())?;
                b.write_at(f, p + 1)?;
            }
            ExprKind::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.write_at(f, 0)?;
                }
                f.write_str(")")?;
            }
            ExprKind::Limit(v, body) => write!(f, "lim({v} -> inf, {body})")?,
            ExprKind::Deriv(v, body) => write!(f, "d/d{v}({body})")?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `expr` optionally followed by `at name = value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub expr: Expr,
    pub binding: Option<(String, Expr)>,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)?;
        if let Some((name, value)) = &self.binding {
            write!(f, " at {name} = {value}")?;
        }
        Ok(())
    }
}
