use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::ast::{BinOp, Expr, ExprKind, Statement};
use super::parser::parse_expr;
use crate::context::NumContext;
use crate::error::{HyperError, Result};
use crate::hyperfield::{nines, HyperValue};
use crate::scalar::{parse_rational, Scalar};
use crate::transfer::{derivative, eval_star, limit_seq, Elementary, FuncExpr, NamedConst, ProbeSet, SeqLimit};

/// Variable bindings in scope during evaluation.
pub type Bindings<C> = Vec<(String, HyperValue<C>)>;

fn literal(text: &str, e: &Expr) -> Result<BigRational> {
    parse_rational(text).ok_or_else(|| HyperError::syntax(e.span.clone(), format!("bad number `{text}`")))
}

fn unknown(name: &str, e: &Expr) -> HyperError {
    HyperError::UnknownIdentifier {
        name: name.to_string(),
        span: e.span.start..e.span.start + name.len(),
    }
}

fn one_arg<'a>(name: &str, args: &'a [Expr], e: &Expr) -> Result<&'a Expr> {
    match args {
        [a] => Ok(a),
        _ => Err(HyperError::syntax(
            e.span.clone(),
            format!("`{name}` takes one argument, got {}", args.len()),
        )),
    }
}

/// Evaluates a value expression. `H` is the infinite hyperinteger and `eps`
/// is `10^(-H)`; other names must be bound.
pub fn eval_value<C: Scalar>(e: &Expr, bindings: &Bindings<C>, ctx: &NumContext) -> Result<HyperValue<C>> {
    let go = |a: &Expr| eval_value(a, bindings, ctx);
    match &e.kind {
        ExprKind::Number(s) => Ok(HyperValue::from_rational(&literal(s, e)?, ctx)),
        ExprKind::Ident(name) => match name.as_str() {
            "H" => Ok(HyperValue::omega(ctx)),
            "eps" => Ok(HyperValue::tau(ctx)),
            "pi" => eval_star(&FuncExpr::Named(NamedConst::Pi), &HyperValue::zero(ctx)),
            "e" => eval_star(&FuncExpr::Named(NamedConst::E), &HyperValue::zero(ctx)),
            _ => bindings
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| unknown(name, e)),
        },
        ExprKind::Neg(a) => Ok(go(a)?.neg()),
        ExprKind::Binary(op, a, b) => {
            let (x, y) = (go(a)?, go(b)?);
            match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(&y),
                BinOp::Div => x.div(&y),
                BinOp::Pow => power(&x, &y, e),
            }
        }
        ExprKind::Call(name, args) => {
            let arg = one_arg(name, args, e)?;
            let v = go(arg)?;
            match name.as_str() {
                "st" => Ok(HyperValue::from_scalar(v.standard_part()?, ctx)),
                "floor" => v.floor(),
                "nines" => nines_of(&v),
                _ => match Elementary::from_name(name) {
                    Some(g) => eval_star(&FuncExpr::apply(g, FuncExpr::var()), &v),
                    None => Err(unknown(name, e)),
                },
            }
        }
        ExprKind::Limit(var, body) => {
            let u = to_func(body, var)?;
            match limit_seq::<C>(&u, ctx) {
                SeqLimit::Converges(l) => Ok(HyperValue::from_scalar(l, ctx)),
                other => Err(HyperError::NoLimit(format!("{e}: {other}"))),
            }
        }
        ExprKind::Deriv(var, body) => {
            let f = to_func(body, var)?;
            let at = bindings
                .iter()
                .rev()
                .find(|(n, _)| n == var)
                .map(|(_, v)| v)
                .ok_or_else(|| {
                    HyperError::InvalidArgument(format!("d/d{var} needs a point: add `at {var} = ...`"))
                })?;
            let x0 = at.as_standard().ok_or_else(|| {
                HyperError::InvalidArgument(format!("derivative point {at} is not a standard number"))
            })?;
            Ok(HyperValue::from_scalar(derivative(&f, &x0, &ProbeSet::standard(ctx))?, ctx))
        }
    }
}

fn power<C: Scalar>(base: &HyperValue<C>, exponent: &HyperValue<C>, e: &Expr) -> Result<HyperValue<C>> {
    if let Some(n) = exponent.as_standard().filter(Scalar::is_integer) {
        let n = n.to_rational().and_then(|q| q.to_integer().to_i64());
        if let Some(n) = n {
            return base.powi(n);
        }
    }
    let ten = HyperValue::from_int(10, base.ctx());
    if *base == ten {
        return eval_star(&FuncExpr::pow10(FuncExpr::var()), exponent);
    }
    Err(HyperError::UnsupportedExponential(format!(
        "{e}: only integer powers and powers of 10 are supported"
    )))
}

/// `1 - 10^(-n)`, summed digit by digit when `n` is a standard count.
fn nines_of<C: Scalar>(n: &HyperValue<C>) -> Result<HyperValue<C>> {
    let ctx = *n.ctx();
    if let Some(s) = n.as_standard() {
        let count = s
            .to_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_u32())
            .ok_or_else(|| HyperError::InvalidArgument(format!("nines needs a count, got {s}")))?;
        return Ok(nines(count, &ctx));
    }
    let tail = eval_star(&FuncExpr::pow10(-FuncExpr::var()), n)?;
    HyperValue::one(&ctx).sub(&tail)
}

/// Evaluates `expr` with the statement's `at` binding in scope.
pub fn eval_statement<C: Scalar>(s: &Statement, ctx: &NumContext) -> Result<HyperValue<C>> {
    let mut bindings = Bindings::new();
    if let Some((name, value)) = &s.binding {
        let v = eval_value(value, &bindings, ctx)?;
        bindings.push((name.clone(), v));
    }
    eval_value(&s.expr, &bindings, ctx)
}

/// Converts an expression in one variable into a function term.
///
/// `10^(expr)` becomes an exponential, `nines(n)` becomes `1 - 10^(-n)`,
/// and any other non-integer power is rejected.
pub fn to_func(e: &Expr, var: &str) -> Result<FuncExpr> {
    let go = |a: &Expr| to_func(a, var);
    match &e.kind {
        ExprKind::Number(s) => Ok(FuncExpr::constant(literal(s, e)?)),
        ExprKind::Ident(name) if name == var => Ok(FuncExpr::var()),
        ExprKind::Ident(name) => match name.as_str() {
            "pi" => Ok(FuncExpr::Named(NamedConst::Pi)),
            "e" => Ok(FuncExpr::Named(NamedConst::E)),
            "H" | "eps" => Err(HyperError::UnsupportedNotation(format!(
                "`{name}` cannot appear in a function of {var}"
            ))),
            _ => Err(unknown(name, e)),
        },
        ExprKind::Neg(a) => Ok(-go(a)?),
        ExprKind::Binary(op, a, b) => {
            let (x, y) = (go(a)?, go(b)?);
            Ok(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
                BinOp::Pow => func_power(x, y, e)?,
            })
        }
        ExprKind::Call(name, args) => {
            let arg = go(one_arg(name, args, e)?)?;
            match name.as_str() {
                "nines" => Ok(FuncExpr::int(1) - FuncExpr::pow10(-arg)),
                "st" | "floor" => Err(HyperError::UnsupportedNotation(format!(
                    "`{name}` cannot appear in a function of {var}"
                ))),
                _ => Elementary::from_name(name)
                    .map(|g| FuncExpr::apply(g, arg))
                    .ok_or_else(|| unknown(name, e)),
            }
        }
        ExprKind::Limit(..) | ExprKind::Deriv(..) => Err(HyperError::UnsupportedNotation(format!(
            "`{e}` cannot appear in a function of {var}"
        ))),
    }
}

fn constant_value(f: &FuncExpr) -> Option<BigRational> {
    if !f.is_constant() {
        return None;
    }
    let ctx = NumContext::exact();
    eval_star::<BigRational>(f, &HyperValue::zero(&ctx)).ok()?.as_standard()
}

fn func_power(base: FuncExpr, exponent: FuncExpr, e: &Expr) -> Result<FuncExpr> {
    let integer = constant_value(&exponent)
        .filter(BigRational::is_integer)
        .and_then(|q| q.to_integer().to_i64());
    if let Some(n) = integer {
        return Ok(base.pow(n));
    }
    if constant_value(&base) == Some(BigRational::from_integer(10.into())) {
        return Ok(FuncExpr::pow10(exponent));
    }
    Err(HyperError::UnsupportedExponential(format!(
        "{e}: only integer powers and powers of 10 are supported"
    )))
}

/// Parses a one-variable function. The variable is the single free name in
/// `src`, or `default_var` when there is none.
pub fn parse_func(src: &str, default_var: &str) -> Result<(FuncExpr, String)> {
    let e = parse_expr(src)?;
    let free = e.free_variables();
    let var = match free.as_slice() {
        [] => default_var.to_string(),
        [v] => v.clone(),
        [_, extra, ..] => {
            let at = src.find(extra.as_str()).unwrap_or(0);
            return Err(HyperError::UnknownIdentifier {
                name: extra.clone(),
                span: at..at + extra.len(),
            });
        }
    };
    Ok((to_func(&e, &var)?, var))
}
