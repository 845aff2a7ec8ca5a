use super::ast::{BinOp, Expr, ExprKind, Statement};
use super::lexer::{tokenize, Tok, Token};
use crate::error::{HyperError, Result, Span};

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> Span {
        self.tokens
            .get(self.pos)
            .map_or(self.end..self.end, |t| t.span.clone())
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<Span> {
        if self.peek() == Some(tok) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> HyperError {
        match self.tokens.get(self.pos) {
            Some(_) => HyperError::syntax(self.here(), format!("expected {what}")),
            None => HyperError::syntax(self.here(), format!("expected {what}, found end of input")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span)> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                Ok((name, self.bump().span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            let start = self.bump().span.start;
            let inner = self.unary()?;
            let span = start..inner.span.end;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            let exponent = self.unary()?;
            return Ok(binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Number(s)) => {
                let s = s.clone();
                let span = self.bump().span;
                Ok(Expr::new(ExprKind::Number(s), span))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(_)) => self.identifier(),
            _ => Err(self.unexpected("a number, name or `(`")),
        }
    }

    fn identifier(&mut self) -> Result<Expr> {
        if let Some(d) = self.derivative()? {
            return Ok(d);
        }
        let (name, span) = self.ident("a name")?;
        if self.peek() != Some(&Tok::LParen) {
            return Ok(Expr::new(ExprKind::Ident(name), span));
        }
        self.pos += 1;
        if name == "lim" {
            let (var, _) = self.ident("the limit variable")?;
            self.expect(&Tok::Arrow, "`->`")?;
            match self.ident("`inf`")? {
                (target, _) if target == "inf" => {}
                (_, s) => return Err(HyperError::syntax(s, "limits are taken as the variable tends to `inf`")),
            }
            self.expect(&Tok::Comma, "`,`")?;
            let body = self.expr()?;
            let close = self.expect(&Tok::RParen, "`)`")?;
            return Ok(Expr::new(ExprKind::Limit(var, Box::new(body)), span.start..close.end));
        }
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            args.push(self.expr()?);
            while self.eat(&Tok::Comma) {
                args.push(self.expr()?);
            }
        }
        let close = self.expect(&Tok::RParen, "`,` or `)`")?;
        Ok(Expr::new(ExprKind::Call(name, args), span.start..close.end))
    }

    /// `d / dVAR ( body )`
    fn derivative(&mut self) -> Result<Option<Expr>> {
        let is_deriv = matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3)),
            (Some(Tok::Ident(d)), Some(Tok::Slash), Some(Tok::Ident(dv)), Some(Tok::LParen))
                if d == "d" && dv.len() > 1 && dv.starts_with('d')
        );
        if !is_deriv {
            return Ok(None);
        }
        let start = self.bump().span.start;
        self.pos += 1;
        let (dv, _) = self.ident("`dx`")?;
        self.pos += 1;
        let body = self.expr()?;
        let close = self.expect(&Tok::RParen, "`)`")?;
        Ok(Some(Expr::new(
            ExprKind::Deriv(dv[1..].to_string(), Box::new(body)),
            start..close.end,
        )))
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.tokens.len() {
            return Err(HyperError::syntax(self.here(), "unexpected trailing input"));
        }
        Ok(())
    }
}

fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
    let span = lhs.span.start..rhs.span.end;
    Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span)
}

fn parser(src: &str) -> Result<Parser> {
    Ok(Parser {
        tokens: tokenize(src)?,
        pos: 0,
        end: src.len(),
    })
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = parser(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `expr` or `expr at name = value`.
pub fn parse_statement(src: &str) -> Result<Statement> {
    let mut p = parser(src)?;
    let expr = p.expr()?;
    let mut binding = None;
    if matches!(p.peek(), Some(Tok::Ident(kw)) if kw == "at") {
        p.pos += 1;
        let (name, span) = p.ident("a variable name after `at`")?;
        if super::is_reserved(&name) {
            return Err(HyperError::syntax(span, format!("`{name}` is reserved and cannot be bound")));
        }
        p.expect(&Tok::Eq, "`=`")?;
        binding = Some((name, p.expr()?));
    }
    p.finish()?;
    Ok(Statement { expr, binding })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(s: &str) -> String {
        parse_expr(s).unwrap().to_string()
    }

    #[test]
    fn precedence() {
        assert_eq!(show("1+2*3"), "1 + 2*3");
        assert_eq!(show("(1+2)*3"), "(1 + 2)*3");
        assert_eq!(show("-x^2"), "-x^2");
        assert_eq!(show("(-x)^2"), "(-x)^2");
        assert_eq!(show("2^3^2"), "2^3^2");
        assert_eq!(show("(2^3)^2"), "(2^3)^2");
        assert_eq!(show("10^(-n)"), "10^-n");
        assert_eq!(show("1 - (2 - 3)"), "1 - (2 - 3)");
        assert_eq!(show("a/(b*c)"), "a/(b*c)");
        assert_eq!(show("--x"), "--x");
    }

    #[test]
    fn pow_binds_tighter_than_minus() {
        let e = parse_expr("-x^2").unwrap();
        assert!(matches!(e.kind, ExprKind::Neg(ref inner) if matches!(inner.kind, ExprKind::Binary(BinOp::Pow, ..))));
        let e = parse_expr("2^-3^2").unwrap();
        let ExprKind::Binary(BinOp::Pow, _, rhs) = e.kind else { panic!() };
        assert!(matches!(rhs.kind, ExprKind::Neg(_)));
    }

    #[test]
    fn special_forms() {
        assert_eq!(show("lim(n->inf, 1/n)"), "lim(n -> inf, 1/n)");
        assert_eq!(show("d/dx(x^2)"), "d/dx(x^2)");
        assert_eq!(show("st(nines(H))"), "st(nines(H))");
        let s = parse_statement("st((x^2 - 1)/(x - 1)) at x = 1 - eps").unwrap();
        assert_eq!(s.to_string(), "st((x^2 - 1)/(x - 1)) at x = 1 - eps");
        assert_eq!(s.binding.as_ref().unwrap().0, "x");
    }

    #[test]
    fn spans() {
        let e = parse_expr("1 + sin(x)").unwrap();
        let ExprKind::Binary(_, _, rhs) = e.kind else { panic!() };
        assert_eq!(rhs.span, 4..10);
        assert_eq!(e.span, 0..10);
    }

    #[test]
    fn round_trip() {
        for s in [
            "1 - eps",
            "(x^2 - 1)/(x - 1)",
            "x^-1 + -x*-2",
            "sqrt(abs(x - 3))/2^(1/2)",
            "nines(2*H + 1)",
            "lim(n -> inf, (1 + 1/n)^2)",
            "d/dt(sin(t)^2)",
            "-(1 + x)^3",
            "0.25 - .5",
        ] {
            let a = parse_expr(s).unwrap();
            let b = parse_expr(&a.to_string()).unwrap();
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn errors() {
        let err = |s: &str| parse_expr(s).unwrap_err();
        assert!(matches!(err("1 +"), HyperError::SyntaxError { span, .. } if span == (3..3)));
        assert!(matches!(err("(1"), HyperError::SyntaxError { .. }));
        assert!(matches!(err("1 2"), HyperError::SyntaxError { span, .. } if span == (2..3)));
        assert!(matches!(err("lim(n -> 0, n)"), HyperError::SyntaxError { span, .. } if span == (9..10)));
        assert!(parse_statement("x at H = 1").is_err());
    }
}
