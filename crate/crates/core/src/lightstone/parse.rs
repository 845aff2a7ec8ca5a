use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::context::NumContext;
use crate::error::{HyperError, Result, Span};
use crate::hyperfield::{nines, nines_hyper, ExponentPair, HyperValue, Term};
use crate::scalar::{pow10_rational, Scalar};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn eat_any(&mut self, tokens: &[&str]) -> bool {
        tokens.iter().any(|t| self.eat(t))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn digit(&mut self) -> Option<u8> {
        let d = self.peek()?.to_digit(10)?;
        self.pos += 1;
        Some(d as u8)
    }

    fn digits(&mut self) -> Vec<u8> {
        std::iter::from_fn(|| self.digit()).collect()
    }

    fn here(&self) -> Span {
        let len = self.peek().map_or(0, char::len_utf8);
        self.pos..self.pos + len
    }

    fn error(&self, message: &str) -> HyperError {
        HyperError::syntax(self.here(), message)
    }
}

const ELLIPSIS: [&str; 2] = ["\u{2026}", "..."];
const HAT: [&str; 2] = ["\u{0302}", "^"];
const MINUS: [&str; 2] = ["-", "\u{2212}"];

fn place_value(digits: &[u8], first_place: i64) -> BigRational {
    digits
        .iter()
        .enumerate()
        .map(|(i, d)| {
            BigRational::from_integer(BigInt::from(*d))
                * pow10_rational(&BigInt::from(-(first_place + i as i64)))
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

fn from_digits(digits: &[u8]) -> BigInt {
    digits
        .iter()
        .fold(BigInt::zero(), |a, d| a * 10 + BigInt::from(*d))
}

/// Parses extended decimal notation (`.999…;…9̂`, `−.000…;…01`, `.25`,
/// `.333…`) and the forms `nines(n)` and `nines(H)`.
///
/// A trailing `…` repeats the last standard digit, either forever or up to
/// the hyper block after `;`. Inside the block the hatted digit sits at place
/// `H`; without a hat the last digit does.
pub fn parse<C: Scalar>(src: &str, ctx: &NumContext) -> Result<HyperValue<C>> {
    let mut cur = Cursor { src, pos: 0 };
    cur.skip_ws();
    if cur.eat("nines") {
        let v = parse_nines(&mut cur, ctx)?;
        finish(&mut cur)?;
        return Ok(v);
    }
    let negative = cur.eat_any(&MINUS);
    let integer = cur.digits();
    let has_point = cur.eat(".") && !cur.rest().starts_with("..");
    if !has_point {
        if integer.is_empty() {
            return Err(cur.error("expected digits or `.`"));
        }
        finish(&mut cur)?;
        let q = BigRational::from_integer(from_digits(&integer));
        return Ok(signed(HyperValue::from_rational(&q, ctx), negative));
    }
    let prefix = cur.digits();
    let continues = cur.eat_any(&ELLIPSIS);
    let mut blocks: Vec<(Span, Vec<u8>, Option<usize>)> = Vec::new();
    while cur.eat(";") {
        let start = cur.pos;
        if !cur.eat_any(&ELLIPSIS) {
            return Err(cur.error("expected `…` after `;`"));
        }
        let mut digits = Vec::new();
        let mut hat = None;
        while let Some(d) = cur.digit() {
            digits.push(d);
            if cur.eat_any(&HAT) {
                if hat.is_some() {
                    return Err(HyperError::syntax(cur.pos - 1..cur.pos, "more than one hat in a block"));
                }
                hat = Some(digits.len() - 1);
            }
        }
        if digits.is_empty() {
            return Err(cur.error("expected digits in hyper block"));
        }
        blocks.push((start..cur.pos, digits, hat));
    }
    finish(&mut cur)?;

    let mut standard = BigRational::from_integer(from_digits(&integer)) + place_value(&prefix, 1);
    let mut tau_coeff = BigRational::zero();
    let n = prefix.len() as i64;
    let run = prefix.last().copied();
    if continues {
        let Some(d) = run else {
            return Err(HyperError::syntax(0..src.len(), "`…` needs a digit to repeat"));
        };
        // d repeated from place n+1 on: d/9 * 10^-n
        standard += BigRational::new(BigInt::from(d), BigInt::from(9)) * pow10_rational(&BigInt::from(-n));
    }
    match blocks.as_slice() {
        [] => {}
        [(span, digits, hat)] => {
            let Some(d) = run.filter(|_| continues) else {
                return Err(HyperError::UnsupportedNotation(format!(
                    "digits between the standard prefix and the block at {}..{} are unspecified",
                    span.start, span.end
                )));
            };
            let first = -(hat.unwrap_or(digits.len() - 1) as i64);
            // the run stops at place H + first - 1
            tau_coeff -= BigRational::new(BigInt::from(d), BigInt::from(9))
                * pow10_rational(&BigInt::from(1 - first));
            tau_coeff += place_value(digits, first);
        }
        _ => {
            return Err(HyperError::UnsupportedNotation(
                "more than one hyper block".into(),
            ))
        }
    }
    let v = HyperValue::from_terms(
        [
            Term::new(C::from_rational(&standard, ctx), ExponentPair::ONE),
            Term::new(C::from_rational(&tau_coeff, ctx), ExponentPair::TAU),
        ],
        ctx,
    );
    Ok(signed(v, negative))
}

fn signed<C: Scalar>(v: HyperValue<C>, negative: bool) -> HyperValue<C> {
    if negative {
        v.neg()
    } else {
        v
    }
}

fn finish(cur: &mut Cursor<'_>) -> Result<()> {
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(())
}

fn parse_nines<C: Scalar>(cur: &mut Cursor<'_>, ctx: &NumContext) -> Result<HyperValue<C>> {
    cur.skip_ws();
    if !cur.eat("(") {
        return Err(cur.error("expected `(`"));
    }
    cur.skip_ws();
    let v = if cur.eat("H") {
        nines_hyper(ctx)
    } else {
        let start = cur.pos;
        let digits = cur.digits();
        let n: u32 = from_digits(&digits)
            .try_into()
            .ok()
            .filter(|_| !digits.is_empty())
            .ok_or_else(|| HyperError::syntax(start..cur.pos.max(start + 1), "expected a count or `H`"))?;
        nines(n, ctx)
    };
    cur.skip_ws();
    if !cur.eat(")") {
        return Err(cur.error("expected `)`"));
    }
    Ok(v)
}
