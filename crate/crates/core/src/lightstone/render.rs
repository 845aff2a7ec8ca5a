use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::digits::{digit_at, Position};
use crate::error::{HyperError, Result};
use crate::hyperfield::{ExponentPair, HyperValue};
use crate::scalar::{decimal_length, Scalar};

pub const DEFAULT_WINDOW: u32 = 3;
const RUN: usize = 3;
const NONTERMINATING_PREFIX: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    /// Digits shown before the place `m*H` in each hyper block, and the
    /// minimum tail shown after the standard digits.
    pub window: u32,
    /// Collapse repeated digit runs.
    pub compress: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            window: DEFAULT_WINDOW,
            compress: true,
        }
    }
}

/// Digits around the place `m*H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub m: u32,
    /// Offset `j` of the first printed digit, relative to `m*H`.
    pub first_offset: i64,
    pub digits: Vec<u8>,
    pub hat: bool,
}

/// An extended decimal such as `.999…;…9̂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LightstoneString {
    pub negative: bool,
    pub integer: BigInt,
    pub prefix: Vec<u8>,
    /// The last prefix digit repeats up to the first block (or forever).
    pub continues: bool,
    pub blocks: Vec<Block>,
}

impl LightstoneString {
    fn write(&self, f: &mut impl fmt::Write, ascii: bool) -> fmt::Result {
        let (minus, ellipsis, hat) = if ascii {
            ("-", "...", "^")
        } else {
            ("\u{2212}", "\u{2026}", "\u{0302}")
        };
        let fraction = !self.prefix.is_empty() || self.continues || !self.blocks.is_empty();
        if self.negative {
            f.write_str(minus)?;
        }
        if !self.integer.is_zero() || !fraction {
            write!(f, "{}", self.integer)?;
        }
        if !fraction {
            return Ok(());
        }
        f.write_char('.')?;
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        if self.continues {
            f.write_str(ellipsis)?;
        }
        for b in &self.blocks {
            f.write_char(';')?;
            f.write_str(ellipsis)?;
            for (i, d) in b.digits.iter().enumerate() {
                write!(f, "{d}")?;
                if b.hat && b.first_offset + i as i64 == 0 {
                    f.write_str(hat)?;
                }
            }
        }
        Ok(())
    }

    /// Same text with `-`, `...` and `^` in place of the typographic marks.
    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, true).expect("writing to a string");
        s
    }
}

impl fmt::Display for LightstoneString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

pub fn render<C: Scalar>(x: &HyperValue<C>, window: u32) -> Result<LightstoneString> {
    render_with(
        x,
        RenderOptions {
            window,
            compress: true,
        },
    )
}

pub fn render_with<C: Scalar>(x: &HyperValue<C>, opts: RenderOptions) -> Result<LightstoneString> {
    if !x.is_finite() {
        return Err(HyperError::NotFinite);
    }
    let w = opts.window.max(1) as usize;
    let negative = x.signum() < 0;
    let y = x.abs();
    let floor = y.floor()?;
    let integer = floor
        .as_standard()
        .and_then(|c| c.to_rational())
        .map(|q| q.to_integer())
        .unwrap_or_default();
    let f = y.sub(&floor)?;
    let s = f
        .standard_part()?
        .to_rational()
        .ok_or_else(|| HyperError::InvalidArgument("coefficient is not a number".into()))?;
    let pure = f.is_finite() && f.terms().iter().all(|t| t.exp.is_unit());

    let (len, continues) = match decimal_length(&s) {
        Some(l) if pure => (l as usize, false),
        Some(l) => (l as usize + w.max(RUN), true),
        None => (NONTERMINATING_PREFIX.max(w), true),
    };
    let mut prefix = (1..=len as i64)
        .map(|j| digit_at(&f, Position { m: 0, j }))
        .collect::<Result<Vec<u8>>>()?;
    if opts.compress && continues {
        let last = *prefix.last().expect("continued prefix is nonempty");
        let run = prefix.iter().rev().take_while(|d| **d == last).count();
        if run > RUN {
            prefix.truncate(prefix.len() - (run - RUN));
        }
    }

    let max_block = f
        .terms()
        .iter()
        .filter(|t| t.exp.tau.is_integer() && *t.exp.tau.numer() > 0)
        .filter_map(|t| t.exp.tau.to_integer().to_u32())
        .max()
        .unwrap_or(0);
    let mut blocks = Vec::new();
    for m in 1..=max_block {
        blocks.push(render_block(&f, m, w, opts.compress)?);
    }

    Ok(LightstoneString {
        negative,
        integer,
        prefix,
        continues,
        blocks,
    })
}

fn render_block<C: Scalar>(f: &HyperValue<C>, m: u32, w: usize, compress: bool) -> Result<Block> {
    let c = f
        .coeff(&ExponentPair::integers(i64::from(m), 0))
        .to_rational()
        .unwrap_or_default();
    let end = decimal_length(&c).unwrap_or(0) as i64;
    // every integer digit of the coefficient must fall inside the block
    let width = num_traits::Signed::abs(&c).floor().to_integer().to_string().trim_start_matches('0').len();
    let start = -(w.max(width) as i64);
    let digits = (start..=end)
        .map(|j| digit_at(f, Position { m, j }))
        .collect::<Result<Vec<u8>>>()?;
    let mut first = start;
    if compress {
        let before = digit_at(f, Position { m, j: start - 1 })?;
        let run = digits.iter().take_while(|d| **d == before).count() as i64;
        if run > 0 {
            first = (start + run - 1).min(0);
        }
    }
    let shown = digits[(first - start) as usize..].to_vec();
    let hat = end > 0 || shown.len() == 1;
    Ok(Block {
        m,
        first_offset: first,
        digits: shown,
        hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::NumContext;
    use crate::hyperfield::nines_hyper;
    use num_rational::BigRational;

    type Q = BigRational;
    type H = HyperValue<Q>;

    fn ctx() -> NumContext {
        NumContext::exact()
    }

    fn show(x: &H) -> String {
        render(x, DEFAULT_WINDOW).unwrap().to_string()
    }

    #[test]
    fn nines_render_with_hat() {
        let x: H = nines_hyper(&ctx());
        assert_eq!(show(&x), ".999\u{2026};\u{2026}9\u{302}");
        assert_eq!(render(&x, 3).unwrap().to_ascii(), ".999...;...9^");
    }

    #[test]
    fn slope_increment() {
        let dx = H::tau(&ctx()).neg();
        assert_eq!(show(&dx), "\u{2212}.000\u{2026};\u{2026}01");
    }

    #[test]
    fn plain_decimals() {
        let q = |n: i64, d: i64| H::from_rational(&Q::new(n.into(), d.into()), &ctx());
        assert_eq!(show(&q(1, 4)), ".25");
        assert_eq!(show(&q(0, 1)), "0");
        assert_eq!(show(&q(7, 2)), "3.5");
        assert_eq!(show(&q(-2, 1)), "\u{2212}2");
        assert_eq!(show(&q(1, 3)), ".333\u{2026}");
    }

    #[test]
    fn hyper_coefficients_after_the_place() {
        let x = H::tau(&ctx()).scale(&Q::new(37.into(), 100.into()));
        let y = H::from_rational(&Q::new(1.into(), 4.into()), &ctx()).add(&x).unwrap();
        assert_eq!(render(&y, 3).unwrap().to_ascii(), ".25000...;...0^37");
        let z = H::from_rational(&Q::new(1.into(), 4.into()), &ctx()).sub(&x).unwrap();
        assert_eq!(render(&z, 3).unwrap().to_ascii(), ".24999...;...9^63");
    }

    #[test]
    fn uncompressed() {
        let x: H = nines_hyper(&ctx());
        let opts = RenderOptions {
            window: 3,
            compress: false,
        };
        assert_eq!(render_with(&x, opts).unwrap().to_ascii(), ".999...;...9999");
    }

    #[test]
    fn second_block() {
        let t2 = H::tau(&ctx()).powi(2).unwrap();
        assert_eq!(render(&t2, 3).unwrap().to_ascii(), ".000...;...0^;...01");
    }

    #[test]
    fn infinite_values_are_refused() {
        assert_eq!(render(&H::omega(&ctx()), 3), Err(HyperError::NotFinite));
    }
}
