use std::fmt;

use crate::error::{HyperError, Result};

/// Coefficient arithmetic used by a [`NumContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact rationals; nothing is ever rounded.
    Exact,
    /// Decimal floating point carrying a fixed number of significant digits.
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = HyperError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(HyperError::InvalidContext(format!("unknown mode `{other}`"))),
        }
    }
}

/// Settings shared by every value taking part in one computation.
///
/// Values built under different contexts refuse to combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumContext {
    terms: usize,
    mode: Mode,
    precision: u32,
}

impl NumContext {
    pub const DEFAULT_TERMS: usize = 16;
    pub const DEFAULT_PRECISION: u32 = 50;

    pub fn new(terms: usize, mode: Mode, precision: u32) -> Result<Self> {
        if terms < 2 {
            return Err(HyperError::InvalidContext(format!(
                "at least 2 retained terms are required, got {terms}"
            )));
        }
        if precision < 10 {
            return Err(HyperError::InvalidContext(format!(
                "precision must be at least 10 digits, got {precision}"
            )));
        }
        Ok(NumContext {
            terms,
            mode,
            precision,
        })
    }

    pub fn exact() -> Self {
        NumContext {
            terms: Self::DEFAULT_TERMS,
            mode: Mode::Exact,
            precision: Self::DEFAULT_PRECISION,
        }
    }

    pub fn float(precision: u32) -> Result<Self> {
        Self::new(Self::DEFAULT_TERMS, Mode::Float, precision)
    }

    pub fn with_terms(self, terms: usize) -> Result<Self> {
        Self::new(terms, self.mode, self.precision)
    }

    /// Maximum number of retained series terms (K).
    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Working precision in significant decimal digits (P). Unused in exact mode.
    pub fn precision(&self) -> u32 {
        self.precision
    }
}

impl Default for NumContext {
    fn default() -> Self {
        Self::exact()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_settings() {
        assert!(NumContext::new(1, Mode::Exact, 50).is_err());
        assert!(NumContext::new(2, Mode::Float, 9).is_err());
        assert!(NumContext::new(2, Mode::Float, 10).is_ok());
    }

    #[test]
    fn defaults() {
        let ctx = NumContext::default();
        assert_eq!(ctx.terms(), 16);
        assert_eq!(ctx.precision(), 50);
        assert_eq!(ctx.mode(), Mode::Exact);
    }
}
