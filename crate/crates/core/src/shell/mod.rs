//! The expression language: lexer, parser with source spans, a printer
//! that round-trips, evaluation into hyperreals or one-variable functions,
//! and the microscope figures.

mod ast;
mod eval;
mod lexer;
mod microscope;
mod parser;

pub use ast::{BinOp, Expr, ExprKind, Statement};
pub use eval::{eval_statement, eval_value, parse_func, to_func, Bindings};
pub use microscope::{
    figure2, figure3, microscope, Abscissa, Figure, Format, LabeledPoint, MicroscopeScene,
};
pub use parser::{parse_expr, parse_statement};

/// Names with a fixed meaning that cannot be bound as variables.
pub const RESERVED: [&str; 18] = [
    "H", "eps", "pi", "e", "inf", "at", "lim", "st", "floor", "nines", "abs", "exp", "log", "ln",
    "sin", "cos", "sqrt", "d",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}
