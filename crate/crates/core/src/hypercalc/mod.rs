//! An idealized calculator running Newton's method on a concave increasing
//! function with root 1, and checks of the invariants that keep every
//! iterate strictly below the root.

mod check;
mod newton;

pub use check::{check_trace, theorem_check, Boundary, CheckReport, StepCheck};
pub use newton::{calculator_display, newton_trace, Halt, NewtonTrace};
