//! Extended decimals: digits at standard places and at places `m*H + j`,
//! rendered with a semicolon before each hyper block.

mod digits;
mod parse;
mod render;

pub use digits::{digit_at, Position};
pub use parse::parse;
pub use render::{render, render_with, Block, LightstoneString, RenderOptions, DEFAULT_WINDOW};
