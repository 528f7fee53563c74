//! Text formats and SVG output.

pub mod dg;
pub mod poly;
pub mod svg;
