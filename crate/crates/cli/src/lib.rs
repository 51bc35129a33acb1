//! Library surface of the `aperiodic` binary: the expression DSL, the
//! element-text parser and the raster renderer.

pub mod dsl;
pub mod elem;
pub mod render;
