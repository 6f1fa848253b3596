//! File formats, SVG rendering, benchmarks, and the `quadcolor` command
//! line, on top of [`quadcolor_core`].

pub mod bench;
pub mod cli;
pub mod formats;
pub mod svg;
