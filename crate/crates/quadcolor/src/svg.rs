//! SVG 1.1 rendering of a quadtree, optionally colored.
//!
//! The unit square maps onto a 1024 x 1024 viewBox with y flipped, so the
//! lower-left child of the root is drawn bottom left. Color ids map onto
//! [`PALETTE`]; ids of 6 and above wrap around it.

use std::fmt::Write;

use quadcolor_core::{Coloring, ColoringError, Quadtree};

pub const CANVAS: u32 = 1024;

/// Fill for color ids 0 through 5.
pub const PALETTE: [&str; 6] = [
    "#e41a1c", // 0 red
    "#377eb8", // 1 blue
    "#4daf4a", // 2 green
    "#984ea3", // 3 purple
    "#ff7f00", // 4 orange
    "#ffff33", // 5 yellow
];

pub fn palette_color(c: u32) -> &'static str {
    PALETTE[c as usize % PALETTE.len()]
}

/// One `<rect>` per leaf in canonical order. Without a coloring the leaves
/// are outlines only.
pub fn render_svg(tree: &Quadtree, coloring: Option<&Coloring>) -> Result<String, ColoringError> {
    let mut out = String::with_capacity(256 + tree.len() * 96);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    for k in tree.leaves() {
        let fill = match coloring {
            Some(c) => palette_color(c.color_of(k).ok_or(ColoringError::MissingAssignment(*k))?),
            None => "none",
        };
        // Exact in f64: a power-of-two scale applied to integers below 2^29.
        let side = CANVAS as f64 / (1u64 << k.level) as f64;
        let flipped = ((1u64 << k.level) - 1 - k.y as u64) as f64;
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            k.x as f64 * side,
            flipped * side,
            side,
            side,
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
