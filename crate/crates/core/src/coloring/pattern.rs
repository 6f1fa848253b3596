use alloc::vec::Vec;

use super::{Color, Coloring, ColoringError};
use crate::adjacency::AdjacencyMode;
use crate::balance::is_balanced;
use crate::key::SquareKey;
use crate::tree::Quadtree;

/// Color of a square under the level-alternating three-color grid pattern:
/// `(x + 2y) mod 3` on even levels, `(2x + y) mod 3` on odd levels.
///
/// Same-level grid neighbors always differ, and every square has the color
/// of its lower-left child, so the color depends only on size and position.
#[inline]
pub fn pattern_color(key: &SquareKey) -> Color {
    let (x, y) = (key.x as u64, key.y as u64);
    let c = if key.level.is_multiple_of(2) {
        x + 2 * y
    } else {
        2 * x + y
    };
    (c % 3) as Color
}

/// Three colors for a balanced tree under edge adjacency.
pub fn color_balanced_3(tree: &Quadtree) -> Result<Coloring, ColoringError> {
    if !is_balanced(tree) {
        return Err(ColoringError::UnbalancedInput);
    }
    let colors: Vec<Color> = tree.leaves().iter().map(pattern_color).collect();
    Ok(Coloring::from_sorted(
        tree.leaves().to_vec(),
        colors,
        AdjacencyMode::Edge,
    ))
}
