//! Colorings of quadtree leaves and the algorithms that produce them.

mod edge4;
mod greedy;
mod pattern;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::adjacency::{build_graph, AdjacencyGraph, AdjacencyMode};
use crate::key::SquareKey;
use crate::tree::Quadtree;

pub use edge4::{color_edge_4, color_edge_4_traced, SplitStep};
pub use greedy::{greedy_color_indices, greedy_degenerate_color};
pub use pattern::{color_balanced_3, pattern_color};

/// A color id. Small non-negative integers, starting at 0.
pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringError {
    /// The three-color pattern needs a 2:1 balanced tree.
    UnbalancedInput,
    /// The four-color replay found a child whose neighbors already use all
    /// four colors.
    InternalInvariantBroken(SquareKey),
    /// A checked replay step produced two adjacent squares of one color.
    ImproperStep {
        parent: SquareKey,
        a: SquareKey,
        b: SquareKey,
    },
    /// Greedy elimination found no alive vertex of degree `<= bound`; the
    /// smallest alive degree was `degree`, at `vertex`.
    DegeneracyExceeded {
        vertex: SquareKey,
        degree: usize,
    },
    MissingAssignment(SquareKey),
    DuplicateAssignment(SquareKey),
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::UnbalancedInput => {
                f.write_str("UnbalancedInput: three-coloring requires a balanced quadtree")
            }
            ColoringError::InternalInvariantBroken(k) => write!(
                f,
                "InternalInvariantBroken: child {k} sees four distinct neighbor colors"
            ),
            ColoringError::ImproperStep { parent, a, b } => write!(
                f,
                "InternalInvariantBroken: splitting {parent} left {a} and {b} the same color"
            ),
            ColoringError::DegeneracyExceeded { vertex, degree } => write!(
                f,
                "DegeneracyExceeded: minimum remaining degree is {degree} (at {vertex})"
            ),
            ColoringError::MissingAssignment(k) => {
                write!(f, "MissingAssignment: leaf {k} has no color")
            }
            ColoringError::DuplicateAssignment(k) => {
                write!(f, "DuplicateAssignment: leaf {k} is colored twice")
            }
        }
    }
}

impl core::error::Error for ColoringError {}

/// A total assignment of colors to a set of leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    keys: Vec<SquareKey>,
    colors: Vec<Color>,
    mode: AdjacencyMode,
    palette_size: u32,
}

impl Coloring {
    /// Builds a coloring from `(key, color)` pairs in any order.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (SquareKey, Color)>,
        mode: AdjacencyMode,
    ) -> Result<Coloring, ColoringError> {
        let mut pairs: Vec<(SquareKey, Color)> = pairs.into_iter().collect();
        pairs.sort_unstable_by_key(|p| p.0);
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ColoringError::DuplicateAssignment(w[0].0));
        }
        let (keys, colors) = pairs.into_iter().unzip();
        Ok(Coloring::from_sorted(keys, colors, mode))
    }

    /// `keys` must be sorted and distinct, aligned with `colors`.
    pub(crate) fn from_sorted(
        keys: Vec<SquareKey>,
        colors: Vec<Color>,
        mode: AdjacencyMode,
    ) -> Coloring {
        debug_assert_eq!(keys.len(), colors.len());
        let palette_size = colors.iter().max().map_or(0, |&m| m + 1);
        Coloring {
            keys,
            colors,
            mode,
            palette_size,
        }
    }

    /// Colors aligned with `g`'s vertices.
    pub fn for_graph(g: &AdjacencyGraph, colors: Vec<Color>) -> Coloring {
        Coloring::from_sorted(g.vertices().to_vec(), colors, g.mode())
    }

    pub fn mode(&self) -> AdjacencyMode {
        self.mode
    }

    /// `1 + max color`, or 0 when empty.
    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn color_of(&self, key: &SquareKey) -> Option<Color> {
        self.keys.binary_search(key).ok().map(|i| self.colors[i])
    }

    /// `(key, color)` pairs in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (SquareKey, Color)> + '_ {
        self.keys.iter().copied().zip(self.colors.iter().copied())
    }

    pub fn keys(&self) -> &[SquareKey] {
        &self.keys
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Same assignment, relabeled as a coloring for `mode`.
    pub fn with_mode(mut self, mode: AdjacencyMode) -> Coloring {
        self.mode = mode;
        self
    }

    /// Replaces one key's color; returns the previous color.
    pub fn recolor(&mut self, key: &SquareKey, color: Color) -> Option<Color> {
        let i = self.keys.binary_search(key).ok()?;
        let old = core::mem::replace(&mut self.colors[i], color);
        self.palette_size = self.colors.iter().max().map_or(0, |&m| m + 1);
        Some(old)
    }
}

/// Adjacent same-color pairs found by [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<(SquareKey, SquareKey)>,
    pub colors_used: usize,
}

impl ViolationReport {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every adjacent pair of `tree`'s leaves under `mode`.
pub fn verify(
    tree: &Quadtree,
    coloring: &Coloring,
    mode: AdjacencyMode,
) -> Result<ViolationReport, ColoringError> {
    let g = build_graph(tree, mode);
    let colors = tree
        .leaves()
        .iter()
        .map(|k| {
            coloring
                .color_of(k)
                .ok_or(ColoringError::MissingAssignment(*k))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(verify_graph(&g, &colors))
}

/// [`verify`] for a coloring given per vertex index.
///
/// # Panics
///
/// If `colors` is shorter than the graph.
pub fn verify_graph(g: &AdjacencyGraph, colors: &[Color]) -> ViolationReport {
    let keys = g.vertices();
    let violations = g
        .edges()
        .filter(|&(u, v)| colors[u] == colors[v])
        .map(|(u, v)| (keys[u], keys[v]))
        .collect();
    let colors_used = colors[..g.len()].iter().collect::<BTreeSet<_>>().len();
    ViolationReport {
        violations,
        colors_used,
    }
}

/// Six colors under corner adjacency: degree-bucket greedy on the corner
/// graph with a removal-degree bound of five.
pub fn color_corner_6(tree: &Quadtree) -> Result<Coloring, ColoringError> {
    let g = build_graph(tree, AdjacencyMode::Corner);
    greedy_degenerate_color(&g, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(level: u8, x: u32, y: u32) -> SquareKey {
        SquareKey { level, x, y }
    }

    fn depth1() -> Quadtree {
        Quadtree::root().split_leaf(&SquareKey::ROOT).unwrap()
    }

    fn t3() -> Quadtree {
        depth1().split_leaf(&k(1, 1, 1)).unwrap()
    }

    fn all_zero(t: &Quadtree, mode: AdjacencyMode) -> Coloring {
        Coloring::from_pairs(t.leaves().iter().map(|&k| (k, 0)), mode).unwrap()
    }

    #[test]
    fn verify_all_zero() {
        let r = verify(
            &depth1(),
            &all_zero(&depth1(), AdjacencyMode::Edge),
            AdjacencyMode::Edge,
        )
        .unwrap();
        assert_eq!(r.violations.len(), 4);
        assert_eq!(r.colors_used, 1);
        let root = Quadtree::root();
        let r = verify(
            &root,
            &all_zero(&root, AdjacencyMode::Edge),
            AdjacencyMode::Edge,
        )
        .unwrap();
        assert!(r.is_proper());
    }

    #[test]
    fn verify_reports_missing() {
        let c = Coloring::from_pairs([(k(1, 0, 0), 0)], AdjacencyMode::Edge).unwrap();
        assert_eq!(
            verify(&depth1(), &c, AdjacencyMode::Edge),
            Err(ColoringError::MissingAssignment(k(1, 0, 1)))
        );
    }

    #[test]
    fn duplicate_pairs_rejected() {
        let err = Coloring::from_pairs([(k(1, 0, 0), 0), (k(1, 0, 0), 1)], AdjacencyMode::Edge);
        assert_eq!(err, Err(ColoringError::DuplicateAssignment(k(1, 0, 0))));
    }

    #[test]
    fn corner6_small_trees() {
        let c = color_corner_6(&depth1()).unwrap();
        assert_eq!(c.colors_used(), 4);
        let c = color_corner_6(&t3()).unwrap();
        assert!(c.palette_size() <= 6);
        assert!(verify(&t3(), &c, AdjacencyMode::Corner)
            .unwrap()
            .is_proper());
    }

    #[test]
    fn recolor_updates_palette() {
        let mut c = all_zero(&depth1(), AdjacencyMode::Edge);
        assert_eq!(c.palette_size(), 1);
        assert_eq!(c.recolor(&k(1, 1, 1), 4), Some(0));
        assert_eq!(c.palette_size(), 5);
        assert_eq!(c.recolor(&k(3, 1, 1), 4), None);
    }
}
