//! Quadtree coloring.
//!
//! Builds and validates quadtrees over the unit square, computes their edge
//! and corner adjacency graphs, and colors the leaves so that no two
//! adjacent squares match:
//!
//! - [`coloring::color_balanced_3`]: three colors, balanced trees, edge adjacency.
//! - [`coloring::color_edge_4`]: four colors, any tree, edge adjacency.
//! - [`coloring::color_corner_6`]: six colors, any tree, corner adjacency.
//!
//! The [`oracle`] module computes exact chromatic numbers for small trees
//! and searches for trees that need many colors.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod adjacency;
pub mod balance;
pub mod coloring;
pub mod enumerate;
pub mod key;
pub mod oracle;
pub mod random;
pub mod tree;

pub use adjacency::{
    are_adjacent, build_graph, induced_subgraph, min_degree_vertex, AdjacencyError, AdjacencyGraph,
    AdjacencyMode, VertexSubset,
};
pub use balance::{balance, is_balanced};
pub use coloring::{
    color_balanced_3, color_corner_6, color_edge_4, greedy_degenerate_color, pattern_color, verify,
    Color, Coloring, ColoringError, ViolationReport,
};
pub use enumerate::{enumerate_trees, TreeEnumerator};
pub use key::{Quadrant, Side, SquareKey, MAX_LEVEL};
pub use oracle::{OracleError, SearchBudget};
pub use random::{generate_random, grow_random, RandomCfg, SplitProb};
pub use tree::{Quadtree, TreeError};
