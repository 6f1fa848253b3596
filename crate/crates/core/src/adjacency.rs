//! Exact adjacency between leaves and the adjacency graphs built from it.

use alloc::vec::Vec;
use core::fmt;

use crate::key::{Quadrant, Side, SquareKey};
use crate::tree::Quadtree;

/// Which contacts make two squares neighbors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdjacencyMode {
    /// Sharing a boundary segment of positive length.
    Edge,
    /// Sharing any boundary point.
    Corner,
}

impl AdjacencyMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            AdjacencyMode::Edge => "edge",
            AdjacencyMode::Corner => "corner",
        }
    }
}

impl fmt::Display for AdjacencyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for AdjacencyMode {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge" => Ok(AdjacencyMode::Edge),
            "corner" => Ok(AdjacencyMode::Corner),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjacencyError {
    /// The two squares' interiors intersect, so they are not leaves of one
    /// partition.
    Overlap(SquareKey, SquareKey),
    EmptySubset,
}

impl fmt::Display for AdjacencyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjacencyError::Overlap(a, b) => write!(f, "OverlapError: {a} and {b} overlap"),
            AdjacencyError::EmptySubset => f.write_str("EmptySubset: no alive vertices"),
        }
    }
}

impl core::error::Error for AdjacencyError {}

/// Adjacency of two leaf squares, decided in integer arithmetic on the
/// finer of the two grids.
pub fn are_adjacent(
    a: &SquareKey,
    b: &SquareKey,
    mode: AdjacencyMode,
) -> Result<bool, AdjacencyError> {
    let level = a.level.max(b.level);
    let [ax0, ax1, ay0, ay1] = a.extent_at(level);
    let [bx0, bx1, by0, by1] = b.extent_at(level);
    // Overlap lengths of the closed intervals; negative means a gap.
    let x_overlap = ax1.min(bx1) as i64 - ax0.max(bx0) as i64;
    let y_overlap = ay1.min(by1) as i64 - ay0.max(by0) as i64;
    if x_overlap > 0 && y_overlap > 0 {
        return Err(AdjacencyError::Overlap(*a, *b));
    }
    Ok(match mode {
        AdjacencyMode::Edge => {
            (x_overlap == 0 && y_overlap > 0) || (y_overlap == 0 && x_overlap > 0)
        }
        AdjacencyMode::Corner => x_overlap >= 0 && y_overlap >= 0,
    })
}

/// An undirected simple graph over a tree's leaves, stored as compressed
/// sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    vertices: Vec<SquareKey>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    mode: AdjacencyMode,
}

impl AdjacencyGraph {
    /// Builds a graph from an edge list. Self-loops are dropped and
    /// duplicate edges merged.
    ///
    /// # Panics
    ///
    /// If an edge endpoint is out of range.
    pub fn from_edges(
        vertices: Vec<SquareKey>,
        mode: AdjacencyMode,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> AdjacencyGraph {
        let n = vertices.len();
        let mut pairs: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = alloc::vec![0usize; n + 1];
        for &(u, v) in &pairs {
            assert!((v as usize) < n, "edge endpoint {v} out of range");
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = alloc::vec![0u32; 2 * pairs.len()];
        // Pairs are sorted by (min, max), so pushing in this order leaves
        // every list sorted except for the backward entries, fixed below.
        for &(u, v) in &pairs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        AdjacencyGraph {
            vertices,
            offsets,
            targets,
            mode,
        }
    }

    #[inline]
    pub fn mode(&self) -> AdjacencyMode {
        self.mode
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> &[SquareKey] {
        &self.vertices
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn index_of(&self, key: &SquareKey) -> Option<usize> {
        self.vertices.binary_search(key).ok()
    }
}

/// The adjacency graph of `tree`'s leaves under `mode`.
///
/// Each leaf looks across its sides (and, in corner mode, its corners) at
/// the same-size cell there. If that cell is a leaf or lies inside a
/// larger leaf, that leaf is a neighbor; if the cell is subdivided, the
/// smaller leaves inside it find this leaf from their side instead.
pub fn build_graph(tree: &Quadtree, mode: AdjacencyMode) -> AdjacencyGraph {
    let leaves = tree.leaves();
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(leaves.len() * 4);
    let index = |k: &SquareKey| tree.leaf_index(k).expect("covering leaf is a leaf") as u32;

    for (i, leaf) in leaves.iter().enumerate() {
        let i = i as u32;
        let mut consider = |cell: Option<SquareKey>| {
            let Some(cell) = cell else { return };
            let Some(other) = tree.covering_leaf(&cell) else {
                return;
            };
            let j = index(&other);
            // Same-size pairs are seen from both ends; keep one.
            if other.level < leaf.level || i < j {
                edges.push((i, j));
            }
        };
        for side in Side::ALL {
            consider(leaf.neighbor(side));
        }
        if mode == AdjacencyMode::Corner {
            for q in Quadrant::ALL {
                consider(leaf.diagonal(q));
            }
        }
    }
    AdjacencyGraph::from_edges(leaves.to_vec(), mode, edges)
}

/// A set of vertex indices, stored as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    words: Vec<u64>,
    n: usize,
}

impl VertexSubset {
    pub fn empty(n: usize) -> VertexSubset {
        VertexSubset {
            words: alloc::vec![0; n.div_ceil(64)],
            n,
        }
    }

    pub fn full(n: usize) -> VertexSubset {
        let mut s = VertexSubset::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// # Panics
    ///
    /// If an index is `>= n`.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> VertexSubset {
        let mut s = VertexSubset::empty(n);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Size of the universe the subset lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside subset universe {}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }
}

/// The subgraph induced by `q`, with vertices renumbered in their original
/// (canonical) order.
pub fn induced_subgraph(g: &AdjacencyGraph, q: &VertexSubset) -> AdjacencyGraph {
    let mut remap = alloc::vec![u32::MAX; g.len()];
    let mut vertices = Vec::with_capacity(q.len());
    for v in q.iter().filter(|&v| v < g.len()) {
        remap[v] = vertices.len() as u32;
        vertices.push(g.vertices()[v]);
    }
    let edges: Vec<(u32, u32)> = g
        .edges()
        .filter(|&(u, v)| remap[u] != u32::MAX && remap[v] != u32::MAX)
        .map(|(u, v)| (remap[u], remap[v]))
        .collect();
    AdjacencyGraph::from_edges(vertices, g.mode(), edges)
}

/// A vertex of minimum degree among `alive`, with degrees counted inside
/// `alive`. Ties go to the smallest index.
pub fn min_degree_vertex(
    g: &AdjacencyGraph,
    alive: &VertexSubset,
) -> Result<(usize, usize), AdjacencyError> {
    let mut best: Option<(usize, usize)> = None;
    for v in alive.iter().filter(|&v| v < g.len()) {
        let d = g
            .neighbors(v)
            .iter()
            .filter(|&&w| alive.contains(w as usize))
            .count();
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((v, d));
        }
    }
    best.ok_or(AdjacencyError::EmptySubset)
}
