//! Quadtrees as validated partitions of the unit square.

use alloc::vec::Vec;
use core::fmt;

use crate::key::{SquareKey, MAX_LEVEL};

/// Errors raised while building or editing a [`Quadtree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    /// A key lies outside its level's grid, or deeper than [`MAX_LEVEL`].
    KeyRange(SquareKey),
    /// Two keys cover a common region (equal keys, or ancestor and descendant).
    Overlap(SquareKey, SquareKey),
    /// No key covers this square.
    Uncovered(SquareKey),
    /// The key is not a leaf of the tree.
    NotALeaf(SquareKey),
    /// Refinement would go deeper than the allowed depth.
    DepthLimit(u8),
    /// An enumeration produced more trees than the caller's cap.
    BudgetExceeded(usize),
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::KeyRange(k) => write!(f, "KeyRangeError: key {k} is outside its grid"),
            TreeError::Overlap(a, b) => write!(f, "PartitionError: {a} overlaps {b}"),
            TreeError::Uncovered(k) => write!(f, "PartitionError: square {k} is not covered"),
            TreeError::NotALeaf(k) => write!(f, "NotALeaf: {k} is not a leaf"),
            TreeError::DepthLimit(d) => write!(f, "DepthLimit: refinement exceeds depth {d}"),
            TreeError::BudgetExceeded(cap) => {
                write!(f, "BudgetExceeded: more than {cap} trees")
            }
        }
    }
}

impl core::error::Error for TreeError {}

/// A set of leaf squares that exactly partitions the unit square.
///
/// Leaves and internal nodes are both kept sorted in canonical
/// `(level, x, y)` order, so membership is a binary search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadtree {
    leaves: Vec<SquareKey>,
    internals: Vec<SquareKey>,
    depth: u8,
}

impl Default for Quadtree {
    fn default() -> Self {
        Quadtree::root()
    }
}

impl Quadtree {
    /// The single-square tree.
    pub fn root() -> Quadtree {
        Quadtree {
            leaves: alloc::vec![SquareKey::ROOT],
            internals: Vec::new(),
            depth: 0,
        }
    }

    /// Validates `keys` as an exact partition of the unit square.
    pub fn from_leaves<I>(keys: I) -> Result<Quadtree, TreeError>
    where
        I: IntoIterator<Item = SquareKey>,
    {
        let mut leaves: Vec<SquareKey> = keys.into_iter().collect();
        if let Some(bad) = leaves.iter().find(|k| !k.in_range()) {
            return Err(TreeError::KeyRange(*bad));
        }
        if leaves.is_empty() {
            return Err(TreeError::Uncovered(SquareKey::ROOT));
        }
        leaves.sort_unstable();
        if let Some(w) = leaves.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::Overlap(w[0], w[1]));
        }
        let internals = internal_nodes(&leaves);

        // Antichain: no leaf may also be an ancestor of another leaf.
        if let Some(leaf) = leaves.iter().find(|k| internals.binary_search(k).is_ok()) {
            let below = leaves
                .iter()
                .find(|other| leaf.is_strict_ancestor_of(other))
                .copied()
                .unwrap_or(*leaf);
            return Err(TreeError::Overlap(*leaf, below));
        }
        // Every internal node must have all four children present.
        for node in &internals {
            for child in node.children() {
                if leaves.binary_search(&child).is_err() && internals.binary_search(&child).is_err()
                {
                    return Err(TreeError::Uncovered(child));
                }
            }
        }

        let tree = Quadtree::from_parts(leaves, internals);
        if !tree.area_is_unit() {
            return Err(TreeError::Uncovered(SquareKey::ROOT));
        }
        Ok(tree)
    }

    /// Builds from already-sorted, already-valid leaves.
    pub(crate) fn from_sorted_unchecked(leaves: Vec<SquareKey>) -> Quadtree {
        debug_assert!(leaves.windows(2).all(|w| w[0] < w[1]));
        let internals = internal_nodes(&leaves);
        Quadtree::from_parts(leaves, internals)
    }

    pub(crate) fn from_parts(leaves: Vec<SquareKey>, internals: Vec<SquareKey>) -> Quadtree {
        let depth = leaves.last().map_or(0, |k| k.level);
        Quadtree {
            leaves,
            internals,
            depth,
        }
    }

    /// Leaves in canonical order.
    #[inline]
    pub fn leaves(&self) -> &[SquareKey] {
        &self.leaves
    }

    /// Split (non-leaf) nodes in canonical order; this is also the
    /// largest-first split schedule that rebuilds the tree from the root.
    #[inline]
    pub fn internals(&self) -> &[SquareKey] {
        &self.internals
    }

    #[inline]
    pub fn depth(&self) -> u8 {
        self.depth
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    /// Always false: a valid tree has at least one leaf.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Number of splits needed to build this tree from the root.
    #[inline]
    pub fn split_count(&self) -> usize {
        self.internals.len()
    }

    #[inline]
    pub fn is_leaf(&self, key: &SquareKey) -> bool {
        self.leaves.binary_search(key).is_ok()
    }

    #[inline]
    pub fn is_internal(&self, key: &SquareKey) -> bool {
        self.internals.binary_search(key).is_ok()
    }

    /// Index of `key` in canonical leaf order.
    #[inline]
    pub fn leaf_index(&self, key: &SquareKey) -> Option<usize> {
        self.leaves.binary_search(key).ok()
    }

    /// The leaf equal to `cell` or containing it. `None` when `cell` has
    /// been subdivided (or is out of range).
    pub fn covering_leaf(&self, cell: &SquareKey) -> Option<SquareKey> {
        if !cell.in_range() {
            return None;
        }
        let mut cur = *cell;
        loop {
            if self.is_leaf(&cur) {
                return Some(cur);
            }
            if self.is_internal(&cur) {
                return None;
            }
            cur = cur.parent()?;
        }
    }

    /// Replaces leaf `key` with its four children.
    pub fn split_leaf(&self, key: &SquareKey) -> Result<Quadtree, TreeError> {
        let pos = self
            .leaves
            .binary_search(key)
            .map_err(|_| TreeError::NotALeaf(*key))?;
        if key.level >= MAX_LEVEL {
            return Err(TreeError::DepthLimit(MAX_LEVEL));
        }
        let mut leaves = self.leaves.clone();
        leaves.remove(pos);
        for child in key.children() {
            let at = leaves.binary_search(&child).unwrap_err();
            leaves.insert(at, child);
        }
        let mut internals = self.internals.clone();
        let at = internals.binary_search(key).unwrap_err();
        internals.insert(at, *key);
        Ok(Quadtree::from_parts(leaves, internals))
    }

    /// Exact area identity: the leaves' areas `4^-level` sum to one.
    pub fn area_is_unit(&self) -> bool {
        let depth = self.depth as u32;
        let total: u128 = self
            .leaves
            .iter()
            .map(|k| 1u128 << (2 * (depth - k.level as u32)))
            .sum();
        total == 1u128 << (2 * depth)
    }
}

/// Strict ancestors of the given leaves, sorted and deduplicated.
/// Expects `leaves` sorted canonically (grouped by level).
fn internal_nodes(leaves: &[SquareKey]) -> Vec<SquareKey> {
    let depth = match leaves.last() {
        Some(k) => k.level,
        None => return Vec::new(),
    };
    let mut per_level: Vec<Vec<SquareKey>> = alloc::vec![Vec::new(); depth as usize];
    // Nodes present at the level currently being folded upward.
    let mut frontier: Vec<SquareKey> = Vec::new();
    for level in (1..=depth).rev() {
        let lo = leaves.partition_point(|k| k.level < level);
        let hi = leaves.partition_point(|k| k.level <= level);
        let mut parents: Vec<SquareKey> = leaves[lo..hi]
            .iter()
            .chain(frontier.iter())
            .filter_map(SquareKey::parent)
            .collect();
        parents.sort_unstable();
        parents.dedup();
        per_level[level as usize - 1] = parents.clone();
        frontier = parents;
    }
    per_level.into_iter().flatten().collect()
}
