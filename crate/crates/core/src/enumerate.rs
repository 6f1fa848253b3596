//! Exhaustive enumeration of small quadtrees.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::key::SquareKey;
use crate::tree::{Quadtree, TreeError};

/// Every distinct quadtree reachable with at most `max_splits` splits,
/// each exactly once.
///
/// Trees come out grouped by split count (fewest first) and, within a
/// group, in lexicographic order of their sorted leaf sequences. A tree is
/// identified by its leaf set, so different split histories collapse.
/// When more than `cap` trees would be produced the iterator yields a
/// single `BudgetExceeded` error and stops.
pub struct TreeEnumerator {
    max_splits: usize,
    cap: Option<usize>,
    splits: usize,
    layer: Vec<Vec<SquareKey>>,
    pos: usize,
    yielded: usize,
    done: bool,
}

impl TreeEnumerator {
    pub fn new(max_splits: usize) -> TreeEnumerator {
        TreeEnumerator {
            max_splits,
            cap: None,
            splits: 0,
            layer: alloc::vec![alloc::vec![SquareKey::ROOT]],
            pos: 0,
            yielded: 0,
            done: false,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> TreeEnumerator {
        self.cap = Some(cap);
        self
    }

    /// Split count of the trees currently being produced.
    pub fn current_splits(&self) -> usize {
        self.splits
    }

    fn next_layer(&self) -> Vec<Vec<SquareKey>> {
        let mut next = BTreeSet::new();
        for leaves in &self.layer {
            for (i, leaf) in leaves.iter().enumerate() {
                if leaf.level >= crate::key::MAX_LEVEL {
                    continue;
                }
                let mut grown = Vec::with_capacity(leaves.len() + 3);
                grown.extend(leaves[..i].iter().copied());
                grown.extend(leaves[i + 1..].iter().copied());
                for child in leaf.children() {
                    let at = grown.binary_search(&child).unwrap_err();
                    grown.insert(at, child);
                }
                next.insert(grown);
            }
        }
        next.into_iter().collect()
    }
}

impl Iterator for TreeEnumerator {
    type Item = Result<Quadtree, TreeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        while self.pos >= self.layer.len() {
            if self.splits >= self.max_splits {
                self.done = true;
                return None;
            }
            self.layer = self.next_layer();
            self.splits += 1;
            self.pos = 0;
        }
        if let Some(cap) = self.cap {
            if self.yielded >= cap {
                self.done = true;
                return Some(Err(TreeError::BudgetExceeded(cap)));
            }
        }
        let leaves = self.layer[self.pos].clone();
        self.pos += 1;
        self.yielded += 1;
        Some(Ok(Quadtree::from_sorted_unchecked(leaves)))
    }
}

/// Shorthand for `TreeEnumerator::new(max_splits)`.
pub fn enumerate_trees(max_splits: usize) -> TreeEnumerator {
    TreeEnumerator::new(max_splits)
}
