//! The 2:1 balance condition: edge-adjacent leaves differ by at most one level.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::key::{Side, SquareKey, MAX_LEVEL};
use crate::tree::{Quadtree, TreeError};

/// A leaf at level `l` is out of balance across `side` exactly when the
/// same-size cell on that side is split and one of its two children
/// touching the shared side is split again, i.e. a leaf at level `l + 2`
/// or deeper touches it.
fn violates(leaf: &SquareKey, is_internal: impl Fn(&SquareKey) -> bool) -> bool {
    Side::ALL.into_iter().any(|side| {
        leaf.neighbor(side).is_some_and(|cell| {
            is_internal(&cell)
                && side
                    .opposite()
                    .children()
                    .into_iter()
                    .any(|q| is_internal(&cell.child(q)))
        })
    })
}

/// True iff every edge-adjacent leaf pair differs by at most one level.
pub fn is_balanced(tree: &Quadtree) -> bool {
    tree.leaves()
        .iter()
        .all(|leaf| !violates(leaf, |k| tree.is_internal(k)))
}

/// Leaves that are out of balance, in canonical order.
pub fn unbalanced_leaves(tree: &Quadtree) -> Vec<SquareKey> {
    tree.leaves()
        .iter()
        .filter(|leaf| violates(leaf, |k| tree.is_internal(k)))
        .copied()
        .collect()
}

/// The smallest balanced refinement of `tree`.
///
/// Works through a queue of candidate leaves, splitting every leaf that
/// sees a neighbor two or more levels deeper. Leaves are never merged.
pub fn balance(tree: &Quadtree) -> Result<Quadtree, TreeError> {
    let mut leaves: BTreeSet<SquareKey> = tree.leaves().iter().copied().collect();
    let mut internals: BTreeSet<SquareKey> = tree.internals().iter().copied().collect();
    let mut queue: Vec<SquareKey> = unbalanced_leaves(tree);
    if queue.is_empty() {
        return Ok(tree.clone());
    }

    while let Some(leaf) = queue.pop() {
        if !leaves.contains(&leaf) || !violates(&leaf, |k| internals.contains(k)) {
            continue;
        }
        if leaf.level >= MAX_LEVEL {
            return Err(TreeError::DepthLimit(MAX_LEVEL));
        }
        leaves.remove(&leaf);
        internals.insert(leaf);
        for child in leaf.children() {
            leaves.insert(child);
            queue.push(child);
        }
        // A coarser neighbor now faces children two levels below it.
        for side in Side::ALL {
            let Some(mut cell) = leaf.neighbor(side) else {
                continue;
            };
            while !leaves.contains(&cell) {
                if internals.contains(&cell) {
                    break;
                }
                match cell.parent() {
                    Some(p) => cell = p,
                    None => break,
                }
            }
            if leaves.contains(&cell) && cell.level < leaf.level {
                queue.push(cell);
            }
        }
    }

    Ok(Quadtree::from_parts(
        leaves.into_iter().collect(),
        internals.into_iter().collect(),
    ))
}
