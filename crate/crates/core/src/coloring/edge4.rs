use alloc::vec::Vec;

use super::{Color, Coloring, ColoringError};
use crate::adjacency::AdjacencyMode;
use crate::key::{Quadrant, Side, SquareKey};
use crate::tree::Quadtree;

const UNCREATED: u8 = u8::MAX;

/// One split of the four-color replay: the parent and its children's colors
/// in quadrant order (lower-left, lower-right, upper-left, upper-right).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub parent: SquareKey,
    pub children: [(SquareKey, Color); 4],
}

/// Four colors under edge adjacency for any tree.
pub fn color_edge_4(tree: &Quadtree) -> Result<Coloring, ColoringError> {
    color_edge_4_traced(tree, false, |_| {})
}

/// Rebuilds `tree` from the root by splitting the largest splittable square
/// each time, keeping a proper four-coloring throughout.
///
/// At every split the upper-right and lower-left children inherit the
/// parent's color; the other two children each see at most four neighbors,
/// two of them sharing the parent's color, and take the smallest free
/// color. With `check` set, every child is compared against all of its
/// neighbors after each split, which re-establishes properness of the
/// whole intermediate tree. `on_split` sees every step.
pub fn color_edge_4_traced(
    tree: &Quadtree,
    check: bool,
    mut on_split: impl FnMut(&SplitStep),
) -> Result<Coloring, ColoringError> {
    // Every node of the final tree, with the color it received on creation.
    let mut nodes: Vec<SquareKey> = Vec::with_capacity(tree.len() + tree.split_count());
    nodes.extend_from_slice(tree.internals());
    nodes.extend_from_slice(tree.leaves());
    nodes.sort_unstable();
    let mut color = alloc::vec![UNCREATED; nodes.len()];
    let index = |k: &SquareKey| nodes.binary_search(k).ok();
    color[index(&SquareKey::ROOT).expect("root is a node")] = 0;

    // Color of the current leaf covering `cell`: the deepest created node
    // at or above it. Nothing below the level being split exists yet, so
    // the covering leaf is never smaller than `cell`.
    let covering_color = |color: &[u8], cell: SquareKey| -> u8 {
        let mut cur = cell;
        loop {
            if let Some(i) = index(&cur) {
                if color[i] != UNCREATED {
                    return color[i];
                }
            }
            cur = cur.parent().expect("root is always created");
        }
    };

    // Internal nodes in canonical order are already largest first.
    for parent in tree.internals() {
        let pc = color[index(parent).expect("internal is a node")];
        let kids = parent.children();
        let slot = |q: Quadrant| index(&parent.child(q)).expect("child is a node");
        color[slot(Quadrant::UpperRight)] = pc;
        color[slot(Quadrant::LowerLeft)] = pc;

        for q in [Quadrant::LowerRight, Quadrant::UpperLeft] {
            let child = parent.child(q);
            let mut used = 0u8;
            for side in Side::ALL {
                if let Some(cell) = child.neighbor(side) {
                    used |= 1 << covering_color(&color, cell);
                }
            }
            let free = (!used).trailing_zeros();
            if free >= 4 {
                return Err(ColoringError::InternalInvariantBroken(child));
            }
            color[slot(q)] = free as u8;
        }

        if check {
            for child in kids {
                let c = color[index(&child).expect("child is a node")];
                for side in Side::ALL {
                    let Some(cell) = child.neighbor(side) else {
                        continue;
                    };
                    if covering_color(&color, cell) == c {
                        let mut other = cell;
                        while index(&other).is_none_or(|i| color[i] == UNCREATED) {
                            other = other.parent().expect("root is always created");
                        }
                        return Err(ColoringError::ImproperStep {
                            parent: *parent,
                            a: child,
                            b: other,
                        });
                    }
                }
            }
        }

        let step = SplitStep {
            parent: *parent,
            children: kids.map(|k| (k, color[index(&k).expect("child is a node")] as Color)),
        };
        on_split(&step);
    }

    let colors = tree
        .leaves()
        .iter()
        .map(|k| color[index(k).expect("leaf is a node")] as Color)
        .collect();
    Ok(Coloring::from_sorted(
        tree.leaves().to_vec(),
        colors,
        AdjacencyMode::Edge,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;

    fn k(level: u8, x: u32, y: u32) -> SquareKey {
        SquareKey { level, x, y }
    }

    #[test]
    fn root_is_one_color() {
        let c = color_edge_4(&Quadtree::root()).unwrap();
        assert_eq!(c.color_of(&SquareKey::ROOT), Some(0));
        assert_eq!(c.palette_size(), 1);
    }

    #[test]
    fn depth1_uses_two_colors() {
        let t = Quadtree::root().split_leaf(&SquareKey::ROOT).unwrap();
        let c = color_edge_4(&t).unwrap();
        assert_eq!(c.color_of(&k(1, 0, 0)), Some(0));
        assert_eq!(c.color_of(&k(1, 1, 1)), Some(0));
        assert_eq!(c.color_of(&k(1, 0, 1)), Some(1));
        assert_eq!(c.color_of(&k(1, 1, 0)), Some(1));
        assert_eq!(c.palette_size(), 2);
    }

    #[test]
    fn steps_follow_level_order() {
        let t = Quadtree::root()
            .split_leaf(&SquareKey::ROOT)
            .unwrap()
            .split_leaf(&k(1, 1, 1))
            .unwrap()
            .split_leaf(&k(1, 0, 0))
            .unwrap()
            .split_leaf(&k(2, 2, 2))
            .unwrap();
        let mut parents = Vec::new();
        let c = color_edge_4_traced(&t, true, |s| parents.push(s.parent)).unwrap();
        assert_eq!(parents, [k(0, 0, 0), k(1, 0, 0), k(1, 1, 1), k(2, 2, 2)]);
        assert!(verify(&t, &c, AdjacencyMode::Edge).unwrap().is_proper());
        assert!(c.palette_size() <= 4);
    }
}
