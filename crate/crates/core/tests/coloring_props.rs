mod common;

use common::*;
use proptest::prelude::*;
use quadcolor_core::coloring::color_edge_4_traced;
use quadcolor_core::{
    color_balanced_3, color_corner_6, color_edge_4, enumerate_trees, generate_random, grow_random,
    is_balanced, pattern_color, verify, AdjacencyMode, Coloring, Quadtree, SquareKey,
};

fn proper(t: &Quadtree, c: &Coloring, mode: AdjacencyMode) -> bool {
    verify(t, c, mode).unwrap().is_proper()
}

#[test]
fn pattern_on_t3_matches_formula_and_is_proper() {
    let c = color_balanced_3(&t3()).unwrap();
    let ne = [k(2, 2, 2), k(2, 3, 2), k(2, 2, 3), k(2, 3, 3)].map(|key| c.color_of(&key).unwrap());
    assert_eq!(ne, [0, 1, 2, 0]);
    assert!(proper(&t3(), &c, AdjacencyMode::Edge));
}

#[test]
fn three_colors_on_every_small_balanced_tree() {
    let mut checked = 0;
    for t in enumerate_trees(6) {
        let t = t.unwrap();
        if !is_balanced(&t) {
            assert!(color_balanced_3(&t).is_err());
            continue;
        }
        let c = color_balanced_3(&t).unwrap();
        assert!(c.palette_size() <= 3);
        assert!(proper(&t, &c, AdjacencyMode::Edge), "{:?}", t.leaves());
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn full_grid_4x4() {
    let t = generate_random(&cfg(0, 2, 1, 1, false));
    let c = color_balanced_3(&t).unwrap();
    let r = verify(&t, &c, AdjacencyMode::Edge).unwrap();
    assert!(r.is_proper());
    assert_eq!(r.colors_used, 3);
}

/// Replays the split schedule with `split_leaf` and checks the whole
/// intermediate tree with the verifier after every step.
fn replay_is_proper_throughout(t: &Quadtree) {
    let mut current = Quadtree::root();
    let mut colors: Vec<(SquareKey, u32)> = vec![(SquareKey::ROOT, 0)];
    let mut steps = 0;
    let c = color_edge_4_traced(t, true, |step| {
        current = current.split_leaf(&step.parent).unwrap();
        colors.retain(|(key, _)| *key != step.parent);
        colors.extend(step.children);
        let snapshot = Coloring::from_pairs(colors.iter().copied(), AdjacencyMode::Edge).unwrap();
        let r = verify(&current, &snapshot, AdjacencyMode::Edge).unwrap();
        assert!(
            r.is_proper(),
            "after splitting {}: {:?}",
            step.parent,
            r.violations
        );
        assert!(snapshot.palette_size() <= 4);
        steps += 1;
    })
    .unwrap();
    assert_eq!(steps, t.split_count());
    assert_eq!(&current, t);
    for (key, color) in c.iter() {
        assert_eq!(
            colors.iter().find(|(k, _)| *k == key).map(|p| p.1),
            Some(color)
        );
    }
}

#[test]
fn four_colors_on_every_small_tree_with_replay() {
    for t in enumerate_trees(6) {
        let t = t.unwrap();
        let c = color_edge_4(&t).unwrap();
        assert!(c.palette_size() <= 4);
        assert!(proper(&t, &c, AdjacencyMode::Edge));
    }
    for t in enumerate_trees(5) {
        replay_is_proper_throughout(&t.unwrap());
    }
}

#[test]
fn six_colors_on_every_small_tree() {
    for t in enumerate_trees(6) {
        let t = t.unwrap();
        let c = color_corner_6(&t).unwrap();
        assert!(c.palette_size() <= 6);
        assert!(proper(&t, &c, AdjacencyMode::Corner));
    }
}

#[test]
fn corner6_on_a_thousand_leaf_unbalanced_tree() {
    let t = grow_random(11, 1000, 20);
    assert!(!is_balanced(&t));
    let c = color_corner_6(&t).unwrap();
    assert!(c.palette_size() <= 6);
    assert!(proper(&t, &c, AdjacencyMode::Corner));
}

#[test]
fn algorithms_are_deterministic() {
    let t = grow_random(5, 3000, 20);
    assert_eq!(color_edge_4(&t), color_edge_4(&t));
    assert_eq!(color_corner_6(&t), color_corner_6(&t));
    let b = quadcolor_core::balance(&t).unwrap();
    assert_eq!(color_balanced_3(&b), color_balanced_3(&b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn balanced_random_trees_three_color(seed in any::<u64>(), depth in 1u8..=8, num in 1u64..4) {
        let t = generate_random(&cfg(seed, depth, num, 4, true));
        let c = color_balanced_3(&t).unwrap();
        prop_assert!(c.palette_size() <= 3);
        prop_assert!(proper(&t, &c, AdjacencyMode::Edge));
    }

    /// A shared leaf gets the same color whatever else the trees contain.
    #[test]
    fn pattern_is_position_independent(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = generate_random(&cfg(s1, 6, 1, 2, true));
        let b = generate_random(&cfg(s2, 6, 1, 2, true));
        let ca = color_balanced_3(&a).unwrap();
        let cb = color_balanced_3(&b).unwrap();
        for key in a.leaves().iter().filter(|k| b.is_leaf(k)) {
            prop_assert_eq!(ca.color_of(key), cb.color_of(key));
            prop_assert_eq!(ca.color_of(key), Some(pattern_color(key)));
        }
    }

    #[test]
    fn edge4_and_corner6_on_random_trees(seed in any::<u64>(), n in 1usize..2000) {
        let t = grow_random(seed, n, 22);
        let c4 = color_edge_4(&t).unwrap();
        prop_assert!(c4.palette_size() <= 4);
        prop_assert!(proper(&t, &c4, AdjacencyMode::Edge));
        let c6 = color_corner_6(&t).unwrap();
        prop_assert!(c6.palette_size() <= 6);
        prop_assert!(proper(&t, &c6, AdjacencyMode::Corner));
    }

    #[test]
    fn edge4_replay_stays_proper(seed in any::<u64>(), n in 1usize..120) {
        replay_is_proper_throughout(&grow_random(seed, n, 12));
    }

    /// Recoloring one leaf to a neighbor's color is always caught.
    #[test]
    fn verifier_catches_planted_violation(seed in any::<u64>(), n in 4usize..500, pick in any::<prop::sample::Index>(), corner in any::<bool>()) {
        let t = grow_random(seed, n, 16);
        let (mode, mut c) = if corner {
            (AdjacencyMode::Corner, color_corner_6(&t).unwrap())
        } else {
            (AdjacencyMode::Edge, color_edge_4(&t).unwrap())
        };
        let g = quadcolor_core::build_graph(&t, mode);
        let v = pick.index(g.len());
        let w = g.neighbors(v)[0] as usize;
        let target = g.vertices()[v];
        let other = g.vertices()[w];
        c.recolor(&target, c.color_of(&other).unwrap());
        let r = verify(&t, &c, mode).unwrap();
        prop_assert!(!r.is_proper());
        let pair = if target < other { (target, other) } else { (other, target) };
        prop_assert!(r.violations.contains(&pair));
    }
}
