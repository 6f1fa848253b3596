use proptest::prelude::*;
use quadcolor::formats::*;
use quadcolor::svg::{render_svg, PALETTE};
use quadcolor_core::{
    color_balanced_3, color_corner_6, color_edge_4, generate_random, pattern_color, AdjacencyMode,
    Coloring, ColoringError, Quadtree, RandomCfg, SplitProb, SquareKey,
};

fn k(level: u8, x: u32, y: u32) -> SquareKey {
    SquareKey { level, x, y }
}

fn depth1() -> Quadtree {
    Quadtree::root().split_leaf(&SquareKey::ROOT).unwrap()
}

fn t3() -> Quadtree {
    depth1().split_leaf(&k(1, 1, 1)).unwrap()
}

fn arb_tree() -> impl Strategy<Value = Quadtree> {
    (any::<u64>(), 0u8..7, 1u64..4, any::<bool>()).prop_map(|(seed, max_depth, num, balanced)| {
        generate_random(&RandomCfg {
            seed,
            max_depth,
            split_prob: SplitProb::new(num, 4).unwrap(),
            balanced,
        })
    })
}

proptest! {
    #[test]
    fn tree_round_trips(tree in arb_tree()) {
        prop_assert_eq!(tree_from_json(&tree_to_json(&tree), false).unwrap(), tree.clone());
        prop_assert_eq!(tree_from_text(&tree_to_text(&tree), false).unwrap(), tree.clone());
        prop_assert_eq!(parse_tree(&tree_to_text(&tree), false).unwrap(), tree);
    }

    #[test]
    fn coloring_round_trips(tree in arb_tree()) {
        for c in [color_edge_4(&tree).unwrap(), color_corner_6(&tree).unwrap()] {
            prop_assert_eq!(coloring_from_json(&coloring_to_json(&c), false).unwrap(), c);
        }
    }

    #[test]
    fn shuffled_input_needs_canonicalize(tree in arb_tree(), rot in 1usize..50) {
        prop_assume!(tree.len() > 1);
        let mut leaves = tree.leaves().to_vec();
        let n = leaves.len();
        leaves.rotate_left(rot % n);
        prop_assume!(leaves.as_slice() != tree.leaves());
        let mut text = String::from("quadtree-v1\n");
        for l in &leaves {
            text.push_str(&format!("{} {} {}\n", l.level, l.x, l.y));
        }
        prop_assert!(matches!(tree_from_text(&text, false), Err(FormatError::NonCanonical(_))));
        prop_assert_eq!(tree_from_text(&text, true).unwrap(), tree);
    }
}

#[test]
fn exact_tree_serialization() {
    assert_eq!(
        tree_to_json(&depth1()),
        "{\"format\":\"quadtree-v1\",\"leaves\":[[1,0,0],[1,0,1],[1,1,0],[1,1,1]]}\n"
    );
    assert_eq!(tree_to_text(&Quadtree::root()), "quadtree-v1\n0 0 0\n");
    let c = color_edge_4(&depth1()).unwrap();
    assert_eq!(
        coloring_to_json(&c),
        "{\"format\":\"coloring-v1\",\"mode\":\"edge\",\"colors\":[[1,0,0,0],[1,0,1,1],[1,1,0,1],[1,1,1,0]]}\n"
    );
}

#[test]
fn parse_errors_are_named() {
    let err = |r: Result<Quadtree, FormatError>| r.unwrap_err().to_string();
    assert!(err(tree_from_json(
        "{\"format\":\"quadtree-v1\",\"leaves\":[[1,0,0],[1,1,0],[1,0,1]]}",
        true
    ))
    .starts_with("PartitionError"));
    assert!(err(tree_from_json(
        "{\"format\":\"quadtree-v1\",\"leaves\":[[1,2,0]]}",
        false
    ))
    .starts_with("KeyRangeError"));
    assert!(err(tree_from_json(
        "{\"format\":\"quadtree-v1\",\"leaves\":[[-1,0,0]]}",
        false
    ))
    .starts_with("ParseError"));
    assert!(err(tree_from_json(
        "{\"format\":\"quadtree-v2\",\"leaves\":[]}",
        false
    ))
    .starts_with("ParseError"));
    assert!(err(tree_from_text("quadtree-v1\n0 0\n", false)).contains("line 2"));
    assert!(err(tree_from_text("quadtree-v1\n0 0 0\n0 0 0\n", false)).starts_with("NonCanonical"));
    assert!(coloring_from_json(
        "{\"format\":\"coloring-v1\",\"mode\":\"diag\",\"colors\":[]}",
        false
    )
    .is_err());
}

#[test]
fn graph_dump() {
    let g = quadcolor_core::build_graph(&depth1(), AdjacencyMode::Edge);
    assert_eq!(
        graph_to_json(&g),
        "{\"mode\":\"edge\",\"n\":4,\"edges\":[[0,1],[0,2],[1,3],[2,3]]}\n"
    );
}

fn rects(svg: &str) -> Vec<&str> {
    svg.lines().filter(|l| l.starts_with("<rect")).collect()
}

fn fill(rect: &str) -> &str {
    let start = rect.find("fill=\"").unwrap() + 6;
    &rect[start..start + rect[start..].find('"').unwrap()]
}

#[test]
fn svg_root_outline() {
    let svg = render_svg(&Quadtree::root(), None).unwrap();
    let r = rects(&svg);
    assert_eq!(r, ["<rect x=\"0\" y=\"0\" width=\"1024\" height=\"1024\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>"]);
    assert!(svg.contains("viewBox=\"0 0 1024 1024\""));
}

#[test]
fn svg_depth1_four_fills() {
    let tree = depth1();
    let c = color_corner_6(&tree).unwrap();
    let svg = render_svg(&tree, Some(&c)).unwrap();
    let mut fills: Vec<&str> = rects(&svg).into_iter().map(fill).collect();
    fills.sort_unstable();
    fills.dedup();
    assert_eq!(fills.len(), 4);
    // The lower-left leaf is drawn in the bottom half of the screen.
    assert!(rects(&svg)[0].starts_with("<rect x=\"0\" y=\"512\""));
}

#[test]
fn svg_t3_matches_pattern() {
    let tree = t3();
    let c = color_balanced_3(&tree).unwrap();
    let svg = render_svg(&tree, Some(&c)).unwrap();
    let r = rects(&svg);
    assert_eq!(r.len(), 7);
    for (leaf, rect) in tree.leaves().iter().zip(r) {
        assert_eq!(fill(rect), PALETTE[pattern_color(leaf) as usize]);
    }
}

#[test]
fn svg_missing_color() {
    let c = Coloring::from_pairs([(k(1, 0, 0), 0)], AdjacencyMode::Edge).unwrap();
    assert_eq!(
        render_svg(&depth1(), Some(&c)),
        Err(ColoringError::MissingAssignment(k(1, 0, 1)))
    );
}

#[test]
fn svg_is_stable() {
    let tree = generate_random(&RandomCfg {
        seed: 11,
        max_depth: 6,
        split_prob: SplitProb::new(1, 2).unwrap(),
        balanced: false,
    });
    let c = color_edge_4(&tree).unwrap();
    assert_eq!(
        render_svg(&tree, Some(&c)).unwrap(),
        render_svg(&tree, Some(&c)).unwrap()
    );
}
