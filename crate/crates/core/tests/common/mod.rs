//! Independent reference implementations used to cross-check the library.
#![allow(dead_code)]

use quadcolor_core::{
    are_adjacent, AdjacencyGraph, AdjacencyMode, Quadtree, RandomCfg, SplitProb, SquareKey,
};

pub fn k(level: u8, x: u32, y: u32) -> SquareKey {
    SquareKey { level, x, y }
}

pub fn depth1() -> Quadtree {
    Quadtree::root().split_leaf(&SquareKey::ROOT).unwrap()
}

/// Three level-1 leaves plus the four level-2 leaves of the NE quadrant.
pub fn t3() -> Quadtree {
    depth1().split_leaf(&k(1, 1, 1)).unwrap()
}

/// Quadratic all-pairs graph from the exact predicate.
pub fn all_pairs_graph(tree: &Quadtree, mode: AdjacencyMode) -> AdjacencyGraph {
    let leaves = tree.leaves();
    let mut edges = Vec::new();
    for i in 0..leaves.len() {
        for j in (i + 1)..leaves.len() {
            if are_adjacent(&leaves[i], &leaves[j], mode).unwrap() {
                edges.push((i as u32, j as u32));
            }
        }
    }
    AdjacencyGraph::from_edges(leaves.to_vec(), mode, edges)
}

pub fn edge_list(g: &AdjacencyGraph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

/// Tries every one of the k^n assignments (odometer order) and reports
/// whether any is proper. No pruning at all.
pub fn brute_force_colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut digits = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| digits[u] != digits[v]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Fixed-order backtracking over assignments: vertex 0, 1, 2, ... each
/// trying colors 0..k, abandoning a prefix as soon as it has a conflict.
/// No heuristics and no symmetry breaking, so it shares nothing with the
/// library's search beyond the problem statement.
pub fn prefix_pruned_colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn go(v: usize, n: usize, k: usize, adj: &[Vec<usize>], col: &mut [usize]) -> bool {
        if v == n {
            return true;
        }
        for c in 0..k {
            if adj[v].iter().all(|&w| w >= v || col[w] != c) {
                col[v] = c;
                if go(v + 1, n, k, adj, col) {
                    return true;
                }
            }
        }
        false
    }
    let mut col = vec![usize::MAX; n];
    go(0, n, k, &adj, &mut col)
}

pub fn brute_chromatic(n: usize, edges: &[(usize, usize)], max_k: usize) -> Option<usize> {
    (0..=max_k).find(|&k| brute_force_colorable(n, edges, k))
}

pub fn pruned_chromatic(n: usize, edges: &[(usize, usize)], max_k: usize) -> Option<usize> {
    (0..=max_k).find(|&k| prefix_pruned_colorable(n, edges, k))
}

pub fn cfg(seed: u64, max_depth: u8, num: u64, den: u64, balanced: bool) -> RandomCfg {
    RandomCfg {
        seed,
        max_depth,
        split_prob: SplitProb::new(num, den).unwrap(),
        balanced,
    }
}
