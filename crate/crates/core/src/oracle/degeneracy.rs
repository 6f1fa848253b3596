use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::adjacency::AdjacencyGraph;

/// Repeated minimum-degree removal with ties going to the smallest index.
/// Returns the largest degree seen at removal time and the removal order.
pub fn degeneracy_order(g: &AdjacencyGraph) -> (usize, Vec<usize>) {
    let n = g.len();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut alive = alloc::vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        alive[v] = false;
        order.push(v);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    (degeneracy, order)
}

/// A clique grown greedily from every start vertex, keeping the largest.
/// Each step adds the candidate of highest degree (smallest index on ties).
pub fn greedy_clique(g: &AdjacencyGraph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for start in 0..g.len() {
        let mut clique = alloc::vec![start];
        let mut cand: Vec<usize> = g.neighbors(start).iter().map(|&w| w as usize).collect();
        while let Some(&u) = cand
            .iter()
            .max_by_key(|&&u| (g.degree(u), core::cmp::Reverse(u)))
        {
            clique.push(u);
            cand.retain(|&w| w != u && g.has_edge(u, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}
