use alloc::vec::Vec;

use super::{Color, Coloring, ColoringError};
use crate::adjacency::AdjacencyGraph;

const NIL: u32 = u32::MAX;

/// Doubly linked lists of alive vertices, one per degree `0..=bound`.
/// Vertices of higher degree sit in no list until their degree drops.
struct DegreeBuckets {
    head: Vec<u32>,
    prev: Vec<u32>,
    next: Vec<u32>,
    bound: usize,
}

impl DegreeBuckets {
    fn new(n: usize, bound: usize) -> DegreeBuckets {
        DegreeBuckets {
            head: alloc::vec![NIL; bound + 1],
            prev: alloc::vec![NIL; n],
            next: alloc::vec![NIL; n],
            bound,
        }
    }

    fn push(&mut self, v: usize, degree: usize) {
        if degree > self.bound {
            return;
        }
        let h = self.head[degree];
        self.prev[v] = NIL;
        self.next[v] = h;
        if h != NIL {
            self.prev[h as usize] = v as u32;
        }
        self.head[degree] = v as u32;
    }

    fn unlink(&mut self, v: usize, degree: usize) {
        if degree > self.bound {
            return;
        }
        let (p, n) = (self.prev[v], self.next[v]);
        if p == NIL {
            self.head[degree] = n;
        } else {
            self.next[p as usize] = n;
        }
        if n != NIL {
            self.prev[n as usize] = p;
        }
    }

    /// Head of the lowest nonempty list.
    fn pop_min(&mut self) -> Option<(usize, usize)> {
        let d = self.head.iter().position(|&h| h != NIL)?;
        let v = self.head[d] as usize;
        self.unlink(v, d);
        Some((v, d))
    }
}

/// Greedy coloring by repeated minimum-degree removal, as colors per
/// vertex index.
///
/// Removal uses degree buckets for `0..=degree_bound`, so each step is
/// constant time and the whole run is `O(n + m)`. Vertices are colored in
/// reverse removal order, each with the smallest color missing among its
/// already-colored neighbors, giving at most `degree_bound + 1` colors.
pub fn greedy_color_indices(
    g: &AdjacencyGraph,
    degree_bound: usize,
) -> Result<Vec<Color>, ColoringError> {
    let n = g.len();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = alloc::vec![true; n];
    let mut buckets = DegreeBuckets::new(n, degree_bound);
    // Pushing in reverse leaves each list in increasing index order.
    for v in (0..n).rev() {
        buckets.push(v, degree[v]);
    }

    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let Some((v, _)) = buckets.pop_min() else {
            let (v, d) = (0..n)
                .filter(|&v| alive[v])
                .map(|v| (v, degree[v]))
                .min_by_key(|&(v, d)| (d, v))
                .expect("some vertex is alive");
            return Err(ColoringError::DegeneracyExceeded {
                vertex: g.vertices()[v],
                degree: d,
            });
        };
        alive[v] = false;
        order.push(v);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                buckets.unlink(w, degree[w]);
                degree[w] -= 1;
                buckets.push(w, degree[w]);
            }
        }
    }

    let mut color = alloc::vec![Color::MAX; n];
    // `seen[c] == v` marks color `c` as taken by a neighbor of `v`.
    let mut seen = alloc::vec![usize::MAX; degree_bound + 2];
    for &v in order.iter().rev() {
        for &w in g.neighbors(v) {
            let c = color[w as usize];
            if (c as usize) < seen.len() {
                seen[c as usize] = v;
            }
        }
        let c = (0..seen.len())
            .find(|&c| seen[c] != v)
            .expect("at most degree_bound colored neighbors");
        color[v] = c as Color;
    }
    Ok(color)
}

/// [`greedy_color_indices`] packaged as a [`Coloring`] of the graph's keys.
pub fn greedy_degenerate_color(
    g: &AdjacencyGraph,
    degree_bound: usize,
) -> Result<Coloring, ColoringError> {
    let colors = greedy_color_indices(g, degree_bound)?;
    Ok(Coloring::for_graph(g, colors))
}
