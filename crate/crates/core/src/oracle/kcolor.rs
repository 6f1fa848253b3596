use alloc::vec::Vec;

use super::degeneracy::{degeneracy_order, greedy_clique};
use super::{OracleError, SearchBudget};
use crate::adjacency::AdjacencyGraph;
use crate::coloring::{greedy_color_indices, Color};

const NONE: Color = Color::MAX;

/// Outcome of an exhausted k-colorability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A proper coloring with colors `0..k`, per vertex index.
    Colorable(Vec<Color>),
    NotColorable,
}

/// A decided search and the number of nodes it visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSearch {
    pub decision: Decision,
    pub nodes: u64,
}

impl KSearch {
    pub fn is_colorable(&self) -> bool {
        matches!(self.decision, Decision::Colorable(_))
    }
}

/// Backtracking state: colors plus, per vertex, how many neighbors hold
/// each color and how many distinct colors that is.
struct Dsatur<'g> {
    g: &'g AdjacencyGraph,
    k: usize,
    color: Vec<Color>,
    counts: Vec<u16>,
    saturation: Vec<usize>,
    colored: usize,
}

impl<'g> Dsatur<'g> {
    fn new(g: &'g AdjacencyGraph, k: usize) -> Self {
        let n = g.len();
        Dsatur {
            g,
            k,
            color: alloc::vec![NONE; n],
            counts: alloc::vec![0; n * k],
            saturation: alloc::vec![0; n],
            colored: 0,
        }
    }

    #[inline]
    fn free(&self, v: usize, c: usize) -> bool {
        self.counts[v * self.k + c] == 0
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c as Color;
        self.colored += 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w as usize * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[w as usize] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v] as usize;
        self.color[v] = NONE;
        self.colored -= 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w as usize * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w as usize] -= 1;
            }
        }
    }

    /// Uncolored vertex with the most distinct neighbor colors; smallest
    /// index on ties.
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.g.len() {
            if self.color[v] == NONE && best.is_none_or(|b| self.saturation[v] > self.saturation[b])
            {
                best = Some(v);
            }
        }
        best
    }
}

struct Frame {
    vertex: usize,
    next: usize,
    /// Highest color in use before this vertex was colored, plus one.
    used_before: usize,
}

/// Exact k-colorability by backtracking.
///
/// Vertices are taken most-constrained first (maximum saturation). A
/// greedily found clique is pre-colored `0, 1, ...`, and a vertex may open
/// at most one new color beyond those in use, so color permutations are
/// never explored twice. `max_oracle_nodes` bounds the number of color
/// assignments tried; running out is an error, not a "no".
pub fn is_k_colorable(
    g: &AdjacencyGraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<KSearch, OracleError> {
    search(g, k, budget.max_oracle_nodes, &greedy_clique(g))
}

fn search(
    g: &AdjacencyGraph,
    k: usize,
    node_limit: u64,
    clique: &[usize],
) -> Result<KSearch, OracleError> {
    let n = g.len();
    if n == 0 {
        return Ok(KSearch {
            decision: Decision::Colorable(Vec::new()),
            nodes: 0,
        });
    }
    if k == 0 || clique.len() > k {
        return Ok(KSearch {
            decision: Decision::NotColorable,
            nodes: 0,
        });
    }

    let mut st = Dsatur::new(g, k);
    for (c, &v) in clique.iter().enumerate() {
        st.assign(v, c);
    }
    let mut used = clique.len();
    let mut nodes = 0u64;
    let mut stack: Vec<Frame> = Vec::new();

    loop {
        if st.colored == n {
            return Ok(KSearch {
                decision: Decision::Colorable(st.color),
                nodes,
            });
        }
        let v = st.select().expect("an uncolored vertex remains");
        stack.push(Frame {
            vertex: v,
            next: 0,
            used_before: used,
        });

        // Advance the top frame to its next color, backtracking as needed.
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(KSearch {
                    decision: Decision::NotColorable,
                    nodes,
                });
            };
            let v = top.vertex;
            if st.color[v] != NONE {
                st.unassign(v);
            }
            let limit = k.min(top.used_before + 1);
            let pick = (top.next..limit).find(|&c| st.free(v, c));
            match pick {
                Some(c) => {
                    top.next = c + 1;
                    used = top.used_before.max(c + 1);
                    st.assign(v, c);
                    nodes += 1;
                    if nodes > node_limit {
                        return Err(OracleError::BudgetExceeded { nodes });
                    }
                    break;
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
}

/// Exact chromatic number with a witnessing coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    /// A proper `chi`-coloring, per vertex index.
    pub coloring: Vec<Color>,
    /// Size of the greedy clique used as the lower bound.
    pub clique_bound: usize,
    /// Degeneracy plus one; the greedy coloring never needs more.
    pub degeneracy_bound: usize,
    /// Backtracking nodes spent across the whole scan.
    pub nodes: u64,
}

/// Smallest k for which the graph is k-colorable, scanning up from the
/// greedy-clique bound. The degeneracy-greedy coloring closes the scan, so
/// no search runs at the upper end.
pub fn chromatic_number(
    g: &AdjacencyGraph,
    budget: &SearchBudget,
) -> Result<ChromaticResult, OracleError> {
    let (degeneracy, _) = degeneracy_order(g);
    let clique = greedy_clique(g);
    let greedy = greedy_color_indices(g, degeneracy).expect("degeneracy bounds every removal");
    let upper = greedy.iter().max().map_or(0, |&c| c as usize + 1);
    let mut nodes = 0u64;
    for k in clique.len()..upper {
        let remaining = budget.max_oracle_nodes.saturating_sub(nodes);
        let run = search(g, k, remaining, &clique).map_err(|e| match e {
            OracleError::BudgetExceeded { nodes: spent } => OracleError::BudgetExceeded {
                nodes: nodes + spent,
            },
        })?;
        nodes += run.nodes;
        if let Decision::Colorable(coloring) = run.decision {
            return Ok(ChromaticResult {
                chi: k,
                coloring,
                clique_bound: clique.len(),
                degeneracy_bound: degeneracy + 1,
                nodes,
            });
        }
    }
    Ok(ChromaticResult {
        chi: upper,
        coloring: greedy,
        clique_bound: clique.len(),
        degeneracy_bound: if g.is_empty() { 0 } else { degeneracy + 1 },
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::{build_graph, AdjacencyMode};
    use crate::coloring::verify_graph;
    use crate::key::SquareKey;
    use crate::tree::Quadtree;

    fn abstract_graph(n: u32, edges: &[(u32, u32)]) -> AdjacencyGraph {
        let vs = (0..n)
            .map(|i| SquareKey {
                level: 8,
                x: i,
                y: 0,
            })
            .collect();
        AdjacencyGraph::from_edges(vs, AdjacencyMode::Edge, edges.iter().copied())
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn depth1() -> Quadtree {
        Quadtree::root().split_leaf(&SquareKey::ROOT).unwrap()
    }

    #[test]
    fn four_cycle_is_bipartite() {
        let g = build_graph(&depth1(), AdjacencyMode::Edge);
        let r = is_k_colorable(&g, 2, &budget()).unwrap();
        let Decision::Colorable(c) = r.decision else {
            panic!("expected a coloring")
        };
        assert!(verify_graph(&g, &c).is_proper());
    }

    #[test]
    fn k4_not_three_colorable() {
        let g = build_graph(&depth1(), AdjacencyMode::Corner);
        let r = is_k_colorable(&g, 3, &budget()).unwrap();
        assert_eq!(r.decision, Decision::NotColorable);
    }

    #[test]
    fn odd_wheel_needs_search() {
        // A 5-wheel: triangle clique bound 3, but chi is 4.
        let g = abstract_graph(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 0),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
            ],
        );
        assert_eq!(greedy_clique(&g).len(), 3);
        assert_eq!(
            is_k_colorable(&g, 3, &budget()).unwrap().decision,
            Decision::NotColorable
        );
        let r = chromatic_number(&g, &budget()).unwrap();
        assert_eq!(r.chi, 4);
        assert!(verify_graph(&g, &r.coloring).is_proper());
    }

    #[test]
    fn chromatic_small_examples() {
        let root = build_graph(&Quadtree::root(), AdjacencyMode::Corner);
        assert_eq!(chromatic_number(&root, &budget()).unwrap().chi, 1);
        let k4 = build_graph(&depth1(), AdjacencyMode::Corner);
        assert_eq!(chromatic_number(&k4, &budget()).unwrap().chi, 4);
        assert_eq!(
            chromatic_number(&abstract_graph(0, &[]), &budget())
                .unwrap()
                .chi,
            0
        );
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        // Petersen-like dense graph with a tiny budget.
        let mut edges = Vec::new();
        for i in 0..12u32 {
            for j in (i + 1)..12 {
                if (i + j) % 3 != 0 {
                    edges.push((i, j));
                }
            }
        }
        let g = abstract_graph(12, &edges);
        let tiny = SearchBudget {
            max_oracle_nodes: 1,
            ..SearchBudget::default()
        };
        assert!(matches!(
            is_k_colorable(&g, 5, &tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }
}
