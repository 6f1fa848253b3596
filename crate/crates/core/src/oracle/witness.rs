use alloc::vec::Vec;

use super::kcolor::{chromatic_number, is_k_colorable, Decision};
use super::{OracleError, SearchBudget};
use crate::adjacency::{build_graph, AdjacencyMode};
use crate::balance::is_balanced;
use crate::coloring::{greedy_color_indices, verify_graph, Coloring};
use crate::enumerate::TreeEnumerator;
use crate::oracle::degeneracy::degeneracy_order;
use crate::random::{generate_random, RandomCfg, SplitProb};
use crate::tree::Quadtree;

/// Where witness candidates come from: every tree with at most
/// `exhaustive_max_splits` splits, then seeded random trees whose depth
/// grows from 2 to `random_max_depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateSource {
    pub exhaustive_max_splits: usize,
    pub random_seed: u64,
    pub random_max_depth: u8,
    /// Random candidates drawn at each depth before moving deeper.
    pub per_depth: usize,
}

impl Default for CandidateSource {
    fn default() -> Self {
        CandidateSource {
            exhaustive_max_splits: 7,
            random_seed: 0,
            random_max_depth: 6,
            per_depth: 2_000,
        }
    }
}

const RANDOM_PROBS: [(u64, u64); 3] = [(1, 3), (1, 2), (2, 3)];

impl CandidateSource {
    /// The `round`-th random configuration.
    pub fn random_cfg(&self, round: usize, balanced: bool) -> RandomCfg {
        let span = self.random_max_depth.max(2) as usize;
        let depth = (2 + round / self.per_depth.max(1)).min(span) as u8;
        let (num, den) = RANDOM_PROBS[round % RANDOM_PROBS.len()];
        RandomCfg {
            seed: self.random_seed.wrapping_add(round as u64),
            max_depth: depth,
            split_prob: SplitProb::new(num, den).expect("valid constant"),
            balanced,
        }
    }

    fn candidates(&self, balanced: bool) -> impl Iterator<Item = Quadtree> + '_ {
        let exhaustive = TreeEnumerator::new(self.exhaustive_max_splits).map_while(Result::ok);
        let random = (0..).map(move |round| generate_random(&self.random_cfg(round, balanced)));
        exhaustive.chain(random)
    }
}

/// Proof that a tree needs `chi` colors: a proper `chi`-coloring and an
/// exhausted search for a `(chi - 1)`-coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub tree: Quadtree,
    pub chi: usize,
    pub coloring: Coloring,
    pub k_minus_1_exhausted: bool,
    /// Nodes the `(chi - 1)` search visited before giving a definite no.
    pub k_minus_1_nodes: u64,
    /// Position of this tree in the candidate stream (0-based).
    pub candidate_index: usize,
}

impl Certificate {
    /// Rebuilds the graph and re-checks both halves of the claim.
    pub fn reverify(&self, budget: &SearchBudget) -> bool {
        let g = build_graph(&self.tree, self.coloring.mode());
        let colors: Option<Vec<_>> = g
            .vertices()
            .iter()
            .map(|k| self.coloring.color_of(k))
            .collect();
        let Some(colors) = colors else { return false };
        let proper = verify_graph(&g, &colors).is_proper();
        let within = colors.iter().all(|&c| (c as usize) < self.chi);
        let lower = self.chi == 0
            || matches!(
                is_k_colorable(&g, self.chi - 1, budget),
                Ok(r) if r.decision == Decision::NotColorable
            );
        proper && within && lower && self.k_minus_1_exhausted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub found: bool,
    pub mode: AdjacencyMode,
    pub target_chi: usize,
    pub require_balanced: bool,
    /// Largest chromatic number certified so far (0 if none).
    pub chi: usize,
    /// Certificate for the tree achieving `chi`.
    pub best: Option<Certificate>,
    /// Every improvement of the best chi, in discovery order.
    pub improvements: Vec<Certificate>,
    pub candidates_tried: usize,
    /// Candidates skipped because an oracle call ran out of nodes.
    pub undecided: usize,
    /// Candidates skipped for being larger than `max_vertices`.
    pub oversized: usize,
    pub stopped_early: bool,
}

/// [`find_witness_until`] without an external stop condition.
pub fn find_witness(
    mode: AdjacencyMode,
    target_chi: usize,
    require_balanced: bool,
    source: &CandidateSource,
    budget: &SearchBudget,
) -> WitnessReport {
    find_witness_until(mode, target_chi, require_balanced, source, budget, || false)
}

/// Draws candidates in a fixed order until one certifiably needs
/// `target_chi` colors, the candidate budget runs out, or `stop` says so.
///
/// Only candidates whose greedy upper bound beats the best chi so far get
/// an exact chromatic-number computation, so the report's `chi` is the
/// exact maximum over all candidates examined.
pub fn find_witness_until(
    mode: AdjacencyMode,
    target_chi: usize,
    require_balanced: bool,
    source: &CandidateSource,
    budget: &SearchBudget,
    mut stop: impl FnMut() -> bool,
) -> WitnessReport {
    let mut report = WitnessReport {
        found: false,
        mode,
        target_chi,
        require_balanced,
        chi: 0,
        best: None,
        improvements: Vec::new(),
        candidates_tried: 0,
        undecided: 0,
        oversized: 0,
        stopped_early: false,
    };

    for (index, tree) in source
        .candidates(require_balanced)
        .take(budget.max_candidates)
        .enumerate()
    {
        if stop() {
            report.stopped_early = true;
            break;
        }
        report.candidates_tried = index + 1;
        if require_balanced && !is_balanced(&tree) {
            continue;
        }
        if tree.len() > budget.max_vertices {
            report.oversized += 1;
            continue;
        }
        let g = build_graph(&tree, mode);
        let (degeneracy, _) = degeneracy_order(&g);
        let greedy = greedy_color_indices(&g, degeneracy).expect("degeneracy bounds removal");
        let upper = greedy.iter().max().map_or(0, |&c| c as usize + 1);
        if upper <= report.chi {
            continue;
        }
        let exact = match chromatic_number(&g, budget) {
            Ok(r) => r,
            Err(OracleError::BudgetExceeded { .. }) => {
                report.undecided += 1;
                continue;
            }
        };
        if exact.chi <= report.chi {
            continue;
        }
        let lower = if exact.chi == 0 {
            Ok(None)
        } else {
            is_k_colorable(&g, exact.chi - 1, budget).map(Some)
        };
        let (exhausted, lower_nodes) = match lower {
            Ok(None) => (true, 0),
            Ok(Some(r)) => (r.decision == Decision::NotColorable, r.nodes),
            Err(_) => {
                report.undecided += 1;
                continue;
            }
        };
        if !exhausted {
            continue;
        }
        let cert = Certificate {
            tree,
            chi: exact.chi,
            coloring: Coloring::for_graph(&g, exact.coloring),
            k_minus_1_exhausted: true,
            k_minus_1_nodes: lower_nodes,
            candidate_index: index,
        };
        report.chi = cert.chi;
        report.improvements.push(cert.clone());
        report.best = Some(cert);
        if report.chi >= target_chi {
            report.found = true;
            break;
        }
    }
    report
}
