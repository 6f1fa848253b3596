//! Exact chromatic numbers at small scale, and the search for quadtrees
//! that need many colors.

mod degeneracy;
mod kcolor;
mod witness;

use core::fmt;

pub use degeneracy::{degeneracy_order, greedy_clique};
pub use kcolor::{chromatic_number, is_k_colorable, ChromaticResult, Decision, KSearch};
pub use witness::{find_witness, find_witness_until, CandidateSource, Certificate, WitnessReport};

/// Limits for oracle work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Candidate trees a witness search may draw.
    pub max_candidates: usize,
    /// Backtracking nodes allowed per chromatic-number call.
    pub max_oracle_nodes: u64,
    /// Advisory wall-clock limit; enforced by callers that have a clock.
    pub wall_limit_secs: Option<u64>,
    /// Candidates with more leaves than this are skipped.
    pub max_vertices: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidates: 100_000,
            max_oracle_nodes: 5_000_000,
            wall_limit_secs: None,
            max_vertices: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The search ran out of nodes before deciding; the answer is unknown.
    BudgetExceeded { nodes: u64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { nodes } => {
                write!(f, "BudgetExceeded: undecided after {nodes} search nodes")
            }
        }
    }
}

impl core::error::Error for OracleError {}
