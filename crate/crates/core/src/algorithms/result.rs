use serde::Serialize;
use thiserror::Error;

use crate::model::{EdgeId, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveKind {
    /// Number of envy-pairs.
    MinEp,
    /// Number of envy-residents.
    MinEr,
    /// Zero envy; produced by the envy-free decision procedure.
    EnvyFree,
}

impl ObjectiveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectiveKind::MinEp => "min-ep",
            ObjectiveKind::MinEr => "min-er",
            ObjectiveKind::EnvyFree => "envy-free",
        }
    }
}

/// Counters of a search. All fields are deterministic for a fixed input.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Guess sets tried by the exact algorithm, in lexicographic order up
    /// to and including the successful one.
    pub guess_sets_examined: u64,
    /// Guess level at which the exact algorithm succeeded.
    pub level: Option<usize>,
    /// Backtracking nodes (oracles) or envy-free decisions (exact search).
    pub nodes: u64,
    /// The deleted edge set of the successful guess.
    pub successful_guess: Option<Vec<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub matching: Matching,
    pub objective: usize,
    pub objective_kind: ObjectiveKind,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no feasible matching exists")]
    Infeasible,
    #[error("no solution within guess level {cap}")]
    LevelCapExceeded { cap: usize },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
}

/// Raised by exhaustive enumeration when the node budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {budget} nodes exceeded")]
pub struct BudgetExceeded {
    pub budget: u64,
}

impl From<BudgetExceeded> for SolveError {
    fn from(e: BudgetExceeded) -> Self {
        SolveError::BudgetExceeded { budget: e.budget }
    }
}
