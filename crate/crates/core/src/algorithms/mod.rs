//! Deferred acceptance, the envy-free decision procedure, the exact
//! minimum envy-pair search and the exhaustive oracles used to check it.

mod da;
mod enumerate;
mod exact;
mod feasibility;
mod result;
mod yokoi;

pub use da::{deferred_acceptance, ReducedHrInstance};
pub use enumerate::{brute_min_ep, brute_min_er, enumerate_feasible, FeasibleMatchings};
pub use exact::{min_ep_exact, ExactOptions};
pub use feasibility::exists_feasible;
pub use result::{BudgetExceeded, ObjectiveKind, SearchStats, SolveError, SolveResult};
pub use yokoi::yokoi_envy_free;

/// Default node budget of the exhaustive oracles.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
