use crate::model::{envy_pairs, envy_residents, Instance, Matching};

use super::feasibility::{remaining_demand, saturates};
use super::result::{BudgetExceeded, ObjectiveKind, SearchStats, SolveError, SolveResult};

/// Every feasible matching of an instance, each exactly once.
///
/// Backtracks over residents in index order. Each resident tries its
/// acceptable hospitals in preference order, then "unmatched". A branch is
/// kept only if the residents not yet assigned can still fill every
/// unmet lower quota, so every kept branch leads to at least one
/// feasible leaf. Each option applied counts as one search node; once the
/// count passes the budget the iterator yields `Err` and stops.
pub struct FeasibleMatchings<'a> {
    instance: &'a Instance,
    budget: u64,
    nodes: u64,
    current: Matching,
    occupancy: Vec<usize>,
    // next option index per resident; prefs.len() means "unmatched"
    cursor: Vec<usize>,
    depth: usize,
    done: bool,
}

pub fn enumerate_feasible(instance: &Instance, node_budget: u64) -> FeasibleMatchings<'_> {
    FeasibleMatchings::new(instance, node_budget)
}

impl<'a> FeasibleMatchings<'a> {
    pub fn new(instance: &'a Instance, node_budget: u64) -> Self {
        let mut it = FeasibleMatchings {
            instance,
            budget: node_budget,
            nodes: 0,
            current: Matching::empty(instance),
            occupancy: vec![0; instance.num_hospitals()],
            cursor: vec![0; instance.num_residents()],
            depth: 0,
            done: false,
        };
        it.done = !it.completable_from(0);
        it
    }

    /// Search nodes spent so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn completable_from(&self, first_free: usize) -> bool {
        let demand = remaining_demand(self.instance, &self.occupancy);
        saturates(
            self.instance,
            first_free..self.instance.num_residents(),
            &demand,
        )
    }

    fn release(&mut self, r: usize) {
        if let Some(h) = self.current.unassign(r) {
            self.occupancy[h] -= 1;
        }
    }
}

impl Iterator for FeasibleMatchings<'_> {
    type Item = Result<Matching, BudgetExceeded>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.instance.num_residents();
        loop {
            if self.done {
                return None;
            }
            if self.depth == n {
                let leaf = self.current.clone();
                if n == 0 {
                    self.done = true;
                } else {
                    self.depth = n - 1;
                }
                return Some(Ok(leaf));
            }

            let r = self.depth;
            self.release(r);
            let prefs = self.instance.resident_prefs(r);
            let mut descended = false;
            while self.cursor[r] <= prefs.len() {
                let option = self.cursor[r];
                self.cursor[r] += 1;
                let target = prefs.get(option).copied();
                if let Some(h) = target {
                    if self.occupancy[h] >= self.instance.quota(h).upper {
                        continue;
                    }
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.done = true;
                    return Some(Err(BudgetExceeded {
                        budget: self.budget,
                    }));
                }
                if let Some(h) = target {
                    self.current.assign(r, h);
                    self.occupancy[h] += 1;
                }
                if self.completable_from(r + 1) {
                    descended = true;
                    break;
                }
                self.release(r);
            }

            if descended {
                self.depth += 1;
                if self.depth < n {
                    self.cursor[self.depth] = 0;
                }
            } else {
                self.cursor[r] = 0;
                if r == 0 {
                    self.done = true;
                } else {
                    self.depth -= 1;
                }
            }
        }
    }
}

fn brute_minimize(
    instance: &Instance,
    node_budget: u64,
    kind: ObjectiveKind,
    objective: impl Fn(&Matching) -> usize,
) -> Result<SolveResult, SolveError> {
    let mut search = enumerate_feasible(instance, node_budget);
    let mut best: Option<(usize, Matching)> = None;
    for m in search.by_ref() {
        let m = m?;
        let value = objective(&m);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, m));
        }
    }
    let (objective, matching) = best.ok_or(SolveError::Infeasible)?;
    Ok(SolveResult {
        matching,
        objective,
        objective_kind: kind,
        stats: SearchStats {
            nodes: search.nodes(),
            ..SearchStats::default()
        },
    })
}

/// Exhaustive minimum envy-pair matching; ties go to the first matching
/// in enumeration order.
pub fn brute_min_ep(instance: &Instance, node_budget: u64) -> Result<SolveResult, SolveError> {
    brute_minimize(instance, node_budget, ObjectiveKind::MinEp, |m| {
        envy_pairs(instance, m).len()
    })
}

/// Exhaustive minimum envy-resident matching.
pub fn brute_min_er(instance: &Instance, node_budget: u64) -> Result<SolveResult, SolveError> {
    brute_minimize(instance, node_budget, ObjectiveKind::MinEr, |m| {
        envy_residents(instance, m).len()
    })
}
