use rayon::prelude::*;

use crate::model::{envy_pairs, EdgeId, Instance, Matching};

use super::feasibility::exists_feasible;
use super::result::{ObjectiveKind, SearchStats, SolveError, SolveResult};
use super::yokoi::yokoi_masked;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Highest guess level to try before giving up.
    pub level_cap: Option<usize>,
    /// Evaluate guess sets of a level on the rayon pool. The reported
    /// result does not depend on this flag.
    pub parallel: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            level_cap: None,
            parallel: true,
        }
    }
}

/// Exact minimum envy-pair matching by guessing the envy-pair set.
///
/// For k = 0, 1, 2, … every k-subset B of the edges is tried in
/// lexicographic order of edge ids; B is deleted from the instance and
/// the envy-free decision procedure runs on what remains. A matching
/// that is envy-free after deleting B has its envy-pairs inside B, so the
/// first level that succeeds is the optimum. Within a level the
/// lexicographically smallest successful B is reported, also when guesses
/// are evaluated in parallel.
pub fn min_ep_exact(instance: &Instance, options: ExactOptions) -> Result<SolveResult, SolveError> {
    if !exists_feasible(instance) {
        return Err(SolveError::Infeasible);
    }
    let num_edges = instance.edges().len();
    let top = options
        .level_cap
        .map_or(num_edges, |cap| cap.min(num_edges));
    let mut examined: u64 = 0;

    for level in 0..=top {
        if let Some((offset, guess, matching)) = search_level(instance, level, options.parallel) {
            examined += offset + 1;
            let objective = envy_pairs(instance, &matching).len();
            debug_assert_eq!(objective, level);
            return Ok(SolveResult {
                matching,
                objective,
                objective_kind: ObjectiveKind::MinEp,
                stats: SearchStats {
                    guess_sets_examined: examined,
                    level: Some(level),
                    nodes: examined,
                    successful_guess: Some(guess),
                },
            });
        }
        examined += binomial(num_edges, level);
    }

    match options.level_cap {
        Some(cap) if cap < num_edges => Err(SolveError::LevelCapExceeded { cap }),
        // unreachable when a feasible matching exists: its own envy-pair
        // set is a guess of size at most |E|
        _ => Err(SolveError::Infeasible),
    }
}

// Returns (lexicographic rank within the level, guess, matching).
fn search_level(
    instance: &Instance,
    level: usize,
    parallel: bool,
) -> Option<(u64, Vec<EdgeId>, Matching)> {
    let num_edges = instance.edges().len();
    let mut combos = Combinations::new(num_edges, level);
    let mut offset: u64 = 0;
    loop {
        let chunk: Vec<Vec<EdgeId>> = combos.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return None;
        }
        let attempt = |guess: &Vec<EdgeId>| {
            let mut mask = vec![false; num_edges];
            for &e in guess {
                mask[e] = true;
            }
            yokoi_masked(instance, &mask)
        };
        let hit = if parallel {
            chunk
                .par_iter()
                .enumerate()
                .find_map_first(|(i, g)| attempt(g).map(|m| (i, m)))
        } else {
            chunk
                .iter()
                .enumerate()
                .find_map(|(i, g)| attempt(g).map(|m| (i, m)))
        };
        if let Some((i, m)) = hit {
            return Some((offset + i as u64, chunk[i].clone(), m));
        }
        offset += chunk.len() as u64;
    }
}

/// k-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still move right
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}
