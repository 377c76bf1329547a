use std::collections::BinaryHeap;

use crate::model::{EdgeId, Instance, Matching, Quota};

/// HR instance whose capacities are the lower quotas of a source instance
/// (every quota `[l_h, u_h]` becomes `[0, l_h]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHrInstance(Instance);

impl ReducedHrInstance {
    pub fn from_lower_quotas(instance: &Instance) -> Self {
        ReducedHrInstance(instance.with_quotas(|_, q| Quota::new(0, q.lower)))
    }

    pub fn instance(&self) -> &Instance {
        &self.0
    }

    pub fn capacity(&self, h: usize) -> usize {
        self.0.quota(h).upper
    }
}

/// Resident-proposing deferred acceptance with capacities `u_h`; lower
/// quotas are ignored. Residents start proposing in index order.
pub fn deferred_acceptance(instance: &Instance) -> Matching {
    let caps: Vec<usize> = instance.quotas().iter().map(|q| q.upper).collect();
    propose(instance, &caps, None)
}

/// Core proposal loop. `removed`, when present, masks edges by id: a
/// resident skips masked hospitals and hospital rankings are unchanged
/// otherwise, which is the same as deleting those edges from both lists.
pub(crate) fn propose(instance: &Instance, caps: &[usize], removed: Option<&[bool]>) -> Matching {
    let n = instance.num_residents();
    let mut next = vec![0usize; n];
    // max-heap on hospital rank: the top is the least preferred holder
    let mut held: Vec<BinaryHeap<(usize, usize)>> = (0..instance.num_hospitals())
        .map(|_| BinaryHeap::new())
        .collect();
    let mut assigned: Vec<Option<usize>> = vec![None; n];

    for start in 0..n {
        let mut proposer = Some(start);
        while let Some(r) = proposer.take() {
            let prefs = instance.resident_prefs(r);
            let edge_ids: &[EdgeId] = instance.pref_edges(r);
            while next[r] < prefs.len() {
                let pos = next[r];
                next[r] += 1;
                if removed.is_some_and(|mask| mask[edge_ids[pos]]) {
                    continue;
                }
                let h = prefs[pos];
                if caps[h] == 0 {
                    continue;
                }
                let rank = instance.hospital_rank(h, r).expect("mutual acceptability");
                let seats = &mut held[h];
                if seats.len() < caps[h] {
                    seats.push((rank, r));
                    assigned[r] = Some(h);
                    break;
                }
                let &(worst_rank, worst) = seats.peek().expect("capacity is positive");
                if rank < worst_rank {
                    seats.pop();
                    seats.push((rank, r));
                    assigned[r] = Some(h);
                    assigned[worst] = None;
                    proposer = Some(worst);
                    break;
                }
            }
        }
    }

    let mut m = Matching::with_sizes(n, instance.num_hospitals());
    for (r, h) in assigned.into_iter().enumerate() {
        if let Some(h) = h {
            m.assign(r, h);
        }
    }
    m
}
