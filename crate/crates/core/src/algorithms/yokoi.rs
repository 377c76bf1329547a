use crate::model::{Instance, Matching};

use super::da::{deferred_acceptance, propose, ReducedHrInstance};

/// Decides whether a feasible envy-free matching exists.
///
/// Runs deferred acceptance with every capacity set to the lower quota
/// `l_h`. If that fills each hospital to exactly `l_h`, the result is
/// feasible and envy-free in the original instance; otherwise no
/// feasible envy-free matching exists and `None` is returned.
pub fn yokoi_envy_free(instance: &Instance) -> Option<Matching> {
    let reduced = ReducedHrInstance::from_lower_quotas(instance);
    let m = deferred_acceptance(reduced.instance());
    fills_lower_quotas(instance, &m).then_some(m)
}

/// Same decision on the instance with the masked edges deleted, without
/// materializing the smaller instance.
pub(crate) fn yokoi_masked(instance: &Instance, removed: &[bool]) -> Option<Matching> {
    let caps: Vec<usize> = instance.quotas().iter().map(|q| q.lower).collect();
    let m = propose(instance, &caps, Some(removed));
    fills_lower_quotas(instance, &m).then_some(m)
}

fn fills_lower_quotas(instance: &Instance, m: &Matching) -> bool {
    (0..instance.num_hospitals()).all(|h| m.occupancy(h) == instance.quota(h).lower)
}
