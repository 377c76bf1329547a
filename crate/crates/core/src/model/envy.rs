use std::collections::BTreeSet;

use serde::Serialize;

use super::instance::{HospitalId, Instance, ResidentId};
use super::matching::Matching;

/// No hospital deficient or over-subscribed.
pub fn is_feasible(instance: &Instance, matching: &Matching) -> bool {
    (0..instance.num_hospitals()).all(|h| instance.quota(h).contains(matching.occupancy(h)))
}

// Rank of the least preferred occupant of each hospital.
fn worst_occupant_ranks(instance: &Instance, matching: &Matching) -> Vec<Option<usize>> {
    (0..instance.num_hospitals())
        .map(|h| {
            matching
                .occupants(h)
                .iter()
                .filter_map(|&r| instance.hospital_rank(h, r))
                .max()
        })
        .collect()
}

fn collect_pairs(
    instance: &Instance,
    matching: &Matching,
    mut keep: impl FnMut(ResidentId, HospitalId, Option<usize>) -> bool,
) -> Vec<(ResidentId, HospitalId)> {
    let worst = worst_occupant_ranks(instance, matching);
    instance
        .edges()
        .iter()
        .copied()
        .filter(|&(r, h)| {
            instance.resident_prefers(r, h, matching.hospital_of(r)) && keep(r, h, worst[h])
        })
        .collect()
}

/// Pairs `(r,h)` with `h ≻_r M(r)` and `r ≻_h r'` for some `r' ∈ M(h)`,
/// sorted by resident index, then hospital index.
pub fn envy_pairs(instance: &Instance, matching: &Matching) -> Vec<(ResidentId, HospitalId)> {
    collect_pairs(
        instance,
        matching,
        |r, h, worst| matches!((instance.hospital_rank(h, r), worst), (Some(a), Some(w)) if a < w),
    )
}

/// Residents that appear in at least one envy-pair.
pub fn envy_residents(instance: &Instance, matching: &Matching) -> BTreeSet<ResidentId> {
    envy_pairs(instance, matching)
        .into_iter()
        .map(|(r, _)| r)
        .collect()
}

/// Envy-pairs plus wasteful pairs, where `h ≻_r M(r)` and `h` is
/// under-subscribed.
pub fn blocking_pairs(instance: &Instance, matching: &Matching) -> Vec<(ResidentId, HospitalId)> {
    collect_pairs(instance, matching, |r, h, worst| {
        matching.occupancy(h) < instance.quota(h).upper
            || matches!((instance.hospital_rank(h, r), worst), (Some(a), Some(w)) if a < w)
    })
}

pub fn is_envy_free(instance: &Instance, matching: &Matching) -> bool {
    envy_pairs(instance, matching).is_empty()
}

/// Everything the predicates say about one matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvyReport {
    pub envy_pairs: Vec<(ResidentId, HospitalId)>,
    pub envy_residents: Vec<ResidentId>,
    pub blocking_pairs: Vec<(ResidentId, HospitalId)>,
    pub deficient_hospitals: Vec<HospitalId>,
    pub over_subscribed_hospitals: Vec<HospitalId>,
    pub feasible: bool,
}

impl EnvyReport {
    pub fn new(instance: &Instance, matching: &Matching) -> Self {
        let envy = envy_pairs(instance, matching);
        let mut envy_residents: Vec<ResidentId> = envy.iter().map(|&(r, _)| r).collect();
        envy_residents.dedup();
        let deficient_hospitals: Vec<HospitalId> = (0..instance.num_hospitals())
            .filter(|&h| matching.occupancy(h) < instance.quota(h).lower)
            .collect();
        let over_subscribed_hospitals: Vec<HospitalId> = (0..instance.num_hospitals())
            .filter(|&h| matching.occupancy(h) > instance.quota(h).upper)
            .collect();
        let feasible = deficient_hospitals.is_empty() && over_subscribed_hospitals.is_empty();
        EnvyReport {
            envy_pairs: envy,
            envy_residents,
            blocking_pairs: blocking_pairs(instance, matching),
            deficient_hospitals,
            over_subscribed_hospitals,
            feasible,
        }
    }

    pub fn is_envy_free(&self) -> bool {
        self.envy_pairs.is_empty()
    }
}
