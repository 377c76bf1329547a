use crate::model::{HospitalId, Instance, ResidentId};

/// True iff some matching satisfies `l_h <= |M(h)| <= u_h` for every `h`.
///
/// Equivalent to every lower-quota seat being saturable by a bipartite
/// matching between residents and `l_h` demand slots per hospital; the
/// remaining residents can stay unmatched.
pub fn exists_feasible(instance: &Instance) -> bool {
    let demand: Vec<usize> = instance.quotas().iter().map(|q| q.lower).collect();
    saturates(instance, 0..instance.num_residents(), &demand)
}

/// Whether the given residents can fill `demand[h]` seats at every
/// hospital simultaneously. Capacitated augmenting paths (Kuhn).
pub(crate) fn saturates(
    instance: &Instance,
    residents: impl ExactSizeIterator<Item = ResidentId>,
    demand: &[usize],
) -> bool {
    let total: usize = demand.iter().sum();
    if total == 0 {
        return true;
    }
    if residents.len() < total {
        return false;
    }
    let mut seats: Vec<Vec<ResidentId>> = vec![Vec::new(); instance.num_hospitals()];
    let mut filled = 0;
    let mut visited = vec![false; instance.num_hospitals()];
    for r in residents {
        visited.iter_mut().for_each(|v| *v = false);
        if augment(instance, r, demand, &mut seats, &mut visited) {
            filled += 1;
            if filled == total {
                return true;
            }
        }
    }
    false
}

fn augment(
    instance: &Instance,
    r: ResidentId,
    demand: &[usize],
    seats: &mut [Vec<ResidentId>],
    visited: &mut [bool],
) -> bool {
    for &h in instance.resident_prefs(r) {
        if demand[h] == 0 || visited[h] {
            continue;
        }
        visited[h] = true;
        if seats[h].len() < demand[h] {
            seats[h].push(r);
            return true;
        }
        for i in 0..seats[h].len() {
            let other = seats[h][i];
            if augment(instance, other, demand, seats, visited) {
                seats[h][i] = r;
                return true;
            }
        }
    }
    false
}

/// Lower-quota seats still unfilled under the given occupancy.
pub(crate) fn remaining_demand(instance: &Instance, occupancy: &[usize]) -> Vec<usize> {
    (0..instance.num_hospitals())
        .map(|h: HospitalId| instance.quota(h).lower.saturating_sub(occupancy[h]))
        .collect()
}
