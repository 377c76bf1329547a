//! Literal definitions, written against the raw preference lists only.

use hrlq::model::{Instance, Matching};

fn pos(list: &[usize], x: usize) -> Option<usize> {
    list.iter().position(|&y| y == x)
}

fn resident_wants(instance: &Instance, m: &Matching, r: usize, h: usize) -> bool {
    let prefs = instance.resident_prefs(r);
    match m.hospital_of(r) {
        None => true,
        Some(cur) => pos(prefs, h).unwrap() < pos(prefs, cur).unwrap(),
    }
}

pub fn feasible(instance: &Instance, m: &Matching) -> bool {
    (0..instance.num_residents()).all(|r| match m.hospital_of(r) {
        None => true,
        Some(h) => pos(instance.resident_prefs(r), h).is_some(),
    }) && (0..instance.num_hospitals()).all(|h| {
        let q = instance.quota(h);
        let occ = (0..instance.num_residents())
            .filter(|&r| m.hospital_of(r) == Some(h))
            .count();
        q.lower <= occ && occ <= q.upper
    })
}

pub fn envy_pairs(instance: &Instance, m: &Matching) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..instance.num_residents() {
        for &h in instance.resident_prefs(r) {
            if !resident_wants(instance, m, r, h) {
                continue;
            }
            let hp = instance.hospital_prefs(h);
            let beaten = (0..instance.num_residents())
                .filter(|&o| m.hospital_of(o) == Some(h))
                .any(|o| pos(hp, r).unwrap() < pos(hp, o).unwrap());
            if beaten {
                out.push((r, h));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn envy_residents(instance: &Instance, m: &Matching) -> usize {
    let mut rs: Vec<usize> = envy_pairs(instance, m).into_iter().map(|p| p.0).collect();
    rs.dedup();
    rs.len()
}

pub fn blocking_pairs(instance: &Instance, m: &Matching) -> Vec<(usize, usize)> {
    let envy = envy_pairs(instance, m);
    let mut out = Vec::new();
    for r in 0..instance.num_residents() {
        for &h in instance.resident_prefs(r) {
            let occ = (0..instance.num_residents())
                .filter(|&o| m.hospital_of(o) == Some(h))
                .count();
            let wasteful = resident_wants(instance, m, r, h) && occ < instance.quota(h).upper;
            if wasteful || envy.contains(&(r, h)) {
                out.push((r, h));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every assignment of residents to "unmatched" or an acceptable hospital,
/// keeping the feasible ones. Exponential; tiny instances only.
pub fn all_feasible(instance: &Instance) -> Vec<Matching> {
    let nr = instance.num_residents();
    let mut choice = vec![None; nr];
    let mut out = Vec::new();
    fn rec(
        instance: &Instance,
        r: usize,
        choice: &mut Vec<Option<usize>>,
        out: &mut Vec<Matching>,
    ) {
        if r == choice.len() {
            let pairs: Vec<(usize, usize)> = choice
                .iter()
                .enumerate()
                .filter_map(|(r, h)| h.map(|h| (r, h)))
                .collect();
            let m = Matching::from_pairs(instance, pairs).unwrap();
            if feasible(instance, &m) {
                out.push(m);
            }
            return;
        }
        choice[r] = None;
        rec(instance, r + 1, choice, out);
        for &h in instance.resident_prefs(r) {
            choice[r] = Some(h);
            rec(instance, r + 1, choice, out);
        }
        choice[r] = None;
    }
    rec(instance, 0, &mut choice, &mut out);
    out
}

pub fn min_envy_pairs(instance: &Instance) -> Option<usize> {
    all_feasible(instance)
        .iter()
        .map(|m| envy_pairs(instance, m).len())
        .min()
}

/// Perfect matchings between `residents` and `hospitals` that use only
/// acceptable pairs inside the two sets.
pub fn perfect_matchings(
    instance: &Instance,
    residents: &[usize],
    hospitals: &[usize],
) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        instance: &Instance,
        residents: &[usize],
        hospitals: &[usize],
        used: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some((&r, rest)) = residents.split_first() else {
            out.push(current.clone());
            return;
        };
        for (idx, &h) in hospitals.iter().enumerate() {
            if !used[idx] && instance.resident_prefs(r).contains(&h) {
                used[idx] = true;
                current.push((r, h));
                rec(instance, rest, hospitals, used, current, out);
                current.pop();
                used[idx] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; hospitals.len()];
    rec(
        instance,
        residents,
        hospitals,
        &mut used,
        &mut Vec::new(),
        &mut out,
    );
    out
}
