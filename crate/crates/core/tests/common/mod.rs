#![allow(dead_code)]

pub mod oracle;

use hrlq::model::{Instance, RawInstance};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random instance with up to the given sizes. Each pair is acceptable
/// with probability `density`; lists are shuffled; `l <= u <= max_upper`.
pub fn random_instance(
    rng: &mut impl Rng,
    max_residents: usize,
    max_hospitals: usize,
    max_upper: usize,
    density: f64,
) -> Instance {
    let nr = rng.gen_range(1..=max_residents);
    let nh = rng.gen_range(1..=max_hospitals);
    exact_size_instance(rng, nr, nh, max_upper, density)
}

pub fn exact_size_instance(
    rng: &mut impl Rng,
    nr: usize,
    nh: usize,
    max_upper: usize,
    density: f64,
) -> Instance {
    let mut res_lists: Vec<Vec<usize>> = vec![Vec::new(); nr];
    let mut hosp_lists: Vec<Vec<usize>> = vec![Vec::new(); nh];
    for (r, res_list) in res_lists.iter_mut().enumerate() {
        for (h, hosp_list) in hosp_lists.iter_mut().enumerate() {
            if rng.gen_bool(density) {
                res_list.push(h);
                hosp_list.push(r);
            }
        }
    }
    res_lists.iter_mut().for_each(|l| l.shuffle(rng));
    hosp_lists.iter_mut().for_each(|l| l.shuffle(rng));
    let quotas: Vec<(usize, usize)> = (0..nh)
        .map(|_| {
            let u = rng.gen_range(0..=max_upper);
            (rng.gen_range(0..=u), u)
        })
        .collect();
    build(&res_lists, &hosp_lists, &quotas)
}

pub fn build(
    res_lists: &[Vec<usize>],
    hosp_lists: &[Vec<usize>],
    quotas: &[(usize, usize)],
) -> Instance {
    let mut raw = RawInstance::default();
    for (r, list) in res_lists.iter().enumerate() {
        let names: Vec<String> = list.iter().map(|h| format!("h{}", h + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        raw = raw.resident(&format!("r{}", r + 1), &refs);
    }
    for (h, list) in hosp_lists.iter().enumerate() {
        let names: Vec<String> = list.iter().map(|r| format!("r{}", r + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        raw = raw.hospital(&format!("h{}", h + 1), quotas[h].0, quotas[h].1, &refs);
    }
    raw.validate().expect("generated instance is valid")
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// All strict lists over subsets of `0..n`.
fn all_lists(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        out.extend(permutations(&subset));
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

/// Every instance with `nr` residents and `nh` hospitals: all resident
/// lists, all hospital orders of the implied acceptable sets, and all
/// quotas with `l <= u <= max_upper`. Calls `visit` on each.
pub fn for_each_tiny_instance(
    nr: usize,
    nh: usize,
    max_upper: usize,
    mut visit: impl FnMut(&Instance),
) {
    let quota_options: Vec<(usize, usize)> = (0..=max_upper)
        .flat_map(|u| (0..=u).map(move |l| (l, u)))
        .collect();
    let quota_combos = cartesian(&vec![quota_options; nh]);
    let resident_lists = cartesian(&vec![all_lists(nh); nr]);
    for res_lists in &resident_lists {
        let acceptable: Vec<Vec<usize>> = (0..nh)
            .map(|h| (0..nr).filter(|&r| res_lists[r].contains(&h)).collect())
            .collect();
        let orders: Vec<Vec<Vec<usize>>> = acceptable.iter().map(|a| permutations(a)).collect();
        for hosp_lists in cartesian(&orders) {
            for quotas in &quota_combos {
                visit(&build(res_lists, &hosp_lists, quotas));
            }
        }
    }
}
