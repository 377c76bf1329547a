use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Dense index of a resident, assigned by declaration order.
pub type ResidentId = usize;
/// Dense index of a hospital, assigned by declaration order.
pub type HospitalId = usize;
/// Index into [`Instance::edges`].
pub type EdgeId = usize;

/// Admissible occupancy interval `[lower, upper]` of a hospital.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quota {
    pub lower: usize,
    pub upper: usize,
}

impl Quota {
    pub fn new(lower: usize, upper: usize) -> Self {
        Quota { lower, upper }
    }

    pub fn contains(&self, occupancy: usize) -> bool {
        self.lower <= occupancy && occupancy <= self.upper
    }
}

impl fmt::Display for Quota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lower, self.upper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawResident {
    pub name: String,
    pub prefs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawHospital {
    pub name: String,
    pub lower: usize,
    pub upper: usize,
    pub prefs: Vec<String>,
}

/// Name-based, unchecked description of an instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub residents: Vec<RawResident>,
    pub hospitals: Vec<RawHospital>,
}

impl RawInstance {
    pub fn resident(mut self, name: &str, prefs: &[&str]) -> Self {
        self.residents.push(RawResident {
            name: name.to_string(),
            prefs: prefs.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn hospital(mut self, name: &str, lower: usize, upper: usize, prefs: &[&str]) -> Self {
        self.hospitals.push(RawHospital {
            name: name.to_string(),
            lower,
            upper,
            prefs: prefs.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn validate(&self) -> Result<Instance, Vec<ValidationError>> {
        validate_instance(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Resident,
    Hospital,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Resident => f.write_str("resident"),
            Side::Hospital => f.write_str("hospital"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("quota inversion at {hospital}: [{lower},{upper}]")]
    QuotaInversion {
        hospital: String,
        lower: usize,
        upper: usize,
    },
    #[error("one-sided acceptability ({resident},{hospital}): only the {listed_by} lists it")]
    OneSided {
        resident: String,
        hospital: String,
        listed_by: Side,
    },
    #[error("duplicate preference entry {entry} in the list of {side} {owner}")]
    DuplicateEntry {
        side: Side,
        owner: String,
        entry: String,
    },
    #[error("{side} {owner} lists unknown name {name}")]
    UnknownName {
        side: Side,
        owner: String,
        name: String,
    },
    #[error("{side} {name} declared more than once")]
    DuplicateName { side: Side, name: String },
}

/// A validated HRLQ instance: mutual acceptability, strict lists and
/// quota intervals with `lower <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    residents: Vec<String>,
    hospitals: Vec<String>,
    resident_prefs: Vec<Vec<HospitalId>>,
    hospital_prefs: Vec<Vec<ResidentId>>,
    quotas: Vec<Quota>,
    edges: Vec<(ResidentId, HospitalId)>,
    resident_index: HashMap<String, ResidentId>,
    hospital_index: HashMap<String, HospitalId>,
    resident_rank: Vec<HashMap<HospitalId, usize>>,
    hospital_rank: Vec<HashMap<ResidentId, usize>>,
    // edge id of each entry of resident_prefs, aligned by position
    pref_edges: Vec<Vec<EdgeId>>,
}

/// Checks every invariant of `raw` and returns either the canonical
/// instance or the full list of violations.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance, Vec<ValidationError>> {
    let mut errors = Vec::new();

    let mut resident_index = HashMap::new();
    for (i, r) in raw.residents.iter().enumerate() {
        if resident_index.insert(r.name.clone(), i).is_some() {
            errors.push(ValidationError::DuplicateName {
                side: Side::Resident,
                name: r.name.clone(),
            });
        }
    }
    let mut hospital_index = HashMap::new();
    for (i, h) in raw.hospitals.iter().enumerate() {
        if hospital_index.insert(h.name.clone(), i).is_some() {
            errors.push(ValidationError::DuplicateName {
                side: Side::Hospital,
                name: h.name.clone(),
            });
        }
        if h.lower > h.upper {
            errors.push(ValidationError::QuotaInversion {
                hospital: h.name.clone(),
                lower: h.lower,
                upper: h.upper,
            });
        }
    }

    let resident_prefs = resolve_lists(
        raw.residents.iter().map(|r| (&r.name, &r.prefs)),
        &hospital_index,
        Side::Resident,
        &mut errors,
    );
    let hospital_prefs = resolve_lists(
        raw.hospitals.iter().map(|h| (&h.name, &h.prefs)),
        &resident_index,
        Side::Hospital,
        &mut errors,
    );

    let from_residents: HashSet<(usize, usize)> = resident_prefs
        .iter()
        .enumerate()
        .flat_map(|(r, list)| list.iter().map(move |&h| (r, h)))
        .collect();
    let from_hospitals: HashSet<(usize, usize)> = hospital_prefs
        .iter()
        .enumerate()
        .flat_map(|(h, list)| list.iter().map(move |&r| (r, h)))
        .collect();
    let mut one_sided: Vec<(usize, usize, Side)> = from_residents
        .difference(&from_hospitals)
        .map(|&(r, h)| (r, h, Side::Resident))
        .chain(
            from_hospitals
                .difference(&from_residents)
                .map(|&(r, h)| (r, h, Side::Hospital)),
        )
        .collect();
    one_sided.sort_by_key(|&(r, h, _)| (r, h));
    for (r, h, listed_by) in one_sided {
        errors.push(ValidationError::OneSided {
            resident: raw.residents[r].name.clone(),
            hospital: raw.hospitals[h].name.clone(),
            listed_by,
        });
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    let quotas = raw
        .hospitals
        .iter()
        .map(|h| Quota::new(h.lower, h.upper))
        .collect();
    Ok(Instance::assemble(
        raw.residents.iter().map(|r| r.name.clone()).collect(),
        raw.hospitals.iter().map(|h| h.name.clone()).collect(),
        resident_prefs,
        hospital_prefs,
        quotas,
    ))
}

fn resolve_lists<'a>(
    lists: impl Iterator<Item = (&'a String, &'a Vec<String>)>,
    index: &HashMap<String, usize>,
    side: Side,
    errors: &mut Vec<ValidationError>,
) -> Vec<Vec<usize>> {
    lists
        .map(|(owner, names)| {
            let mut seen = HashSet::new();
            let mut resolved = Vec::with_capacity(names.len());
            for name in names {
                match index.get(name) {
                    None => errors.push(ValidationError::UnknownName {
                        side,
                        owner: owner.clone(),
                        name: name.clone(),
                    }),
                    Some(&i) if !seen.insert(i) => errors.push(ValidationError::DuplicateEntry {
                        side,
                        owner: owner.clone(),
                        entry: name.clone(),
                    }),
                    Some(&i) => resolved.push(i),
                }
            }
            resolved
        })
        .collect()
}

impl Instance {
    // Callers guarantee the invariants; only derived tables are built here.
    fn assemble(
        residents: Vec<String>,
        hospitals: Vec<String>,
        resident_prefs: Vec<Vec<HospitalId>>,
        hospital_prefs: Vec<Vec<ResidentId>>,
        quotas: Vec<Quota>,
    ) -> Self {
        let resident_index = residents
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let hospital_index = hospitals
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let rank_table = |lists: &[Vec<usize>]| -> Vec<HashMap<usize, usize>> {
            lists
                .iter()
                .map(|list| list.iter().enumerate().map(|(pos, &x)| (x, pos)).collect())
                .collect()
        };
        let resident_rank = rank_table(&resident_prefs);
        let hospital_rank = rank_table(&hospital_prefs);

        let mut edges: Vec<(ResidentId, HospitalId)> = resident_prefs
            .iter()
            .enumerate()
            .flat_map(|(r, list)| list.iter().map(move |&h| (r, h)))
            .collect();
        edges.sort_unstable();
        let edge_lookup: HashMap<(usize, usize), EdgeId> =
            edges.iter().enumerate().map(|(e, &p)| (p, e)).collect();
        let pref_edges = resident_prefs
            .iter()
            .enumerate()
            .map(|(r, list)| list.iter().map(|&h| edge_lookup[&(r, h)]).collect())
            .collect();

        Instance {
            residents,
            hospitals,
            resident_prefs,
            hospital_prefs,
            quotas,
            edges,
            resident_index,
            hospital_index,
            resident_rank,
            hospital_rank,
            pref_edges,
        }
    }

    pub fn num_residents(&self) -> usize {
        self.residents.len()
    }

    pub fn num_hospitals(&self) -> usize {
        self.hospitals.len()
    }

    pub fn resident_name(&self, r: ResidentId) -> &str {
        &self.residents[r]
    }

    pub fn hospital_name(&self, h: HospitalId) -> &str {
        &self.hospitals[h]
    }

    pub fn resident_id(&self, name: &str) -> Option<ResidentId> {
        self.resident_index.get(name).copied()
    }

    pub fn hospital_id(&self, name: &str) -> Option<HospitalId> {
        self.hospital_index.get(name).copied()
    }

    /// Acceptable hospitals of `r`, most preferred first.
    pub fn resident_prefs(&self, r: ResidentId) -> &[HospitalId] {
        &self.resident_prefs[r]
    }

    /// Acceptable residents of `h`, most preferred first.
    pub fn hospital_prefs(&self, h: HospitalId) -> &[ResidentId] {
        &self.hospital_prefs[h]
    }

    pub fn quota(&self, h: HospitalId) -> Quota {
        self.quotas[h]
    }

    pub fn quotas(&self) -> &[Quota] {
        &self.quotas
    }

    /// Acceptable pairs sorted by resident index, then hospital index.
    /// The position of a pair in this slice is its [`EdgeId`].
    pub fn edges(&self) -> &[(ResidentId, HospitalId)] {
        &self.edges
    }

    pub fn edge_id(&self, r: ResidentId, h: HospitalId) -> Option<EdgeId> {
        self.edges.binary_search(&(r, h)).ok()
    }

    pub fn is_acceptable(&self, r: ResidentId, h: HospitalId) -> bool {
        r < self.residents.len() && self.resident_rank[r].contains_key(&h)
    }

    /// Position of `h` in the list of `r` (0 = most preferred).
    pub fn resident_rank(&self, r: ResidentId, h: HospitalId) -> Option<usize> {
        self.resident_rank[r].get(&h).copied()
    }

    /// Position of `r` in the list of `h` (0 = most preferred).
    pub fn hospital_rank(&self, h: HospitalId, r: ResidentId) -> Option<usize> {
        self.hospital_rank[h].get(&r).copied()
    }

    /// Edge ids of `r`'s list, aligned with [`Instance::resident_prefs`].
    pub(crate) fn pref_edges(&self, r: ResidentId) -> &[EdgeId] {
        &self.pref_edges[r]
    }

    /// `h ≻_r current`, where an unmatched resident prefers every
    /// acceptable hospital.
    pub fn resident_prefers(
        &self,
        r: ResidentId,
        h: HospitalId,
        current: Option<HospitalId>,
    ) -> bool {
        let Some(candidate) = self.resident_rank(r, h) else {
            return false;
        };
        match current.and_then(|c| self.resident_rank(r, c)) {
            Some(held) => candidate < held,
            None => current.is_none(),
        }
    }

    pub fn total_lower_quota(&self) -> usize {
        self.quotas.iter().map(|q| q.lower).sum()
    }

    /// Same graph and lists with every quota replaced by `f(h, quota)`.
    pub fn with_quotas(&self, f: impl Fn(HospitalId, Quota) -> Quota) -> Instance {
        let mut out = self.clone();
        out.quotas = self
            .quotas
            .iter()
            .enumerate()
            .map(|(h, &q)| f(h, q))
            .collect();
        debug_assert!(out.quotas.iter().all(|q| q.lower <= q.upper));
        out
    }

    /// Deletes the given edges from both preference lists, keeping the
    /// relative order of the remaining entries.
    pub fn without_edges(&self, removed: &[EdgeId]) -> Instance {
        let drop: HashSet<(usize, usize)> = removed.iter().map(|&e| self.edges[e]).collect();
        let resident_prefs = self
            .resident_prefs
            .iter()
            .enumerate()
            .map(|(r, list)| {
                list.iter()
                    .copied()
                    .filter(|&h| !drop.contains(&(r, h)))
                    .collect()
            })
            .collect();
        let hospital_prefs = self
            .hospital_prefs
            .iter()
            .enumerate()
            .map(|(h, list)| {
                list.iter()
                    .copied()
                    .filter(|&r| !drop.contains(&(r, h)))
                    .collect()
            })
            .collect();
        Instance::assemble(
            self.residents.clone(),
            self.hospitals.clone(),
            resident_prefs,
            hospital_prefs,
            self.quotas.clone(),
        )
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            residents: (0..self.num_residents())
                .map(|r| RawResident {
                    name: self.residents[r].clone(),
                    prefs: self.resident_prefs[r]
                        .iter()
                        .map(|&h| self.hospitals[h].clone())
                        .collect(),
                })
                .collect(),
            hospitals: (0..self.num_hospitals())
                .map(|h| RawHospital {
                    name: self.hospitals[h].clone(),
                    lower: self.quotas[h].lower,
                    upper: self.quotas[h].upper,
                    prefs: self.hospital_prefs[h]
                        .iter()
                        .map(|&r| self.residents[r].clone())
                        .collect(),
                })
                .collect(),
        }
    }
}
