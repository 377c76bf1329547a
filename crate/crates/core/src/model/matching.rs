use thiserror::Error;

use super::instance::{HospitalId, Instance, ResidentId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("unacceptable pair ({resident},{hospital})")]
    Unacceptable { resident: String, hospital: String },
    #[error("resident {0} assigned more than once")]
    DuplicateResident(String),
    #[error("index out of range: resident {resident}, hospital {hospital}")]
    OutOfRange {
        resident: ResidentId,
        hospital: HospitalId,
    },
}

/// Partial assignment of residents to hospitals.
///
/// Occupant lists are kept sorted by resident index so that equal
/// matchings compare and print identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    assignment: Vec<Option<HospitalId>>,
    occupants: Vec<Vec<ResidentId>>,
}

impl Matching {
    pub fn empty(instance: &Instance) -> Self {
        Self::with_sizes(instance.num_residents(), instance.num_hospitals())
    }

    pub fn with_sizes(num_residents: usize, num_hospitals: usize) -> Self {
        Matching {
            assignment: vec![None; num_residents],
            occupants: vec![Vec::new(); num_hospitals],
        }
    }

    /// Builds a matching from index pairs, rejecting unacceptable pairs
    /// and residents that appear twice.
    pub fn from_pairs(
        instance: &Instance,
        pairs: impl IntoIterator<Item = (ResidentId, HospitalId)>,
    ) -> Result<Self, MatchingError> {
        let mut m = Matching::empty(instance);
        for (r, h) in pairs {
            if r >= instance.num_residents() || h >= instance.num_hospitals() {
                return Err(MatchingError::OutOfRange {
                    resident: r,
                    hospital: h,
                });
            }
            if !instance.is_acceptable(r, h) {
                return Err(MatchingError::Unacceptable {
                    resident: instance.resident_name(r).to_string(),
                    hospital: instance.hospital_name(h).to_string(),
                });
            }
            if m.assignment[r].is_some() {
                return Err(MatchingError::DuplicateResident(
                    instance.resident_name(r).to_string(),
                ));
            }
            m.assign(r, h);
        }
        Ok(m)
    }

    /// Moves `r` to `h`, releasing its previous seat. Acceptability is the
    /// caller's responsibility.
    pub fn assign(&mut self, r: ResidentId, h: HospitalId) {
        self.unassign(r);
        self.assignment[r] = Some(h);
        let seats = &mut self.occupants[h];
        let pos = seats.binary_search(&r).unwrap_err();
        seats.insert(pos, r);
    }

    pub fn unassign(&mut self, r: ResidentId) -> Option<HospitalId> {
        let old = self.assignment[r].take()?;
        let seats = &mut self.occupants[old];
        if let Ok(pos) = seats.binary_search(&r) {
            seats.remove(pos);
        }
        Some(old)
    }

    pub fn hospital_of(&self, r: ResidentId) -> Option<HospitalId> {
        self.assignment[r]
    }

    /// `M(h)`, sorted by resident index.
    pub fn occupants(&self, h: HospitalId) -> &[ResidentId] {
        &self.occupants[h]
    }

    pub fn occupancy(&self, h: HospitalId) -> usize {
        self.occupants[h].len()
    }

    pub fn num_residents(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_hospitals(&self) -> usize {
        self.occupants.len()
    }

    /// Number of matched residents.
    pub fn size(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }

    /// Assigned pairs in resident index order.
    pub fn pairs(&self) -> impl Iterator<Item = (ResidentId, HospitalId)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(r, h)| h.map(|h| (r, h)))
    }

    /// True if the matching has the instance's shape and uses only edges of E.
    pub fn respects(&self, instance: &Instance) -> bool {
        self.num_residents() == instance.num_residents()
            && self.num_hospitals() == instance.num_hospitals()
            && self.pairs().all(|(r, h)| instance.is_acceptable(r, h))
    }
}
