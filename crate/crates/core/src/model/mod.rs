//! Instance model for Hospitals/Residents with lower quotas, plus the
//! feasibility, envy and blocking predicates every solver is judged by.

mod envy;
mod instance;
mod matching;

pub use envy::{blocking_pairs, envy_pairs, envy_residents, is_envy_free, is_feasible, EnvyReport};
pub use instance::{
    validate_instance, EdgeId, HospitalId, Instance, Quota, RawHospital, RawInstance, RawResident,
    ResidentId, Side, ValidationError,
};
pub use matching::{Matching, MatchingError};
