//! Envy-minimal feasible matchings for the Hospitals/Residents problem
//! with lower quotas, plus generators for the two hardness constructions
//! (vertex cover to minimum envy-pairs, clique to minimum envy-residents).
//!
//! * [`model`]: instances, matchings and the envy/blocking predicates.
//! * [`algorithms`]: deferred acceptance, the envy-free decision
//!   procedure, exact minimum envy-pair search and exhaustive oracles.
//! * [`reductions`]: instance generators and certificate matchings.
//! * [`format`] and [`cli`]: file formats and the `hrlq` command.

pub mod algorithms;
pub mod cli;
pub mod format;
pub mod model;
pub mod reductions;
