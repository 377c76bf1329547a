//! Instance generators for the two hardness constructions, with
//! certificate-to-matching constructors.
//!
//! * [`vc_to_min_ep`]: vertex cover to 0-1 minimum envy-pairs. Every
//!   source edge becomes a gadget of `2l` residents and `2l` hospitals
//!   whose acceptability graph is a `4l`-cycle.
//! * [`clique_to_min_er`]: clique to minimum envy-residents. Every source
//!   edge becomes `t` residents that must all be absorbed by one hospital.

use std::fmt;

use thiserror::Error;

mod clique;
mod graph;
mod vertex_cover;

pub use clique::{clique_to_min_er, CliqueLayout, CliqueReduction, CliqueReductionParams};
pub use graph::{GraphError, SourceGraph};
pub use vertex_cover::{
    gadget_matchings, vc_to_min_ep, GadgetChoice, GadgetMatchings, GadgetVertex, VcLayout,
    VcReduction, VcReductionParams,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("gadget length {0} is below 2")]
    GadgetTooShort(usize),
    #[error("copy count must be at least 1")]
    NoCopies,
    #[error("not a vertex cover: edge ({0},{1}) is uncovered")]
    NotACover(usize, usize),
    #[error("not a clique: ({0},{1}) is not an edge")]
    NotAClique(usize, usize),
    #[error("certificate has {got} vertices, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

/// Generator parameters that leave the instance well formed but make the
/// yes/no envy bounds overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionWarning {
    ShortGadget { l: usize, required: usize },
    FewCopies { t: usize, required: usize },
}

impl fmt::Display for ReductionWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionWarning::ShortGadget { l, required } => write!(
                f,
                "gadget length {l} is below n^2+1 = {required}; the envy-pair separation bound is void"
            ),
            ReductionWarning::FewCopies { t, required } => write!(
                f,
                "copy count {t} is below n+1 = {required}; the envy-resident separation bound is void"
            ),
        }
    }
}

pub(crate) fn check_vertices(
    graph: &SourceGraph,
    vertices: &std::collections::BTreeSet<usize>,
) -> Result<(), ReductionError> {
    match vertices
        .iter()
        .find(|&&v| v < 1 || v > graph.num_vertices())
    {
        Some(&v) => Err(ReductionError::UnknownVertex(v)),
        None => Ok(()),
    }
}
