use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

/// Simple undirected graph on vertices `1..=n` with a target parameter `k`
/// (cover size or clique size).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0},{1}) must satisfy 1 <= i < j <= n")]
    BadEdge(usize, usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("target {k} exceeds vertex count {n}")]
    TargetTooLarge { k: usize, n: usize },
}

impl SourceGraph {
    /// `edges` are 1-based pairs `(i, j)` with `i < j`; their order is the
    /// edge index order used by the generators.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, k: usize) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        for &(i, j) in &edges {
            if i < 1 || i >= j || j > n {
                return Err(GraphError::BadEdge(i, j));
            }
            if !seen.insert((i, j)) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
        }
        if k > n {
            return Err(GraphError::TargetTooLarge { k, n });
        }
        Ok(SourceGraph { n, edges, k })
    }

    pub fn with_target(&self, k: usize) -> Result<Self, GraphError> {
        SourceGraph::new(self.n, self.edges.clone(), k)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn target(&self) -> usize {
        self.k
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&(i, j))
    }

    pub fn is_vertex_cover(&self, cover: &BTreeSet<usize>) -> bool {
        self.edges
            .iter()
            .all(|(i, j)| cover.contains(i) || cover.contains(j))
    }

    pub fn is_clique(&self, vertices: &BTreeSet<usize>) -> bool {
        let vs: Vec<usize> = vertices.iter().copied().collect();
        vs.iter()
            .enumerate()
            .all(|(a, &u)| vs[a + 1..].iter().all(|&w| self.has_edge(u, w)))
    }
}

impl fmt::Display for SourceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p {} {}", self.n, self.edges.len())?;
        for (i, j) in &self.edges {
            writeln!(f, "e {i} {j}")?;
        }
        Ok(())
    }
}
