use std::collections::BTreeSet;

use crate::model::{
    HospitalId, Instance, Matching, RawHospital, RawInstance, RawResident, ResidentId,
};

use super::{check_vertices, ReductionError, ReductionWarning, SourceGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueReductionParams {
    pub copies: usize,
}

impl CliqueReductionParams {
    /// `t = n + 1`.
    pub fn for_graph(graph: &SourceGraph) -> Self {
        CliqueReductionParams {
            copies: graph.num_vertices() + 1,
        }
    }
}

/// Residents: `C` (`K`), `F` (`n - K`), then `e^k_{i,j}` by (edge, copy).
/// Hospitals: `V` (`n`), then `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueLayout {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub m: usize,
}

impl CliqueLayout {
    pub fn c(&self, i: usize) -> ResidentId {
        i - 1
    }

    pub fn f(&self, i: usize) -> ResidentId {
        self.k + i - 1
    }

    /// Copy `copy` (1-based) of edge number `edge` (0-based).
    pub fn e(&self, edge: usize, copy: usize) -> ResidentId {
        self.n + edge * self.t + copy - 1
    }

    pub fn v(&self, i: usize) -> HospitalId {
        i - 1
    }

    pub fn x(&self) -> HospitalId {
        self.n
    }
}

#[derive(Debug, Clone)]
pub struct CliqueReduction {
    pub graph: SourceGraph,
    pub params: CliqueReductionParams,
    pub instance: Instance,
    pub layout: CliqueLayout,
    pub warnings: Vec<ReductionWarning>,
}

/// Builds the minimum envy-resident instance of `graph` with clique size
/// `graph.target()`. Vertex hospitals have quota `[1,1]`; `x` has
/// `[mt, mt]` and accepts exactly the edge residents.
pub fn clique_to_min_er(
    graph: &SourceGraph,
    params: CliqueReductionParams,
) -> Result<CliqueReduction, ReductionError> {
    let t = params.copies;
    if t < 1 {
        return Err(ReductionError::NoCopies);
    }
    let n = graph.num_vertices();
    let k = graph.target();
    let m = graph.num_edges();
    let mut warnings = Vec::new();
    if t < n + 1 {
        warnings.push(ReductionWarning::FewCopies { t, required: n + 1 });
    }

    let v_names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let c_names: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
    let f_names: Vec<String> = (1..=n - k).map(|i| format!("f{i}")).collect();

    let mut raw = RawInstance::default();
    for name in c_names.iter().chain(&f_names) {
        raw.residents.push(RawResident {
            name: name.clone(),
            prefs: v_names.clone(),
        });
    }
    let mut e_of_vertex: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    let mut all_e = Vec::with_capacity(m * t);
    for &(i, j) in graph.edges() {
        for copy in 1..=t {
            let name = format!("e{i}.{j}.{copy}");
            e_of_vertex[i].push(name.clone());
            e_of_vertex[j].push(name.clone());
            all_e.push(name.clone());
            raw.residents.push(RawResident {
                name,
                prefs: vec![
                    v_names[i - 1].clone(),
                    v_names[j - 1].clone(),
                    "x".to_string(),
                ],
            });
        }
    }

    for i in 1..=n {
        raw.hospitals.push(RawHospital {
            name: v_names[i - 1].clone(),
            lower: 1,
            upper: 1,
            prefs: c_names
                .iter()
                .chain(&e_of_vertex[i])
                .chain(&f_names)
                .cloned()
                .collect(),
        });
    }
    raw.hospitals.push(RawHospital {
        name: "x".to_string(),
        lower: m * t,
        upper: m * t,
        prefs: all_e,
    });

    let instance = raw
        .validate()
        .expect("clique construction is mutually acceptable");
    Ok(CliqueReduction {
        graph: graph.clone(),
        params,
        instance,
        layout: CliqueLayout { n, k, t, m },
        warnings,
    })
}

impl CliqueReduction {
    /// The yes-certificate matching built from a `K`-clique: `C` to the
    /// clique and `F` to the rest in ascending index order, every edge
    /// resident to `x`.
    pub fn matching_from_clique(
        &self,
        clique: &BTreeSet<usize>,
    ) -> Result<Matching, ReductionError> {
        check_vertices(&self.graph, clique)?;
        let vs: Vec<usize> = clique.iter().copied().collect();
        for (a, &u) in vs.iter().enumerate() {
            if let Some(&w) = vs[a + 1..].iter().find(|&&w| !self.graph.has_edge(u, w)) {
                return Err(ReductionError::NotAClique(u, w));
            }
        }
        if clique.len() != self.layout.k {
            return Err(ReductionError::WrongSize {
                expected: self.layout.k,
                got: clique.len(),
            });
        }

        let l = &self.layout;
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (1..=l.n).partition(|v| clique.contains(v));
        let mut pairs = Vec::with_capacity(l.n + l.m * l.t);
        for (idx, &v) in inside.iter().enumerate() {
            pairs.push((l.c(idx + 1), l.v(v)));
        }
        for (idx, &v) in outside.iter().enumerate() {
            pairs.push((l.f(idx + 1), l.v(v)));
        }
        for edge in 0..l.m {
            for copy in 1..=l.t {
                pairs.push((l.e(edge, copy), l.x()));
            }
        }
        Ok(Matching::from_pairs(&self.instance, pairs).expect("certificate uses instance edges"))
    }
}
