use std::collections::BTreeSet;

use crate::model::{
    HospitalId, Instance, Matching, RawHospital, RawInstance, RawResident, ResidentId,
};

use super::{check_vertices, ReductionError, ReductionWarning, SourceGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VcReductionParams {
    pub gadget_length: usize,
}

impl VcReductionParams {
    /// `l = n² + 1`, the smallest length for which the bounds separate.
    pub fn for_graph(graph: &SourceGraph) -> Self {
        let n = graph.num_vertices();
        VcReductionParams {
            gadget_length: n * n + 1,
        }
    }
}

/// A gadget resident `s_{side,copy}` or hospital `t_{side,copy}`;
/// `copy` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GadgetVertex {
    pub side: u8,
    pub copy: usize,
}

const fn gv(side: u8, copy: usize) -> GadgetVertex {
    GadgetVertex { side, copy }
}

/// The two perfect matchings of a gadget, as (resident, hospital) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMatchings {
    pub zero: Vec<(GadgetVertex, GadgetVertex)>,
    pub one: Vec<(GadgetVertex, GadgetVertex)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetChoice {
    /// Used when the lower endpoint `v_i` is outside the cover.
    Zero,
    /// Used when `v_i` is in the cover.
    One,
}

/// `M_0` and `M_1` of a gadget with length `l`.
pub fn gadget_matchings(l: usize) -> Result<GadgetMatchings, ReductionError> {
    if l < 2 {
        return Err(ReductionError::GadgetTooShort(l));
    }
    let mut zero: Vec<_> = (1..=l).map(|a| (gv(0, a), gv(0, a))).collect();
    zero.extend((1..l).map(|a| (gv(1, a), gv(1, a + 1))));
    zero.push((gv(1, l), gv(1, 1)));

    let mut one = vec![(gv(0, 1), gv(1, 1))];
    one.extend((2..l).map(|a| (gv(0, a), gv(0, a + 1))));
    one.push((gv(0, l), gv(0, 1)));
    one.push((gv(1, 1), gv(0, 2)));
    one.extend((2..=l).map(|a| (gv(1, a), gv(1, a))));
    Ok(GadgetMatchings { zero, one })
}

enum Entry {
    Gadget(GadgetVertex),
    Vertex,
}

// Preference list of s_{side,a}: first choice, the graph vertex, third choice.
fn resident_list(side: u8, a: usize, l: usize) -> [Entry; 3] {
    let wrap = if a == l { 1 } else { a + 1 };
    let (first, third) = match (side, a) {
        (0, 1) => (gv(0, 1), gv(1, 1)),
        (0, _) => (gv(0, a), gv(0, wrap)),
        (_, 1) => (gv(0, 2), gv(1, 2)),
        _ => (gv(1, a), gv(1, wrap)),
    };
    [Entry::Gadget(first), Entry::Vertex, Entry::Gadget(third)]
}

// Preference list of t_{side,a}: two gadget residents.
fn hospital_list(side: u8, a: usize, l: usize) -> [GadgetVertex; 2] {
    match (side, a) {
        (0, 1) => [gv(0, 1), gv(0, l)],
        (0, 2) => [gv(1, 1), gv(0, 2)],
        (0, _) => [gv(0, a - 1), gv(0, a)],
        (_, 1) => [gv(0, 1), gv(1, l)],
        (_, 2) => [gv(1, 1), gv(1, 2)],
        _ => [gv(1, a - 1), gv(1, a)],
    }
}

/// Index arithmetic of a generated vertex-cover instance.
///
/// Residents are `C` (`K`), then `F` (`n - K`), then the gadget residents
/// edge by edge; within a gadget side 0 precedes side 1 and copies ascend.
/// Hospitals are `V` (`n`) then the gadget hospitals in the same order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VcLayout {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
}

impl VcLayout {
    pub fn c(&self, i: usize) -> ResidentId {
        i - 1
    }

    pub fn f(&self, i: usize) -> ResidentId {
        self.k + i - 1
    }

    pub fn v(&self, i: usize) -> HospitalId {
        i - 1
    }

    fn gadget_offset(&self, edge: usize, x: GadgetVertex) -> usize {
        self.n + edge * 2 * self.l + x.side as usize * self.l + x.copy - 1
    }

    /// Gadget resident of edge number `edge` (0-based, source order).
    pub fn s(&self, edge: usize, x: GadgetVertex) -> ResidentId {
        self.gadget_offset(edge, x)
    }

    pub fn t(&self, edge: usize, x: GadgetVertex) -> HospitalId {
        self.gadget_offset(edge, x)
    }

    pub fn gadget_residents(&self, edge: usize) -> std::ops::Range<ResidentId> {
        let start = self.n + edge * 2 * self.l;
        start..start + 2 * self.l
    }

    pub fn gadget_hospitals(&self, edge: usize) -> std::ops::Range<HospitalId> {
        self.gadget_residents(edge)
    }
}

#[derive(Debug, Clone)]
pub struct VcReduction {
    pub graph: SourceGraph,
    pub params: VcReductionParams,
    pub instance: Instance,
    pub layout: VcLayout,
    pub warnings: Vec<ReductionWarning>,
}

/// Builds the 0-1 minimum envy-pair instance of `graph` with cover size
/// `graph.target()`. Every hospital has quota `[1,1]`.
pub fn vc_to_min_ep(
    graph: &SourceGraph,
    params: VcReductionParams,
) -> Result<VcReduction, ReductionError> {
    let l = params.gadget_length;
    if l < 2 {
        return Err(ReductionError::GadgetTooShort(l));
    }
    let n = graph.num_vertices();
    let k = graph.target();
    let mut warnings = Vec::new();
    if l < n * n + 1 {
        warnings.push(ReductionWarning::ShortGadget {
            l,
            required: n * n + 1,
        });
    }

    let gadget_name = |prefix: char, edge: usize, x: GadgetVertex| {
        let (i, j) = graph.edges()[edge];
        format!("{prefix}{i}.{j}.{}.{}", x.side, x.copy)
    };
    let v_names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let c_names: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
    let f_names: Vec<String> = (1..=n - k).map(|i| format!("f{i}")).collect();
    let sides = || {
        [0u8, 1]
            .into_iter()
            .flat_map(move |side| (1..=l).map(move |a| gv(side, a)))
    };

    let mut raw = RawInstance::default();
    for name in c_names.iter().chain(&f_names) {
        raw.residents.push(RawResident {
            name: name.clone(),
            prefs: v_names.clone(),
        });
    }
    // gadget residents acceptable to each v_i, in (edge, side, copy) order
    let mut s_of_vertex: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    for (edge, &(i, j)) in graph.edges().iter().enumerate() {
        for x in sides() {
            let endpoint = if x.side == 0 { i } else { j };
            let name = gadget_name('s', edge, x);
            let prefs = resident_list(x.side, x.copy, l)
                .iter()
                .map(|entry| match entry {
                    Entry::Gadget(y) => gadget_name('t', edge, *y),
                    Entry::Vertex => v_names[endpoint - 1].clone(),
                })
                .collect();
            s_of_vertex[endpoint].push(name.clone());
            raw.residents.push(RawResident { name, prefs });
        }
    }

    for i in 1..=n {
        let prefs = c_names
            .iter()
            .chain(&s_of_vertex[i])
            .chain(&f_names)
            .cloned()
            .collect();
        raw.hospitals.push(RawHospital {
            name: v_names[i - 1].clone(),
            lower: 1,
            upper: 1,
            prefs,
        });
    }
    for edge in 0..graph.num_edges() {
        for x in sides() {
            raw.hospitals.push(RawHospital {
                name: gadget_name('t', edge, x),
                lower: 1,
                upper: 1,
                prefs: hospital_list(x.side, x.copy, l)
                    .iter()
                    .map(|&y| gadget_name('s', edge, y))
                    .collect(),
            });
        }
    }

    let instance = raw
        .validate()
        .expect("vertex-cover construction is mutually acceptable");
    Ok(VcReduction {
        graph: graph.clone(),
        params,
        instance,
        layout: VcLayout {
            n,
            k,
            l,
            m: graph.num_edges(),
        },
        warnings,
    })
}

impl VcReduction {
    /// `M_0` or `M_1` of gadget `edge` in instance indices.
    pub fn gadget_pairs(&self, edge: usize, choice: GadgetChoice) -> Vec<(ResidentId, HospitalId)> {
        let gm = gadget_matchings(self.layout.l).expect("validated at construction");
        let pairs = match choice {
            GadgetChoice::Zero => gm.zero,
            GadgetChoice::One => gm.one,
        };
        pairs
            .into_iter()
            .map(|(s, t)| (self.layout.s(edge, s), self.layout.t(edge, t)))
            .collect()
    }

    /// The yes-certificate matching built from a vertex cover.
    ///
    /// A cover smaller than `K` is padded with the lowest-index uncovered
    /// vertices. `C` goes to the cover and `F` to the rest, both in
    /// ascending index order; gadget `(v_i, v_j)` gets `M_1` when `v_i` is
    /// in the cover and `M_0` otherwise.
    pub fn matching_from_cover(&self, cover: &BTreeSet<usize>) -> Result<Matching, ReductionError> {
        check_vertices(&self.graph, cover)?;
        if let Some(&(i, j)) = self
            .graph
            .edges()
            .iter()
            .find(|(i, j)| !cover.contains(i) && !cover.contains(j))
        {
            return Err(ReductionError::NotACover(i, j));
        }
        let k = self.layout.k;
        if cover.len() > k {
            return Err(ReductionError::WrongSize {
                expected: k,
                got: cover.len(),
            });
        }
        let mut padded = cover.clone();
        for v in 1..=self.layout.n {
            if padded.len() == k {
                break;
            }
            padded.insert(v);
        }
        if padded.len() != k {
            return Err(ReductionError::WrongSize {
                expected: k,
                got: padded.len(),
            });
        }

        let mut pairs = Vec::new();
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (1..=self.layout.n).partition(|v| padded.contains(v));
        for (idx, &v) in inside.iter().enumerate() {
            pairs.push((self.layout.c(idx + 1), self.layout.v(v)));
        }
        for (idx, &v) in outside.iter().enumerate() {
            pairs.push((self.layout.f(idx + 1), self.layout.v(v)));
        }
        for (edge, &(i, _)) in self.graph.edges().iter().enumerate() {
            let choice = if padded.contains(&i) {
                GadgetChoice::One
            } else {
                GadgetChoice::Zero
            };
            pairs.extend(self.gadget_pairs(edge, choice));
        }
        Ok(Matching::from_pairs(&self.instance, pairs).expect("certificate uses instance edges"))
    }
}
