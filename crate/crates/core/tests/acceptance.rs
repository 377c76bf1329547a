//! Acceptance gate. Runs without the libtest harness so that every
//! criterion prints its own PASS/FAIL line; exits non-zero on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::oracle;
use hrlq::algorithms::{
    brute_min_ep, deferred_acceptance, enumerate_feasible, min_ep_exact, yokoi_envy_free,
    ExactOptions, ReducedHrInstance, DEFAULT_NODE_BUDGET,
};
use hrlq::format::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use hrlq::model::{blocking_pairs, envy_pairs, is_feasible, Instance, Matching};
use hrlq::reductions::{
    clique_to_min_er, gadget_matchings, vc_to_min_ep, CliqueReductionParams, GadgetChoice,
    GadgetVertex, SourceGraph, VcReductionParams,
};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn triangle(k: usize) -> SourceGraph {
    SourceGraph::new(3, vec![(1, 2), (1, 3), (2, 3)], k).unwrap()
}

fn triangle_plus_pendant(k: usize) -> SourceGraph {
    SourceGraph::new(4, vec![(1, 2), (1, 3), (2, 3), (3, 4)], k).unwrap()
}

fn four_cycle(k: usize) -> SourceGraph {
    SourceGraph::new(4, vec![(1, 2), (2, 3), (3, 4), (1, 4)], k).unwrap()
}

/// The invariants every test instance must satisfy.
fn structural(instance: &Instance, matchings: &[Matching]) -> Check {
    let empty = Matching::empty(instance);
    ensure!(
        envy_pairs(instance, &empty).is_empty(),
        "empty matching has envy"
    );
    for m in matchings.iter().chain(std::iter::once(&empty)) {
        let envy = envy_pairs(instance, m);
        let blocking = blocking_pairs(instance, m);
        ensure!(
            envy.iter().all(|p| blocking.contains(p)),
            "envy pair outside blocking pairs"
        );
        ensure!(
            envy == oracle::envy_pairs(instance, m),
            "envy pairs disagree with oracle"
        );
        ensure!(
            blocking == oracle::blocking_pairs(instance, m),
            "blocking pairs disagree with oracle"
        );
        let text = serialize_matching(instance, m);
        let back = parse_matching(&text, instance).map_err(|e| e.to_string())?;
        ensure!(
            serialize_matching(instance, &back) == text,
            "matching round trip differs"
        );
    }
    let reduced = ReducedHrInstance::from_lower_quotas(instance);
    let da = deferred_acceptance(reduced.instance());
    ensure!(
        oracle::blocking_pairs(reduced.instance(), &da).is_empty(),
        "DA leaves a blocking pair in the reduced instance"
    );
    let text = serialize_instance(instance);
    let parsed = parse_instance(&text).map_err(|e| e.to_string())?;
    ensure!(
        serialize_instance(&parsed) == text,
        "instance round trip differs"
    );
    ensure!(&parsed == instance, "parsed instance differs");
    Ok(())
}

fn random_feasible(rng: &mut impl rand::Rng, nr: usize, nh: usize, max_u: usize) -> Instance {
    loop {
        let inst = common::random_instance(rng, nr, nh, max_u, 0.6);
        if !oracle::all_feasible(&inst).is_empty() {
            return inst;
        }
    }
}

fn gadget_structure() -> Check {
    for l in [2, 3, 5] {
        let g = SourceGraph::new(2, vec![(1, 2)], 1).unwrap();
        let red =
            vc_to_min_ep(&g, VcReductionParams { gadget_length: l }).map_err(|e| e.to_string())?;
        let inst = &red.instance;
        let s: Vec<usize> = red.layout.gadget_residents(0).collect();
        let t: Vec<usize> = red.layout.gadget_hospitals(0).collect();
        let found: BTreeSet<BTreeSet<(usize, usize)>> = oracle::perfect_matchings(inst, &s, &t)
            .into_iter()
            .map(|pm| pm.into_iter().collect())
            .collect();
        let gm = gadget_matchings(l).map_err(|e| e.to_string())?;
        let to_ids = |pairs: &[(GadgetVertex, GadgetVertex)]| -> BTreeSet<(usize, usize)> {
            pairs
                .iter()
                .map(|&(a, b)| (red.layout.s(0, a), red.layout.t(0, b)))
                .collect()
        };
        let zero = to_ids(&gm.zero);
        let one = to_ids(&gm.one);
        ensure!(found.len() == 2, "l={l}: {} perfect matchings", found.len());
        ensure!(
            found == [zero.clone(), one.clone()].into(),
            "l={l}: perfect matchings differ from the generated pair"
        );
        ensure!(
            red.gadget_pairs(0, GadgetChoice::Zero)
                .into_iter()
                .collect::<BTreeSet<_>>()
                == zero,
            "l={l}: gadget_pairs(Zero) differs"
        );

        let gv = |side, copy| GadgetVertex { side, copy };
        let expected = [(&zero, (gv(1, 1), gv(0, 2))), (&one, (gv(0, 1), gv(0, 1)))];
        for (pairs, (sr, th)) in expected {
            let m = Matching::from_pairs(inst, pairs.iter().copied()).map_err(|e| e.to_string())?;
            let inside: Vec<(usize, usize)> = oracle::envy_pairs(inst, &m)
                .into_iter()
                .filter(|(r, h)| s.contains(r) && t.contains(h))
                .collect();
            ensure!(
                inside == vec![(red.layout.s(0, sr), red.layout.t(0, th))],
                "l={l}: gadget envy pairs {inside:?}"
            );
        }
    }
    Ok(())
}

fn vc_yes_bound() -> Check {
    let g = triangle(2);
    let red =
        vc_to_min_ep(&g, VcReductionParams { gadget_length: 10 }).map_err(|e| e.to_string())?;
    let m = red
        .matching_from_cover(&[1, 2].into())
        .map_err(|e| e.to_string())?;
    ensure!(
        oracle::feasible(&red.instance, &m),
        "certificate infeasible"
    );
    let count = envy_pairs(&red.instance, &m).len();
    let recount = oracle::envy_pairs(&red.instance, &m).len();
    ensure!(count <= 12, "{count} envy pairs exceed n^2+m = 12");
    ensure!(
        count == recount && count == 3,
        "count {count}, recount {recount}, expected 3"
    );
    structural(&red.instance, &[m])
}

fn vc_no_bound() -> Check {
    let g = triangle(1);
    let red =
        vc_to_min_ep(&g, VcReductionParams { gadget_length: 10 }).map_err(|e| e.to_string())?;
    let all: Vec<Matching> = enumerate_feasible(&red.instance, DEFAULT_NODE_BUDGET)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure!(
        all.len() == 48,
        "{} feasible matchings, expected 3!*2^3 = 48",
        all.len()
    );
    let distinct: BTreeSet<Vec<(usize, usize)>> = all.iter().map(|m| m.pairs().collect()).collect();
    ensure!(distinct.len() == 48, "duplicate matchings");
    ensure!(
        all.iter().all(|m| oracle::feasible(&red.instance, m)),
        "enumerated matching infeasible"
    );
    let min = all
        .iter()
        .map(|m| oracle::envy_pairs(&red.instance, m).len())
        .min()
        .unwrap();
    ensure!(min >= 13, "minimum {min} below n^2+m+1 = 13");
    Ok(())
}

fn clique_yes_bound() -> Check {
    let g = triangle_plus_pendant(3);
    let red =
        clique_to_min_er(&g, CliqueReductionParams { copies: 5 }).map_err(|e| e.to_string())?;
    let m = red
        .matching_from_clique(&[1, 2, 3].into())
        .map_err(|e| e.to_string())?;
    ensure!(
        oracle::feasible(&red.instance, &m),
        "certificate infeasible"
    );
    let count = oracle::envy_residents(&red.instance, &m);
    ensure!(
        count <= 9,
        "{count} envy residents exceed (m - C(K,2))t + n = 9"
    );
    structural(&red.instance, &[m])
}

fn clique_no_bound() -> Check {
    let g = four_cycle(3);
    let red =
        clique_to_min_er(&g, CliqueReductionParams { copies: 5 }).map_err(|e| e.to_string())?;
    let all: Vec<Matching> = enumerate_feasible(&red.instance, DEFAULT_NODE_BUDGET)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure!(
        all.len() == 24,
        "{} feasible matchings, expected 4! = 24",
        all.len()
    );
    ensure!(
        all.iter().all(|m| oracle::feasible(&red.instance, m)),
        "enumerated matching infeasible"
    );
    let min = all
        .iter()
        .map(|m| oracle::envy_residents(&red.instance, m))
        .min()
        .unwrap();
    ensure!(min >= 10, "minimum {min} below (m - C(K,2) + 1)t = 10");
    Ok(())
}

fn exact_equivalence() -> Check {
    let mut rng = common::rng(0x5eed_0006);
    for case in 0..500 {
        let inst = random_feasible(&mut rng, 6, 4, 2);
        let exact = min_ep_exact(&inst, ExactOptions::default())
            .map_err(|e| format!("case {case}: {e}"))?;
        let brute =
            brute_min_ep(&inst, DEFAULT_NODE_BUDGET).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            exact.objective == brute.objective,
            "case {case}: exact {} vs brute {}",
            exact.objective,
            brute.objective
        );
        ensure!(
            oracle::min_envy_pairs(&inst) == Some(exact.objective),
            "case {case}: oracle minimum differs from {}",
            exact.objective
        );
        ensure!(
            oracle::feasible(&inst, &exact.matching),
            "case {case}: exact matching infeasible"
        );
        let recount = oracle::envy_pairs(&inst, &exact.matching).len();
        ensure!(
            recount == exact.objective,
            "case {case}: recount {recount} vs objective {}",
            exact.objective
        );
        structural(&inst, &[exact.matching, brute.matching])?;
    }
    Ok(())
}

fn yokoi_case(inst: &Instance, label: &str) -> Check {
    let any_free = enumerate_feasible(inst, DEFAULT_NODE_BUDGET)
        .map(|m| m.map(|m| oracle::envy_pairs(inst, &m).is_empty()))
        .collect::<Result<Vec<bool>, _>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .any(|b| b);
    match yokoi_envy_free(inst) {
        Some(m) => {
            ensure!(any_free, "{label}: matching returned but none exists");
            ensure!(
                oracle::feasible(inst, &m),
                "{label}: returned matching infeasible"
            );
            ensure!(
                oracle::envy_pairs(inst, &m).is_empty(),
                "{label}: returned matching has envy"
            );
            structural(inst, &[m])
        }
        None => {
            ensure!(!any_free, "{label}: envy-free matching missed");
            structural(inst, &[])
        }
    }
}

fn yokoi_equivalence() -> Check {
    let mut failure = None;
    let mut count = 0;
    common::for_each_tiny_instance(2, 2, 2, |inst| {
        count += 1;
        if failure.is_none() {
            if let Err(e) = yokoi_case(inst, &format!("tiny #{count}")) {
                failure = Some(e);
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut rng = common::rng(0x5eed_0007);
    for case in 0..500 {
        let inst = common::exact_size_instance(&mut rng, 3, 3, 2, 0.6);
        yokoi_case(&inst, &format!("random 3x3 #{case}"))?;
    }
    Ok(())
}

fn cli_round_trips() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, triangle(2).to_string()).map_err(|e| e.to_string())?;
    for (sub, extra) in [("vc2ep", "--gadget-l"), ("clique2er", "--copies")] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = hrlq::cli::run(
            [
                "hrlq",
                "gen",
                sub,
                "--graph",
                graph.to_str().unwrap(),
                "--k",
                "2",
                extra,
                "3",
            ],
            &mut out,
            &mut err,
        );
        ensure!(code == 0, "gen {sub} exited {code}");
        let text = String::from_utf8(out).map_err(|e| e.to_string())?;
        let inst = parse_instance(&text).map_err(|e| e.to_string())?;
        ensure!(
            serialize_instance(&inst) == text,
            "gen {sub} output is not canonical"
        );
    }
    Ok(())
}

fn size_formulas() -> Check {
    let graphs = [
        triangle(2),
        triangle_plus_pendant(3),
        four_cycle(2),
        SourceGraph::new(5, vec![(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 5)], 3).unwrap(),
        SourceGraph::new(3, vec![], 0).unwrap(),
    ];
    for g in &graphs {
        let (n, m) = (g.num_vertices(), g.num_edges());
        for l in [2, 4, n * n + 1] {
            let red = vc_to_min_ep(g, VcReductionParams { gadget_length: l })
                .map_err(|e| e.to_string())?;
            let total = red.instance.num_residents() + red.instance.num_hospitals();
            ensure!(total == 2 * n + 4 * m * l, "vc n={n} m={m} l={l}: {total}");
        }
        for t in [1, 3, n + 1] {
            let red = clique_to_min_er(g, CliqueReductionParams { copies: t })
                .map_err(|e| e.to_string())?;
            let residents = red.instance.num_residents();
            ensure!(
                residents == m * t + n,
                "clique n={n} m={m} t={t}: {residents}"
            );
            ensure!(
                red.instance.num_hospitals() == n + 1,
                "clique hospital count"
            );
        }
    }
    Ok(())
}

fn structural_invariants() -> Check {
    cli_round_trips()?;
    let mut rng = common::rng(0x5eed_0008);
    for _ in 0..200 {
        let inst = common::random_instance(&mut rng, 5, 4, 2, 0.5);
        let all = oracle::all_feasible(&inst);
        let enumerated: Vec<Matching> = enumerate_feasible(&inst, DEFAULT_NODE_BUDGET)
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(
            enumerated.len() == all.len(),
            "enumeration count differs from oracle"
        );
        ensure!(
            enumerated.iter().all(|m| is_feasible(&inst, m)),
            "enumerated matching infeasible"
        );
        structural(&inst, &all)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Check);
    let criteria: [Criterion; 9] = [
        (
            "gadget perfect matchings and envy pairs",
            Duration::from_secs(1),
            gadget_structure,
        ),
        (
            "vertex cover yes-bound",
            Duration::from_secs(1),
            vc_yes_bound,
        ),
        (
            "vertex cover no-bound",
            Duration::from_secs(10),
            vc_no_bound,
        ),
        ("clique yes-bound", Duration::from_secs(1), clique_yes_bound),
        ("clique no-bound", Duration::from_secs(10), clique_no_bound),
        (
            "exact vs brute-force minimum envy-pairs",
            Duration::from_secs(60),
            exact_equivalence,
        ),
        (
            "envy-free decision vs enumeration",
            Duration::from_secs(60),
            yokoi_equivalence,
        ),
        (
            "structural invariants and round trips",
            Duration::from_secs(60),
            structural_invariants,
        ),
        (
            "reduction size formulas",
            Duration::from_secs(1),
            size_formulas,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (idx, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", idx + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {e}", idx + 1);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
