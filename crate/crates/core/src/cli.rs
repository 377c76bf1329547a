//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams to it.
//!
//! Exit codes: 0 solution produced or verification done, 1 no solution
//! (no envy-free matching, infeasible instance), 2 input error, 3 node
//! budget or guess level cap exceeded.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algorithms::{
    brute_min_ep, brute_min_er, deferred_acceptance, min_ep_exact, yokoi_envy_free, ExactOptions,
    SearchStats, SolveError, SolveResult, DEFAULT_NODE_BUDGET,
};
use crate::format::{
    name_pairs, parse_graph, parse_instance, parse_matching, serialize_instance, serialize_matching,
};
use crate::model::{EnvyReport, Instance, Matching};
use crate::reductions::{
    clique_to_min_er, vc_to_min_ep, CliqueReductionParams, ReductionWarning, VcReductionParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hrlq",
    version,
    about = "Envy-minimal matchings with lower quotas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance with one algorithm
    Solve(SolveArgs),
    /// Report feasibility, envy and blocking pairs of a matching
    Verify(VerifyArgs),
    /// Generate a reduction instance from a graph
    #[command(subcommand)]
    Gen(GenCommand),
    /// Exhaustive minimum envy-pairs and minimum envy-residents
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Da,
    Yokoi,
    MinEp,
    BruteEp,
    BruteEr,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Da => "da",
            Algorithm::Yokoi => "yokoi",
            Algorithm::MinEp => "min-ep",
            Algorithm::BruteEp => "brute-ep",
            Algorithm::BruteEr => "brute-er",
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    alg: Algorithm,
    /// Instance file
    #[arg(long = "in")]
    input: PathBuf,
    /// Also write the matching to this file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Node budget of the exhaustive oracles
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Highest guess level of the exact algorithm
    #[arg(long)]
    level_cap: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Matching file
    #[arg(long)]
    matching: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Vertex cover to 0-1 minimum envy-pairs
    Vc2ep(GenArgs),
    /// Clique to minimum envy-residents
    Clique2er(GenArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Graph file (`p n m` / `e i j`)
    #[arg(long)]
    graph: PathBuf,
    /// Cover size or clique size
    #[arg(long)]
    k: usize,
    /// Gadget length (vc2ep); defaults to n^2+1
    #[arg(long)]
    gadget_l: Option<usize>,
    /// Copies per edge (clique2er); defaults to n+1
    #[arg(long)]
    copies: Option<usize>,
    /// Write the instance here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Certificate, `cover:v1,v2` or `clique:v1,v2,v3`
    #[arg(long)]
    cert: Option<String>,
    /// Write the certificate matching here
    #[arg(long)]
    cert_out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// Machine-readable result of one run. Every count is recomputed from
/// the instance and the matching.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub algorithm: Option<String>,
    pub objective_kind: Option<String>,
    pub objective: Option<usize>,
    pub feasible: bool,
    pub envy_free: bool,
    pub envy_pair_count: usize,
    pub envy_resident_count: usize,
    pub blocking_pair_count: usize,
    pub matching: Vec<(String, String)>,
    pub envy_pairs: Vec<(String, String)>,
    pub envy_residents: Vec<String>,
    pub blocking_pairs: Vec<(String, String)>,
    pub deficient_hospitals: Vec<String>,
    pub over_subscribed_hospitals: Vec<String>,
    pub stats: Option<StatsReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub guess_sets_examined: u64,
    pub level: Option<usize>,
    pub nodes: u64,
    pub successful_guess: Option<Vec<(String, String)>>,
}

impl StatsReport {
    fn new(instance: &Instance, stats: &SearchStats) -> Self {
        StatsReport {
            guess_sets_examined: stats.guess_sets_examined,
            level: stats.level,
            nodes: stats.nodes,
            successful_guess: stats.successful_guess.as_ref().map(|edges| {
                let pairs: Vec<_> = edges.iter().map(|&e| instance.edges()[e]).collect();
                name_pairs(instance, &pairs)
            }),
        }
    }
}

impl RunReport {
    pub fn new(instance: &Instance, matching: &Matching) -> Self {
        let report = EnvyReport::new(instance, matching);
        let pairs: Vec<_> = matching.pairs().collect();
        let hospital_names = |hs: &[usize]| {
            hs.iter()
                .map(|&h| instance.hospital_name(h).to_string())
                .collect()
        };
        RunReport {
            algorithm: None,
            objective_kind: None,
            objective: None,
            feasible: report.feasible,
            envy_free: report.is_envy_free(),
            envy_pair_count: report.envy_pairs.len(),
            envy_resident_count: report.envy_residents.len(),
            blocking_pair_count: report.blocking_pairs.len(),
            matching: name_pairs(instance, &pairs),
            envy_pairs: name_pairs(instance, &report.envy_pairs),
            envy_residents: report
                .envy_residents
                .iter()
                .map(|&r| instance.resident_name(r).to_string())
                .collect(),
            blocking_pairs: name_pairs(instance, &report.blocking_pairs),
            deficient_hospitals: hospital_names(&report.deficient_hospitals),
            over_subscribed_hospitals: hospital_names(&report.over_subscribed_hospitals),
            stats: None,
            warnings: Vec::new(),
        }
    }

    fn from_solve(instance: &Instance, alg: &str, res: &SolveResult) -> Self {
        let mut report = RunReport::new(instance, &res.matching);
        report.algorithm = Some(alg.to_string());
        report.objective_kind = Some(res.objective_kind.as_str().to_string());
        report.objective = Some(res.objective);
        report.stats = Some(StatsReport::new(instance, &res.stats));
        report
    }

    /// Aligned `key value` lines followed by the matching.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut row = |key: &str, value: String| {
            writeln!(out, "{key:<20}{value}").unwrap();
        };
        if let Some(alg) = &self.algorithm {
            row("algorithm", alg.clone());
        }
        if let (Some(kind), Some(obj)) = (&self.objective_kind, self.objective) {
            row("objective-kind", kind.clone());
            row("objective", obj.to_string());
        }
        row("feasible", self.feasible.to_string());
        row("envy-free", self.envy_free.to_string());
        row("envy-pairs", self.envy_pair_count.to_string());
        row("envy-residents", self.envy_resident_count.to_string());
        row("blocking-pairs", self.blocking_pair_count.to_string());
        if !self.deficient_hospitals.is_empty() {
            row("deficient", self.deficient_hospitals.join(" "));
        }
        if !self.over_subscribed_hospitals.is_empty() {
            row("over-subscribed", self.over_subscribed_hospitals.join(" "));
        }
        if let Some(stats) = &self.stats {
            if let Some(level) = stats.level {
                row("level", level.to_string());
                row("guess-sets", stats.guess_sets_examined.to_string());
            }
            row("nodes", stats.nodes.to_string());
            if let Some(guess) = &stats.successful_guess {
                let text: Vec<String> = guess.iter().map(|(r, h)| format!("({r},{h})")).collect();
                row("deleted-edges", text.join(" "));
            }
        }
        for w in &self.warnings {
            row("warning", w.clone());
        }
        if !self.envy_pairs.is_empty() {
            out.push_str("envy pairs:\n");
            for (r, h) in &self.envy_pairs {
                writeln!(out, "  {r} {h}").unwrap();
            }
        }
        out.push_str("matching:\n");
        for (r, h) in &self.matching {
            writeln!(out, "  match {r} {h}").unwrap();
        }
        out
    }
}

/// An error that ends the run with a given exit code.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn solve_failure(e: SolveError) -> Failure {
    let code = match e {
        SolveError::Infeasible => EXIT_NO_SOLUTION,
        SolveError::LevelCapExceeded { .. } | SolveError::BudgetExceeded { .. } => EXIT_LIMIT,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn emit(report: &RunReport, json: bool) -> String {
    if json {
        json_text(report)
    } else {
        report.to_text()
    }
}

fn solve(args: &SolveArgs) -> Result<String, Failure> {
    let instance = load_instance(&args.input)?;
    let alg = args.alg.name();
    let (matching, report) = match args.alg {
        Algorithm::Da => {
            let m = deferred_acceptance(&instance);
            let mut report = RunReport::new(&instance, &m);
            report.algorithm = Some(alg.to_string());
            (m, report)
        }
        Algorithm::Yokoi => match yokoi_envy_free(&instance) {
            Some(m) => {
                let mut report = RunReport::new(&instance, &m);
                report.algorithm = Some(alg.to_string());
                report.objective_kind = Some("envy-free".to_string());
                report.objective = Some(0);
                (m, report)
            }
            None => {
                return Err(Failure {
                    code: EXIT_NO_SOLUTION,
                    message: "no envy-free matching".to_string(),
                })
            }
        },
        Algorithm::MinEp | Algorithm::BruteEp | Algorithm::BruteEr => {
            let res = match args.alg {
                Algorithm::MinEp => min_ep_exact(
                    &instance,
                    ExactOptions {
                        level_cap: args.level_cap,
                        ..ExactOptions::default()
                    },
                ),
                Algorithm::BruteEp => brute_min_ep(&instance, args.budget),
                _ => brute_min_er(&instance, args.budget),
            }
            .map_err(solve_failure)?;
            let report = RunReport::from_solve(&instance, alg, &res);
            (res.matching, report)
        }
    };
    if let Some(out) = &args.out {
        write_file(out, &serialize_matching(&instance, &matching))?;
    }
    Ok(emit(&report, args.json))
}

fn verify(args: &VerifyArgs) -> Result<String, Failure> {
    let instance = load_instance(&args.input)?;
    let matching = parse_matching(&read(&args.matching)?, &instance)
        .map_err(|e| input_error(format!("{}: {e}", args.matching.display())))?;
    Ok(emit(&RunReport::new(&instance, &matching), args.json))
}

#[derive(Serialize)]
struct OracleReport {
    min_ep: RunReport,
    min_er: RunReport,
}

fn oracle(args: &OracleArgs) -> Result<String, Failure> {
    let instance = load_instance(&args.input)?;
    let ep = brute_min_ep(&instance, args.budget).map_err(solve_failure)?;
    let er = brute_min_er(&instance, args.budget).map_err(solve_failure)?;
    let report = OracleReport {
        min_ep: RunReport::from_solve(&instance, "brute-ep", &ep),
        min_er: RunReport::from_solve(&instance, "brute-er", &er),
    };
    if args.json {
        Ok(json_text(&report))
    } else {
        Ok(format!(
            "[min-ep]\n{}[min-er]\n{}",
            report.min_ep.to_text(),
            report.min_er.to_text()
        ))
    }
}

#[derive(Serialize)]
struct GenReport {
    residents: usize,
    hospitals: usize,
    warnings: Vec<String>,
    instance: String,
    certificate: Option<CertificateReport>,
}

#[derive(Serialize)]
struct CertificateReport {
    kind: String,
    vertices: Vec<usize>,
    /// Upper bound on the objective guaranteed for a yes-certificate.
    bound: usize,
    objective: usize,
    report: RunReport,
}

struct Certificate {
    kind: &'static str,
    vertices: BTreeSet<usize>,
    bound: usize,
    matching: Matching,
}

fn parse_certificate(spec: &str, expected_kind: &str) -> Result<BTreeSet<usize>, Failure> {
    let (kind, list) = spec.split_once(':').ok_or_else(|| {
        input_error(format!(
            "certificate {spec:?}: expected {expected_kind}:v1,v2,..."
        ))
    })?;
    if kind != expected_kind {
        return Err(input_error(format!(
            "certificate kind {kind:?} does not fit this reduction, expected {expected_kind:?}"
        )));
    }
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let s = s.trim();
            s.strip_prefix('v')
                .unwrap_or(s)
                .parse::<usize>()
                .map_err(|_| input_error(format!("bad vertex {s:?} in certificate")))
        })
        .collect()
}

fn gen(cmd: &GenCommand) -> Result<(String, Vec<String>), Failure> {
    let (args, vc) = match cmd {
        GenCommand::Vc2ep(a) => (a, true),
        GenCommand::Clique2er(a) => (a, false),
    };
    let graph = parse_graph(&read(&args.graph)?, args.k)
        .map_err(|e| input_error(format!("{}: {e}", args.graph.display())))?;
    let n = graph.num_vertices();
    let m = graph.num_edges();
    let k = graph.target();

    let (instance, warnings, certificate): (Instance, Vec<ReductionWarning>, Option<Certificate>) =
        if vc {
            let params = VcReductionParams {
                gadget_length: args.gadget_l.unwrap_or(n * n + 1),
            };
            let red = vc_to_min_ep(&graph, params).map_err(input_error)?;
            let cert = match &args.cert {
                Some(spec) => {
                    let cover = parse_certificate(spec, "cover")?;
                    let matching = red.matching_from_cover(&cover).map_err(input_error)?;
                    Some(Certificate {
                        kind: "cover",
                        vertices: cover,
                        bound: n * n + m,
                        matching,
                    })
                }
                None => None,
            };
            (red.instance, red.warnings, cert)
        } else {
            let params = CliqueReductionParams {
                copies: args.copies.unwrap_or(n + 1),
            };
            let red = clique_to_min_er(&graph, params).map_err(input_error)?;
            let cert = match &args.cert {
                Some(spec) => {
                    let clique = parse_certificate(spec, "clique")?;
                    let matching = red.matching_from_clique(&clique).map_err(input_error)?;
                    let pairs_inside = k * k.saturating_sub(1) / 2;
                    let bound = m.saturating_sub(pairs_inside) * params.copies + n;
                    Some(Certificate {
                        kind: "clique",
                        vertices: clique,
                        bound,
                        matching,
                    })
                }
                None => None,
            };
            (red.instance, red.warnings, cert)
        };

    let text = serialize_instance(&instance);
    if let Some(out) = &args.out {
        write_file(out, &text)?;
    }
    let warning_lines: Vec<String> = warnings.iter().map(|w| w.to_string()).collect();
    let certificate = match certificate {
        Some(Certificate {
            kind,
            vertices,
            bound,
            matching,
        }) => {
            if let Some(path) = &args.cert_out {
                write_file(path, &serialize_matching(&instance, &matching))?;
            }
            let report = RunReport::new(&instance, &matching);
            let objective = if vc {
                report.envy_pair_count
            } else {
                report.envy_resident_count
            };
            Some(CertificateReport {
                kind: kind.to_string(),
                vertices: vertices.into_iter().collect(),
                bound,
                objective,
                report,
            })
        }
        None => None,
    };

    let gen_report = GenReport {
        residents: instance.num_residents(),
        hospitals: instance.num_hospitals(),
        warnings: warning_lines.clone(),
        instance: text.clone(),
        certificate,
    };
    if args.json {
        return Ok((json_text(&gen_report), Vec::new()));
    }

    let mut summary = String::new();
    writeln!(summary, "{:<28}{}", "residents", gen_report.residents).unwrap();
    writeln!(summary, "{:<28}{}", "hospitals", gen_report.hospitals).unwrap();
    if let Some(cert) = &gen_report.certificate {
        let label = if vc {
            "certificate-envy-pairs"
        } else {
            "certificate-envy-residents"
        };
        writeln!(
            summary,
            "{:<28}{}",
            "certificate-feasible", cert.report.feasible
        )
        .unwrap();
        writeln!(summary, "{label:<28}{}", cert.objective).unwrap();
        writeln!(summary, "{:<28}{}", "certificate-bound", cert.bound).unwrap();
    }
    let diagnostics: Vec<String> = warning_lines
        .iter()
        .map(|w| format!("warning: {w}"))
        .collect();
    if args.out.is_some() {
        Ok((summary, diagnostics))
    } else {
        // the instance owns standard output; the summary becomes a diagnostic
        let mut diag = diagnostics;
        diag.extend(summary.lines().map(str::to_string));
        Ok((text, diag))
    }
}

/// Runs one command line. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => solve(a).map(|s| (s, Vec::new())),
        Command::Verify(a) => verify(a).map(|s| (s, Vec::new())),
        Command::Oracle(a) => oracle(a).map(|s| (s, Vec::new())),
        Command::Gen(g) => gen(g),
    };
    match result {
        Ok((text, diagnostics)) => {
            for d in diagnostics {
                let _ = writeln!(err, "{d}");
            }
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
