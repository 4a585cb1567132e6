use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use mpart_core::census::{
    classify_with, cross_check_dichotomy, enumerate_canonical, run_census, witness_json,
    CensusOptions, ClassifyOptions, PipelineOracle,
};
use mpart_core::derect::has_derect_sequence;
use mpart_core::exceptions::ExceptionId;
use mpart_core::graph::{Bipartition, SimpleGraph};
use mpart_core::par::{self, Execution};
use mpart_core::verify::{
    brute_z, brute_z_surjective, check_gadget_formula, verify_eq1, verify_hand3,
    verify_hand4_system, verify_interpolation_roundtrip, verify_lemma6, verify_lemma7_with,
    Lemma7Construction,
};
use mpart_core::{Error, PartSet, PartitionMatrix};

const EXAMPLE: &str = "001*01111*";

#[derive(Parser)]
#[command(
    name = "mpart",
    version,
    about = "Classify and count matrix partitions of graphs"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the census (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Leave the six hand-resolved classes unresolved.
    #[arg(long, global = true)]
    no_exceptions: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Stated,
    VClique,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one matrix or every canonical 4x4 matrix.
    Classify {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        all: bool,
        /// Matrix text (`001*01111*` or `0*/**`) or a file holding it.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Search for a derectangularising sequence.
    Derect {
        #[arg(long)]
        matrix: String,
    },
    /// Count M-partitions of a graph by brute force.
    Count {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        graph: PathBuf,
        /// Count only partitions whose image is exactly these parts, e.g. `ab`.
        #[arg(long)]
        surjective: Option<String>,
    },
    /// Run a verification against brute-force counts.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Full census report.
    CensusReport {
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Surjective gadget counts against the closed formula.
    GadgetFormula {
        #[arg(long)]
        matrix: Option<String>,
        /// Canonical 4x4 matrices sampled when no matrix is given (0 = all).
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        k_min: usize,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
    },
    /// Counts of joined gadget graphs against the access-set decomposition.
    Eq1 {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        pi: u8,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        tau: u8,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Random graphs drawn when no graph is given.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Solve the interpolation system and compare with direct sums.
    Interpolation {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        pi: u8,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        tau: u8,
    },
    Lemma6 {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        bipartition: Option<PathBuf>,
    },
    Lemma7 {
        /// m1, m2 or m3; all three when omitted.
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        bipartition: Option<PathBuf>,
        /// `v-clique` also joins the vertices of V into a clique.
        #[arg(long, value_enum, default_value_t = Construction::Stated)]
        construction: Construction,
    },
    Hand3 {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        bipartition: Option<PathBuf>,
    },
    Hand4 {
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Census with exceptions, cross-checked against the exact decider.
    Dichotomy {
        #[arg(long)]
        all: bool,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match par::with_jobs(jobs, || run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Classify {
            matrix: Some(text), ..
        } => classify_one(cli, &read_matrix(text)?),
        Command::Classify { .. } => census_report(cli, 4, None),
        Command::Derect { matrix } => derect(cli, &read_matrix(matrix)?),
        Command::Count {
            matrix,
            graph,
            surjective,
        } => count(
            cli,
            &read_matrix(matrix)?,
            &read_graph(graph)?,
            surjective.as_deref(),
        ),
        Command::Verify { check } => verify(cli, check),
        Command::CensusReport { size, output } => census_report(cli, *size, output.as_deref()),
    }
}

fn execution(cli: &Cli) -> Execution {
    if cli.jobs == 1 {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn read_matrix(arg: &str) -> Result<PartitionMatrix, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    text.parse()
        .map_err(|e: Error| Failure::Usage(format!("matrix {arg:?}: {e}")))
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: Error| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_bipartition(path: Option<&Path>, g: &SimpleGraph) -> Result<Option<Bipartition>, Failure> {
    let Some(path) = path else { return Ok(None) };
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Bipartition::parse(&text, g.n())
        .map(Some)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn graphs_or(
    graph: Option<&Path>,
    defaults: Vec<(String, SimpleGraph)>,
) -> Result<Vec<(String, SimpleGraph)>, Failure> {
    match graph {
        Some(p) => Ok(vec![(p.display().to_string(), read_graph(p)?)]),
        None => Ok(defaults),
    }
}

fn small_graphs() -> Vec<(String, SimpleGraph)> {
    vec![
        ("K1".into(), SimpleGraph::complete(1)),
        ("K2".into(), SimpleGraph::complete(2)),
        ("P3".into(), SimpleGraph::path(3)),
        ("K3".into(), SimpleGraph::complete(3)),
        ("C4".into(), SimpleGraph::cycle(4)),
    ]
}

fn bipartite_graphs() -> Vec<(String, SimpleGraph)> {
    vec![
        ("K2".into(), SimpleGraph::complete(2)),
        ("P3".into(), SimpleGraph::path(3)),
        ("C4".into(), SimpleGraph::cycle(4)),
        ("K2,3".into(), SimpleGraph::complete_bipartite(2, 3)),
    ]
}

fn random_graphs(seed: u64, samples: usize) -> Vec<(String, SimpleGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let n = rng.gen_range(1..=5);
            let mut g = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).expect("fresh edge");
                    }
                }
            }
            (format!("random#{i}"), g)
        })
        .collect()
}

fn emit(text: &str) -> CliResult {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_json(v: &Value) -> CliResult {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("json")
    ))
}

fn classify_one(cli: &Cli, m: &PartitionMatrix) -> CliResult {
    let options = ClassifyOptions {
        exceptions: !cli.no_exceptions,
    };
    let c = classify_with(m, options, &PipelineOracle::new(options));
    let key = m.canonical_key().to_string();
    match cli.format {
        Format::Text => emit(&format!("{c}\n")),
        Format::Json => emit_json(&json!({
            "key": key,
            "matrix": m.to_rows_string(),
            "verdict": c.verdict.to_string(),
            "method": c.method.as_ref().map(|x| x.to_string()),
            "witness": witness_json(&c),
        })),
        Format::Csv => {
            let method = c.method.as_ref().map(|x| x.to_string()).unwrap_or_default();
            emit(&format!(
                "key,verdict,method\n{key},{},{method}\n",
                c.verdict
            ))
        }
    }
}

fn derect(cli: &Cli, m: &PartitionMatrix) -> CliResult {
    let w = has_derect_sequence(m)?;
    match (cli.format, &w) {
        (Format::Json, _) => emit_json(&json!({ "matrix": m.to_rows_string(), "witness": w })),
        (_, Some(w)) => emit(&format!("{} {}\n", w.sequence_text(), w.offending_relation)),
        (_, None) => emit("none\n"),
    }
}

fn count(cli: &Cli, m: &PartitionMatrix, g: &SimpleGraph, surjective: Option<&str>) -> CliResult {
    let z = match surjective {
        Some(s) => {
            let set = PartSet::parse(s, m.size())
                .map_err(|e| Failure::Usage(format!("--surjective: {e}")))?;
            brute_z_surjective(m, g, set)?
        }
        None => brute_z(m, g)?,
    };
    match cli.format {
        Format::Json => emit_json(&json!({ "count": z.to_string() })),
        _ => emit(&format!("{z}\n")),
    }
}

fn census_report(cli: &Cli, size: usize, output: Option<&Path>) -> CliResult {
    if !(1..=5).contains(&size) {
        return Err(Failure::Usage(format!(
            "census size must be 1..=5, got {size}"
        )));
    }
    let report = run_census(CensusOptions {
        size,
        exceptions: !cli.no_exceptions,
        derect: true,
        execution: execution(cli),
    })?;
    let mut buf = Vec::new();
    match cli.format {
        Format::Json => report.write_json(&mut buf)?,
        Format::Csv => report.write_csv(&mut buf)?,
        Format::Text => report.write_text(&mut buf)?,
    }
    match output {
        Some(p) => fs::write(p, buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    let x = cross_check_dichotomy(&report);
    if x.mismatches.is_empty() && x.invalid_witnesses.is_empty() {
        Ok(())
    } else {
        eprintln!("cross-check failed: {} mismatches", x.mismatches.len());
        Err(Failure::Verification)
    }
}

/// One named check result.
#[derive(Serialize)]
struct Row {
    name: String,
    ok: bool,
    detail: Value,
}

fn row<T: Serialize>(name: impl Into<String>, ok: bool, detail: &T) -> Row {
    Row {
        name: name.into(),
        ok,
        detail: serde_json::to_value(detail).expect("json"),
    }
}

fn report_rows(cli: &Cli, check: &str, rows: Vec<Row>) -> CliResult {
    let ok = rows.iter().all(|r| r.ok);
    match cli.format {
        Format::Json => emit_json(&json!({ "check": check, "ok": ok, "results": rows }))?,
        Format::Csv => {
            let mut s = String::from("check,case,ok\n");
            for r in &rows {
                s.push_str(&format!("{check},{},{}\n", r.name, r.ok));
            }
            emit(&s)?;
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!(
                    "{} {check} {}\n",
                    if r.ok { "PASS" } else { "FAIL" },
                    r.name
                ));
            }
            emit(&s)?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(cli: &Cli, check: &Check) -> CliResult {
    let mut rows = Vec::new();
    let name = match check {
        Check::GadgetFormula {
            matrix,
            samples,
            k_min,
            k_max,
        } => {
            if *k_min > *k_max {
                return Err(Failure::Usage("--k-min exceeds --k-max".into()));
            }
            let ms = match matrix {
                Some(t) => vec![read_matrix(t)?],
                None => {
                    let all = enumerate_canonical(4, Execution::Sequential);
                    if *samples == 0 || *samples >= all.len() {
                        all
                    } else {
                        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                        let mut picked: Vec<_> =
                            all.choose_multiple(&mut rng, *samples).cloned().collect();
                        picked.sort_by_key(|m| m.w_word());
                        picked
                    }
                }
            };
            for m in &ms {
                let mut bad = Vec::new();
                for tau in [false, true] {
                    for k in *k_min..=*k_max {
                        bad.extend(check_gadget_formula(m, tau, k)?);
                    }
                }
                rows.push(row(m.to_text(), bad.is_empty(), &bad));
            }
            "gadget-formula"
        }
        Check::Eq1 {
            matrix,
            graph,
            pi,
            tau,
            k,
            samples,
        } => {
            let m = read_matrix(matrix.as_deref().unwrap_or(EXAMPLE))?;
            let graphs = graphs_or(graph.as_deref(), random_graphs(cli.seed, *samples))?;
            for (gname, g) in graphs {
                let c = verify_eq1(&m, *pi == 1, *tau == 1, *k, &g)?;
                rows.push(row(gname, c.ok(), &c));
            }
            "eq1"
        }
        Check::Interpolation {
            matrix,
            graph,
            pi,
            tau,
        } => {
            let m = read_matrix(matrix.as_deref().unwrap_or(EXAMPLE))?;
            for (gname, g) in graphs_or(graph.as_deref(), small_graphs())? {
                let c = verify_interpolation_roundtrip(&m, *pi == 1, *tau == 1, &g)?;
                rows.push(row(gname, c.ok(), &c));
            }
            "interpolation"
        }
        Check::Lemma6 { graph, bipartition } => {
            for (gname, g) in graphs_or(graph.as_deref(), bipartite_graphs())? {
                let bip = read_bipartition(bipartition.as_deref(), &g)?;
                let c = verify_lemma6(&g, bip.as_ref())?;
                rows.push(row(gname, c.ok(), &c));
            }
            "lemma6"
        }
        Check::Lemma7 {
            id,
            graph,
            bipartition,
            construction,
        } => {
            let construction = match construction {
                Construction::Stated => Lemma7Construction::Stated,
                Construction::VClique => Lemma7Construction::VClique,
            };
            let ids = match id.as_deref() {
                None => vec![
                    ExceptionId::Lemma7M1,
                    ExceptionId::Lemma7M2,
                    ExceptionId::Lemma7M3,
                ],
                Some("m1") => vec![ExceptionId::Lemma7M1],
                Some("m2") => vec![ExceptionId::Lemma7M2],
                Some("m3") => vec![ExceptionId::Lemma7M3],
                Some(other) => {
                    return Err(Failure::Usage(format!(
                        "--id must be m1, m2 or m3, got {other:?}"
                    )))
                }
            };
            for (gname, g) in graphs_or(graph.as_deref(), bipartite_graphs())? {
                let bip = read_bipartition(bipartition.as_deref(), &g)?;
                for &id in &ids {
                    let c = verify_lemma7_with(id, &g, bip.as_ref(), construction)?;
                    rows.push(row(format!("{id}:{gname}"), c.ok(), &c));
                }
            }
            "lemma7"
        }
        Check::Hand3 { graph, bipartition } => {
            for (gname, g) in graphs_or(graph.as_deref(), bipartite_graphs())? {
                let bip = read_bipartition(bipartition.as_deref(), &g)?;
                let c = verify_hand3(&g, bip.as_ref())?;
                rows.push(row(gname, c.ok(), &c));
            }
            "hand3"
        }
        Check::Hand4 { graph } => {
            let defaults = small_graphs().into_iter().take(3).collect();
            for (gname, g) in graphs_or(graph.as_deref(), defaults)? {
                let c = verify_hand4_system(&g)?;
                rows.push(row(gname, c.ok(), &c));
            }
            "hand4"
        }
        Check::Dichotomy { .. } => {
            let report = run_census(CensusOptions {
                exceptions: !cli.no_exceptions,
                execution: execution(cli),
                ..CensusOptions::default()
            })?;
            let x = cross_check_dichotomy(&report);
            rows.push(row("census", x.ok(), &x));
            "dichotomy"
        }
    };
    report_rows(cli, name, rows)
}
