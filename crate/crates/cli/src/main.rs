//! `berge`: generate, solve and verify Berge-cycle instances.
//!
//! Every command prints one JSON document on stdout (pretty text with
//! `--human`). Exit codes: 0 success, 1 findings (a violated bound or a
//! failed sweep), 2 usage or input errors.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use berge_core::constructions::{self, ConstructionSpec, Family};
use berge_core::engine::{self, EngineOptions};
use berge_core::format;
use berge_core::lemmas::{run_lemma_suite, LemmaGrid, LemmaSuiteReport};
use berge_core::solver::{
    circumference, find_berge_cycle, find_cycle_at_least, longest_berge_path, SearchBudget, SearchOrder, SolveOptions,
    Verdict,
};
use berge_core::thresholds::{bermond_baseline, circumference_threshold, half_k_threshold, hamiltonian_threshold, Regime};
use berge_core::verify::{self, instance_seed, read_records, Record, Suite, SweepConfig, SweepOptions, VerificationReport};
use berge_core::UniformHypergraph;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "berge", version, about = "Berge cycles in uniform hypergraphs")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Leave timestamps out of reports.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a construction or a random instance as .bhg.
    Gen(GenArgs),
    /// Run the exact solver on a .bhg file.
    Solve(SolveArgs),
    /// Run the best-pair improvement engine on a .bhg file.
    Engine(EngineArgs),
    /// Run the cycle-position lemma suite.
    Lemmas(LemmaArgs),
    /// Print the minimum-degree threshold for (n, r, k).
    Threshold(ThresholdArgs),
    /// Run verification sweeps.
    Verify(VerifyArgs),
    /// Time the solver and engine on random threshold instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    H1,
    H2,
    H3,
    H4,
    H5,
    TightCycle,
    Complete,
    Random,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::H1 => Family::H1,
            FamilyArg::H2 => Family::H2,
            FamilyArg::H3 => Family::H3,
            FamilyArg::H4 => Family::H4,
            FamilyArg::H5 => Family::H5,
            FamilyArg::TightCycle => Family::TightCycle,
            FamilyArg::Complete => Family::Complete,
            FamilyArg::Random => Family::RandomMinDegree,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Minimum degree floor (random family).
    #[arg(long)]
    delta: Option<usize>,
    /// Edge-count floor (random family).
    #[arg(long)]
    min_edges: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the .bhg here (plus `<output>.meta.json`) instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Metadata sidecar path (default `<output>.meta.json` when writing a file).
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Ham,
    Exactly(usize),
    AtLeast(usize),
    Circumference,
    Path,
}

fn parse_target(s: &str) -> Result<Target, String> {
    let bad = || format!("expected ham, k=<int>, k>=<int>, circumference or path, got {s:?}");
    match s {
        "ham" => Ok(Target::Ham),
        "circumference" => Ok(Target::Circumference),
        "path" => Ok(Target::Path),
        _ => {
            if let Some(v) = s.strip_prefix("k>=") {
                v.parse().map(Target::AtLeast).map_err(|_| bad())
            } else if let Some(v) = s.strip_prefix("k=") {
                v.parse().map(Target::Exactly).map_err(|_| bad())
            } else {
                Err(bad())
            }
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// ham, k=<int>, k>=<int>, circumference or path.
    #[arg(long, value_parser = parse_target, default_value = "ham")]
    target: Target,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Break candidate-order ties with this seed.
    #[arg(long)]
    seed_order: Option<u64>,
    /// Split the search over worker threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long)]
    input: PathBuf,
    /// ham or k=<int>.
    #[arg(long, value_parser = parse_target, default_value = "ham")]
    target: Target,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Include the per-move log.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long, default_value_t = LemmaGrid::default().independent_s_max)]
    independent_s_max: usize,
    #[arg(long, default_value_t = LemmaGrid::default().separated_s_max)]
    separated_s_max: usize,
    #[arg(long, default_value_t = LemmaGrid::default().q_max)]
    q_max: usize,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Bound {
    /// Degree threshold for a cycle of length >= k (hamiltonian when k is omitted).
    Degree,
    /// ceil(k/2) with at least k edges, for r > t.
    HalfK,
    /// The classical C(k-2, r-1) + r - 1 bound.
    Bermond,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_enum, default_value = "degree")]
    bound: Bound,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SuiteArg {
    Lemmas,
    Sharpness,
    Exhaustive,
    Sampled,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// SweepConfig as JSON or `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Newline-delimited record log.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Continue the run logged in `--output`.
    #[arg(long, requires = "output")]
    resume: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failed command: exit code plus message.
struct Failure(u8, String);

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

struct Output {
    json: Value,
    human: String,
    code: u8,
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn load(path: &Path) -> Result<UniformHypergraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn cmd_gen(a: GenArgs) -> Result<Output, Failure> {
    let spec = ConstructionSpec {
        family: a.family.into(),
        n: a.n,
        r: a.r,
        k: a.k,
        delta: a.delta,
        min_edges: a.min_edges,
        seed: a.seed,
    };
    let h = constructions::generate(&spec).map_err(input_err)?;
    let meta = constructions::metadata(&spec, &h);
    let meta_json = serde_json::to_string(&meta).expect("metadata serializes");
    let text = format!("# meta: {meta_json}\n{}", format::serialize(&h));
    let meta_path = a
        .meta
        .or_else(|| a.output.as_ref().map(|p| PathBuf::from(format!("{}.meta.json", p.display()))));
    if let Some(p) = &meta_path {
        fs::write(p, format!("{meta_json}\n")).map_err(|e| Failure(2, format!("{}: {e}", p.display())))?;
    }
    match &a.output {
        Some(p) => {
            fs::write(p, &text).map_err(|e| Failure(2, format!("{}: {e}", p.display())))?;
            Ok(Output {
                human: format!("wrote {} ({} edges, min degree {})", p.display(), h.num_edges(), h.min_degree()),
                json: json!({ "output": p, "meta_path": meta_path, "meta": meta }),
                code: 0,
            })
        }
        // the instance itself is the output
        None => Ok(Output {
            json: Value::String(text.clone()),
            human: text,
            code: 0,
        }),
    }
}

fn cmd_solve(a: SolveArgs) -> Result<Output, Failure> {
    let h = load(&a.input)?;
    let opts = SolveOptions {
        budget: SearchBudget {
            node_limit: a.node_limit,
            time_limit: a.time_limit.map(Duration::from_secs_f64),
        },
        order: a.seed_order.map_or(SearchOrder::FailFirst, SearchOrder::Seeded),
        parallel: a.parallel,
    };
    let started = Instant::now();
    let (outcome, length) = match a.target {
        Target::Ham => (find_berge_cycle(&h, h.n(), opts), None),
        Target::Exactly(k) => (find_berge_cycle(&h, k, opts), None),
        Target::AtLeast(k) => (find_cycle_at_least(&h, k, opts), None),
        Target::Circumference => {
            let o = circumference(&h, opts);
            (o.outcome, Some(o.length))
        }
        Target::Path => {
            let o = longest_berge_path(&h, opts);
            (o.outcome, Some(o.length))
        }
    };
    let budget_exceeded = outcome.verdict == Verdict::BudgetExceeded;
    let mut json = to_value(&outcome);
    let obj = json.as_object_mut().expect("outcome is an object");
    obj.insert("target".into(), json!(format!("{:?}", a.target).to_lowercase()));
    if let Some(l) = length {
        obj.insert("length".into(), json!(l));
        obj.insert("exact".into(), json!(!budget_exceeded));
    }
    if budget_exceeded {
        obj.insert("detail".into(), json!("budget_exceeded"));
    }
    let human = format!(
        "{:?}{} after {} nodes in {:.3}s",
        outcome.verdict,
        length.map(|l| format!(", length {l}")).unwrap_or_default(),
        outcome.nodes_explored,
        started.elapsed().as_secs_f64()
    );
    Ok(Output { json, human, code: 0 })
}

fn cmd_engine(a: EngineArgs) -> Result<Output, Failure> {
    let h = load(&a.input)?;
    let target = match a.target {
        Target::Ham => h.n(),
        Target::Exactly(k) | Target::AtLeast(k) => k,
        _ => return Err(Failure(2, "engine targets are ham or k=<int>".into())),
    };
    let rep = engine::run(
        &h,
        target,
        EngineOptions {
            max_steps: a.max_steps,
            trace: a.trace,
            check: true,
        },
    );
    let human = format!("{:?} after {} moves (target {target})", rep.status, rep.steps);
    Ok(Output {
        json: to_value(&rep),
        human,
        code: 0,
    })
}

fn lemma_summary(rep: &LemmaSuiteReport) -> String {
    format!(
        "lemmas: {} + {} + {} cells, all within bound: {}",
        rep.independent.len(),
        rep.separated_edges.len(),
        rep.separated_vertices.len(),
        rep.all_hold
    )
}

fn cmd_lemmas(a: LemmaArgs) -> Result<Output, Failure> {
    let rep = run_lemma_suite(LemmaGrid {
        independent_s_max: a.independent_s_max,
        separated_s_max: a.separated_s_max,
        q_max: a.q_max,
    });
    Ok(Output {
        human: lemma_summary(&rep),
        code: u8::from(!rep.all_hold),
        json: to_value(&rep),
    })
}

fn cmd_threshold(a: ThresholdArgs) -> Result<Output, Failure> {
    let need_n = || a.n.ok_or_else(|| Failure(2, "--n is required".into()));
    let need_k = || a.k.ok_or_else(|| Failure(2, "--k is required".into()));
    let json = match a.bound {
        Bound::Degree => {
            let n = need_n()?;
            let ans = match a.k {
                Some(k) => circumference_threshold(n, a.r, k),
                None => hamiltonian_threshold(n, a.r),
            };
            to_value(&ans.map_err(input_err)?)
        }
        Bound::HalfK => to_value(&half_k_threshold(need_n()?, a.r, need_k()?).map_err(input_err)?),
        Bound::Bermond => json!({
            "regime": Regime::Bermond,
            "bound": bermond_baseline(a.r, need_k()?).map_err(input_err)?,
        }),
    };
    Ok(Output {
        human: format!("{} -> {}", json["regime"].as_str().unwrap_or("?"), json["bound"]),
        json,
        code: 0,
    })
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemmas: Option<LemmaSuiteReport>,
    pass: bool,
}

fn cmd_verify(a: VerifyArgs, deterministic: bool) -> Result<Output, Failure> {
    let mut cfg = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure(2, format!("{}: {e}", p.display())))?;
            SweepConfig::parse(&text).map_err(|e| Failure(2, format!("{}: {e}", p.display())))?
        }
        None => SweepConfig::default(),
    };
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::Lemmas => Vec::new(),
        SuiteArg::Sharpness => vec![Suite::Sharpness],
        SuiteArg::Exhaustive => vec![Suite::Exhaustive],
        SuiteArg::Sampled => vec![Suite::Sampled],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let lemmas = matches!(a.suite, SuiteArg::Lemmas | SuiteArg::All).then(|| run_lemma_suite(LemmaGrid::default()));

    let sweep = if suites.is_empty() {
        None
    } else {
        let mut resume = Vec::new();
        let mut log = None;
        if let Some(path) = &a.output {
            if a.resume && path.exists() {
                let text = fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
                resume = read_records(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
            }
            // rewrite the valid prefix, dropping any torn final line
            let mut f = fs::File::create(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
            for r in &resume {
                writeln!(f, "{}", serde_json::to_string(r).expect("record serializes")).map_err(input_err)?;
            }
            log = Some(f);
        }
        let opts = SweepOptions {
            suites,
            deterministic,
            ..SweepOptions::default()
        };
        let report = verify::run_sweep(&cfg, &opts, &resume, |r: &Record| match &mut log {
            Some(f) => {
                writeln!(f, "{}", serde_json::to_string(r).expect("record serializes"))?;
                f.flush()
            }
            None => Ok(()),
        })
        .map_err(|e| match e {
            verify::SweepError::Config(_) | verify::SweepError::ResumeMismatch { .. } => Failure(2, e.to_string()),
            other => Failure(1, other.to_string()),
        })?;
        Some(report)
    };

    let pass = sweep.as_ref().is_none_or(|s| s.pass) && lemmas.as_ref().is_none_or(|l| l.all_hold);
    let mut human = Vec::new();
    if let Some(s) = &sweep {
        human.push(format!(
            "sweep: {} records, {} instances, {} violations, {} inconclusive, {} sharpness failures, engine stuck {}/{}",
            s.records, s.instances, s.violations, s.inconclusive, s.sharpness_failures, s.engine_stuck, s.engine_runs
        ));
        for c in &s.cells {
            for f in c.violations.iter().chain(&c.inconclusive) {
                human.push(format!("  {:?} at {} instance {}:\n{}", f.verdict, f.cell, f.instance, f.bhg));
            }
        }
    }
    if let Some(l) = &lemmas {
        human.push(lemma_summary(l));
    }
    human.push(if pass { "PASS".into() } else { "FAIL".into() });
    Ok(Output {
        json: to_value(&VerifyOutput { sweep, lemmas, pass }),
        human: human.join("\n"),
        code: u8::from(!pass),
    })
}

fn cmd_bench(a: BenchArgs) -> Result<Output, Failure> {
    let th = hamiltonian_threshold(a.n as u64, a.r as u64).map_err(input_err)?;
    let (mut solve_time, mut engine_time) = (Duration::ZERO, Duration::ZERO);
    let (mut hamiltonian, mut engine_found) = (0, 0);
    for i in 0..a.samples {
        let h = constructions::gen_random(constructions::RandomParams {
            n: a.n,
            r: a.r,
            min_degree: th.bound as usize,
            min_edges: 0,
            seed: instance_seed(a.seed, &[i as u64]),
        })
        .map_err(input_err)?;
        let t = Instant::now();
        hamiltonian += usize::from(find_berge_cycle(&h, a.n, SearchBudget::unlimited()).found());
        solve_time += t.elapsed();
        let t = Instant::now();
        let rep = engine::run(&h, a.n, EngineOptions::default());
        engine_found += usize::from(rep.status == engine::EngineStatus::Found);
        engine_time += t.elapsed();
    }
    let per = |d: Duration| d.as_secs_f64() / a.samples.max(1) as f64;
    let json = json!({
        "n": a.n, "r": a.r, "samples": a.samples, "threshold": th,
        "hamiltonian": hamiltonian, "engine_found": engine_found,
        "solver_seconds_per_instance": per(solve_time),
        "engine_seconds_per_instance": per(engine_time),
    });
    Ok(Output {
        human: format!(
            "{} samples: solver {:.6}s, engine {:.6}s per instance; engine reached {engine_found}/{hamiltonian}",
            a.samples,
            per(solve_time),
            per(engine_time)
        ),
        json,
        code: 0,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("{}", json!({ "error": e.to_string() }));
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Engine(a) => cmd_engine(a),
        Command::Lemmas(a) => cmd_lemmas(a),
        Command::Threshold(a) => cmd_threshold(a),
        Command::Verify(a) => cmd_verify(a, cli.deterministic),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(out) => {
            if cli.human {
                println!("{}", out.human.trim_end());
            } else if let Value::String(s) = &out.json {
                print!("{s}");
            } else {
                println!("{}", serde_json::to_string(&out.json).expect("json"));
            }
            ExitCode::from(out.code)
        }
        Err(Failure(code, msg)) => {
            if cli.human {
                eprintln!("error: {msg}");
            } else {
                eprintln!("{}", json!({ "error": msg }));
            }
            ExitCode::from(code)
        }
    }
}
