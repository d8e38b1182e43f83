//! Threshold verification sweeps.
//!
//! A sweep is a fixed, ordered list of units; each unit yields one
//! [`Record`]. Records are produced in plan order whatever the worker
//! count, so a run can be resumed from the first `len` records of an
//! interrupted one and the aggregated [`VerificationReport`] is a pure
//! function of the config.

mod config;
mod exhaustive;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{self, ConstructionError, ConstructionSpec, Family, RandomParams};
use crate::engine::{self, EngineOptions, EngineStatus};
use crate::format;
use crate::hypergraph::UniformHypergraph;
use crate::solver::{circumference, find_cycle_at_least, SolveOptions, Verdict};
use crate::thresholds::{Regime, ThresholdAnswer};

pub use config::{Cell, ConfigError, SweepConfig, EXHAUSTIVE_MAX_N};

use exhaustive::Enumerator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Sharpness,
    Exhaustive,
    Sampled,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Sharpness, Suite::Exhaustive, Suite::Sampled];
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("record {index} does not belong to this sweep (expected {expected}, found {found})")]
    ResumeMismatch {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("cell {cell}: {source}")]
    Generate {
        cell: Cell,
        #[source]
        source: ConstructionError,
    },
    #[error("writing record: {0}")]
    Sink(#[from] std::io::Error),
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one random instance, stable across versions and platforms.
pub fn instance_seed(master: u64, coords: &[u64]) -> u64 {
    coords.iter().fold(mix(master), |acc, &c| mix(acc ^ c))
}

/// An instance the solver did not settle as the theorem requires, with
/// everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub cell: Cell,
    /// Conditions the instance meets.
    pub regimes: Vec<Regime>,
    /// Sample index, or the edge mask in exhaustive cells.
    pub instance: u64,
    pub min_degree: usize,
    pub edges: usize,
    pub verdict: Verdict,
    /// The instance as `.bhg` text.
    pub bhg: String,
}

/// A construction that should sit exactly one below a threshold and lack
/// the guaranteed cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessRecord {
    pub spec: ConstructionSpec,
    /// Smallest grid `k` the construction is checked against.
    pub k: usize,
    pub regime: Regime,
    pub threshold: u64,
    pub min_degree: usize,
    pub circumference: usize,
    /// The solver proved `circumference` optimal.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circumference_expected: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub cell: Cell,
    pub regime: Regime,
    pub threshold: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_edges: Option<u64>,
    pub index: usize,
    pub seed: u64,
    pub min_degree: usize,
    pub edges: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finding: Option<Finding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRecord {
    pub cell: Cell,
    pub batch: u64,
    /// Edge subsets in the batch before degree filtering.
    pub subsets: u64,
    /// Subsets meeting at least one condition.
    pub tested: u64,
    pub found: u64,
    pub engine_runs: u64,
    pub engine_stuck: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Finding>,
}

/// One line of a sweep log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Sharpness(SharpnessRecord),
    Sample(SampleRecord),
    Batch(BatchRecord),
}

impl Record {
    fn key(&self) -> String {
        match self {
            Record::Sharpness(s) => format!("sharpness {} n={} r={} k={}", s.spec.family, s.spec.n, s.spec.r, s.k),
            Record::Sample(s) => format!("sample {} {} #{}", s.cell, s.regime.as_str(), s.index),
            Record::Batch(b) => format!("batch {} #{}", b.cell, b.batch),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub suite: Suite,
    pub cell: Cell,
    pub conditions: Vec<ThresholdAnswer>,
    pub instances: u64,
    pub found: u64,
    pub violations: Vec<Finding>,
    /// Budget ran out before the solver decided.
    pub inconclusive: Vec<Finding>,
    pub engine_runs: u64,
    pub engine_stuck: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine_stuck_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub records: usize,
    pub instances: u64,
    pub violations: usize,
    pub inconclusive: usize,
    pub sharpness_failures: usize,
    pub engine_runs: u64,
    pub engine_stuck: u64,
    pub cells: Vec<CellReport>,
    pub sharpness: Vec<SharpnessRecord>,
    pub pass: bool,
    /// Seconds since the Unix epoch; omitted in deterministic runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub suites: Vec<Suite>,
    pub deterministic: bool,
    /// Units computed in parallel between two sink calls.
    pub chunk: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            deterministic: true,
            chunk: 64,
        }
    }
}

#[derive(Debug, Clone)]
enum Unit {
    Sharpness { spec: ConstructionSpec, cell: Cell },
    Batch { cell: Cell, batch: u64 },
    Sample { cell: Cell, condition: usize, index: usize },
}

struct Plan {
    units: Vec<Unit>,
    conditions: HashMap<Cell, Vec<ThresholdAnswer>>,
    enumerators: HashMap<Cell, Enumerator>,
}

/// Constructions checked against `cell`, each paired with the cell whose
/// threshold it should miss by one.
fn sharpness_specs(cell: Cell, regime: Regime) -> Vec<ConstructionSpec> {
    let Cell { n, r, k } = cell;
    let spec = |family, k| ConstructionSpec {
        family,
        n,
        r,
        k,
        delta: None,
        min_edges: None,
        seed: None,
    };
    let mut out = Vec::new();
    match regime {
        Regime::Main3C => {
            out.push(spec(Family::H1, None));
            if k == n {
                out.push(spec(Family::H2, None));
            }
        }
        Regime::Main3B if (n - 1) % (k - 2) == 0 => out.push(spec(Family::H4, Some(k))),
        Regime::Main3A if (n - 1) % r == 0 => out.push(spec(Family::H5, Some(k))),
        Regime::Main4 if k == n => out.push(spec(Family::H3, None)),
        _ => {}
    }
    out
}

fn plan(cfg: &SweepConfig, suites: &[Suite]) -> Result<Plan, SweepError> {
    cfg.validate()?;
    let mut conditions = HashMap::new();
    for &c in cfg.grid.iter().chain(&cfg.exhaustive_cells) {
        let conds = c.conditions().map_err(|e| ConfigError::Cell(c, e))?;
        conditions.insert(c, conds);
    }
    let mut units = Vec::new();
    let mut enumerators = HashMap::new();
    if suites.contains(&Suite::Sharpness) {
        // one check per construction, against the smallest k it should miss
        let mut chosen: BTreeMap<(String, usize, usize, Option<usize>), (ConstructionSpec, Cell)> = BTreeMap::new();
        for &cell in &cfg.grid {
            for spec in sharpness_specs(cell, conditions[&cell][0].regime) {
                let key = (spec.family.to_string(), spec.n, spec.r, spec.k);
                chosen
                    .entry(key)
                    .and_modify(|(_, c)| {
                        if cell.k < c.k {
                            *c = cell
                        }
                    })
                    .or_insert((spec, cell));
            }
        }
        units.extend(chosen.into_values().map(|(spec, cell)| Unit::Sharpness { spec, cell }));
    }
    if suites.contains(&Suite::Exhaustive) {
        for &cell in &cfg.exhaustive_cells {
            let floor = conditions[&cell].iter().map(|c| c.bound).min().unwrap_or(0) as usize;
            let en = enumerators
                .entry(cell)
                .or_insert_with(|| Enumerator::new(cell.n, cell.r, floor));
            units.extend((0..en.batches()).map(|batch| Unit::Batch { cell, batch }));
        }
    }
    if suites.contains(&Suite::Sampled) {
        for &cell in &cfg.grid {
            for condition in 0..conditions[&cell].len() {
                units.extend((0..cfg.samples_per_cell).map(|index| Unit::Sample { cell, condition, index }));
            }
        }
    }
    Ok(Plan {
        units,
        conditions,
        enumerators,
    })
}

impl Unit {
    fn key(&self, plan: &Plan) -> String {
        match self {
            Unit::Sharpness { spec, cell } => format!("sharpness {} n={} r={} k={}", spec.family, spec.n, spec.r, cell.k),
            Unit::Batch { cell, batch } => format!("batch {cell} #{batch}"),
            Unit::Sample { cell, condition, index } => {
                format!("sample {cell} {} #{index}", plan.conditions[cell][*condition].regime.as_str())
            }
        }
    }
}

fn solve_options(cfg: &SweepConfig) -> SolveOptions {
    SolveOptions {
        budget: cfg.budget,
        ..SolveOptions::default()
    }
}

fn engine_status(cfg: &SweepConfig, h: &UniformHypergraph, k: usize) -> Option<EngineStatus> {
    cfg.engine.then(|| {
        engine::run(
            h,
            k,
            EngineOptions {
                max_steps: None,
                trace: false,
                check: false,
            },
        )
        .status
    })
}

fn execute(cfg: &SweepConfig, plan: &Plan, unit: &Unit) -> Result<Record, SweepError> {
    match unit {
        Unit::Sharpness { spec, cell } => {
            let h = constructions::generate(spec).map_err(|source| SweepError::Generate { cell: *cell, source })?;
            let meta = constructions::metadata(spec, &h);
            let cond = &plan.conditions[cell][0];
            let opt = circumference(&h, solve_options(cfg));
            let exact = opt.is_exact();
            let min_degree = h.min_degree();
            let mut holds = exact && min_degree as u64 + 1 == cond.bound && opt.length < cell.k;
            if let Some(c) = meta.circumference_exact {
                holds &= opt.length == c;
            }
            if let Some(c) = meta.circumference_at_most {
                holds &= opt.length <= c;
            }
            Ok(Record::Sharpness(SharpnessRecord {
                spec: spec.clone(),
                k: cell.k,
                regime: cond.regime,
                threshold: cond.bound,
                min_degree,
                circumference: opt.length,
                exact,
                circumference_expected: meta.circumference_exact,
                holds,
            }))
        }
        Unit::Sample { cell, condition, index } => {
            let cond = &plan.conditions[cell][*condition];
            let seed = instance_seed(
                cfg.seed,
                &[cell.n as u64, cell.r as u64, cell.k as u64, *condition as u64, *index as u64],
            );
            let h = constructions::gen_random(RandomParams {
                n: cell.n,
                r: cell.r,
                min_degree: cond.bound as usize,
                min_edges: cond.min_edges.unwrap_or(0) as usize,
                seed,
            })
            .map_err(|source| SweepError::Generate { cell: *cell, source })?;
            let out = find_cycle_at_least(&h, cell.k, solve_options(cfg));
            let finding = (!out.found()).then(|| Finding {
                cell: *cell,
                regimes: vec![cond.regime],
                instance: *index as u64,
                min_degree: h.min_degree(),
                edges: h.num_edges(),
                verdict: out.verdict,
                bhg: format::serialize(&h),
            });
            Ok(Record::Sample(SampleRecord {
                cell: *cell,
                regime: cond.regime,
                threshold: cond.bound,
                min_edges: cond.min_edges,
                index: *index,
                seed,
                min_degree: h.min_degree(),
                edges: h.num_edges(),
                verdict: out.verdict,
                cycle_length: out.witness.as_ref().map(|w| w.len()),
                engine: engine_status(cfg, &h, cell.k),
                finding,
            }))
        }
        Unit::Batch { cell, batch } => {
            let en = &plan.enumerators[cell];
            let conds = &plan.conditions[cell];
            let mut rec = BatchRecord {
                cell: *cell,
                batch: *batch,
                subsets: en.batch_size(),
                tested: 0,
                found: 0,
                engine_runs: 0,
                engine_stuck: 0,
                findings: Vec::new(),
            };
            en.for_each(*batch, |mask| {
                let min_degree = (0..cell.n).map(|v| en.degree(mask, v)).min().unwrap_or(0);
                let edges = mask.count_ones() as usize;
                let regimes: Vec<Regime> = conds
                    .iter()
                    .filter(|c| min_degree as u64 >= c.bound && edges as u64 >= c.min_edges.unwrap_or(0))
                    .map(|c| c.regime)
                    .collect();
                if regimes.is_empty() {
                    return;
                }
                let list: Vec<Vec<usize>> = (0..en.edges.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| en.edges[i].clone())
                    .collect();
                let h = UniformHypergraph::new(cell.n, cell.r, list).expect("subset of the complete graph");
                rec.tested += 1;
                let out = find_cycle_at_least(&h, cell.k, solve_options(cfg));
                if out.found() {
                    rec.found += 1;
                } else {
                    rec.findings.push(Finding {
                        cell: *cell,
                        regimes,
                        instance: mask,
                        min_degree,
                        edges,
                        verdict: out.verdict,
                        bhg: format::serialize(&h),
                    });
                }
                if let Some(status) = engine_status(cfg, &h, cell.k) {
                    rec.engine_runs += 1;
                    rec.engine_stuck += u64::from(status != EngineStatus::Found);
                }
            });
            Ok(Record::Batch(rec))
        }
    }
}

/// Number of records a full run of `cfg` produces.
pub fn planned_records(cfg: &SweepConfig, suites: &[Suite]) -> Result<usize, SweepError> {
    Ok(plan(cfg, suites)?.units.len())
}

/// Runs the sweep, reusing `resume` as the first records and passing every
/// newly computed record to `sink` in plan order.
pub fn run_sweep(
    cfg: &SweepConfig,
    opts: &SweepOptions,
    resume: &[Record],
    mut sink: impl FnMut(&Record) -> std::io::Result<()>,
) -> Result<VerificationReport, SweepError> {
    let plan = plan(cfg, &opts.suites)?;
    if resume.len() > plan.units.len() {
        return Err(SweepError::ResumeMismatch {
            index: plan.units.len(),
            expected: "end of sweep".into(),
            found: resume[plan.units.len()].key(),
        });
    }
    for (index, (rec, unit)) in resume.iter().zip(&plan.units).enumerate() {
        let (expected, found) = (unit.key(&plan), rec.key());
        if expected != found {
            return Err(SweepError::ResumeMismatch { index, expected, found });
        }
    }
    let mut records = resume.to_vec();
    for chunk in plan.units[resume.len()..].chunks(opts.chunk.max(1)) {
        let done: Vec<Result<Record, SweepError>> = chunk.par_iter().map(|u| execute(cfg, &plan, u)).collect();
        for rec in done {
            let rec = rec?;
            sink(&rec)?;
            records.push(rec);
        }
    }
    Ok(aggregate(cfg, &plan, opts, &records))
}

fn aggregate(cfg: &SweepConfig, plan: &Plan, opts: &SweepOptions, records: &[Record]) -> VerificationReport {
    let mut cells: Vec<CellReport> = Vec::new();
    let mut index: HashMap<(Suite, Cell), usize> = HashMap::new();
    let mut sharpness = Vec::new();
    let mut slot = |suite: Suite, cell: Cell, cells: &mut Vec<CellReport>| -> usize {
        *index.entry((suite, cell)).or_insert_with(|| {
            cells.push(CellReport {
                suite,
                cell,
                conditions: plan.conditions[&cell].clone(),
                instances: 0,
                found: 0,
                violations: Vec::new(),
                inconclusive: Vec::new(),
                engine_runs: 0,
                engine_stuck: 0,
                engine_stuck_rate: None,
            });
            cells.len() - 1
        })
    };
    let file = |c: &mut CellReport, f: &Finding| match f.verdict {
        Verdict::BudgetExceeded => c.inconclusive.push(f.clone()),
        _ => c.violations.push(f.clone()),
    };
    for rec in records {
        match rec {
            Record::Sharpness(s) => sharpness.push(s.clone()),
            Record::Sample(s) => {
                let i = slot(Suite::Sampled, s.cell, &mut cells);
                let c = &mut cells[i];
                c.instances += 1;
                c.found += u64::from(s.verdict == Verdict::Found);
                if let Some(f) = &s.finding {
                    file(c, f);
                }
                if let Some(status) = s.engine {
                    c.engine_runs += 1;
                    c.engine_stuck += u64::from(status != EngineStatus::Found);
                }
            }
            Record::Batch(b) => {
                let i = slot(Suite::Exhaustive, b.cell, &mut cells);
                let c = &mut cells[i];
                c.instances += b.tested;
                c.found += b.found;
                for f in &b.findings {
                    file(c, f);
                }
                c.engine_runs += b.engine_runs;
                c.engine_stuck += b.engine_stuck;
            }
        }
    }
    for c in &mut cells {
        if c.engine_runs > 0 {
            c.engine_stuck_rate = Some(c.engine_stuck as f64 / c.engine_runs as f64);
        }
    }
    let violations = cells.iter().map(|c| c.violations.len()).sum();
    let inconclusive = cells.iter().map(|c| c.inconclusive.len()).sum();
    let sharpness_failures = sharpness.iter().filter(|s: &&SharpnessRecord| !s.holds).count();
    let complete = records.len() == plan.units.len();
    VerificationReport {
        seed: cfg.seed,
        suites: opts.suites.clone(),
        records: records.len(),
        instances: cells.iter().map(|c| c.instances).sum(),
        violations,
        inconclusive,
        sharpness_failures,
        engine_runs: cells.iter().map(|c| c.engine_runs).sum(),
        engine_stuck: cells.iter().map(|c| c.engine_stuck).sum(),
        cells,
        sharpness,
        pass: complete && violations == 0 && inconclusive == 0 && sharpness_failures == 0,
        generated_unix: (!opts.deterministic).then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
    }
}

/// Parses a newline-delimited record log. A final line without its newline
/// (an interrupted write) is dropped; any other bad line is an error.
pub fn read_records(text: &str) -> Result<Vec<Record>, serde_json::Error> {
    let complete = text.ends_with('\n');
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let mut out = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        match serde_json::from_str(line) {
            Ok(r) => out.push(r),
            Err(_) if i + 1 == lines.len() && !complete => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
