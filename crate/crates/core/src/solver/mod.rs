//! Exact search for Berge cycles and paths.
//!
//! The search walks vertex sequences depth first. Every extension adds one
//! consecutive pair to a [`PairMatcher`]; a sequence survives only while all
//! of its pairs can be given distinct containing edges. Cycles are anchored
//! at their smallest vertex and read in the direction whose second vertex is
//! smaller than the last one, so each cycle is visited once.

mod brute;
mod matching;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use brute::{brute_circumference, BruteError, BRUTE_MAX_N};
pub use matching::{pair_matching_feasible, PairIndex, PairMatcher};

use crate::hypergraph::UniformHypergraph;
use crate::walk::BergeWalk;

/// Optional caps on a single solve call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_limit: Option<u64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "duration_secs"
    )]
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        Self {
            node_limit: Some(limit),
            time_limit: None,
        }
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_f64(d.as_secs_f64()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        let secs: Option<f64> = Option::deserialize(d)?;
        Ok(secs.map(Duration::from_secs_f64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub witness: Option<BergeWalk>,
    pub nodes_explored: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl SolveOutcome {
    pub fn found(&self) -> bool {
        self.verdict == Verdict::Found
    }

    fn refused(reason: String) -> Self {
        Self {
            verdict: Verdict::Exhausted,
            witness: None,
            nodes_explored: 0,
            reason: Some(reason),
        }
    }
}

/// How candidate vertices are ordered at each extension.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOrder {
    /// Smallest codegree with the current vertex first, ties by vertex id.
    #[default]
    FailFirst,
    /// Fail-first, ties broken by a seeded random permutation.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub budget: SearchBudget,
    pub order: SearchOrder,
    /// Split the root branching (the anchor vertex) across the rayon pool.
    pub parallel: bool,
}

impl From<SearchBudget> for SolveOptions {
    fn from(budget: SearchBudget) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }
}

/// Outcome of an optimization query; `length` is a lower bound only when
/// the outcome verdict is `BudgetExceeded`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub length: usize,
    pub outcome: SolveOutcome,
}

impl Optimum {
    pub fn is_exact(&self) -> bool {
        self.outcome.verdict != Verdict::BudgetExceeded
    }
}

/// Immutable search tables for one hypergraph.
struct Tables<'h> {
    h: &'h UniformHypergraph,
    index: PairIndex,
    /// Shadow-graph neighbours of each vertex in extension order.
    order: Vec<Vec<usize>>,
}

impl<'h> Tables<'h> {
    fn new(h: &'h UniformHypergraph, order: SearchOrder) -> Self {
        let index = PairIndex::new(h);
        let n = h.n();
        let tiebreak: Vec<usize> = match order {
            SearchOrder::FailFirst => (0..n).collect(),
            SearchOrder::Seeded(seed) => {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                perm
            }
        };
        let order = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| w != v && index.codegree(v, w) > 0).collect();
                nb.sort_by_key(|&w| (index.codegree(v, w), tiebreak[w]));
                nb
            })
            .collect();
        Self { h, index, order }
    }
}

enum Step {
    Found,
    Exhausted,
    Abort,
}

#[derive(Clone, Copy)]
enum Shape {
    Cycle,
    Path,
}

/// Mutable state of one depth-first search.
struct Search<'t, 'h> {
    tables: &'t Tables<'h>,
    matcher: PairMatcher<'t>,
    seq: Vec<usize>,
    on: Vec<bool>,
    shape: Shape,
    /// Minimum and maximum walk length (edges) accepted.
    lo: usize,
    hi: usize,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    /// Parallel mode: abort when a smaller root already succeeded.
    cutoff: Option<(&'t AtomicUsize, usize)>,
    witness: Option<BergeWalk>,
}

impl<'t, 'h> Search<'t, 'h> {
    fn new(tables: &'t Tables<'h>, shape: Shape, lo: usize, hi: usize, budget: SearchBudget) -> Self {
        let h = tables.h;
        Self {
            tables,
            matcher: PairMatcher::new(&tables.index, h.num_edges()),
            seq: Vec::with_capacity(h.n()),
            on: vec![false; h.n()],
            shape,
            lo,
            hi,
            nodes: 0,
            budget,
            started: Instant::now(),
            cutoff: None,
            witness: None,
        }
    }

    fn over_budget(&self) -> bool {
        if let Some(limit) = self.budget.node_limit {
            if self.nodes > limit {
                return true;
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    return true;
                }
            }
            if let Some((best, mine)) = self.cutoff {
                if best.load(Ordering::Relaxed) < mine {
                    return true;
                }
            }
        }
        false
    }

    fn run_root(&mut self, root: usize) -> Step {
        self.seq.push(root);
        self.on[root] = true;
        let step = self.dfs();
        if !matches!(step, Step::Found) {
            self.on[root] = false;
            self.seq.pop();
        }
        step
    }

    fn dfs(&mut self) -> Step {
        self.nodes += 1;
        if self.over_budget() {
            return Step::Abort;
        }
        let depth = self.seq.len();
        let last = self.seq[depth - 1];
        let first = self.seq[0];
        match self.shape {
            Shape::Cycle => {
                // closing adds the depth-th edge
                if depth >= self.lo && depth >= 3 && self.seq[1] < last && self.matcher.push(last, first) {
                    let edges = self.matcher.assignment();
                    self.witness = Some(BergeWalk::cycle(self.seq.clone(), edges));
                    return Step::Found;
                }
                if depth >= self.hi {
                    return Step::Exhausted;
                }
            }
            Shape::Path => {
                if depth > self.lo && first < last {
                    let edges = self.matcher.assignment();
                    self.witness = Some(BergeWalk::path(self.seq.clone(), edges));
                    return Step::Found;
                }
                if depth > self.hi {
                    return Step::Exhausted;
                }
            }
        }
        let tables = self.tables;
        for &w in &tables.order[last] {
            if self.on[w] {
                continue;
            }
            if matches!(self.shape, Shape::Cycle) && w < first {
                continue;
            }
            if !self.matcher.push(last, w) {
                continue;
            }
            self.seq.push(w);
            self.on[w] = true;
            match self.dfs() {
                Step::Found => return Step::Found,
                Step::Abort => return Step::Abort,
                Step::Exhausted => {}
            }
            self.on[w] = false;
            self.seq.pop();
            self.matcher.pop();
        }
        Step::Exhausted
    }
}

fn finish(step: Step, nodes: u64, witness: Option<BergeWalk>) -> SolveOutcome {
    let verdict = match step {
        Step::Found => Verdict::Found,
        Step::Exhausted => Verdict::Exhausted,
        Step::Abort => Verdict::BudgetExceeded,
    };
    SolveOutcome {
        verdict,
        witness,
        nodes_explored: nodes,
        reason: None,
    }
}

/// Searches for any cycle whose length lies in `lo..=hi`.
fn search_cycle(tables: &Tables<'_>, lo: usize, hi: usize, opts: &SolveOptions) -> SolveOutcome {
    let n = tables.h.n();
    if !opts.parallel {
        let mut s = Search::new(tables, Shape::Cycle, lo, hi, opts.budget);
        for anchor in 0..n {
            if n - anchor < lo {
                break;
            }
            match s.run_root(anchor) {
                Step::Found => return finish(Step::Found, s.nodes, s.witness.take()),
                Step::Abort => return finish(Step::Abort, s.nodes, None),
                Step::Exhausted => {}
            }
        }
        return finish(Step::Exhausted, s.nodes, None);
    }

    let best = AtomicUsize::new(usize::MAX);
    let roots: Vec<usize> = (0..n).filter(|&a| n - a >= lo).collect();
    let results: Vec<(usize, Step, u64, Option<BergeWalk>)> = roots
        .par_iter()
        .map(|&anchor| {
            let mut s = Search::new(tables, Shape::Cycle, lo, hi, opts.budget);
            s.cutoff = Some((&best, anchor));
            let step = s.run_root(anchor);
            if matches!(step, Step::Found) {
                best.fetch_min(anchor, Ordering::Relaxed);
            }
            (anchor, step, s.nodes, s.witness.take())
        })
        .collect();
    let nodes = results.iter().map(|r| r.2).sum();
    let winner = best.load(Ordering::Relaxed);
    // every root below the winner must have finished its search
    for (anchor, step, _, witness) in results {
        if anchor > winner {
            break;
        }
        match step {
            Step::Found => return finish(Step::Found, nodes, witness),
            Step::Abort => return finish(Step::Abort, nodes, None),
            Step::Exhausted => {}
        }
    }
    finish(Step::Exhausted, nodes, None)
}

fn search_path(tables: &Tables<'_>, lo: usize, hi: usize, opts: &SolveOptions) -> SolveOutcome {
    let mut s = Search::new(tables, Shape::Path, lo, hi, opts.budget);
    for root in 0..tables.h.n() {
        match s.run_root(root) {
            Step::Found => return finish(Step::Found, s.nodes, s.witness.take()),
            Step::Abort => return finish(Step::Abort, s.nodes, None),
            Step::Exhausted => {}
        }
    }
    finish(Step::Exhausted, s.nodes, None)
}

fn cycle_range_check(h: &UniformHypergraph, lo: usize) -> Option<SolveOutcome> {
    let cap = h.n().min(h.num_edges());
    if lo < 3 || lo > cap {
        return Some(SolveOutcome::refused(format!(
            "length {lo} outside 3..={cap} (n={}, edges={})",
            h.n(),
            h.num_edges()
        )));
    }
    None
}

/// Decides whether `h` has a Berge cycle of length exactly `k`.
pub fn find_berge_cycle(
    h: &UniformHypergraph,
    k: usize,
    opts: impl Into<SolveOptions>,
) -> SolveOutcome {
    if let Some(out) = cycle_range_check(h, k) {
        return out;
    }
    let opts = opts.into();
    let tables = Tables::new(h, opts.order);
    search_cycle(&tables, k, k, &opts)
}

/// Decides whether `h` has a Berge cycle of length `k` or longer.
pub fn find_cycle_at_least(
    h: &UniformHypergraph,
    k: usize,
    opts: impl Into<SolveOptions>,
) -> SolveOutcome {
    if let Some(out) = cycle_range_check(h, k) {
        return out;
    }
    let opts = opts.into();
    let tables = Tables::new(h, opts.order);
    let hi = h.n().min(h.num_edges());
    search_cycle(&tables, k, hi, &opts)
}

/// Length of a longest Berge cycle (0 when there is none of length >= 3).
///
/// Each round asks for any cycle longer than the best one so far; the
/// final round is the exhaustive proof that nothing longer exists.
pub fn circumference(h: &UniformHypergraph, opts: impl Into<SolveOptions>) -> Optimum {
    let opts = opts.into();
    let tables = Tables::new(h, opts.order);
    let hi = h.n().min(h.num_edges());
    let started = Instant::now();
    let mut best = 0;
    let mut witness = None;
    let mut nodes = 0;
    loop {
        let lo = best.max(2) + 1;
        if lo > hi {
            break;
        }
        let mut round_opts = opts;
        if let Some(limit) = opts.budget.node_limit {
            round_opts.budget.node_limit = Some(limit.saturating_sub(nodes));
        }
        if let Some(limit) = opts.budget.time_limit {
            round_opts.budget.time_limit = Some(limit.saturating_sub(started.elapsed()));
        }
        let out = search_cycle(&tables, lo, hi, &round_opts);
        nodes += out.nodes_explored;
        match out.verdict {
            Verdict::Found => {
                let w = out.witness.expect("found without witness");
                best = w.len();
                witness = Some(w);
            }
            Verdict::Exhausted => break,
            Verdict::BudgetExceeded => {
                return Optimum {
                    length: best,
                    outcome: SolveOutcome {
                        verdict: Verdict::BudgetExceeded,
                        witness,
                        nodes_explored: nodes,
                        reason: Some("budget exhausted; length is a lower bound".into()),
                    },
                };
            }
        }
    }
    Optimum {
        length: best,
        outcome: SolveOutcome {
            verdict: if witness.is_some() {
                Verdict::Found
            } else {
                Verdict::Exhausted
            },
            witness,
            nodes_explored: nodes,
            reason: None,
        },
    }
}

/// Length (in edges) of a longest Berge path.
pub fn longest_berge_path(h: &UniformHypergraph, opts: impl Into<SolveOptions>) -> Optimum {
    let opts = opts.into();
    let tables = Tables::new(h, opts.order);
    let hi = h.num_edges().min(h.n().saturating_sub(1));
    let started = Instant::now();
    let mut best = 0;
    let mut witness = (h.n() > 0).then(|| BergeWalk::path(vec![0], vec![]));
    let mut nodes = 0;
    while best < hi {
        let mut round_opts = opts;
        if let Some(limit) = opts.budget.node_limit {
            round_opts.budget.node_limit = Some(limit.saturating_sub(nodes));
        }
        if let Some(limit) = opts.budget.time_limit {
            round_opts.budget.time_limit = Some(limit.saturating_sub(started.elapsed()));
        }
        let out = search_path(&tables, best + 1, hi, &round_opts);
        nodes += out.nodes_explored;
        match out.verdict {
            Verdict::Found => {
                let w = out.witness.expect("found without witness");
                best = w.len();
                witness = Some(w);
            }
            Verdict::Exhausted => break,
            Verdict::BudgetExceeded => {
                return Optimum {
                    length: best,
                    outcome: SolveOutcome {
                        verdict: Verdict::BudgetExceeded,
                        witness,
                        nodes_explored: nodes,
                        reason: Some("budget exhausted; length is a lower bound".into()),
                    },
                };
            }
        }
    }
    Optimum {
        length: best,
        outcome: SolveOutcome {
            verdict: if witness.is_some() {
                Verdict::Found
            } else {
                Verdict::Exhausted
            },
            witness,
            nodes_explored: nodes,
            reason: None,
        },
    }
}
