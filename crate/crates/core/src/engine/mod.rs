//! Best-pair improvement engine.
//!
//! State is a Berge cycle `C` together with a Berge path `P` that shares no
//! vertex and no edge with it. Pairs are ranked lexicographically by
//! `|E(C)|`, `|E(P)|`, the number of path vertices inside cycle edges, and
//! the number of path vertices inside path edges (both counted with
//! multiplicity). Each [`Move`] strictly raises that rank, so a run can
//! only end at a pair that no known exchange improves.
//!
//! Moves are built from [`Step`]s. Steps that act on a path end always act
//! on the first path vertex; the far end is reached through a
//! [`Step::ReversePath`] prefix. Rotations and endpoint replacements keep
//! the rank (or may lower it) and only appear as prefixes of a compound
//! move whose net effect is an improvement.

mod pair;
mod steps;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::UniformHypergraph;
use crate::walk::BergeWalk;

pub use pair::{fingerprint, rank, validate_pair, CyclePathPair, PairRank};
pub use steps::{apply_step, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("move was enumerated on a different pair")]
    StaleMove,
    #[error("step not applicable: {0}")]
    Inapplicable(String),
    #[error("pair invalid after move: {0}")]
    InvalidPair(String),
    #[error("move did not raise the pair rank")]
    NotImproving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    ExtendPath,
    CloseCycle,
    InsertEndpoint,
    AbsorbPath,
    RotatePath,
    ReplaceEndpoint,
    SwapCoverEdge,
}

impl MoveKind {
    fn of(step: &Step) -> Self {
        match step {
            Step::ExtendPath { .. } => MoveKind::ExtendPath,
            Step::CloseCycle { .. } => MoveKind::CloseCycle,
            Step::InsertVertex { .. } => MoveKind::InsertEndpoint,
            Step::AbsorbPath { .. } => MoveKind::AbsorbPath,
            Step::ReversePath | Step::RotatePath { .. } => MoveKind::RotatePath,
            Step::ReplaceEndpoint { .. } => MoveKind::ReplaceEndpoint,
            Step::SwapCycleEdge { .. } | Step::SwapPathEdge { .. } => MoveKind::SwapCoverEdge,
        }
    }
}

/// A compound exchange: optional rank-neutral prefix, then one improving step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub steps: Vec<Step>,
    /// Vertices the move reads or rewires, ascending.
    pub touched: Vec<usize>,
    pub rank_before: PairRank,
    pub rank_after: PairRank,
    /// [`fingerprint`] of the pair this move was enumerated on.
    pub origin: u64,
}

fn apply_all(h: &UniformHypergraph, pair: &CyclePathPair, steps: &[Step], touched: &mut Vec<usize>) -> Result<CyclePathPair, EngineError> {
    let mut p = pair.clone();
    for s in steps {
        touched.extend(apply_step(h, &mut p, s)?);
    }
    Ok(p)
}

/// Every improving move available at `pair`, in a deterministic order.
pub fn applicable_moves(h: &UniformHypergraph, pair: &CyclePathPair) -> Vec<Move> {
    let before = rank(h, pair);
    let origin = fingerprint(pair);
    let plen = pair.path.vertices.len();

    let mut orientations = vec![Vec::new()];
    if plen >= 2 {
        orientations.push(vec![Step::ReversePath]);
    }
    let mut prefixes: Vec<Vec<Step>> = orientations.clone();
    for orient in &orientations {
        let p = apply_all(h, pair, orient, &mut Vec::new()).expect("reversal always applies");
        prefixes.extend(steps::neutral_steps(h, &p).into_iter().map(|s| {
            let mut pre = orient.clone();
            pre.push(s);
            pre
        }));
    }

    let mut out = Vec::new();
    for prefix in prefixes {
        let mut touched = Vec::new();
        let Ok(p) = apply_all(h, pair, &prefix, &mut touched) else {
            continue;
        };
        for step in steps::improving_steps(h, &p, !prefix.is_empty()) {
            let mut t = touched.clone();
            let mut q = p.clone();
            match apply_step(h, &mut q, &step) {
                Ok(more) => t.extend(more),
                Err(_) => continue,
            }
            let after = rank(h, &q);
            if after > before {
                t.sort_unstable();
                t.dedup();
                let mut seq = prefix.clone();
                seq.push(step);
                out.push(Move {
                    kind: MoveKind::of(seq.last().expect("nonempty")),
                    steps: seq,
                    touched: t,
                    rank_before: before,
                    rank_after: after,
                    origin,
                });
            }
        }
    }
    out
}

/// Applies `mv` to `pair`, re-validating the result and its rank.
pub fn apply_move(h: &UniformHypergraph, pair: &CyclePathPair, mv: &Move) -> Result<CyclePathPair, EngineError> {
    if fingerprint(pair) != mv.origin {
        return Err(EngineError::StaleMove);
    }
    let before = rank(h, pair);
    let next = apply_all(h, pair, &mv.steps, &mut Vec::new())?;
    validate_pair(h, &next).map_err(EngineError::InvalidPair)?;
    if rank(h, &next) <= before {
        return Err(EngineError::NotImproving);
    }
    Ok(next)
}

/// Highest resulting rank, then lowest touched vertex, then enumeration order.
pub fn best_move(moves: &[Move]) -> Option<&Move> {
    let key = |m: &Move| (m.rank_after, std::cmp::Reverse(m.touched.first().copied().unwrap_or(usize::MAX)));
    let mut best: Option<&Move> = None;
    for m in moves {
        if best.is_none_or(|b| key(m) > key(b)) {
            best = Some(m);
        }
    }
    best
}

/// Number of distinct ranks on `n` vertices of an `r`-graph; no run can
/// take more steps than this.
pub fn rank_bound(n: usize, r: usize) -> u128 {
    let a = (n as u128 + 1).pow(2);
    let b = (r as u128 * n as u128 + 1).pow(2);
    a * b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineStatus {
    Found,
    Stuck,
    /// The greedy start path could not be closed into any cycle.
    NoCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: usize,
    pub kind: MoveKind,
    pub rank_before: PairRank,
    pub rank_after: PairRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineReport {
    pub status: EngineStatus,
    pub target: usize,
    /// Cycle reaching the target when `status` is `found`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<BergeWalk>,
    /// Terminal pair when the run got stuck.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<CyclePathPair>,
    /// Greedy start path when no cycle could be formed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<BergeWalk>,
    pub steps: usize,
    pub step_limit_hit: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub max_steps: Option<usize>,
    pub trace: bool,
    /// Validate every intermediate pair (panics on violation).
    pub check: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            max_steps: None,
            trace: false,
            check: cfg!(debug_assertions),
        }
    }
}

/// Greedy path, closed into the longest available cycle, then repeated
/// best-move improvement until the cycle reaches `target` or no move applies.
pub fn run(h: &UniformHypergraph, target: usize, opts: EngineOptions) -> EngineReport {
    let max_steps = opts
        .max_steps
        .unwrap_or_else(|| rank_bound(h.n(), h.r()).min(usize::MAX as u128) as usize);
    let mut report = EngineReport {
        status: EngineStatus::Stuck,
        target,
        cycle: None,
        pair: None,
        path: None,
        steps: 0,
        step_limit_hit: false,
        trace: Vec::new(),
    };
    let path = steps::greedy_path(h);
    let Some(mut pair) = steps::initial_pair(h, &path) else {
        report.status = EngineStatus::NoCycle;
        report.path = Some(path);
        return report;
    };
    loop {
        if opts.check {
            if let Err(e) = validate_pair(h, &pair) {
                panic!("engine produced an invalid pair: {e}");
            }
        }
        if pair.cycle.len() >= target {
            report.status = EngineStatus::Found;
            report.cycle = Some(pair.cycle);
            return report;
        }
        if report.steps >= max_steps {
            report.step_limit_hit = true;
            report.pair = Some(pair);
            return report;
        }
        let moves = applicable_moves(h, &pair);
        let Some(mv) = best_move(&moves) else {
            report.pair = Some(pair);
            return report;
        };
        let next = apply_move(h, &pair, mv).expect("enumerated move must apply");
        report.steps += 1;
        if opts.trace {
            report.trace.push(TraceEntry {
                step: report.steps,
                kind: mv.kind,
                rank_before: mv.rank_before,
                rank_after: mv.rank_after,
            });
        }
        pair = next;
    }
}

pub use steps::random_pair;

#[cfg(test)]
mod tests;
