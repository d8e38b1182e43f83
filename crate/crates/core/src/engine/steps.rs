use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::pair::CyclePathPair;
use super::EngineError;
use crate::hypergraph::UniformHypergraph;
use crate::solver::{find_berge_cycle, SearchBudget, SearchOrder, SolveOptions};
use crate::walk::BergeWalk;

/// One elementary rewrite of a pair. Path-end steps act on the first path
/// vertex `u_0`; cycle positions index `e_i = {v_i, v_{i+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Read the path from the other end.
    ReversePath,
    /// `u_0` lies in path edge `f_pivot`: re-root the path at `u_pivot`,
    /// keeping its vertex and edge sets.
    RotatePath { pivot: usize },
    /// Swap `u_0` for another vertex of `f_0` (or, for a one-vertex path,
    /// any vertex off the cycle).
    ReplaceEndpoint { vertex: usize },
    /// Prepend `vertex` to the path through an unused edge.
    ExtendPath { edge: usize, vertex: usize },
    /// Turn `u_0 .. u_through` into the new cycle, closed by an unused
    /// `edge` or, when `edge` is `None`, by path edge `f_through`. The rest
    /// of the path survives; the old cycle is dropped.
    CloseCycle { through: usize, edge: Option<usize> },
    /// Replace `e_position` by `left, vertex, right`.
    InsertVertex {
        vertex: usize,
        position: usize,
        left: usize,
        right: usize,
    },
    /// `u_0` in `e_from`, last path vertex in `e_to`: route the cycle through
    /// the whole path, cutting out `v_{from+1} .. v_to`, which becomes the
    /// new path.
    AbsorbPath { from: usize, to: usize },
    /// Replace cycle edge `e_position` by an unused edge.
    SwapCycleEdge { position: usize, edge: usize },
    /// Replace path edge `f_position` by an unused edge.
    SwapPathEdge { position: usize, edge: usize },
}

/// Occupancy tables for one pair.
struct View {
    on_cycle: Vec<bool>,
    on_path: Vec<bool>,
    used: Vec<bool>,
}

impl View {
    fn of(h: &UniformHypergraph, p: &CyclePathPair) -> Self {
        let mut on_cycle = vec![false; h.n()];
        let mut on_path = vec![false; h.n()];
        let mut used = vec![false; h.num_edges()];
        for &v in &p.cycle.vertices {
            on_cycle[v] = true;
        }
        for &v in &p.path.vertices {
            on_path[v] = true;
        }
        for &e in p.cycle.edge_indices.iter().chain(&p.path.edge_indices) {
            used[e] = true;
        }
        Self {
            on_cycle,
            on_path,
            used,
        }
    }

    fn free_vertex(&self, v: usize) -> bool {
        !self.on_cycle[v] && !self.on_path[v]
    }
}

fn bad(msg: impl Into<String>) -> EngineError {
    EngineError::Inapplicable(msg.into())
}

fn require(cond: bool, msg: &str) -> Result<(), EngineError> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

/// Gives an empty path a vertex again: the off-cycle vertex lying in the
/// most cycle edges, lowest id on ties.
pub(super) fn normalize(h: &UniformHypergraph, p: &mut CyclePathPair) {
    if !p.path.vertices.is_empty() || p.cycle.vertices.len() >= h.n() {
        return;
    }
    let mut on_cycle = vec![false; h.n()];
    for &v in &p.cycle.vertices {
        on_cycle[v] = true;
    }
    let cover = |v: usize| p.cycle.edge_indices.iter().filter(|&&e| h.contains(e, v)).count();
    let best = (0..h.n())
        .filter(|&v| !on_cycle[v])
        .max_by_key(|&v| (cover(v), std::cmp::Reverse(v)))
        .expect("vertex off the cycle");
    p.path = BergeWalk::path(vec![best], vec![]);
}

/// Applies one step, returning the vertices it touched.
pub fn apply_step(h: &UniformHypergraph, p: &mut CyclePathPair, step: &Step) -> Result<Vec<usize>, EngineError> {
    let view = View::of(h, p);
    let touched;
    {
        let pv = &mut p.path.vertices;
        let pe = &mut p.path.edge_indices;
        let s = p.cycle.vertices.len();
        match *step {
            Step::ReversePath => {
                require(!pv.is_empty(), "empty path")?;
                touched = vec![pv[0], pv[pv.len() - 1]];
                pv.reverse();
                pe.reverse();
            }
            Step::RotatePath { pivot } => {
                require(pivot >= 1 && pivot < pe.len(), "pivot out of range")?;
                require(h.contains(pe[pivot], pv[0]), "pivot edge misses u_0")?;
                touched = vec![pv[0], pv[pivot]];
                pv[..=pivot].reverse();
                pe[..pivot].reverse();
            }
            Step::ReplaceEndpoint { vertex } => {
                require(!pv.is_empty(), "empty path")?;
                require(vertex < h.n() && view.free_vertex(vertex), "replacement not free")?;
                if let Some(&f0) = pe.first() {
                    require(h.contains(f0, vertex), "replacement outside f_0")?;
                }
                touched = vec![pv[0], vertex];
                pv[0] = vertex;
            }
            Step::ExtendPath { edge, vertex } => {
                require(!pv.is_empty(), "empty path")?;
                require(edge < h.num_edges() && !view.used[edge], "edge in use")?;
                require(vertex < h.n() && view.free_vertex(vertex), "vertex not free")?;
                require(h.contains(edge, pv[0]) && h.contains(edge, vertex), "edge misses endpoint")?;
                touched = vec![vertex, pv[0]];
                pv.insert(0, vertex);
                pe.insert(0, edge);
            }
            Step::CloseCycle { through, edge } => {
                require(through >= 1 && through < pv.len(), "closure index out of range")?;
                let u0 = pv[0];
                let mut cycle_edges: Vec<usize> = pe[..through].to_vec();
                match edge {
                    Some(e) => {
                        require(e < h.num_edges() && !view.used[e], "closing edge in use")?;
                        require(h.contains(e, u0) && h.contains(e, pv[through]), "closing edge misses ends")?;
                        cycle_edges.push(e);
                    }
                    None => {
                        require(through < pe.len(), "no path edge to close with")?;
                        require(h.contains(pe[through], u0), "path edge misses u_0")?;
                        cycle_edges.push(pe[through]);
                    }
                }
                touched = vec![u0, pv[through]];
                let cycle_vertices = pv[..=through].to_vec();
                let rest_v = pv[through + 1..].to_vec();
                let rest_e = pe.get(through + 1..).map(<[usize]>::to_vec).unwrap_or_default();
                p.cycle = BergeWalk::cycle(cycle_vertices, cycle_edges);
                p.path = BergeWalk::path(rest_v, rest_e);
            }
            Step::InsertVertex {
                vertex: u,
                position: i,
                left,
                right,
            } => {
                require(i < s && s >= 2, "position out of range")?;
                require(u < h.n() && !view.on_cycle[u], "vertex on cycle")?;
                let at_start = pv.first() == Some(&u);
                require(!view.on_path[u] || at_start, "vertex inside the path")?;
                let freed = if at_start { pe.first().copied() } else { None };
                let ei = p.cycle.edge_indices[i];
                let avail = |e: usize| e < h.num_edges() && (!view.used[e] || e == ei || Some(e) == freed);
                let (a, b) = (p.cycle.vertices[i], p.cycle.vertices[(i + 1) % s]);
                require(left != right && avail(left) && avail(right), "edges unavailable")?;
                require(h.contains(left, a) && h.contains(left, u), "left edge misses")?;
                require(h.contains(right, u) && h.contains(right, b), "right edge misses")?;
                touched = vec![u, a, b];
                if at_start {
                    pv.remove(0);
                    if !pe.is_empty() {
                        pe.remove(0);
                    }
                }
                p.cycle.vertices.insert(i + 1, u);
                p.cycle.edge_indices[i] = left;
                p.cycle.edge_indices.insert(i + 1, right);
            }
            Step::AbsorbPath { from, to } => {
                let l = pv.len();
                require(l >= 2 && s >= 2 && from < s && to < s, "absorb out of range")?;
                let d = (to + s - from) % s;
                require(d >= 1 && d < l, "cut longer than path")?;
                let (cv, ce) = (&p.cycle.vertices, &p.cycle.edge_indices);
                require(h.contains(ce[from], pv[0]), "e_from misses u_0")?;
                require(h.contains(ce[to], pv[l - 1]), "e_to misses u_last")?;
                touched = vec![pv[0], pv[l - 1], cv[from], cv[(to + 1) % s]];
                let mut nv = Vec::with_capacity(s - d + l);
                let mut ne = Vec::with_capacity(s - d + l);
                for k in 0..s - d {
                    nv.push(cv[(to + 1 + k) % s]);
                    if k + 1 < s - d {
                        ne.push(ce[(to + 1 + k) % s]);
                    }
                }
                ne.push(ce[from]);
                nv.extend(pv.iter().copied());
                ne.extend(pe.iter().copied());
                ne.push(ce[to]);
                let cut_v: Vec<usize> = (1..=d).map(|k| cv[(from + k) % s]).collect();
                let cut_e: Vec<usize> = (1..d).map(|k| ce[(from + k) % s]).collect();
                p.cycle = BergeWalk::cycle(nv, ne);
                p.path = BergeWalk::path(cut_v, cut_e);
            }
            Step::SwapCycleEdge { position, edge } => {
                require(position < s && edge < h.num_edges() && !view.used[edge], "swap unavailable")?;
                let (a, b) = (p.cycle.vertices[position], p.cycle.vertices[(position + 1) % s]);
                require(h.contains(edge, a) && h.contains(edge, b), "swap edge misses")?;
                touched = vec![a, b];
                p.cycle.edge_indices[position] = edge;
            }
            Step::SwapPathEdge { position, edge } => {
                require(position < pe.len() && edge < h.num_edges() && !view.used[edge], "swap unavailable")?;
                let (a, b) = (pv[position], pv[position + 1]);
                require(h.contains(edge, a) && h.contains(edge, b), "swap edge misses")?;
                touched = vec![a, b];
                pe[position] = edge;
            }
        }
    }
    normalize(h, p);
    Ok(touched)
}

/// Rank-preserving (or cover-changing) re-rootings of the path at `u_0`.
pub(super) fn neutral_steps(h: &UniformHypergraph, p: &CyclePathPair) -> Vec<Step> {
    let (pv, pe) = (&p.path.vertices, &p.path.edge_indices);
    let mut out = Vec::new();
    if pv.is_empty() {
        return out;
    }
    for pivot in 1..pe.len() {
        if h.contains(pe[pivot], pv[0]) {
            out.push(Step::RotatePath { pivot });
        }
    }
    if let Some(&f0) = pe.first() {
        let view = View::of(h, p);
        for &w in h.edge(f0) {
            if view.free_vertex(w) {
                out.push(Step::ReplaceEndpoint { vertex: w });
            }
        }
    }
    out
}

/// Candidate steps that may raise the rank; the caller keeps the ones that
/// do. With `end_only`, steps that do not involve `u_0` are skipped (they do
/// not depend on the prefix that produced this orientation).
pub(super) fn improving_steps(h: &UniformHypergraph, p: &CyclePathPair, end_only: bool) -> Vec<Step> {
    let mut out = Vec::new();
    let (pv, pe) = (&p.path.vertices, &p.path.edge_indices);
    let (cv, ce) = (&p.cycle.vertices, &p.cycle.edge_indices);
    if pv.is_empty() {
        return out;
    }
    let view = View::of(h, p);
    let (s, l) = (cv.len(), pv.len());
    let u0 = pv[0];

    // longer path through an unused edge at u_0
    for &e in h.incident(u0) {
        if view.used[e] {
            continue;
        }
        for &w in h.edge(e) {
            if view.free_vertex(w) {
                out.push(Step::ExtendPath { edge: e, vertex: w });
            }
        }
    }

    // cycle from a path prefix, only when longer than the current cycle
    for through in (1..l).rev() {
        if through < s {
            break;
        }
        if through < pe.len() && h.contains(pe[through], u0) {
            out.push(Step::CloseCycle { through, edge: None });
        }
        if let Some(&e) = h
            .incident(u0)
            .iter()
            .find(|&&e| !view.used[e] && h.contains(e, pv[through]))
        {
            out.push(Step::CloseCycle { through, edge: Some(e) });
        }
    }

    insertions(h, p, &view, u0, &mut out);

    // whole path spliced in between two cycle edges
    if l >= 2 && s >= 2 {
        let ul = pv[l - 1];
        for from in 0..s {
            if !h.contains(ce[from], u0) {
                continue;
            }
            for d in 1..l.min(s) {
                let to = (from + d) % s;
                if h.contains(ce[to], ul) {
                    out.push(Step::AbsorbPath { from, to });
                }
            }
        }
    }

    // a better path start
    if let Some(&f0) = pe.first() {
        for &w in h.edge(f0) {
            if view.free_vertex(w) {
                out.push(Step::ReplaceEndpoint { vertex: w });
            }
        }
    } else {
        for w in 0..h.n() {
            if !view.on_cycle[w] && w != u0 {
                out.push(Step::ReplaceEndpoint { vertex: w });
            }
        }
    }

    if end_only {
        return out;
    }

    for u in 0..h.n() {
        if view.free_vertex(u) {
            insertions(h, p, &view, u, &mut out);
        }
    }

    let weight = |e: usize| h.edge(e).iter().filter(|&&v| view.on_path[v]).count();
    for i in 0..s {
        let (a, b) = (cv[i], cv[(i + 1) % s]);
        let current = weight(ce[i]);
        for &e in h.incident(a) {
            if !view.used[e] && h.contains(e, b) && weight(e) > current {
                out.push(Step::SwapCycleEdge { position: i, edge: e });
            }
        }
    }
    for j in 0..pe.len() {
        let (a, b) = (pv[j], pv[j + 1]);
        let current = weight(pe[j]);
        for &e in h.incident(a) {
            if !view.used[e] && h.contains(e, b) && weight(e) > current {
                out.push(Step::SwapPathEdge { position: j, edge: e });
            }
        }
    }
    out
}

/// Best insertion of `u` at each cycle position: two distinct available
/// edges, maximizing the path vertices they carry.
fn insertions(h: &UniformHypergraph, p: &CyclePathPair, view: &View, u: usize, out: &mut Vec<Step>) {
    let (cv, ce) = (&p.cycle.vertices, &p.cycle.edge_indices);
    let s = cv.len();
    if s < 2 {
        return;
    }
    let freed = if p.path.vertices.first() == Some(&u) {
        p.path.edge_indices.first().copied()
    } else {
        None
    };
    let weight = |e: usize| h.edge(e).iter().filter(|&&v| view.on_path[v] && v != u).count();
    for i in 0..s {
        let (a, b) = (cv[i], cv[(i + 1) % s]);
        let avail = |e: usize| !view.used[e] || e == ce[i] || Some(e) == freed;
        let left = top_two(h.incident(u).iter().copied().filter(|&e| avail(e) && h.contains(e, a)), &weight);
        let Some(l1) = left[0] else { continue };
        let right = top_two(h.incident(u).iter().copied().filter(|&e| avail(e) && h.contains(e, b)), &weight);
        let Some(r1) = right[0] else { continue };
        let best = if l1 != r1 {
            Some((0, l1, r1))
        } else {
            let a = left[1].map(|l2| (weight(l2) + weight(r1), l2, r1));
            let b = right[1].map(|r2| (weight(l1) + weight(r2), l1, r2));
            match (a, b) {
                (Some(a), Some(b)) => Some(if b.0 > a.0 { b } else { a }),
                (a, b) => a.or(b),
            }
        };
        if let Some((_, left, right)) = best {
            out.push(Step::InsertVertex {
                vertex: u,
                position: i,
                left,
                right,
            });
        }
    }
}

/// The two heaviest edges, earliest first on ties.
fn top_two(edges: impl Iterator<Item = usize>, weight: &impl Fn(usize) -> usize) -> [Option<usize>; 2] {
    let mut top: [Option<(usize, usize)>; 2] = [None, None];
    for e in edges {
        let w = weight(e);
        if top[0].is_none_or(|(bw, _)| w > bw) {
            top[1] = top[0];
            top[0] = Some((w, e));
        } else if top[1].is_none_or(|(bw, _)| w > bw) {
            top[1] = Some((w, e));
        }
    }
    top.map(|t| t.map(|(_, e)| e))
}

/// Greedy longest path: start at a minimum-degree vertex and extend either
/// end towards the vertex with the fewest unused edges left.
pub(super) fn greedy_path(h: &UniformHypergraph) -> BergeWalk {
    let n = h.n();
    let start = (0..n)
        .filter(|&v| h.degree(v) > 0)
        .min_by_key(|&v| (h.degree(v), v))
        .unwrap_or(0);
    let mut used = vec![false; h.num_edges()];
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut pv = vec![start];
    let mut pe: Vec<usize> = Vec::new();
    for _ in 0..2 {
        loop {
            let u = *pv.last().expect("nonempty");
            let mut best: Option<((usize, usize, usize), usize, usize)> = None;
            for &e in h.incident(u) {
                if used[e] {
                    continue;
                }
                for &w in h.edge(e) {
                    if visited[w] {
                        continue;
                    }
                    let free_deg = h.incident(w).iter().filter(|&&f| !used[f] && f != e).count();
                    let key = (free_deg, w, e);
                    if best.is_none_or(|(k, _, _)| key < k) {
                        best = Some((key, e, w));
                    }
                }
            }
            let Some((_, e, w)) = best else { break };
            used[e] = true;
            visited[w] = true;
            pv.push(w);
            pe.push(e);
        }
        pv.reverse();
        pe.reverse();
    }
    BergeWalk::path(pv, pe)
}

/// Longest cycle obtainable by closing a prefix of `path` (read from either
/// end); the rest of the path becomes the pair's path.
pub(super) fn initial_pair(h: &UniformHypergraph, path: &BergeWalk) -> Option<CyclePathPair> {
    let mut best: Option<(usize, CyclePathPair)> = None;
    let mut reversed = path.clone();
    reversed.vertices.reverse();
    reversed.edge_indices.reverse();
    for oriented in [path, &reversed] {
        let seed = CyclePathPair {
            cycle: BergeWalk::cycle(Vec::new(), Vec::new()),
            path: oriented.clone(),
        };
        let pv = &oriented.vertices;
        let pe = &oriented.edge_indices;
        let used: Vec<bool> = {
            let mut u = vec![false; h.num_edges()];
            for &e in pe {
                u[e] = true;
            }
            u
        };
        for through in (1..pv.len()).rev() {
            if best.as_ref().is_some_and(|(len, _)| *len > through) {
                break;
            }
            let closing = if through < pe.len() && h.contains(pe[through], pv[0]) {
                Some(Step::CloseCycle { through, edge: None })
            } else {
                h.incident(pv[0])
                    .iter()
                    .find(|&&e| !used[e] && h.contains(e, pv[through]))
                    .map(|&e| Step::CloseCycle { through, edge: Some(e) })
            };
            if let Some(step) = closing {
                let mut p = seed.clone();
                if apply_step(h, &mut p, &step).is_ok() {
                    best = Some((through + 1, p));
                    break;
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Random valid pair for fuzzing: a solver-found cycle of random length and
/// a random disjoint path grown through unused edges.
pub fn random_pair(h: &UniformHypergraph, seed: u64) -> Option<CyclePathPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = h.n().min(h.num_edges());
    if cap < 3 {
        return None;
    }
    let want = rng.random_range(3..=cap);
    let opts = SolveOptions {
        budget: SearchBudget::nodes(50_000),
        order: SearchOrder::Seeded(seed),
        parallel: false,
    };
    let cycle = (3..=want)
        .rev()
        .find_map(|k| find_berge_cycle(h, k, opts).witness)?;
    let mut pair = CyclePathPair {
        cycle,
        path: BergeWalk::path(Vec::new(), Vec::new()),
    };
    let view = View::of(h, &pair);
    let off: Vec<usize> = (0..h.n()).filter(|&v| view.free_vertex(v)).collect();
    if off.is_empty() {
        return Some(pair);
    }
    let start = off[rng.random_range(0..off.len())];
    pair.path = BergeWalk::path(vec![start], Vec::new());
    let target_len = rng.random_range(0..=off.len());
    while pair.path.edge_indices.len() < target_len {
        let view = View::of(h, &pair);
        let last = *pair.path.vertices.last().expect("nonempty");
        let options: Vec<(usize, usize)> = h
            .incident(last)
            .iter()
            .filter(|&&e| !view.used[e])
            .flat_map(|&e| h.edge(e).iter().filter(|&&w| view.free_vertex(w)).map(move |&w| (e, w)))
            .collect();
        if options.is_empty() {
            break;
        }
        let (e, w) = options[rng.random_range(0..options.len())];
        pair.path.vertices.push(w);
        pair.path.edge_indices.push(e);
    }
    Some(pair)
}
