//! Deterministic extremal constructions and a seeded random generator with a
//! minimum-degree floor.
//!
//! Vertex 0 is always the shared vertex in the glued constructions (H1 odd,
//! H4, H5). Every generator returns its edges in a fixed order so the output
//! is byte-stable across runs.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::UniformHypergraph;
use crate::thresholds::{binomial, pivot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family}: {reason}")]
    Precondition { family: Family, reason: String },
    #[error("minimum degree {delta} unreachable: at most {max} edges contain a vertex")]
    Unreachable { delta: usize, max: u64 },
    #[error("edge floor {min_edges} exceeds the {max} possible edges")]
    TooManyEdges { min_edges: usize, max: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    H1,
    H2,
    H3,
    H4,
    H5,
    TightCycle,
    Complete,
    RandomMinDegree,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::H1 => "h1",
            Family::H2 => "h2",
            Family::H3 => "h3",
            Family::H4 => "h4",
            Family::H5 => "h5",
            Family::TightCycle => "tight_cycle",
            Family::Complete => "complete",
            Family::RandomMinDegree => "random_min_degree",
        };
        f.write_str(s)
    }
}

/// Everything needed to regenerate an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// What a construction is known to satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionMeta {
    pub spec: ConstructionSpec,
    pub edges: usize,
    pub expected_min_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circumference_exact: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circumference_at_most: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<bool>,
}

fn pre(family: Family, ok: bool, reason: impl FnOnce() -> String) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Precondition {
            family,
            reason: reason(),
        })
    }
}

/// All `r`-subsets of `ground`, lexicographic in the order of `ground`.
pub fn subsets(ground: &[usize], r: usize) -> Vec<Vec<usize>> {
    fn rec(ground: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let need = r - cur.len();
        for i in start..=ground.len().saturating_sub(need) {
            if i >= ground.len() {
                break;
            }
            cur.push(ground[i]);
            rec(ground, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= ground.len() {
        rec(ground, r, 0, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

fn build(n: usize, r: usize, edges: Vec<Vec<usize>>) -> UniformHypergraph {
    UniformHypergraph::new(n, r, edges).expect("construction produced an invalid hypergraph")
}

/// The complete `r`-graph on `n` vertices.
pub fn gen_complete(n: usize, r: usize) -> Result<UniformHypergraph, ConstructionError> {
    pre(Family::Complete, r >= 1 && r <= n, || format!("need 1 <= r <= n, got n={n} r={r}"))?;
    let all: Vec<usize> = (0..n).collect();
    Ok(build(n, r, subsets(&all, r)))
}

fn small_uniformity(family: Family, n: usize, r: usize) -> Result<(), ConstructionError> {
    let t = pivot(n as u64) as usize;
    pre(family, r >= 3 && r <= t, || {
        format!("need 3 <= r <= t={t}, got n={n} r={r}")
    })
}

/// Two complete `r`-graphs glued at one vertex (`n` odd) or joined by one
/// bridging edge (`n` even).
pub fn gen_h1(n: usize, r: usize) -> Result<UniformHypergraph, ConstructionError> {
    small_uniformity(Family::H1, n, r)?;
    let mut edges;
    if n % 2 == 1 {
        let m = n.div_ceil(2);
        let first: Vec<usize> = (0..m).collect();
        let second: Vec<usize> = std::iter::once(0).chain(m..n).collect();
        edges = subsets(&first, r);
        edges.extend(subsets(&second, r));
    } else {
        let m = n / 2;
        let first: Vec<usize> = (0..m).collect();
        let second: Vec<usize> = (m..n).collect();
        edges = subsets(&first, r);
        edges.extend(subsets(&second, r));
        // a_0 plus the r-1 smallest ids of the second clique
        let bridge: Vec<usize> = std::iter::once(0).chain(m..m + r - 1).collect();
        edges.push(bridge);
    }
    Ok(build(n, r, edges))
}

/// All `r`-sets meeting `Y = {t..n-1}` in at most one vertex.
pub fn gen_h2(n: usize, r: usize) -> Result<UniformHypergraph, ConstructionError> {
    small_uniformity(Family::H2, n, r)?;
    let t = pivot(n as u64) as usize;
    let x: Vec<usize> = (0..t).collect();
    let mut edges = subsets(&x, r);
    for y in t..n {
        for mut s in subsets(&x, r - 1) {
            s.push(y);
            edges.push(s);
        }
    }
    Ok(build(n, r, edges))
}

fn window(n: usize, r: usize, start: usize) -> Vec<usize> {
    (0..r).map(|j| (start + j) % n).collect()
}

/// The `r`-uniform tight cycle: every window of `r` cyclically consecutive
/// vertices is an edge.
pub fn gen_tight_cycle(n: usize, r: usize) -> Result<UniformHypergraph, ConstructionError> {
    pre(Family::TightCycle, r >= 3 && r < n, || {
        format!("need 3 <= r < n, got n={n} r={r}")
    })?;
    Ok(build(n, r, (0..n).map(|i| window(n, r, i)).collect()))
}

/// Tight cycle minus the window starting at vertex 0.
pub fn gen_h3(n: usize, r: usize) -> Result<UniformHypergraph, ConstructionError> {
    pre(Family::H3, r >= 3 && r < n && 2 * r >= n, || {
        format!("need n/2 <= r < n and r >= 3, got n={n} r={r}")
    })?;
    Ok(build(n, r, (1..n).map(|i| window(n, r, i)).collect()))
}

/// `(n-1)/(k-2)` complete `r`-graphs on `k-1` vertices sharing vertex 0.
pub fn gen_h4(n: usize, r: usize, k: usize) -> Result<UniformHypergraph, ConstructionError> {
    pre(Family::H4, r >= 3 && k >= r + 2 && k <= n, || {
        format!("need r >= 3 and r+2 <= k <= n, got n={n} r={r} k={k}")
    })?;
    pre(Family::H4, (n - 1).is_multiple_of(k - 2), || {
        format!("n-1={} not divisible by k-2={}", n - 1, k - 2)
    })?;
    let mut edges = Vec::new();
    for block in 0..(n - 1) / (k - 2) {
        let lo = 1 + block * (k - 2);
        let clique: Vec<usize> = std::iter::once(0).chain(lo..lo + k - 2).collect();
        edges.extend(subsets(&clique, r));
    }
    Ok(build(n, r, edges))
}

/// `(n-1)/r` sets of `r+1` vertices sharing vertex 0, each carrying `k-1` of
/// its `r`-subsets: the ones omitting its `k-1` largest private vertices.
pub fn gen_h5(n: usize, r: usize, k: usize) -> Result<UniformHypergraph, ConstructionError> {
    let t = pivot(n as u64) as usize;
    pre(Family::H5, r >= 3 && k >= 3 && k <= r + 1 && r <= t, || {
        format!("need 3 <= k <= r+1 <= t+1, got n={n} r={r} k={k} t={t}")
    })?;
    pre(Family::H5, (n - 1).is_multiple_of(r), || {
        format!("n-1={} not divisible by r={r}", n - 1)
    })?;
    let mut edges = Vec::new();
    for block in 0..(n - 1) / r {
        let lo = 1 + block * r;
        let private: Vec<usize> = (lo..lo + r).collect();
        for omit in private.iter().rev().take(k - 1) {
            let edge: Vec<usize> = std::iter::once(0)
                .chain(private.iter().copied().filter(|v| v != omit))
                .collect();
            edges.push(edge);
        }
    }
    Ok(build(n, r, edges))
}

/// Parameters for [`gen_random`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    pub r: usize,
    pub min_degree: usize,
    pub min_edges: usize,
    pub seed: u64,
}

/// Seeded random hypergraph with `δ >= delta`.
pub fn gen_random_min_degree(
    n: usize,
    r: usize,
    delta: usize,
    seed: u64,
) -> Result<UniformHypergraph, ConstructionError> {
    gen_random(RandomParams {
        n,
        r,
        min_degree: delta,
        min_edges: 0,
        seed,
    })
}

/// Random sample, then greedy repair: while some vertex is below the floor,
/// add a random absent edge through it, filling the rest of the edge with
/// other deficient vertices first. Finally top up to `min_edges`.
pub fn gen_random(p: RandomParams) -> Result<UniformHypergraph, ConstructionError> {
    let RandomParams {
        n,
        r,
        min_degree: delta,
        min_edges,
        seed,
    } = p;
    pre(Family::RandomMinDegree, r >= 1 && r <= n, || {
        format!("need 1 <= r <= n, got n={n} r={r}")
    })?;
    let max_deg = binomial(n as u64 - 1, r as u64 - 1).unwrap_or(u64::MAX);
    if delta as u64 > max_deg {
        return Err(ConstructionError::Unreachable {
            delta,
            max: max_deg,
        });
    }
    let max_edges = binomial(n as u64, r as u64).unwrap_or(u64::MAX);
    if min_edges as u64 > max_edges {
        return Err(ConstructionError::TooManyEdges {
            min_edges,
            max: max_edges,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: HashSet<Vec<usize>> = HashSet::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut degree = vec![0usize; n];
    let mut push = |e: Vec<usize>, set: &mut HashSet<Vec<usize>>, degree: &mut Vec<usize>| -> bool {
        if set.contains(&e) {
            return false;
        }
        for &v in &e {
            degree[v] += 1;
        }
        set.insert(e.clone());
        edges.push(e);
        true
    };

    let base = (n * delta).div_ceil(2 * r).max(n / r);
    let initial = rng.random_range(0..=base).min(max_edges as usize);
    for _ in 0..initial {
        let mut e = sample(&mut rng, n, r).into_vec();
        e.sort_unstable();
        push(e, &mut set, &mut degree);
    }

    loop {
        let deficient: Vec<usize> = (0..n).filter(|&v| degree[v] < delta).collect();
        if deficient.is_empty() {
            break;
        }
        let v = deficient[rng.random_range(0..deficient.len())];
        let mut added = false;
        for attempt in 0..32 {
            let mut others: Vec<usize> = if attempt < 16 {
                let mut d: Vec<usize> = deficient.iter().copied().filter(|&u| u != v).collect();
                d.shuffle(&mut rng);
                d.truncate(r - 1);
                d
            } else {
                Vec::new()
            };
            while others.len() < r - 1 {
                let u = rng.random_range(0..n);
                if u != v && !others.contains(&u) {
                    others.push(u);
                }
            }
            others.push(v);
            others.sort_unstable();
            if push(others, &mut set, &mut degree) {
                added = true;
                break;
            }
        }
        if !added {
            let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let absent: Vec<Vec<usize>> = subsets(&rest, r - 1)
                .into_iter()
                .map(|mut s| {
                    s.push(v);
                    s.sort_unstable();
                    s
                })
                .filter(|e| !set.contains(e))
                .collect();
            // degree[v] < delta <= C(n-1, r-1) leaves at least one absent edge
            let e = absent[rng.random_range(0..absent.len())].clone();
            push(e, &mut set, &mut degree);
        }
    }

    let all: Vec<usize> = (0..n).collect();
    let mut tries = 0;
    while set.len() < min_edges {
        tries += 1;
        if tries > 64 {
            let absent: Vec<Vec<usize>> = subsets(&all, r)
                .into_iter()
                .filter(|e| !set.contains(e))
                .collect();
            let e = absent[rng.random_range(0..absent.len())].clone();
            push(e, &mut set, &mut degree);
            continue;
        }
        let mut e = sample(&mut rng, n, r).into_vec();
        e.sort_unstable();
        push(e, &mut set, &mut degree);
    }

    Ok(build(n, r, edges))
}

/// Generates the instance described by `spec`.
pub fn generate(spec: &ConstructionSpec) -> Result<UniformHypergraph, ConstructionError> {
    let need_k = || {
        spec.k.ok_or(ConstructionError::Precondition {
            family: spec.family,
            reason: "parameter k is required".into(),
        })
    };
    match spec.family {
        Family::H1 => gen_h1(spec.n, spec.r),
        Family::H2 => gen_h2(spec.n, spec.r),
        Family::H3 => gen_h3(spec.n, spec.r),
        Family::H4 => gen_h4(spec.n, spec.r, need_k()?),
        Family::H5 => gen_h5(spec.n, spec.r, need_k()?),
        Family::TightCycle => gen_tight_cycle(spec.n, spec.r),
        Family::Complete => gen_complete(spec.n, spec.r),
        Family::RandomMinDegree => gen_random(RandomParams {
            n: spec.n,
            r: spec.r,
            min_degree: spec.delta.unwrap_or(0),
            min_edges: spec.min_edges.unwrap_or(0),
            seed: spec.seed.unwrap_or(0),
        }),
    }
}

/// Known properties of the instance `spec` generates.
pub fn metadata(spec: &ConstructionSpec, h: &UniformHypergraph) -> ConstructionMeta {
    let (n, r) = (spec.n, spec.r);
    let t = pivot(n as u64);
    let c = |a: usize, b: usize| binomial(a as u64, b as u64).ok().map(|x| x as usize);
    let mut meta = ConstructionMeta {
        spec: spec.clone(),
        edges: h.num_edges(),
        expected_min_degree: None,
        circumference_exact: None,
        circumference_at_most: None,
        hamiltonian: None,
    };
    match spec.family {
        Family::H1 => {
            meta.expected_min_degree = c(t as usize, r - 1);
            meta.circumference_exact = Some(n.div_ceil(2));
            meta.hamiltonian = Some(false);
        }
        Family::H2 => {
            meta.expected_min_degree = c(t as usize, r - 1);
            meta.hamiltonian = Some(false);
        }
        Family::H3 => {
            meta.expected_min_degree = Some(r - 1);
            meta.circumference_at_most = Some(n - 1);
            meta.hamiltonian = Some(false);
        }
        Family::H4 => {
            let k = spec.k.unwrap_or(0);
            meta.expected_min_degree = c(k - 2, r - 1);
            meta.circumference_exact = Some(k - 1);
        }
        Family::H5 => {
            let k = spec.k.unwrap_or(0);
            meta.expected_min_degree = Some(k - 2);
            meta.circumference_at_most = Some(k - 1);
        }
        Family::TightCycle => {
            meta.expected_min_degree = Some(r);
            meta.circumference_exact = Some(n);
            meta.hamiltonian = Some(true);
        }
        Family::Complete => {
            meta.expected_min_degree = c(n - 1, r - 1);
        }
        Family::RandomMinDegree => {
            meta.expected_min_degree = None;
        }
    }
    meta
}
