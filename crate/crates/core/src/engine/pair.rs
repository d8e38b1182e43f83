use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::hypergraph::UniformHypergraph;
use crate::walk::{validate_walk, BergeWalk};

/// A Berge cycle and a vertex- and edge-disjoint Berge path.
///
/// The path has at least one vertex unless the cycle is hamiltonian, in
/// which case it is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclePathPair {
    pub cycle: BergeWalk,
    pub path: BergeWalk,
}

impl CyclePathPair {
    pub fn new(
        cycle_vertices: Vec<usize>,
        cycle_edges: Vec<usize>,
        path_vertices: Vec<usize>,
        path_edges: Vec<usize>,
    ) -> Self {
        Self {
            cycle: BergeWalk::cycle(cycle_vertices, cycle_edges),
            path: BergeWalk::path(path_vertices, path_edges),
        }
    }
}

/// Lexicographic quality of a pair; field order is comparison order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairRank {
    pub c_len: usize,
    pub p_len: usize,
    pub cover_c: usize,
    pub cover_p: usize,
}

pub fn rank(h: &UniformHypergraph, pair: &CyclePathPair) -> PairRank {
    let mut on_path = vec![false; h.n()];
    for &u in &pair.path.vertices {
        on_path[u] = true;
    }
    let cover = |edges: &[usize]| -> usize {
        edges
            .iter()
            .map(|&e| h.edge(e).iter().filter(|&&v| on_path[v]).count())
            .sum()
    };
    PairRank {
        c_len: pair.cycle.edge_indices.len(),
        p_len: pair.path.edge_indices.len(),
        cover_c: cover(&pair.cycle.edge_indices),
        cover_p: cover(&pair.path.edge_indices),
    }
}

pub fn fingerprint(pair: &CyclePathPair) -> u64 {
    let mut s = DefaultHasher::new();
    pair.hash(&mut s);
    s.finish()
}

pub fn validate_pair(h: &UniformHypergraph, pair: &CyclePathPair) -> Result<(), String> {
    validate_walk(h, &pair.cycle).map_err(|e| format!("cycle: {e}"))?;
    if pair.path.vertices.is_empty() {
        if !pair.path.edge_indices.is_empty() {
            return Err("empty path with edges".into());
        }
        if pair.cycle.vertices.len() < h.n() {
            return Err("empty path while vertices remain off the cycle".into());
        }
        return Ok(());
    }
    validate_walk(h, &pair.path).map_err(|e| format!("path: {e}"))?;
    if let Some(v) = pair.path.vertices.iter().find(|v| pair.cycle.vertices.contains(v)) {
        return Err(format!("vertex {v} on both cycle and path"));
    }
    if let Some(e) = pair
        .path
        .edge_indices
        .iter()
        .find(|e| pair.cycle.edge_indices.contains(e))
    {
        return Err(format!("edge {e} on both cycle and path"));
    }
    Ok(())
}
