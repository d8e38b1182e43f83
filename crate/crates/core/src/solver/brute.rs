//! Exhaustive circumference for tiny hypergraphs, independent of the main
//! search: enumerate vertex subsets, every cyclic order of each, and every
//! injective edge assignment.

use thiserror::Error;

use crate::hypergraph::UniformHypergraph;

pub const BRUTE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("brute force refuses n={n} (limit {BRUTE_MAX_N})")]
pub struct BruteError {
    pub n: usize,
}

pub fn brute_circumference(h: &UniformHypergraph) -> Result<usize, BruteError> {
    let n = h.n();
    if n > BRUTE_MAX_N {
        return Err(BruteError { n });
    }
    let m = h.num_edges();
    for len in (3..=n.min(m)).rev() {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != len {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if has_cycle_on(h, &verts) {
                return Ok(len);
            }
        }
    }
    Ok(0)
}

/// Tries every cyclic order of `verts` starting at `verts[0]`.
fn has_cycle_on(h: &UniformHypergraph, verts: &[usize]) -> bool {
    let mut order = vec![verts[0]];
    let mut rest: Vec<usize> = verts[1..].to_vec();
    permute(h, &mut order, &mut rest)
}

fn permute(h: &UniformHypergraph, order: &mut Vec<usize>, rest: &mut Vec<usize>) -> bool {
    if rest.is_empty() {
        return assignable(h, order);
    }
    for i in 0..rest.len() {
        let v = rest.remove(i);
        order.push(v);
        let ok = permute(h, order, rest);
        order.pop();
        rest.insert(i, v);
        if ok {
            return true;
        }
    }
    false
}

fn assignable(h: &UniformHypergraph, order: &[usize]) -> bool {
    let len = order.len();
    let pairs: Vec<(usize, usize)> = (0..len).map(|i| (order[i], order[(i + 1) % len])).collect();
    let mut used = vec![false; h.num_edges()];
    assign(h, &pairs, 0, &mut used)
}

fn assign(h: &UniformHypergraph, pairs: &[(usize, usize)], i: usize, used: &mut [bool]) -> bool {
    if i == pairs.len() {
        return true;
    }
    let (a, b) = pairs[i];
    for e in 0..h.num_edges() {
        if used[e] || !h.contains(e, a) || !h.contains(e, b) {
            continue;
        }
        used[e] = true;
        if assign(h, pairs, i + 1, used) {
            return true;
        }
        used[e] = false;
    }
    false
}
