//! Distinct-representative matching between consecutive vertex pairs and the
//! edges that contain them.
//!
//! A vertex sequence extends to a Berge walk exactly when every consecutive
//! pair can be given its own containing edge. [`PairMatcher`] keeps such an
//! assignment for a growing stack of pairs: `push` runs one augmenting-path
//! search for the new pair, `pop` frees the last pair's edge. The remaining
//! pairs stay saturated after a pop, so no other rollback is needed.

use crate::hypergraph::UniformHypergraph;

const NONE: u32 = u32::MAX;

/// Per-hypergraph tables shared by every search over it.
#[derive(Debug, Clone)]
pub struct PairIndex {
    n: usize,
    /// CSR offsets into `pair_edges`, indexed by `a * n + b`.
    offsets: Vec<u32>,
    pair_edges: Vec<u32>,
}

impl PairIndex {
    pub fn new(h: &UniformHypergraph) -> Self {
        let n = h.n();
        let mut counts = vec![0u32; n * n + 1];
        for edge in h.edges() {
            for (i, &a) in edge.iter().enumerate() {
                for &b in &edge[i + 1..] {
                    counts[a * n + b] += 1;
                    counts[b * n + a] += 1;
                }
            }
        }
        let mut offsets = vec![0u32; n * n + 1];
        for i in 0..n * n {
            offsets[i + 1] = offsets[i] + counts[i];
        }
        let mut fill = offsets.clone();
        let mut pair_edges = vec![0u32; offsets[n * n] as usize];
        for (idx, edge) in h.edges().iter().enumerate() {
            for (i, &a) in edge.iter().enumerate() {
                for &b in &edge[i + 1..] {
                    for slot in [a * n + b, b * n + a] {
                        pair_edges[fill[slot] as usize] = idx as u32;
                        fill[slot] += 1;
                    }
                }
            }
        }
        Self {
            n,
            offsets,
            pair_edges,
        }
    }

    /// Edges containing both `a` and `b`, ascending by index.
    #[inline]
    pub fn edges_of(&self, a: usize, b: usize) -> &[u32] {
        let slot = a * self.n + b;
        &self.pair_edges[self.offsets[slot] as usize..self.offsets[slot + 1] as usize]
    }

    #[inline]
    pub fn codegree(&self, a: usize, b: usize) -> usize {
        let slot = a * self.n + b;
        (self.offsets[slot + 1] - self.offsets[slot]) as usize
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Incrementally maintained saturating matching of a pair stack.
#[derive(Debug, Clone)]
pub struct PairMatcher<'a> {
    index: &'a PairIndex,
    pairs: Vec<(u32, u32)>,
    pair_edge: Vec<u32>,
    edge_pair: Vec<u32>,
    stamp: Vec<u32>,
    generation: u32,
}

impl<'a> PairMatcher<'a> {
    pub fn new(index: &'a PairIndex, num_edges: usize) -> Self {
        Self {
            index,
            pairs: Vec::with_capacity(index.n() + 1),
            pair_edge: Vec::with_capacity(index.n() + 1),
            edge_pair: vec![NONE; num_edges],
            stamp: vec![0; num_edges],
            generation: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Adds the pair `(a, b)` if the enlarged stack still has a saturating
    /// matching. On failure the matcher is unchanged.
    pub fn push(&mut self, a: usize, b: usize) -> bool {
        let p = self.pairs.len() as u32;
        self.pairs.push((a as u32, b as u32));
        self.pair_edge.push(NONE);
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        if self.augment(p) {
            true
        } else {
            self.pairs.pop();
            self.pair_edge.pop();
            false
        }
    }

    pub fn pop(&mut self) {
        if let Some(e) = self.pair_edge.pop() {
            self.pairs.pop();
            if e != NONE {
                self.edge_pair[e as usize] = NONE;
            }
        }
    }

    /// Edge currently assigned to each pair, in push order.
    pub fn assignment(&self) -> Vec<usize> {
        self.pair_edge.iter().map(|&e| e as usize).collect()
    }

    fn augment(&mut self, p: u32) -> bool {
        let index = self.index;
        let (a, b) = self.pairs[p as usize];
        let cands = index.edges_of(a as usize, b as usize);
        // free edge first; avoids most recursion
        for &e in cands {
            if self.edge_pair[e as usize] == NONE {
                self.edge_pair[e as usize] = p;
                self.pair_edge[p as usize] = e;
                return true;
            }
        }
        for &e in cands {
            if self.stamp[e as usize] == self.generation {
                continue;
            }
            self.stamp[e as usize] = self.generation;
            let q = self.edge_pair[e as usize];
            if self.augment(q) {
                self.edge_pair[e as usize] = p;
                self.pair_edge[p as usize] = e;
                return true;
            }
        }
        false
    }
}

/// Whether each pair can be given a distinct edge of `h` containing it.
pub fn pair_matching_feasible(pairs: &[(usize, usize)], h: &UniformHypergraph) -> bool {
    if pairs.iter().any(|&(a, b)| a >= h.n() || b >= h.n() || a == b) {
        return false;
    }
    let index = PairIndex::new(h);
    let mut m = PairMatcher::new(&index, h.num_edges());
    pairs.iter().all(|&(a, b)| m.push(a, b))
}
