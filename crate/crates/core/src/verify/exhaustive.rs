use crate::constructions::subsets;

/// Edge-subset enumeration over the complete `r`-graph on `n` vertices,
/// split into `2^prefix_bits` independent batches.
///
/// Batch `b` fixes the membership of the first `prefix_bits` edges to the
/// bits of `b`; the remaining edges are branched on in order, dropping any
/// branch in which some vertex can no longer reach the degree floor.
#[derive(Debug, Clone)]
pub(super) struct Enumerator {
    pub edges: Vec<Vec<usize>>,
    /// Bit `i` of `vertex_masks[v]` is set when edge `i` contains `v`.
    pub vertex_masks: Vec<u64>,
    /// `remaining[i][v]`: edges with index `>= i` containing `v`.
    remaining: Vec<Vec<u32>>,
    floor: u32,
    prefix_bits: usize,
}

const MAX_PREFIX_BITS: usize = 8;

impl Enumerator {
    pub fn new(n: usize, r: usize, floor: usize) -> Self {
        let all: Vec<usize> = (0..n).collect();
        let edges = subsets(&all, r);
        let m = edges.len();
        assert!(m <= 63, "edge space too large for exhaustive enumeration");
        let mut vertex_masks = vec![0u64; n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                vertex_masks[v] |= 1 << i;
            }
        }
        let mut remaining = vec![vec![0u32; n]; m + 1];
        for i in (0..m).rev() {
            remaining[i] = remaining[i + 1].clone();
            for &v in &edges[i] {
                remaining[i][v] += 1;
            }
        }
        Self {
            edges,
            vertex_masks,
            remaining,
            floor: floor as u32,
            prefix_bits: m.min(MAX_PREFIX_BITS),
        }
    }

    pub fn batches(&self) -> u64 {
        1 << self.prefix_bits
    }

    /// Edge subsets covered by one batch, before pruning.
    pub fn batch_size(&self) -> u64 {
        1 << (self.edges.len() - self.prefix_bits)
    }

    pub fn degree(&self, mask: u64, v: usize) -> usize {
        (mask & self.vertex_masks[v]).count_ones() as usize
    }

    /// Calls `f` on every mask of batch `batch` whose minimum degree is at
    /// least the floor, in increasing order of the branched bits.
    pub fn for_each(&self, batch: u64, mut f: impl FnMut(u64)) {
        let n = self.vertex_masks.len();
        let prefix = batch & ((1 << self.prefix_bits) - 1);
        let mut deg: Vec<u32> = (0..n).map(|v| (prefix & self.vertex_masks[v]).count_ones()).collect();
        self.rec(self.prefix_bits, prefix, &mut deg, &mut f);
    }

    fn rec(&self, i: usize, mask: u64, deg: &mut [u32], f: &mut impl FnMut(u64)) {
        if deg
            .iter()
            .zip(&self.remaining[i])
            .any(|(&d, &rest)| d + rest < self.floor)
        {
            return;
        }
        if i == self.edges.len() {
            f(mask);
            return;
        }
        self.rec(i + 1, mask, deg, f);
        for &v in &self.edges[i] {
            deg[v] += 1;
        }
        self.rec(i + 1, mask | (1 << i), deg, f);
        for &v in &self.edges[i] {
            deg[v] -= 1;
        }
    }
}
