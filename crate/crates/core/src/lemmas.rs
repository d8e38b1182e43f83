//! Exhaustive checks of three counting lemmas about positions on a graph
//! cycle `v_0, e_0, v_1, ..., v_{s-1}, e_{s-1}, v_0`, where edge `e_i` joins
//! `v_i` and `v_{i+1 mod s}`.
//!
//! Subsets of positions are bitmasks; distances between positions are
//! cyclic (the shorter of the two arcs).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest cycle length the enumerators accept.
pub const MAX_CYCLE: usize = 20;

fn full(s: usize) -> u32 {
    (1u32 << s) - 1
}

fn rotate(mask: u32, s: usize) -> u32 {
    ((mask << 1) | (mask >> (s - 1))) & full(s)
}

/// No two cyclically consecutive vertices.
pub fn is_independent(mask: u32, s: usize) -> bool {
    mask & rotate(mask, s) == 0
}

pub fn cyclic_distance(i: usize, j: usize, s: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(s - d)
}

fn positions(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// `ceil(x / 2)` for possibly negative `x`.
fn ceil_half(x: i64) -> i64 {
    -((-x).div_euclid(2))
}

fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

/// Largest independent vertex set avoiding the endpoints of `c` chosen cycle
/// edges, maximized over the choice of edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentReport {
    pub s: usize,
    pub c: usize,
    /// `ceil((s - 1 - c) / 2)`.
    pub bound: i64,
    pub attained: usize,
    pub witness_edges: Vec<usize>,
    pub witness_independent: Vec<usize>,
    pub holds: bool,
    pub tight: bool,
}

pub fn max_independent_disjoint(s: usize, c: usize) -> IndependentReport {
    assert!((3..=MAX_CYCLE).contains(&s) && c <= s, "need 3 <= s <= {MAX_CYCLE}, c <= s");
    let bound = ceil_half(s as i64 - 1 - c as i64);
    let mut best = (0usize, 0u32, 0u32);
    let mut first = true;
    for edges in 0..=full(s) {
        if edges.count_ones() as usize != c {
            continue;
        }
        // endpoints of edge i are vertices i and i+1
        let covered = edges | rotate(edges, s);
        let free = full(s) & !covered;
        let mut sub = free;
        loop {
            if is_independent(sub, s) {
                let size = sub.count_ones() as usize;
                if first || size > best.0 {
                    best = (size, edges, sub);
                    first = false;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    let (attained, e, i) = best;
    IndependentReport {
        s,
        c,
        bound,
        attained,
        witness_edges: positions(e),
        witness_independent: positions(i),
        holds: attained as i64 <= bound,
        tight: attained as i64 == bound,
    }
}

/// Best configuration found for one case of a separation lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    /// Largest admissible `|A|` under the lemma (floor of the real bound).
    pub bound: i64,
    /// `None` when no configuration exists at all.
    pub attained: Option<usize>,
    pub witness_a: Vec<usize>,
    pub witness_b: Vec<usize>,
    pub holds: bool,
}

impl CaseReport {
    fn new(bound: i64) -> Self {
        Self {
            bound,
            attained: None,
            witness_a: Vec::new(),
            witness_b: Vec::new(),
            holds: true,
        }
    }

    fn offer(&mut self, a: u32, b: u32) {
        let size = a.count_ones() as usize;
        if self.attained.is_none_or(|best| size > best) {
            self.attained = Some(size);
            self.witness_a = positions(a);
            self.witness_b = positions(b);
            self.holds = size as i64 <= self.bound;
        }
    }
}

/// Edge subsets `A`, `B` of the cycle, `|B| >= |A|`, where every `e_i` in
/// `A` and `e_j` in `B` have `i = j` or cyclic distance at least `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatedEdgesReport {
    pub s: usize,
    pub q: usize,
    /// `B = A`; bound `s / q`.
    pub equal: CaseReport,
    /// `B != A`; bound `s/2 - q + 1`.
    pub distinct: CaseReport,
}

/// Positions `j` such that every `i` in `set` equals `j` or lies at cyclic
/// distance at least `q` from it.
fn compatible(set: u32, s: usize, q: usize) -> u32 {
    let members = positions(set);
    let mut out = 0u32;
    for j in 0..s {
        if members.iter().all(|&i| i == j || cyclic_distance(i, j, s) >= q) {
            out |= 1 << j;
        }
    }
    out
}

/// For each `A` the admissible `B` are exactly the subsets of
/// `compatible(A)`, so the best `B` is decided without enumerating it.
pub fn max_verc_config(s: usize, q: usize) -> SeparatedEdgesReport {
    assert!((3..=MAX_CYCLE).contains(&s) && q >= 2, "need 3 <= s <= {MAX_CYCLE}, q >= 2");
    let mut equal = CaseReport::new((s / q) as i64);
    let mut distinct = CaseReport::new(floor_half(s as i64 - 2 * q as i64 + 2));
    for a in 1..=full(s) {
        let allowed = compatible(a, s, q);
        let size = a.count_ones();
        if allowed & a == a {
            equal.offer(a, a);
        }
        // B = allowed itself is admissible, differs from A, and is as large as possible
        if allowed != a && allowed.count_ones() >= size {
            distinct.offer(a, allowed);
        }
    }
    SeparatedEdgesReport { s, q, equal, distinct }
}

/// Independent vertex subsets `A`, `B` with `B - A` nonempty and every
/// vertex of `A` at cyclic distance at least `q` from every vertex of `B - A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatedVerticesReport {
    pub s: usize,
    pub q: usize,
    /// Bound `s/2 - q + 1`.
    pub case: CaseReport,
}

/// A valid `B` exists iff some vertex `y` outside `A` is far from all of
/// `A`; then `B = A + y` is independent because `q >= 2`.
pub fn max_verc2_config(s: usize, q: usize) -> SeparatedVerticesReport {
    assert!((3..=MAX_CYCLE).contains(&s) && q >= 2, "need 3 <= s <= {MAX_CYCLE}, q >= 2");
    let mut case = CaseReport::new(floor_half(s as i64 - 2 * q as i64 + 2));
    for a in 1..=full(s) {
        if !is_independent(a, s) {
            continue;
        }
        let members = positions(a);
        let far = (0..s).find(|&y| a >> y & 1 == 0 && members.iter().all(|&i| cyclic_distance(i, y, s) >= q));
        if let Some(y) = far {
            case.offer(a, a | 1 << y);
        }
    }
    SeparatedVerticesReport { s, q, case }
}

/// Parameter ranges for a full lemma run. Separation cells with `q > s`
/// are skipped: there a single edge already breaks `a <= s/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaGrid {
    pub independent_s_max: usize,
    pub separated_s_max: usize,
    pub q_max: usize,
}

impl Default for LemmaGrid {
    fn default() -> Self {
        Self {
            independent_s_max: 10,
            separated_s_max: 12,
            q_max: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSuiteReport {
    pub grid: LemmaGrid,
    pub independent: Vec<IndependentReport>,
    pub separated_edges: Vec<SeparatedEdgesReport>,
    pub separated_vertices: Vec<SeparatedVerticesReport>,
    pub all_hold: bool,
}

pub fn run_lemma_suite(grid: LemmaGrid) -> LemmaSuiteReport {
    let indep_cells: Vec<(usize, usize)> = (3..=grid.independent_s_max)
        .flat_map(|s| (0..=s).map(move |c| (s, c)))
        .collect();
    let sep_cells: Vec<(usize, usize)> = (3..=grid.separated_s_max)
        .flat_map(|s| (2..=grid.q_max.min(s)).map(move |q| (s, q)))
        .collect();
    let independent: Vec<_> = indep_cells
        .par_iter()
        .map(|&(s, c)| max_independent_disjoint(s, c))
        .collect();
    let separated_edges: Vec<_> = sep_cells.par_iter().map(|&(s, q)| max_verc_config(s, q)).collect();
    let separated_vertices: Vec<_> = sep_cells.par_iter().map(|&(s, q)| max_verc2_config(s, q)).collect();
    let all_hold = independent.iter().all(|r| r.holds)
        && separated_edges.iter().all(|r| r.equal.holds && r.distinct.holds)
        && separated_vertices.iter().all(|r| r.case.holds);
    LemmaSuiteReport {
        grid,
        independent,
        separated_edges,
        separated_vertices,
        all_hold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_examples() {
        assert_eq!(max_independent_disjoint(3, 1).attained, 1);
        let r = max_independent_disjoint(4, 0);
        assert_eq!((r.attained, r.bound), (2, 2));
        let r = max_independent_disjoint(6, 2);
        assert!(r.holds);
        assert_eq!(r.bound, 2);
        assert_eq!(r.attained, 2);
        let r = max_independent_disjoint(5, 5);
        assert_eq!((r.attained, r.bound), (0, 0));
    }

    #[test]
    fn verc_examples() {
        let r = max_verc_config(6, 2);
        assert_eq!(r.equal.attained, Some(3));
        let r = max_verc_config(6, 3);
        assert_eq!(r.distinct.bound, 1);
        assert_eq!(r.distinct.attained, Some(1));
        assert!(r.distinct.holds);
        let r = max_verc_config(4, 2);
        assert_eq!(r.equal.attained, Some(2));
        // q exceeds every cyclic distance on a 4-cycle
        assert_eq!(max_verc_config(4, 3).distinct.attained, None);
    }

    #[test]
    fn verc2_examples() {
        let r = max_verc2_config(8, 2);
        assert_eq!(r.case.bound, 3);
        assert!(r.case.holds);
        let r = max_verc2_config(6, 3);
        assert_eq!(r.case.bound, 1);
        assert!(r.case.holds);
        let r = max_verc2_config(10, 2);
        assert!(r.case.holds);
        assert_eq!(r.case.attained, Some(4));
    }

    /// Enumerates every (A, B) pair outright.
    fn verc_by_pairs(s: usize, q: usize) -> (Option<usize>, Option<usize>) {
        let ok = |a: u32, b: u32| {
            positions(a).iter().all(|&i| {
                positions(b)
                    .iter()
                    .all(|&j| i == j || cyclic_distance(i, j, s) >= q)
            })
        };
        let (mut eq, mut ne) = (None::<usize>, None::<usize>);
        for a in 1..=full(s) {
            for b in 1..=full(s) {
                if b.count_ones() < a.count_ones() || !ok(a, b) {
                    continue;
                }
                let size = a.count_ones() as usize;
                let slot = if a == b { &mut eq } else { &mut ne };
                *slot = Some(slot.map_or(size, |x| x.max(size)));
            }
        }
        (eq, ne)
    }

    fn verc2_by_pairs(s: usize, q: usize) -> Option<usize> {
        let mut best = None::<usize>;
        for a in 1..=full(s) {
            if !is_independent(a, s) {
                continue;
            }
            for b in 1..=full(s) {
                let extra = b & !a;
                if !is_independent(b, s) || extra == 0 {
                    continue;
                }
                let fine = positions(a)
                    .iter()
                    .all(|&i| positions(extra).iter().all(|&j| cyclic_distance(i, j, s) >= q));
                if fine {
                    let size = a.count_ones() as usize;
                    best = Some(best.map_or(size, |x| x.max(size)));
                }
            }
        }
        best
    }

    #[test]
    fn shortcuts_match_pair_enumeration() {
        for s in 3..=8 {
            for q in 2..=4 {
                let r = max_verc_config(s, q);
                assert_eq!((r.equal.attained, r.distinct.attained), verc_by_pairs(s, q), "s={s} q={q}");
                assert_eq!(max_verc2_config(s, q).case.attained, verc2_by_pairs(s, q), "s={s} q={q}");
            }
        }
    }

    fn rotate_positions(ps: &[usize], s: usize) -> u32 {
        ps.iter().fold(0, |m, &p| m | 1 << ((p + 1) % s))
    }

    #[test]
    fn witnesses_survive_rotation() {
        for s in 3..=10 {
            for c in 0..=s {
                let r = max_independent_disjoint(s, c);
                let e = rotate_positions(&r.witness_edges, s);
                let i = rotate_positions(&r.witness_independent, s);
                assert!(is_independent(i, s));
                assert_eq!(i & (e | rotate(e, s)), 0);
                assert_eq!(i.count_ones() as usize, r.attained);
            }
            for q in 2..=4 {
                let r = max_verc_config(s, q);
                if let Some(a) = r.distinct.attained {
                    let ra = rotate_positions(&r.distinct.witness_a, s);
                    let rb = rotate_positions(&r.distinct.witness_b, s);
                    assert_eq!(ra.count_ones() as usize, a);
                    assert_eq!(compatible(ra, s, q) & rb, rb);
                }
            }
        }
    }

    #[test]
    fn small_suite_holds() {
        let rep = run_lemma_suite(LemmaGrid {
            independent_s_max: 7,
            separated_s_max: 8,
            q_max: 3,
        });
        assert!(rep.all_hold);
        assert_eq!(rep.independent.len(), (3..=7).map(|s| s + 1).sum::<usize>());
    }
}
