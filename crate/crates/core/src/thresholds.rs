//! Minimum-degree thresholds for long and hamiltonian Berge cycles.
//!
//! Every bound is computed in exact `u64` arithmetic; an overflowing binomial
//! is an error rather than a wrapped value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("binomial C({n}, {k}) overflows u64")]
    Overflow { n: u64, k: u64 },
}

/// Which theorem (and case) produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Hamiltonian, `r <= t`: `C(t, r-1) + 1`.
    MainA,
    /// Hamiltonian, `r >= n/2`: `r`.
    MainB,
    /// Length `>= k`, `r <= t`, `k <= r+1`: `k - 1`.
    Main3A,
    /// Length `>= k`, `r <= t`, `r+2 <= k < t+2`: `C(k-2, r-1) + 1`.
    Main3B,
    /// Length `>= k`, `r <= t`, `k >= t+2`: `C(t, r-1) + 1`.
    Main3C,
    /// Length `>= k`, `r > t`: `floor(r(k-1)/n) + 1`.
    Main4,
    /// Length `>= k`, `r > t`, at least `k` edges: `ceil(k/2)`.
    Main41,
    /// Older baseline `C(k-2, r-1) + r - 1`, kept for comparison.
    Bermond,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::MainA => "main_a",
            Regime::MainB => "main_b",
            Regime::Main3A => "main3_a",
            Regime::Main3B => "main3_b",
            Regime::Main3C => "main3_c",
            Regime::Main4 => "main4",
            Regime::Main41 => "main41",
            Regime::Bermond => "bermond",
        }
    }
}

/// `(n, r, k)` with the derived pivot `t = floor((n-1)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub n: u64,
    pub r: u64,
    pub k: u64,
    pub t: u64,
}

impl ThresholdQuery {
    pub fn new(n: u64, r: u64, k: u64) -> Result<Self, ThresholdError> {
        if r < 3 || r >= n {
            return Err(ThresholdError::OutOfRange(format!(
                "need 3 <= r < n, got n={n} r={r}"
            )));
        }
        if k < 3 || k > n {
            return Err(ThresholdError::OutOfRange(format!(
                "need 3 <= k <= n, got n={n} k={k}"
            )));
        }
        Ok(Self {
            n,
            r,
            k,
            t: pivot(n),
        })
    }

    pub fn hamiltonian(n: u64, r: u64) -> Result<Self, ThresholdError> {
        Self::new(n, r, n)
    }

    /// `r <= t`, the regime of cliques glued at a vertex.
    pub fn small_uniformity(&self) -> bool {
        self.r <= self.t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdAnswer {
    pub regime: Regime,
    pub bound: u64,
    /// Minimum number of edges the hypergraph must also have.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_edges: Option<u64>,
}

/// `t = floor((n-1)/2)`.
pub fn pivot(n: u64) -> u64 {
    n.saturating_sub(1) / 2
}

/// Exact binomial coefficient; `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u64, ThresholdError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(ThresholdError::Overflow { n, k });
        }
    }
    Ok(acc as u64)
}

fn plus_one(x: u64) -> Result<u64, ThresholdError> {
    x.checked_add(1)
        .ok_or(ThresholdError::Overflow { n: x, k: 1 })
}

/// Minimum degree forcing a hamiltonian Berge cycle.
pub fn hamiltonian_threshold(n: u64, r: u64) -> Result<ThresholdAnswer, ThresholdError> {
    let q = ThresholdQuery::hamiltonian(n, r)?;
    if q.small_uniformity() {
        Ok(ThresholdAnswer {
            regime: Regime::MainA,
            bound: plus_one(binomial(q.t, r - 1)?)?,
            min_edges: None,
        })
    } else {
        // r > t is the same as 2r >= n
        Ok(ThresholdAnswer {
            regime: Regime::MainB,
            bound: r,
            min_edges: None,
        })
    }
}

/// Minimum degree forcing a Berge cycle of length at least `k`.
pub fn circumference_threshold(
    n: u64,
    r: u64,
    k: u64,
) -> Result<ThresholdAnswer, ThresholdError> {
    let q = ThresholdQuery::new(n, r, k)?;
    let (regime, bound) = if q.small_uniformity() {
        if k <= r + 1 {
            (Regime::Main3A, k - 1)
        } else if k < q.t + 2 {
            (Regime::Main3B, plus_one(binomial(k - 2, r - 1)?)?)
        } else {
            (Regime::Main3C, plus_one(binomial(q.t, r - 1)?)?)
        }
    } else {
        if k < r {
            return Err(ThresholdError::OutOfRange(format!(
                "r > t requires k >= r, got r={r} k={k}"
            )));
        }
        // r * (k-1) < n * n, no overflow for any sane n
        let prod = r
            .checked_mul(k - 1)
            .ok_or(ThresholdError::Overflow { n: r, k: k - 1 })?;
        (Regime::Main4, prod / n + 1)
    };
    Ok(ThresholdAnswer {
        regime,
        bound,
        min_edges: None,
    })
}

/// The `ceil(k/2)` bound for `r > t`, valid once the hypergraph has `k` edges.
pub fn half_k_threshold(n: u64, r: u64, k: u64) -> Result<ThresholdAnswer, ThresholdError> {
    let q = ThresholdQuery::new(n, r, k)?;
    if q.small_uniformity() {
        return Err(ThresholdError::OutOfRange(format!(
            "requires r > t, got r={r} t={}",
            q.t
        )));
    }
    if k < r {
        return Err(ThresholdError::OutOfRange(format!(
            "requires k >= r, got r={r} k={k}"
        )));
    }
    Ok(ThresholdAnswer {
        regime: Regime::Main41,
        bound: k.div_ceil(2),
        min_edges: Some(k),
    })
}

/// `C(k-2, r-1) + r - 1`, the classical bound the newer ones improve on.
pub fn bermond_baseline(r: u64, k: u64) -> Result<u64, ThresholdError> {
    if r < 3 || k <= r {
        return Err(ThresholdError::OutOfRange(format!(
            "need r >= 3 and k >= r+1, got r={r} k={k}"
        )));
    }
    binomial(k - 2, r - 1)?
        .checked_add(r - 1)
        .ok_or(ThresholdError::Overflow { n: k - 2, k: r - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(a: Result<ThresholdAnswer, ThresholdError>) -> (Regime, u64) {
        let a = a.unwrap();
        (a.regime, a.bound)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(2, 3).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(67, 33).unwrap(), 14_226_520_737_620_288_370);
        assert!(matches!(
            binomial(70, 35),
            Err(ThresholdError::Overflow { .. })
        ));
    }

    #[test]
    fn hamiltonian_examples() {
        assert_eq!(bound(hamiltonian_threshold(9, 3)), (Regime::MainA, 7));
        assert_eq!(bound(hamiltonian_threshold(9, 5)), (Regime::MainB, 5));
        assert_eq!(bound(hamiltonian_threshold(8, 4)), (Regime::MainB, 4));
        assert!(hamiltonian_threshold(9, 2).is_err());
        assert!(hamiltonian_threshold(9, 9).is_err());
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(bound(circumference_threshold(13, 4, 4)), (Regime::Main3A, 3));
        assert_eq!(bound(circumference_threshold(13, 3, 6)), (Regime::Main3B, 7));
        assert_eq!(bound(circumference_threshold(9, 5, 7)), (Regime::Main4, 4));
        // k = t + 2 belongs to case (c)
        assert_eq!(bound(circumference_threshold(13, 3, 8)), (Regime::Main3C, 16));
        assert_eq!(bound(circumference_threshold(13, 3, 7)), (Regime::Main3B, 11));
        assert!(circumference_threshold(9, 5, 4).is_err());
    }

    #[test]
    fn half_k_examples() {
        let a = half_k_threshold(9, 5, 8).unwrap();
        assert_eq!((a.bound, a.min_edges), (4, Some(8)));
        let a = half_k_threshold(9, 5, 9).unwrap();
        assert_eq!((a.bound, a.min_edges), (5, Some(9)));
        assert!(half_k_threshold(9, 3, 8).is_err());
    }

    #[test]
    fn bermond_examples() {
        assert_eq!(bermond_baseline(3, 6).unwrap(), 8);
        assert_eq!(bermond_baseline(3, 4).unwrap(), 3);
        assert_eq!(bermond_baseline(4, 5).unwrap(), 4);
        assert!(bermond_baseline(4, 4).is_err());
    }

    #[test]
    fn answer_json() {
        let a = circumference_threshold(9, 5, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"regime":"main4","bound":4}"#
        );
        let a = half_k_threshold(9, 5, 8).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"regime":"main41","bound":4,"min_edges":8}"#
        );
    }

    #[test]
    fn regimes_partition_the_grid() {
        for n in 4..40u64 {
            for r in 3..n {
                for k in r..=n {
                    let a = circumference_threshold(n, r, k).unwrap();
                    let t = pivot(n);
                    let expected = if r > t {
                        Regime::Main4
                    } else if k <= r + 1 {
                        Regime::Main3A
                    } else if k < t + 2 {
                        Regime::Main3B
                    } else {
                        Regime::Main3C
                    };
                    assert_eq!(a.regime, expected, "n={n} r={r} k={k}");
                    assert!(a.bound >= 1);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_and_circumference_agree_at_k_equals_n() {
        for n in 4..60u64 {
            for r in 3..n {
                let h = hamiltonian_threshold(n, r).unwrap();
                let c = circumference_threshold(n, r, n).unwrap();
                assert_eq!(h.bound, c.bound, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn monotone_in_k_for_small_uniformity() {
        for n in 7..50u64 {
            let t = pivot(n);
            for r in 3..=t {
                let mut last = 0;
                for k in 3..=(t + 2).min(n) {
                    let b = circumference_threshold(n, r, k).unwrap().bound;
                    assert!(b >= last, "n={n} r={r} k={k}");
                    last = b;
                }
            }
        }
    }

    #[test]
    fn never_worse_than_baseline() {
        for n in 7..50u64 {
            let t = pivot(n);
            for r in 3..=t {
                for k in (r + 1)..=n {
                    let ours = circumference_threshold(n, r, k).unwrap().bound;
                    let old = bermond_baseline(r, k).unwrap();
                    assert!(ours <= old, "n={n} r={r} k={k}: {ours} > {old}");
                }
            }
        }
    }
}
