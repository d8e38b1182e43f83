use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solver::SearchBudget;
use crate::thresholds::{circumference_threshold, half_k_threshold, pivot, ThresholdAnswer};

/// Largest `n` an exhaustive cell may use.
pub const EXHAUSTIVE_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("bad JSON config: {0}")]
    Json(String),
    #[error("cell {0}: {1}")]
    Cell(Cell, String),
}

/// One `(n, r, k)` grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub n: usize,
    pub r: usize,
    pub k: usize,
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.r, self.k)
    }
}

impl std::str::FromStr for Cell {
    type Err = String;

    /// `n:r:k`, `n,r,k` or `(n, r, k)`.
    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split([':', ',']).map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected n:r:k, got {s:?}"));
        }
        let num = |p: &str| p.parse::<usize>().map_err(|_| format!("bad number {p:?} in {s:?}"));
        Ok(Cell {
            n: num(parts[0])?,
            r: num(parts[1])?,
            k: num(parts[2])?,
        })
    }
}

impl Cell {
    pub fn new(n: usize, r: usize, k: usize) -> Self {
        Self { n, r, k }
    }

    pub fn small_uniformity(&self) -> bool {
        self.r as u64 <= pivot(self.n as u64)
    }

    /// Every degree condition that forces a cycle of length `>= k` here: the
    /// degree threshold, plus the `ceil(k/2)`-with-`k`-edges variant when
    /// `r > t`.
    pub fn conditions(&self) -> Result<Vec<ThresholdAnswer>, String> {
        let (n, r, k) = (self.n as u64, self.r as u64, self.k as u64);
        let main = circumference_threshold(n, r, k).map_err(|e| e.to_string())?;
        let mut out = vec![main];
        if !self.small_uniformity() {
            out.push(half_k_threshold(n, r, k).map_err(|e| e.to_string())?);
        }
        Ok(out)
    }
}

/// Parameters of a verification sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Cells checked on seeded random instances and for sharpness.
    pub grid: Vec<Cell>,
    pub samples_per_cell: usize,
    /// Cells checked over every edge subset.
    pub exhaustive_cells: Vec<Cell>,
    pub seed: u64,
    #[serde(default)]
    pub budget: SearchBudget,
    /// Also run the engine on every tested instance.
    #[serde(default = "yes")]
    pub engine: bool,
}

fn yes() -> bool {
    true
}

impl Default for SweepConfig {
    /// `7 <= n <= 11`, every legal `(r, k)` with `3 <= r < n`, `r <= k <= n`,
    /// 100 samples per cell, and the two exhaustive cells `n = 5, 6`, `r = 3`.
    fn default() -> Self {
        let mut grid = Vec::new();
        for n in 7..=11 {
            for r in 3..n {
                for k in r..=n {
                    grid.push(Cell::new(n, r, k));
                }
            }
        }
        Self {
            grid,
            samples_per_cell: 100,
            exhaustive_cells: vec![Cell::new(5, 3, 5), Cell::new(6, 3, 6)],
            seed: 0,
            budget: SearchBudget::nodes(100_000_000),
            engine: true,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for &c in self.grid.iter().chain(&self.exhaustive_cells) {
            c.conditions().map_err(|e| ConfigError::Cell(c, e))?;
        }
        for &c in &self.exhaustive_cells {
            if c.n > EXHAUSTIVE_MAX_N || c.r != 3 {
                return Err(ConfigError::Cell(
                    c,
                    format!("exhaustive cells need n <= {EXHAUSTIVE_MAX_N} and r = 3"),
                ));
            }
        }
        Ok(())
    }

    /// Reads a JSON object, or `key = value` lines (`#` comments). Keys:
    /// `grid`, `exhaustive_cells` (cells `n:r:k` separated by `;`),
    /// `samples_per_cell`, `seed`, `node_limit`, `time_limit` (seconds),
    /// `engine`. Omitted keys keep their [`Default`] values; `grid = default`
    /// keeps the default grid.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        if text.trim_start().starts_with('{') {
            let cfg: Self = serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))?;
            cfg.validate()?;
            return Ok(cfg);
        }
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError::Syntax { line, msg };
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| err("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str| v.parse::<u64>().map_err(|_| err(format!("bad integer {v:?}")));
            let cells = |v: &str| -> Result<Vec<Cell>, ConfigError> {
                v.split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.parse::<Cell>().map_err(&err))
                    .collect()
            };
            match key {
                "grid" if value == "default" => {}
                "grid" => cfg.grid = cells(value)?,
                "exhaustive_cells" => cfg.exhaustive_cells = cells(value)?,
                "samples_per_cell" => cfg.samples_per_cell = int(value)? as usize,
                "seed" => cfg.seed = int(value)?,
                "node_limit" => cfg.budget.node_limit = Some(int(value)?),
                "time_limit" => {
                    let secs: f64 = value.parse().map_err(|_| err(format!("bad seconds {value:?}")))?;
                    cfg.budget.time_limit = Some(std::time::Duration::from_secs_f64(secs));
                }
                "engine" => {
                    cfg.engine = value
                        .parse()
                        .map_err(|_| err(format!("expected true or false, got {value:?}")))?
                }
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_is_legal() {
        let cfg = SweepConfig::default();
        cfg.validate().unwrap();
        // sum over n of sum_{r=3}^{n-1} (n - r + 1)
        let expected: usize = (7..=11).map(|n: usize| (3..n).map(|r| n - r + 1).sum::<usize>()).sum();
        assert_eq!(cfg.grid.len(), expected);
    }

    #[test]
    fn key_value_config() {
        let cfg = SweepConfig::parse(
            "# small run\nseed = 9\ngrid = 7:3:7; (8, 5, 6)\nsamples_per_cell = 4\nexhaustive_cells = 5:3:5\nengine = false\nnode_limit = 1000\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.grid, vec![Cell::new(7, 3, 7), Cell::new(8, 5, 6)]);
        assert_eq!(cfg.samples_per_cell, 4);
        assert!(!cfg.engine);
        assert_eq!(cfg.budget.node_limit, Some(1000));
    }

    #[test]
    fn json_round_trip() {
        let cfg = SweepConfig {
            grid: vec![Cell::new(9, 5, 7)],
            ..SweepConfig::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(SweepConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_cells() {
        assert!(SweepConfig::parse("exhaustive_cells = 7:3:7").is_err());
        assert!(SweepConfig::parse("grid = 9:5:4").is_err());
        assert!(SweepConfig::parse("bogus = 1").is_err());
        assert!(SweepConfig::parse("seed 1").is_err());
    }

    #[test]
    fn conditions_by_regime() {
        assert_eq!(Cell::new(9, 3, 7).conditions().unwrap().len(), 1);
        let both = Cell::new(9, 5, 7).conditions().unwrap();
        assert_eq!(both.len(), 2);
        assert_eq!(both[0].bound, 4);
        assert_eq!(both[1].bound, 4);
        assert_eq!(both[1].min_edges, Some(7));
    }
}
