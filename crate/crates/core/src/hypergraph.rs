//! Uniform hypergraphs on the dense vertex set `0..n`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Reasons a raw `(n, r, edges)` triple fails to describe a uniform hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity r={r} must satisfy 1 <= r <= n={n}")]
    BadUniformity { n: usize, r: usize },
    #[error("edge {index} has {found} vertices, expected {expected}")]
    WrongEdgeSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {index} contains vertex {vertex} which is out of range for n={n}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("edge {index} duplicates edge {first}")]
    DuplicateEdge { index: usize, first: usize },
}

/// Checks every uniform-hypergraph invariant, reporting the first failing edge.
///
/// Vertex order inside an edge does not matter here; [`UniformHypergraph::new`]
/// sorts each edge before storing it.
pub fn validate(n: usize, r: usize, edges: &[Vec<usize>]) -> Result<(), HypergraphError> {
    if r == 0 || r > n {
        return Err(HypergraphError::BadUniformity { n, r });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(edges.len());
    let mut first_index = std::collections::HashMap::with_capacity(edges.len());
    for (index, edge) in edges.iter().enumerate() {
        if edge.len() != r {
            return Err(HypergraphError::WrongEdgeSize {
                index,
                expected: r,
                found: edge.len(),
            });
        }
        if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
            return Err(HypergraphError::VertexOutOfRange { index, vertex, n });
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::RepeatedVertex {
                index,
                vertex: w[0],
            });
        }
        if !seen.insert(sorted.clone()) {
            return Err(HypergraphError::DuplicateEdge {
                index,
                first: first_index[&sorted],
            });
        }
        first_index.insert(sorted, index);
    }
    Ok(())
}

/// An `r`-uniform hypergraph without multiple edges.
///
/// Immutable after construction. Besides the edge list it keeps a per-vertex
/// incidence list and a dense membership table so that `contains` is O(1).
#[derive(Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    membership: Vec<bool>,
}

impl UniformHypergraph {
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        validate(n, r, &edges)?;
        let edges: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        let mut incidence = vec![Vec::new(); n];
        let mut membership = vec![false; edges.len() * n];
        for (idx, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(idx);
                membership[idx * n + v] = true;
            }
        }
        Ok(Self {
            n,
            r,
            edges,
            incidence,
            membership,
        })
    }

    /// Hypergraph with no edges.
    pub fn empty(n: usize, r: usize) -> Result<Self, HypergraphError> {
        Self::new(n, r, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    #[inline]
    pub fn contains(&self, edge: usize, v: usize) -> bool {
        self.membership[edge * self.n + v]
    }

    /// Index of the edge equal to `vertices` as a set, if present.
    pub fn find_edge(&self, vertices: &[usize]) -> Option<usize> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        let first = *sorted.first()?;
        if first >= self.n {
            return None;
        }
        self.incidence[first]
            .iter()
            .copied()
            .find(|&e| self.edges[e] == sorted)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = self.incidence.iter().map(Vec::len).collect();
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        DegreeProfile {
            degrees,
            min_degree,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }
}

impl fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UniformHypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Per-vertex degrees and their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
}

pub fn degree_profile(h: &UniformHypergraph) -> DegreeProfile {
    h.degree_profile()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize, r: usize) -> UniformHypergraph {
        let mut edges = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(v + 1, n, r, cur, out);
                cur.pop();
            }
        }
        rec(0, n, r, &mut cur, &mut edges);
        UniformHypergraph::new(n, r, edges).unwrap()
    }

    #[test]
    fn accepts_two_distinct_edges() {
        assert!(validate(5, 3, &[vec![0, 1, 2], vec![0, 1, 3]]).is_ok());
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = validate(5, 3, &[vec![0, 1, 2], vec![2, 1, 0]]).unwrap_err();
        assert_eq!(err, HypergraphError::DuplicateEdge { index: 1, first: 0 });
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = validate(4, 3, &[vec![0, 1, 4]]).unwrap_err();
        assert_eq!(
            err,
            HypergraphError::VertexOutOfRange {
                index: 0,
                vertex: 4,
                n: 4
            }
        );
    }

    #[test]
    fn rejects_wrong_size_and_repeats() {
        assert!(matches!(
            validate(5, 3, &[vec![0, 1]]),
            Err(HypergraphError::WrongEdgeSize { index: 0, .. })
        ));
        assert!(matches!(
            validate(5, 3, &[vec![0, 1, 1]]),
            Err(HypergraphError::RepeatedVertex { vertex: 1, .. })
        ));
        assert!(matches!(
            validate(3, 4, &[]),
            Err(HypergraphError::BadUniformity { .. })
        ));
    }

    #[test]
    fn complete_three_graph_degrees() {
        let h = complete(5, 3);
        let p = h.degree_profile();
        assert_eq!(p.degrees, vec![6; 5]);
        assert_eq!(p.min_degree, 6);
    }

    #[test]
    fn edges_are_sorted_and_indexed() {
        let h = UniformHypergraph::new(5, 3, vec![vec![2, 0, 1], vec![4, 3, 0]]).unwrap();
        assert_eq!(h.edge(0), &[0, 1, 2]);
        assert_eq!(h.edge(1), &[0, 3, 4]);
        assert_eq!(h.incident(0), &[0, 1]);
        assert!(h.contains(1, 4));
        assert!(!h.contains(0, 4));
        assert_eq!(h.find_edge(&[4, 0, 3]), Some(1));
        assert_eq!(h.find_edge(&[1, 3, 4]), None);
    }
}
