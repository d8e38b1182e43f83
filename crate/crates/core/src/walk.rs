//! Berge paths and cycles, stored as vertex lists plus indices into the
//! host hypergraph's edge list.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::UniformHypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Path,
    Cycle,
}

/// Alternating sequence of distinct vertices and distinct edges.
///
/// A cycle of length `l` lists `l` vertices and `l` edges, with edge `i`
/// joining vertex `i` to vertex `i + 1 (mod l)`. A path of length `l` lists
/// `l + 1` vertices and `l` edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BergeWalk {
    pub kind: WalkKind,
    pub vertices: Vec<usize>,
    pub edge_indices: Vec<usize>,
}

impl BergeWalk {
    pub fn cycle(vertices: Vec<usize>, edge_indices: Vec<usize>) -> Self {
        Self {
            kind: WalkKind::Cycle,
            vertices,
            edge_indices,
        }
    }

    pub fn path(vertices: Vec<usize>, edge_indices: Vec<usize>) -> Self {
        Self {
            kind: WalkKind::Path,
            vertices,
            edge_indices,
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == WalkKind::Cycle
    }

    /// The two vertices edge `i` must contain.
    pub fn link(&self, i: usize) -> (usize, usize) {
        let next = match self.kind {
            WalkKind::Cycle => (i + 1) % self.vertices.len(),
            WalkKind::Path => i + 1,
        };
        (self.vertices[i], self.vertices[next])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkViolation {
    #[error("walk lists {vertices} vertices and {edges} edges, inconsistent with its kind")]
    ShapeMismatch { vertices: usize, edges: usize },
    #[error("cycle must have at least two edges")]
    TooShort,
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("edge index {edge} out of range")]
    EdgeOutOfRange { edge: usize },
    #[error("vertex {vertex} repeated")]
    RepeatedVertex { vertex: usize },
    #[error("edge index {edge} repeated")]
    RepeatedEdge { edge: usize },
    #[error("edge at position {position} does not contain vertex {vertex}")]
    Containment { position: usize, vertex: usize },
}

/// Checks that `w` is a Berge path or cycle of `h`.
pub fn validate_walk(h: &UniformHypergraph, w: &BergeWalk) -> Result<(), WalkViolation> {
    let (nv, ne) = (w.vertices.len(), w.edge_indices.len());
    let shape_ok = match w.kind {
        WalkKind::Cycle => nv == ne,
        WalkKind::Path => nv == ne + 1,
    };
    if !shape_ok {
        return Err(WalkViolation::ShapeMismatch {
            vertices: nv,
            edges: ne,
        });
    }
    if w.kind == WalkKind::Cycle && ne < 2 {
        return Err(WalkViolation::TooShort);
    }
    let mut seen_v = vec![false; h.n()];
    for &v in &w.vertices {
        if v >= h.n() {
            return Err(WalkViolation::VertexOutOfRange { vertex: v });
        }
        if std::mem::replace(&mut seen_v[v], true) {
            return Err(WalkViolation::RepeatedVertex { vertex: v });
        }
    }
    let mut seen_e = vec![false; h.num_edges()];
    for &e in &w.edge_indices {
        if e >= h.num_edges() {
            return Err(WalkViolation::EdgeOutOfRange { edge: e });
        }
        if std::mem::replace(&mut seen_e[e], true) {
            return Err(WalkViolation::RepeatedEdge { edge: e });
        }
    }
    for (position, &e) in w.edge_indices.iter().enumerate() {
        let (a, b) = w.link(position);
        for v in [a, b] {
            if !h.contains(e, v) {
                return Err(WalkViolation::Containment {
                    position,
                    vertex: v,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight_5_3() -> UniformHypergraph {
        let edges = (0..5).map(|i| (0..3).map(|j| (i + j) % 5).collect()).collect();
        UniformHypergraph::new(5, 3, edges).unwrap()
    }

    #[test]
    fn tight_cycle_is_a_berge_cycle() {
        let h = tight_5_3();
        // edge i = {i, i+1, i+2} holds v_i and v_{i+1}; edges are stored in that order
        let idx: Vec<usize> = (0..5)
            .map(|i| h.find_edge(&[i, (i + 1) % 5, (i + 2) % 5]).unwrap())
            .collect();
        let w = BergeWalk::cycle(vec![0, 1, 2, 3, 4], idx);
        assert_eq!(validate_walk(&h, &w), Ok(()));
    }

    #[test]
    fn repeated_edge_rejected() {
        let h = tight_5_3();
        let w = BergeWalk::cycle(vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 3]);
        assert_eq!(
            validate_walk(&h, &w),
            Err(WalkViolation::RepeatedEdge { edge: 3 })
        );
    }

    #[test]
    fn containment_failure_names_position() {
        let h = tight_5_3();
        // position 2 should be {2,3,4}; {0,1,2} lacks v_3 = 3
        let e012 = h.find_edge(&[0, 1, 2]).unwrap();
        let w = BergeWalk::cycle(
            vec![0, 1, 2, 3, 4],
            vec![
                h.find_edge(&[4, 0, 1]).unwrap(),
                h.find_edge(&[1, 2, 3]).unwrap(),
                e012,
                h.find_edge(&[3, 4, 0]).unwrap(),
                h.find_edge(&[2, 3, 4]).unwrap(),
            ],
        );
        assert_eq!(
            validate_walk(&h, &w),
            Err(WalkViolation::Containment {
                position: 2,
                vertex: 3
            })
        );
    }

    #[test]
    fn wraparound_is_checked_for_cycles_only() {
        let h = tight_5_3();
        let e = |vs: &[usize]| h.find_edge(vs).unwrap();
        let verts = vec![0, 1, 2];
        let edges = vec![e(&[0, 1, 2]), e(&[1, 2, 3])];
        assert!(validate_walk(&h, &BergeWalk::path(verts.clone(), edges.clone())).is_ok());
        // closing edge {2,3,4} misses vertex 0
        let mut closing = edges;
        closing.push(e(&[2, 3, 4]));
        assert_eq!(
            validate_walk(&h, &BergeWalk::cycle(verts, closing)),
            Err(WalkViolation::Containment {
                position: 2,
                vertex: 0
            })
        );
    }

    #[test]
    fn json_shape() {
        let w = BergeWalk::path(vec![3, 1], vec![0]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"kind":"path","vertices":[3,1],"edge_indices":[0]}"#);
        let back: BergeWalk = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn single_vertex_path_is_valid() {
        let h = tight_5_3();
        assert!(validate_walk(&h, &BergeWalk::path(vec![4], vec![])).is_ok());
        assert_eq!(
            validate_walk(&h, &BergeWalk::path(vec![], vec![])),
            Err(WalkViolation::ShapeMismatch {
                vertices: 0,
                edges: 0
            })
        );
    }
}
