//! The reduced bipartite matching graph built from two persistence diagrams.
//!
//! The left side holds the points of `X` plus one diagonal slot per point of
//! `Y`; the right side holds the points of `Y` plus one diagonal slot per
//! point of `X`. Off-diagonal points are fully connected across sides, and
//! each off-diagonal point has a single extra edge to its own diagonal
//! projection, for `n*m + n + m` edges in total.
//!
//! Edges follow a fixed canonical order: for each left point `u_i`, first its
//! edges to `v_0..v_{m-1}`, then its diagonal edge; after all left points,
//! the diagonal edges `(d_j, v_j)` for each right point. Every bit vector,
//! exported coefficient matrix, and report index in this crate refers to
//! edges in this order.

use std::fmt;

use crate::diagram::{point_distance, powp, Norm, PersistenceDiagram};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    OffDiagonal,
    Diagonal,
}

/// A vertex of the reduced graph. `index` points into the source diagram:
/// off-diagonal vertices index their own diagram, diagonal vertices index
/// the opposite diagram (the point they are the projection of).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexId {
    pub side: Side,
    pub kind: VertexKind,
    pub index: usize,
}

impl VertexId {
    /// Off-diagonal vertices carry a degree-one constraint in the QUBO;
    /// diagonal vertices do not.
    pub fn is_constrained(&self) -> bool {
        self.kind == VertexKind::OffDiagonal
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.side, self.kind) {
            (Side::U, VertexKind::OffDiagonal) => write!(f, "u{}", self.index),
            (Side::V, VertexKind::OffDiagonal) => write!(f, "v{}", self.index),
            // Diagonal slots are named after the point they project.
            (Side::U, VertexKind::Diagonal) | (Side::V, VertexKind::Diagonal) => {
                write!(f, "d{}", self.index)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn label(&self) -> String {
        format!("({},{})", self.u, self.v)
    }
}

/// An element of {0,1}^M aligned to a graph's canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitAssignment {
    bits: Vec<bool>,
}

impl BitAssignment {
    pub fn new(bits: Vec<bool>) -> Self {
        BitAssignment { bits }
    }

    pub fn zeros(len: usize) -> Self {
        BitAssignment {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn to_bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self, Error> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::format(format!(
                        "invalid bit character {other:?} in assignment string"
                    )))
                }
            }
        }
        Ok(BitAssignment { bits })
    }
}

/// The reduced bipartite graph together with the parameters that produced
/// its weights. Immutable after construction.
#[derive(Debug, Clone)]
pub struct ReducedBipartiteGraph {
    x: PersistenceDiagram,
    y: PersistenceDiagram,
    p: f64,
    q: Norm,
    edges: Vec<Edge>,
}

impl ReducedBipartiteGraph {
    /// Builds the graph in canonical edge order. Either diagram may be empty.
    pub fn new(x: PersistenceDiagram, y: PersistenceDiagram, p: f64, q: Norm) -> Self {
        assert!(p >= 1.0, "outer exponent p must be >= 1");
        let n = x.len();
        let m = y.len();
        let mut edges = Vec::with_capacity(n * m + n + m);
        for (i, a) in x.points().iter().enumerate() {
            for (j, b) in y.points().iter().enumerate() {
                edges.push(Edge {
                    u: VertexId {
                        side: Side::U,
                        kind: VertexKind::OffDiagonal,
                        index: i,
                    },
                    v: VertexId {
                        side: Side::V,
                        kind: VertexKind::OffDiagonal,
                        index: j,
                    },
                    weight: powp(point_distance(a.coords(), b.coords(), q), p),
                });
            }
            edges.push(Edge {
                u: VertexId {
                    side: Side::U,
                    kind: VertexKind::OffDiagonal,
                    index: i,
                },
                v: VertexId {
                    side: Side::V,
                    kind: VertexKind::Diagonal,
                    index: i,
                },
                weight: a.diagonal_edge_weight(p, q),
            });
        }
        for (j, b) in y.points().iter().enumerate() {
            edges.push(Edge {
                u: VertexId {
                    side: Side::U,
                    kind: VertexKind::Diagonal,
                    index: j,
                },
                v: VertexId {
                    side: Side::V,
                    kind: VertexKind::OffDiagonal,
                    index: j,
                },
                weight: b.diagonal_edge_weight(p, q),
            });
        }
        ReducedBipartiteGraph { x, y, p, q, edges }
    }

    pub fn x(&self) -> &PersistenceDiagram {
        &self.x
    }

    pub fn y(&self) -> &PersistenceDiagram {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn m(&self) -> usize {
        self.y.len()
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> Norm {
        self.q
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn max_edge_weight(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.weight).fold(None, |acc, w| {
            Some(match acc {
                None => w,
                Some(best) => best.max(w),
            })
        })
    }

    /// Human-readable edge descriptors in canonical order.
    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(Edge::label).collect()
    }

    /// Canonical index of the edge between off-diagonal points `u_i` and `v_j`.
    pub fn offdiag_edge_index(&self, i: usize, j: usize) -> usize {
        i * (self.m() + 1) + j
    }

    /// Canonical index of the diagonal edge of left point `u_i`.
    pub fn diag_edge_index_u(&self, i: usize) -> usize {
        i * (self.m() + 1) + self.m()
    }

    /// Canonical index of the diagonal edge of right point `v_j`.
    pub fn diag_edge_index_v(&self, j: usize) -> usize {
        self.n() * (self.m() + 1) + j
    }

    /// Interprets a bit vector as the set of selected edge indices.
    pub fn decode(&self, bits: &BitAssignment) -> Result<Vec<usize>, Error> {
        if bits.len() != self.num_edges() {
            return Err(Error::LengthMismatch {
                expected: self.num_edges(),
                actual: bits.len(),
            });
        }
        Ok(bits.ones().collect())
    }

    /// Inverse of `decode`: a bit vector with exactly the given edges set.
    pub fn encode(&self, edges: &[usize]) -> Result<BitAssignment, Error> {
        let mut bits = BitAssignment::zeros(self.num_edges());
        for &e in edges {
            if e >= self.num_edges() {
                return Err(Error::LengthMismatch {
                    expected: self.num_edges(),
                    actual: e + 1,
                });
            }
            bits.set(e, true);
        }
        Ok(bits)
    }

    fn u_slot(&self, v: &VertexId) -> usize {
        debug_assert_eq!(v.side, Side::U);
        match v.kind {
            VertexKind::OffDiagonal => v.index,
            VertexKind::Diagonal => self.n() + v.index,
        }
    }

    fn v_slot(&self, v: &VertexId) -> usize {
        debug_assert_eq!(v.side, Side::V);
        match v.kind {
            VertexKind::OffDiagonal => v.index,
            VertexKind::Diagonal => self.m() + v.index,
        }
    }

    fn degrees(&self, edges: &[usize]) -> (Vec<u32>, Vec<u32>) {
        let mut deg_u = vec![0u32; self.n() + self.m()];
        let mut deg_v = vec![0u32; self.n() + self.m()];
        for &e in edges {
            let edge = &self.edges[e];
            deg_u[self.u_slot(&edge.u)] += 1;
            deg_v[self.v_slot(&edge.v)] += 1;
        }
        (deg_u, deg_v)
    }

    /// True iff every vertex touches at most one selected edge.
    pub fn is_matching(&self, edges: &[usize]) -> bool {
        let (deg_u, deg_v) = self.degrees(edges);
        deg_u.iter().all(|&d| d <= 1) && deg_v.iter().all(|&d| d <= 1)
    }

    /// True iff `edges` is a matching and no further edge can be added
    /// without sharing a vertex. Checked by a direct augmentation scan.
    pub fn is_maximal_matching(&self, edges: &[usize]) -> bool {
        let (deg_u, deg_v) = self.degrees(edges);
        if deg_u.iter().any(|&d| d > 1) || deg_v.iter().any(|&d| d > 1) {
            return false;
        }
        !self
            .edges
            .iter()
            .any(|edge| deg_u[self.u_slot(&edge.u)] == 0 && deg_v[self.v_slot(&edge.v)] == 0)
    }

    /// Sum of the selected edge weights. Defined for any edge subset.
    pub fn matching_cost(&self, edges: &[usize]) -> f64 {
        edges.iter().map(|&e| self.edges[e].weight).sum()
    }

    /// Exhaustively enumerates every maximal matching as a sorted list of
    /// edge indices. Intended for certification on small graphs.
    ///
    /// Refuses graphs with more than 20 edges (2^20 subsets are scanned).
    pub fn maximal_matchings(&self) -> Result<Vec<Vec<usize>>, Error> {
        let m = self.num_edges();
        if m > 20 {
            return Err(Error::TooManyVariables {
                num_vars: m,
                limit: 20,
            });
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << m) {
            let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            if self.is_maximal_matching(&edges) {
                out.push(edges);
            }
        }
        Ok(out)
    }
}
