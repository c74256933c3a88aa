//! Exact distance computation by dense minimum-cost assignment.
//!
//! Instead of matching on the reduced graph, the oracle builds the square
//! `(n+m) x (n+m)` cost matrix in which every point may also be paired with a
//! diagonal slot (at its own projection cost) and diagonal slots pair with
//! each other for free. A minimum-cost perfect matching of this matrix has
//! the same cost as a minimum-cost maximal matching of the reduced graph, so
//! its p-th root is the Wasserstein distance. The dense formulation trades
//! speed for easy verification and serves as the certificate the sampler and
//! brute-force results are checked against.

use crate::diagram::{point_distance, powp, Norm, PersistenceDiagram};

/// Square cost matrix over `X`'s points plus `Y`'s diagonal slots against
/// `Y`'s points plus `X`'s diagonal slots.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    /// Builds the matrix for diagrams `x` (n points) and `y` (m points):
    /// off-diagonal pairs cost `|a - b|_q^p`, pairing with any diagonal slot
    /// costs the point's own projection weight, and diagonal-diagonal pairs
    /// cost nothing.
    pub fn new(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64, q: Norm) -> Self {
        assert!(p >= 1.0, "outer exponent p must be >= 1");
        let n = x.len();
        let m = y.len();
        let size = n + m;
        let mut data = vec![0.0; size * size];
        for (i, a) in x.points().iter().enumerate() {
            let diag = a.diagonal_edge_weight(p, q);
            for j in 0..size {
                data[i * size + j] = if j < m {
                    powp(point_distance(a.coords(), y.points()[j].coords(), q), p)
                } else {
                    diag
                };
            }
        }
        for (j, b) in y.points().iter().enumerate() {
            let diag = b.diagonal_edge_weight(p, q);
            for i in n..size {
                data[i * size + j] = diag;
            }
        }
        CostMatrix { n, m, data }
    }

    pub fn size(&self) -> usize {
        self.n + self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size() + j]
    }
}

/// A perfect assignment of rows to columns and its total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalMatching {
    /// `(row, column)` pairs, one per row, sorted by row.
    pub pairs: Vec<(usize, usize)>,
    pub total_cost: f64,
}

/// Exact minimum-cost perfect assignment of a square matrix, by the
/// shortest-augmenting-path Hungarian algorithm with dual potentials.
/// Runs in O(size^3).
pub fn min_cost_assignment(matrix: &CostMatrix) -> OptimalMatching {
    let size = matrix.size();
    if size == 0 {
        return OptimalMatching {
            pairs: Vec::new(),
            total_cost: 0.0,
        };
    }

    // 1-based arrays; row_of[j] is the row currently assigned to column j,
    // with column 0 acting as the scratch slot for the row being inserted.
    let cost = |i: usize, j: usize| matrix.entry(i - 1, j - 1);
    let mut u = vec![0.0; size + 1];
    let mut v = vec![0.0; size + 1];
    let mut row_of = vec![0usize; size + 1];
    let mut prev_col = vec![0usize; size + 1];

    for i in 1..=size {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut min_slack = vec![f64::INFINITY; size + 1];
        let mut used = vec![false; size + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=size {
                if used[j] {
                    continue;
                }
                let slack = cost(i0, j) - u[i0] - v[j];
                if slack < min_slack[j] {
                    min_slack[j] = slack;
                    prev_col[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=size {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        // Augment along the found path.
        while j0 != 0 {
            let j1 = prev_col[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        }
    }

    let mut pairs: Vec<(usize, usize)> = (1..=size).map(|j| (row_of[j] - 1, j - 1)).collect();
    pairs.sort_unstable();

    // Sum the selected entries in ascending order so the total does not
    // depend on which side of the instance supplied the rows.
    let mut selected: Vec<f64> = pairs.iter().map(|&(i, j)| matrix.entry(i, j)).collect();
    selected.sort_unstable_by(f64::total_cmp);
    OptimalMatching {
        pairs,
        total_cost: selected.iter().sum(),
    }
}

/// Result of an exact distance computation.
#[derive(Debug, Clone)]
pub struct WassersteinResult {
    /// `power_cost^{1/p}`.
    pub distance: f64,
    /// Total cost of the optimal matching (the p-th power of the distance).
    pub power_cost: f64,
    /// One optimal matching witnessing the cost.
    pub matching: OptimalMatching,
}

/// Exact p-th Wasserstein distance between two diagrams with inner norm `q`.
pub fn wasserstein_distance(
    x: &PersistenceDiagram,
    y: &PersistenceDiagram,
    p: f64,
    q: Norm,
) -> WassersteinResult {
    let matrix = CostMatrix::new(x, y, p, q);
    let matching = min_cost_assignment(&matrix);
    let power_cost = matching.total_cost;
    let distance = if p == 1.0 {
        power_cost
    } else if p == 2.0 {
        power_cost.sqrt()
    } else {
        power_cost.powf(1.0 / p)
    };
    WassersteinResult {
        distance,
        power_cost,
        matching,
    }
}
