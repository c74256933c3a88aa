//! Compilation of the reduced matching graph into a quadratic binary program.
//!
//! The objective has three parts: the weight sum of the selected edges, and
//! one penalty per side charging `B (1 - deg(vertex))^2` for every
//! off-diagonal vertex. Expanding the squares over binary variables
//! (`x^2 = x`) gives a constant offset `B (n + m)`, a linear coefficient
//! `w(e) - B * (#constrained endpoints of e)`, and `+2B` for every pair of
//! distinct edges sharing a constrained endpoint. Diagonal vertices carry no
//! constraint.
//!
//! With `B` strictly above the largest edge weight, the minimizers of the
//! expanded objective are exactly the minimum-cost maximal matchings, and
//! the minimum value equals the p-th power of the Wasserstein distance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{BitAssignment, ReducedBipartiteGraph};

/// Largest edge weight of the graph: the threshold the penalty weight must
/// exceed for minimizers to be maximal matchings.
pub fn compute_b_star(graph: &ReducedBipartiteGraph) -> Result<f64, Error> {
    graph.max_edge_weight().ok_or(Error::EmptyGraph)
}

/// How the penalty weight B is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Penalty {
    /// Use the given value as-is. Values at or below the largest edge weight
    /// are accepted (the degenerate regimes are worth studying); negative or
    /// non-finite values are rejected.
    Explicit(f64),
    /// `B = B* (1 + delta)`, or 1 when the graph has no positive weight.
    Auto { delta: f64 },
    /// `B = 1`.
    Unit,
}

impl Penalty {
    pub const DEFAULT_DELTA: f64 = 0.1;

    pub fn auto() -> Self {
        Penalty::Auto {
            delta: Self::DEFAULT_DELTA,
        }
    }

    /// Resolves the mode against the graph's largest edge weight.
    pub fn resolve(&self, b_star: f64) -> Result<f64, Error> {
        match *self {
            Penalty::Explicit(b) => {
                if !b.is_finite() || b < 0.0 {
                    Err(Error::InvalidPenalty {
                        message: format!("B = {b} must be finite and non-negative"),
                    })
                } else {
                    Ok(b)
                }
            }
            Penalty::Auto { delta } => {
                if !delta.is_finite() || delta <= 0.0 {
                    return Err(Error::InvalidPenalty {
                        message: format!("auto margin delta = {delta} must be positive"),
                    });
                }
                if b_star == 0.0 {
                    Ok(1.0)
                } else {
                    Ok(b_star * (1.0 + delta))
                }
            }
            Penalty::Unit => Ok(1.0),
        }
    }
}

/// The expanded objective: sparse quadratic coefficients over the canonical
/// edge order of the source graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    num_vars: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    b: Option<f64>,
    b_star: Option<f64>,
    edge_labels: Option<Vec<String>>,
}

/// Expands the penalty objective of `graph` into coefficient form.
pub fn build_qubo(graph: &ReducedBipartiteGraph, penalty: &Penalty) -> Result<Qubo, Error> {
    let b_star = graph.max_edge_weight().unwrap_or(0.0);
    let b = penalty.resolve(b_star)?;
    let n = graph.n();
    let m = graph.m();
    let num_vars = graph.num_edges();

    let mut linear = Vec::with_capacity(num_vars);
    for edge in graph.edges() {
        let constrained =
            edge.u.is_constrained() as u32 as f64 + edge.v.is_constrained() as u32 as f64;
        linear.push(edge.weight - b * constrained);
    }

    let mut quadratic = BTreeMap::new();
    if b != 0.0 {
        let mut add_block = |incident: &[usize]| {
            for (a, &e) in incident.iter().enumerate() {
                for &f in &incident[a + 1..] {
                    let key = if e < f { (e, f) } else { (f, e) };
                    let prev = quadratic.insert(key, 2.0 * b);
                    debug_assert!(prev.is_none(), "edge pair {key:?} shares two endpoints");
                }
            }
        };
        for i in 0..n {
            let mut incident: Vec<usize> = (0..m).map(|j| graph.offdiag_edge_index(i, j)).collect();
            incident.push(graph.diag_edge_index_u(i));
            add_block(&incident);
        }
        for j in 0..m {
            let mut incident: Vec<usize> = (0..n).map(|i| graph.offdiag_edge_index(i, j)).collect();
            incident.push(graph.diag_edge_index_v(j));
            add_block(&incident);
        }
    }

    Ok(Qubo {
        num_vars,
        linear,
        quadratic,
        offset: b * (n + m) as f64,
        b: Some(b),
        b_star: Some(b_star),
        edge_labels: Some(graph.edge_labels()),
    })
}

/// Evaluates the three objective parts directly from the graph, without the
/// coefficient expansion: the weight sum of the selected edges and the two
/// per-side squared-degree penalties.
pub fn penalty_terms(
    graph: &ReducedBipartiteGraph,
    bits: &BitAssignment,
    b: f64,
) -> Result<(f64, f64, f64), Error> {
    if bits.len() != graph.num_edges() {
        return Err(Error::LengthMismatch {
            expected: graph.num_edges(),
            actual: bits.len(),
        });
    }
    let mut f_c = 0.0;
    let mut deg_u = vec![0u32; graph.n()];
    let mut deg_v = vec![0u32; graph.m()];
    for e in bits.ones() {
        let edge = &graph.edges()[e];
        f_c += edge.weight;
        if edge.u.is_constrained() {
            deg_u[edge.u.index] += 1;
        }
        if edge.v.is_constrained() {
            deg_v[edge.v.index] += 1;
        }
    }
    let squared_deficit = |degs: &[u32]| -> f64 {
        degs.iter()
            .map(|&d| {
                let t = 1.0 - d as f64;
                t * t
            })
            .sum()
    };
    Ok((
        f_c,
        b * squared_deficit(&deg_u),
        b * squared_deficit(&deg_v),
    ))
}

impl Qubo {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Penalty weight the instance was built with, when known.
    pub fn b(&self) -> Option<f64> {
        self.b
    }

    /// Largest edge weight of the source graph, when known.
    pub fn b_star(&self) -> Option<f64> {
        self.b_star
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn edge_labels(&self) -> Option<&[String]> {
        self.edge_labels.as_deref()
    }

    /// Objective value of an assignment.
    pub fn energy(&self, bits: &BitAssignment) -> Result<f64, Error> {
        if bits.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                actual: bits.len(),
            });
        }
        let mut e = self.offset;
        for i in bits.ones() {
            e += self.linear[i];
        }
        for (&(i, j), &w) in &self.quadratic {
            if bits.get(i) && bits.get(j) {
                e += w;
            }
        }
        Ok(e)
    }

    /// Largest absolute coefficient, used for scale-aware defaults.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .fold(0.0f64, |acc, &c| acc.max(c.abs()))
    }

    /// Smallest nonzero absolute coefficient, used for scale-aware defaults.
    pub fn min_nonzero_abs_coefficient(&self) -> Option<f64> {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .map(|c| c.abs())
            .filter(|&a| a > 0.0)
            .fold(None, |acc: Option<f64>, a| {
                Some(acc.map_or(a, |best| best.min(a)))
            })
    }

    /// Renders the instance in the plain-text solver format:
    /// comment lines (`c ...`, carrying the offset and B bookkeeping), a
    /// `p qubo 0 <maxNode> <nNodes> <nCouplers>` header, then one `i i value`
    /// line per nonzero linear coefficient and one `i j value` line per
    /// quadratic coefficient.
    pub fn to_qubo_text(&self) -> String {
        let diag: Vec<(usize, f64)> = self
            .linear
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, &v)| (i, v))
            .collect();
        let mut out = String::new();
        out.push_str("c qubo for a persistence-diagram matching problem\n");
        out.push_str(&format!("c offset {}\n", self.offset));
        if let Some(b) = self.b {
            out.push_str(&format!("c B {b}\n"));
        }
        if let Some(b_star) = self.b_star {
            out.push_str(&format!("c B* {b_star}\n"));
        }
        out.push_str(&format!(
            "p qubo 0 {} {} {}\n",
            self.num_vars,
            diag.len(),
            self.quadratic.len()
        ));
        for (i, v) in diag {
            out.push_str(&format!("{i} {i} {v}\n"));
        }
        for (&(i, j), v) in &self.quadratic {
            out.push_str(&format!("{i} {j} {v}\n"));
        }
        out
    }

    /// Parses the plain-text format written by `to_qubo_text`.
    pub fn from_qubo_text(text: &str) -> Result<Self, Error> {
        let mut num_vars: Option<usize> = None;
        let mut declared = (0usize, 0usize);
        let mut offset = 0.0;
        let mut b = None;
        let mut b_star = None;
        let mut linear: Vec<f64> = Vec::new();
        let mut quadratic = BTreeMap::new();
        let mut seen = (0usize, 0usize);

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::Format {
                message: format!("line {}: {}", idx + 1, message),
            };
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('c') {
                let fields: Vec<&str> = comment.split_whitespace().collect();
                match fields.as_slice() {
                    ["offset", v] => {
                        offset = v.parse().map_err(|_| err(format!("bad offset {v:?}")))?
                    }
                    ["B", v] => b = Some(v.parse().map_err(|_| err(format!("bad B {v:?}")))?),
                    ["B*", v] => {
                        b_star = Some(v.parse().map_err(|_| err(format!("bad B* {v:?}")))?)
                    }
                    _ => {}
                }
                continue;
            }
            if let Some(header) = line.strip_prefix("p ") {
                if num_vars.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                let fields: Vec<&str> = header.split_whitespace().collect();
                if fields.len() != 5 || fields[0] != "qubo" {
                    return Err(err(format!("malformed problem line {line:?}")));
                }
                let max_node: usize = fields[2]
                    .parse()
                    .map_err(|_| err(format!("bad node count {:?}", fields[2])))?;
                let n_nodes: usize = fields[3]
                    .parse()
                    .map_err(|_| err(format!("bad nNodes {:?}", fields[3])))?;
                let n_couplers: usize = fields[4]
                    .parse()
                    .map_err(|_| err(format!("bad nCouplers {:?}", fields[4])))?;
                num_vars = Some(max_node);
                declared = (n_nodes, n_couplers);
                linear = vec![0.0; max_node];
                continue;
            }
            let m = num_vars.ok_or_else(|| err("entry before problem line".into()))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(format!("expected `i j value`, got {line:?}")));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("bad index {:?}", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("bad index {:?}", fields[1])))?;
            let v: f64 = fields[2]
                .parse()
                .map_err(|_| err(format!("bad value {:?}", fields[2])))?;
            if i >= m || j >= m {
                return Err(err(format!("index out of range in {line:?}")));
            }
            if i == j {
                linear[i] = v;
                seen.0 += 1;
            } else {
                let key = if i < j { (i, j) } else { (j, i) };
                if quadratic.insert(key, v).is_some() {
                    return Err(err(format!("duplicate coupler {key:?}")));
                }
                seen.1 += 1;
            }
        }

        let num_vars = num_vars.ok_or_else(|| Error::format("missing problem line"))?;
        if seen != declared {
            return Err(Error::format(format!(
                "problem line declares {} nodes and {} couplers, found {} and {}",
                declared.0, declared.1, seen.0, seen.1
            )));
        }
        Ok(Qubo {
            num_vars,
            linear,
            quadratic,
            offset,
            b,
            b_star,
            edge_labels: None,
        })
    }

    /// Renders the instance as a JSON document with stable key order.
    pub fn to_json(&self) -> String {
        let doc = QuboJson {
            num_vars: self.num_vars,
            offset: self.offset,
            b: self.b,
            b_star: self.b_star,
            linear: self
                .linear
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0.0)
                .map(|(i, &v)| (i, v))
                .collect(),
            quadratic: self
                .quadratic
                .iter()
                .map(|(&(i, j), &v)| (i, j, v))
                .collect(),
            edge_labels: self.edge_labels.clone().unwrap_or_default(),
        };
        serde_json::to_string_pretty(&doc).expect("qubo serialization cannot fail")
    }

    /// Parses the JSON document written by `to_json`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: QuboJson =
            serde_json::from_str(text).map_err(|e| Error::format(format!("bad qubo json: {e}")))?;
        let mut linear = vec![0.0; doc.num_vars];
        for (i, v) in doc.linear {
            if i >= doc.num_vars {
                return Err(Error::format(format!("linear index {i} out of range")));
            }
            linear[i] = v;
        }
        let mut quadratic = BTreeMap::new();
        for (i, j, v) in doc.quadratic {
            if i >= doc.num_vars || j >= doc.num_vars || i == j {
                return Err(Error::format(format!("bad quadratic entry ({i}, {j})")));
            }
            let key = if i < j { (i, j) } else { (j, i) };
            if quadratic.insert(key, v).is_some() {
                return Err(Error::format(format!("duplicate quadratic entry {key:?}")));
            }
        }
        let edge_labels = if doc.edge_labels.is_empty() {
            None
        } else {
            if doc.edge_labels.len() != doc.num_vars {
                return Err(Error::format(format!(
                    "expected {} edge labels, got {}",
                    doc.num_vars,
                    doc.edge_labels.len()
                )));
            }
            Some(doc.edge_labels)
        };
        Ok(Qubo {
            num_vars: doc.num_vars,
            linear,
            quadratic,
            offset: doc.offset,
            b: doc.b,
            b_star: doc.b_star,
            edge_labels,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct QuboJson {
    num_vars: usize,
    offset: f64,
    #[serde(rename = "B")]
    b: Option<f64>,
    #[serde(rename = "B_star")]
    b_star: Option<f64>,
    linear: BTreeMap<usize, f64>,
    quadratic: Vec<(usize, usize, f64)>,
    edge_labels: Vec<String>,
}
