//! Instance generators and repair steps shared by the integration suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wasserq::{
    BitAssignment, DiagramPoint, Norm, PersistenceDiagram, ReducedBipartiteGraph, VertexId,
    VertexKind,
};

pub fn random_diagram(rng: &mut ChaCha8Rng, len: usize) -> PersistenceDiagram {
    PersistenceDiagram::new(
        (0..len)
            .map(|_| {
                let birth: f64 = rng.gen_range(-2.0..2.0);
                DiagramPoint::new(birth, birth + rng.gen_range(0.05..3.0)).unwrap()
            })
            .collect(),
    )
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    n_range: std::ops::RangeInclusive<usize>,
    m_range: std::ops::RangeInclusive<usize>,
) -> ReducedBipartiteGraph {
    let n = rng.gen_range(n_range);
    let m = rng.gen_range(m_range);
    let x = random_diagram(rng, n);
    let y = random_diagram(rng, m);
    ReducedBipartiteGraph::new(x, y, 2.0, Norm::Q(2.0))
}

pub fn random_bits(rng: &mut ChaCha8Rng, len: usize, density: f64) -> BitAssignment {
    BitAssignment::new((0..len).map(|_| rng.gen::<f64>() < density).collect())
}

fn u_slot(g: &ReducedBipartiteGraph, v: &VertexId) -> usize {
    match v.kind {
        VertexKind::OffDiagonal => v.index,
        VertexKind::Diagonal => g.n() + v.index,
    }
}

fn v_slot(g: &ReducedBipartiteGraph, v: &VertexId) -> usize {
    match v.kind {
        VertexKind::OffDiagonal => v.index,
        VertexKind::Diagonal => g.m() + v.index,
    }
}

/// Per-vertex selected-edge counts, one slot array per side.
pub fn degrees(g: &ReducedBipartiteGraph, bits: &BitAssignment) -> (Vec<u32>, Vec<u32>) {
    let mut deg_u = vec![0u32; g.n() + g.m()];
    let mut deg_v = vec![0u32; g.n() + g.m()];
    for e in bits.ones() {
        let edge = &g.edges()[e];
        deg_u[u_slot(g, &edge.u)] += 1;
        deg_v[v_slot(g, &edge.v)] += 1;
    }
    (deg_u, deg_v)
}

/// Selected-edge counts at the two endpoints of edge `e`.
pub fn endpoint_degrees(g: &ReducedBipartiteGraph, bits: &BitAssignment, e: usize) -> (u32, u32) {
    let (deg_u, deg_v) = degrees(g, bits);
    let edge = &g.edges()[e];
    (deg_u[u_slot(g, &edge.u)], deg_v[v_slot(g, &edge.v)])
}

/// Lowest-index selected edge touching a vertex of degree >= 2, if any.
/// Removing it is the conflict-repair step.
pub fn remove_conflict_step(g: &ReducedBipartiteGraph, bits: &BitAssignment) -> Option<usize> {
    let (deg_u, deg_v) = degrees(g, bits);
    bits.ones().find(|&e| {
        let edge = &g.edges()[e];
        deg_u[u_slot(g, &edge.u)] >= 2 || deg_v[v_slot(g, &edge.v)] >= 2
    })
}

/// Lowest-index unselected edge whose endpoints are both unmatched, if any.
/// Adding it extends a matching towards maximality.
pub fn add_free_edge_step(g: &ReducedBipartiteGraph, bits: &BitAssignment) -> Option<usize> {
    let (deg_u, deg_v) = degrees(g, bits);
    (0..g.num_edges()).find(|&e| {
        if bits.get(e) {
            return false;
        }
        let edge = &g.edges()[e];
        deg_u[u_slot(g, &edge.u)] == 0 && deg_v[v_slot(g, &edge.v)] == 0
    })
}

/// A random (possibly empty, possibly non-maximal) matching built greedily
/// in random edge order with early stopping.
pub fn random_matching(rng: &mut ChaCha8Rng, g: &ReducedBipartiteGraph) -> BitAssignment {
    let mut bits = BitAssignment::zeros(g.num_edges());
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for e in order {
        if rng.gen::<f64>() < 0.4 {
            continue;
        }
        let (deg_u, deg_v) = degrees(g, &bits);
        let edge = &g.edges()[e];
        if deg_u[u_slot(g, &edge.u)] == 0 && deg_v[v_slot(g, &edge.v)] == 0 {
            bits.set(e, true);
        }
    }
    bits
}
