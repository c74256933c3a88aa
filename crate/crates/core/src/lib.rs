//! Wasserstein distances between persistence diagrams, by compiling the
//! matching problem into a quadratic unconstrained binary objective.
//!
//! The pipeline has three legs that check each other:
//!
//! * [`graph`] builds the reduced bipartite matching graph of two diagrams
//!   and [`qubo`] expands its min-cost maximal-matching problem into sparse
//!   QUBO coefficients with a penalty weight `B`.
//! * [`solver`] minimizes the objective, either exactly (exhaustive scan for
//!   small instances) or by a seeded simulated-annealing sampler that plays
//!   the role of an annealing processor.
//! * [`oracle`] computes the distance classically through a dense
//!   minimum-cost assignment, certifying the QUBO route.
//!
//! ```
//! use wasserq::{
//!     brute_force_minimize, build_qubo, wasserstein_distance, Penalty, PersistenceDiagram,
//!     Norm, ReducedBipartiteGraph,
//! };
//!
//! let x = PersistenceDiagram::parse("0 2\n").unwrap();
//! let y = PersistenceDiagram::parse("0 4\n").unwrap();
//!
//! let exact = wasserstein_distance(&x, &y, 2.0, Norm::Q(2.0));
//! assert_eq!(exact.power_cost, 4.0);
//!
//! let graph = ReducedBipartiteGraph::new(x, y, 2.0, Norm::Q(2.0));
//! let qubo = build_qubo(&graph, &Penalty::auto()).unwrap();
//! let (minimum, _) = brute_force_minimize(&qubo).unwrap();
//! assert!((minimum - exact.power_cost).abs() < 1e-9);
//! ```

pub mod diagram;
mod error;
pub mod graph;
pub mod oracle;
pub mod qubo;
pub mod solver;

pub use diagram::{point_distance, DiagramPoint, Norm, PersistenceDiagram};
pub use error::Error;
pub use graph::{BitAssignment, Edge, ReducedBipartiteGraph, Side, VertexId, VertexKind};
pub use oracle::{
    min_cost_assignment, wasserstein_distance, CostMatrix, OptimalMatching, WassersteinResult,
};
pub use qubo::{build_qubo, compute_b_star, penalty_terms, Penalty, Qubo};
pub use solver::{
    brute_force_minimize, classify, energy_histogram, simulated_anneal, AnnealSchedule, Sample,
    SampleClassification, SampleJson, SampleSet, SampleSetJson, BRUTE_FORCE_LIMIT,
};
