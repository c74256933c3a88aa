//! Exact and stochastic minimization of the compiled objective.
//!
//! `brute_force_minimize` scans every assignment of small instances and is
//! the ground-truth the samplers are judged against. `simulated_anneal` runs
//! independent single-flip Metropolis chains with a geometric inverse
//! temperature ramp; each chain derives its RNG stream from the pair
//! `(seed, chain index)`, so a sample set is reproducible bit for bit no
//! matter how the chains are scheduled across threads.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{BitAssignment, ReducedBipartiteGraph};
use crate::qubo::Qubo;

/// Exhaustive search is refused above this many variables.
pub const BRUTE_FORCE_LIMIT: usize = 26;

/// Per-variable view of the coefficients for O(degree) single-flip updates.
struct Adjacency {
    linear: Vec<f64>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl Adjacency {
    fn new(qubo: &Qubo) -> Self {
        let mut neighbors = vec![Vec::new(); qubo.num_vars()];
        for (&(i, j), &w) in qubo.quadratic() {
            neighbors[i].push((j, w));
            neighbors[j].push((i, w));
        }
        Adjacency {
            linear: qubo.linear().to_vec(),
            neighbors,
        }
    }

    /// `field[i] = linear[i] + sum of quadratic weights to set neighbors`;
    /// flipping bit i changes the energy by `(1 - 2 x_i) * field[i]`.
    fn fields(&self, bits: &BitAssignment) -> Vec<f64> {
        let mut fields = self.linear.clone();
        for (field, neighbors) in fields.iter_mut().zip(&self.neighbors) {
            for &(j, w) in neighbors {
                if bits.get(j) {
                    *field += w;
                }
            }
        }
        fields
    }

    fn flip_delta(&self, fields: &[f64], bits: &BitAssignment, i: usize) -> f64 {
        if bits.get(i) {
            -fields[i]
        } else {
            fields[i]
        }
    }

    fn apply_flip(&self, fields: &mut [f64], bits: &mut BitAssignment, i: usize) {
        let sign = if bits.get(i) { -1.0 } else { 1.0 };
        bits.flip(i);
        for &(j, w) in &self.neighbors[i] {
            fields[j] += sign * w;
        }
    }
}

fn tie_tolerance(a: f64, b: f64) -> f64 {
    1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Scans all `2^M` assignments in Gray-code order and returns the exact
/// minimum energy together with every assignment attaining it (within a
/// 1e-9 relative tie tolerance), sorted lexicographically.
pub fn brute_force_minimize(qubo: &Qubo) -> Result<(f64, Vec<BitAssignment>), Error> {
    let m = qubo.num_vars();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyVariables {
            num_vars: m,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    let adj = Adjacency::new(qubo);
    let mut bits = BitAssignment::zeros(m);
    let mut fields = adj.fields(&bits);
    let mut energy = qubo.offset();

    let mut best = energy;
    let mut candidates: Vec<(BitAssignment, f64)> = vec![(bits.clone(), energy)];

    // The running energy accumulates one rounding error per flip; it is
    // resynchronized periodically and any state near the minimum is
    // re-evaluated exactly before it is allowed to compete.
    const RESYNC_MASK: u64 = (1 << 14) - 1;
    let slack = |best: f64| 1e-6 * best.abs().max(1.0);

    let total: u64 = 1 << m;
    for k in 0..total - 1 {
        let i = (k + 1).trailing_zeros() as usize;
        energy += adj.flip_delta(&fields, &bits, i);
        adj.apply_flip(&mut fields, &mut bits, i);
        if (k + 1) & RESYNC_MASK == 0 {
            energy = qubo.energy(&bits)?;
        }
        if energy <= best + slack(best) {
            let exact = qubo.energy(&bits)?;
            if exact <= best + tie_tolerance(exact, best) {
                candidates.push((bits.clone(), exact));
                if exact < best {
                    best = exact;
                }
                if candidates.len() > 8192 {
                    candidates.retain(|(_, e)| *e <= best + tie_tolerance(*e, best));
                }
            }
        }
    }

    candidates.retain(|(_, e)| (*e - best).abs() <= tie_tolerance(*e, best));
    let mut minimizers: Vec<BitAssignment> = candidates.into_iter().map(|(a, _)| a).collect();
    minimizers.sort_unstable();
    Ok((best, minimizers))
}

/// Inverse-temperature ramp for the annealer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    beta_initial: f64,
    beta_final: f64,
    sweeps: usize,
}

impl AnnealSchedule {
    pub fn new(beta_initial: f64, beta_final: f64, sweeps: usize) -> Result<Self, Error> {
        if !(beta_initial.is_finite() && beta_final.is_finite())
            || beta_initial <= 0.0
            || beta_final < beta_initial
            || sweeps == 0
        {
            return Err(Error::InvalidPenalty {
                message: format!(
                    "invalid schedule: beta_initial {beta_initial}, beta_final {beta_final}, sweeps {sweeps}"
                ),
            });
        }
        Ok(AnnealSchedule {
            beta_initial,
            beta_final,
            sweeps,
        })
    }

    /// Scale-aware default: hot enough at the start to cross the largest
    /// edge weight, cold enough at the end to freeze the smallest nonzero
    /// coefficient, over 1000 sweeps.
    pub fn default_for(qubo: &Qubo) -> Self {
        let weight_scale = match qubo.b_star() {
            Some(b_star) if b_star > 0.0 => b_star,
            _ => qubo.max_abs_coefficient().max(1e-12),
        };
        let beta_initial = 0.1 / weight_scale;
        let smallest = qubo.min_nonzero_abs_coefficient().unwrap_or(1.0);
        let beta_final = (10.0 / smallest.max(1e-12)).max(beta_initial);
        AnnealSchedule {
            beta_initial,
            beta_final,
            sweeps: 1000,
        }
    }

    pub fn beta_initial(&self) -> f64 {
        self.beta_initial
    }

    pub fn beta_final(&self) -> f64 {
        self.beta_final
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// One inverse temperature per sweep, geometrically interpolated.
    fn betas(&self) -> Vec<f64> {
        if self.sweeps == 1 {
            return vec![self.beta_final];
        }
        let log0 = self.beta_initial.ln();
        let log1 = self.beta_final.ln();
        let step = (log1 - log0) / (self.sweeps - 1) as f64;
        (0..self.sweeps)
            .map(|s| (log0 + step * s as f64).exp())
            .collect()
    }
}

/// One distinct assignment observed by a sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub assignment: BitAssignment,
    pub energy: f64,
    pub occurrences: u64,
}

/// All reads of a sampler run, grouped by assignment and sorted by energy
/// (ties by lexicographic bit order).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    samples: Vec<Sample>,
    total_reads: u64,
    seed: u64,
    schedule: AnnealSchedule,
}

impl SampleSet {
    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn total_reads(&self) -> u64 {
        self.total_reads
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn schedule(&self) -> &AnnealSchedule {
        &self.schedule
    }

    /// Lowest energy observed.
    pub fn min_energy(&self) -> Option<f64> {
        self.samples.first().map(|s| s.energy)
    }

    /// Builds the serializable document, classifying each sample against the
    /// graph when one is available.
    pub fn to_document(
        &self,
        graph: Option<&ReducedBipartiteGraph>,
    ) -> Result<SampleSetJson, Error> {
        let mut samples = Vec::with_capacity(self.samples.len());
        for s in &self.samples {
            let (is_matching, is_maximal) = match graph {
                Some(g) => {
                    let subset = g.decode(&s.assignment)?;
                    let matching = g.is_matching(&subset);
                    let maximal = matching && g.is_maximal_matching(&subset);
                    (Some(matching), Some(maximal))
                }
                None => (None, None),
            };
            samples.push(SampleJson {
                bits: s.assignment.to_bit_string(),
                energy: s.energy,
                occurrences: s.occurrences,
                is_matching,
                is_maximal,
            });
        }
        Ok(SampleSetJson {
            total_reads: self.total_reads,
            seed: self.seed,
            schedule: self.schedule,
            samples,
        })
    }

    pub fn to_json(&self, graph: Option<&ReducedBipartiteGraph>) -> Result<String, Error> {
        let doc = self.to_document(graph)?;
        Ok(serde_json::to_string_pretty(&doc).expect("sample set serialization cannot fail"))
    }
}

/// Serializable form of a sample set. The classification flags are null
/// when the set was produced from a bare coefficient file with no graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSetJson {
    pub total_reads: u64,
    pub seed: u64,
    pub schedule: AnnealSchedule,
    pub samples: Vec<SampleJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub bits: String,
    pub energy: f64,
    pub occurrences: u64,
    pub is_matching: Option<bool>,
    pub is_maximal: Option<bool>,
}

impl SampleSetJson {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::format(format!("bad sample json: {e}")))
    }
}

/// Runs `num_reads` independent Metropolis chains and groups the final
/// states. Identical inputs produce an identical sample set regardless of
/// thread count.
pub fn simulated_anneal(
    qubo: &Qubo,
    schedule: &AnnealSchedule,
    num_reads: u64,
    seed: u64,
) -> SampleSet {
    assert!(num_reads >= 1, "num_reads must be positive");
    let adj = Adjacency::new(qubo);
    let betas = schedule.betas();

    let finals: Vec<BitAssignment> = (0..num_reads)
        .into_par_iter()
        .map(|chain| run_chain(qubo.num_vars(), &adj, &betas, seed, chain))
        .collect();

    let mut groups: BTreeMap<BitAssignment, u64> = BTreeMap::new();
    for bits in finals {
        *groups.entry(bits).or_default() += 1;
    }
    let mut samples: Vec<Sample> = groups
        .into_iter()
        .map(|(assignment, occurrences)| {
            let energy = qubo
                .energy(&assignment)
                .expect("chain states match the qubo length");
            Sample {
                assignment,
                energy,
                occurrences,
            }
        })
        .collect();
    samples.sort_unstable_by(|a, b| {
        f64::total_cmp(&a.energy, &b.energy).then_with(|| a.assignment.cmp(&b.assignment))
    });

    SampleSet {
        samples,
        total_reads: num_reads,
        seed,
        schedule: *schedule,
    }
}

fn run_chain(
    num_vars: usize,
    adj: &Adjacency,
    betas: &[f64],
    seed: u64,
    chain: u64,
) -> BitAssignment {
    // Fixed splitting rule: every chain owns stream `chain` of the seeded
    // generator, independent of scheduling order.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chain);

    let mut bits = BitAssignment::new((0..num_vars).map(|_| rng.gen::<bool>()).collect());
    let mut fields = adj.fields(&bits);
    let mut order: Vec<usize> = (0..num_vars).collect();
    for &beta in betas {
        order.shuffle(&mut rng);
        for &i in &order {
            let delta = adj.flip_delta(&fields, &bits, i);
            if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                adj.apply_flip(&mut fields, &mut bits, i);
            }
        }
    }
    bits
}

/// How a sample relates to the matching structure and the known minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleClassification {
    pub is_matching: bool,
    pub is_maximal: bool,
    pub is_ground: bool,
}

/// Classifies a sample by the graph predicates; `is_ground` is only set when
/// the exact minimum is supplied and the energy matches it to 1e-9 relative.
pub fn classify(
    sample: &Sample,
    graph: &ReducedBipartiteGraph,
    known_minimum: Option<f64>,
) -> Result<SampleClassification, Error> {
    let subset = graph.decode(&sample.assignment)?;
    let is_matching = graph.is_matching(&subset);
    let is_maximal = is_matching && graph.is_maximal_matching(&subset);
    let is_ground = known_minimum
        .map(|min| (sample.energy - min).abs() <= 1e-9 * min.abs().max(1.0))
        .unwrap_or(false);
    Ok(SampleClassification {
        is_matching,
        is_maximal,
        is_ground,
    })
}

/// Aggregates occurrences into half-open bins `[k w, (k+1) w)`. Bins with no
/// occurrences are omitted.
pub fn energy_histogram(set: &SampleSet, bin_width: f64) -> Vec<(f64, u64)> {
    assert!(bin_width > 0.0, "bin width must be positive");
    let mut bins: BTreeMap<i64, u64> = BTreeMap::new();
    for s in set.samples() {
        let k = (s.energy / bin_width).floor() as i64;
        *bins.entry(k).or_default() += s.occurrences;
    }
    bins.into_iter()
        .map(|(k, count)| (k as f64 * bin_width, count))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{DiagramPoint, Norm, PersistenceDiagram};
    use crate::qubo::{build_qubo, Penalty};

    fn diagram(points: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::new(
            points
                .iter()
                .map(|&(b, d)| DiagramPoint::new(b, d).unwrap())
                .collect(),
        )
    }

    fn one_by_one() -> ReducedBipartiteGraph {
        ReducedBipartiteGraph::new(
            diagram(&[(0.0, 2.0)]),
            diagram(&[(0.0, 4.0)]),
            2.0,
            Norm::Q(2.0),
        )
    }

    fn random_diagram(rng: &mut ChaCha8Rng, len: usize) -> PersistenceDiagram {
        PersistenceDiagram::new(
            (0..len)
                .map(|_| {
                    let b: f64 = rng.gen_range(-2.0..2.0);
                    DiagramPoint::new(b, b + rng.gen_range(0.05..3.0)).unwrap()
                })
                .collect(),
        )
    }

    #[test]
    fn brute_force_one_by_one() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(9.0)).unwrap();
        let (min, minimizers) = brute_force_minimize(&q).unwrap();
        assert_eq!(min, 4.0);
        assert_eq!(minimizers.len(), 1);
        assert_eq!(minimizers[0].to_bit_string(), "100");
    }

    #[test]
    fn brute_force_zero_penalty_prefers_empty_set() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(0.0)).unwrap();
        let (min, minimizers) = brute_force_minimize(&q).unwrap();
        assert_eq!(min, 0.0);
        assert_eq!(minimizers, vec![BitAssignment::zeros(3)]);
    }

    #[test]
    fn brute_force_identical_diagrams_reach_zero() {
        let d = diagram(&[(0.0, 1.0), (1.0, 3.0)]);
        let g = ReducedBipartiteGraph::new(d.clone(), d, 2.0, Norm::Q(2.0));
        let q = build_qubo(&g, &Penalty::auto()).unwrap();
        let (min, minimizers) = brute_force_minimize(&q).unwrap();
        assert!(min.abs() <= 1e-12);
        let mut identity = BitAssignment::zeros(g.num_edges());
        identity.set(g.offdiag_edge_index(0, 0), true);
        identity.set(g.offdiag_edge_index(1, 1), true);
        assert!(minimizers.contains(&identity));
    }

    #[test]
    fn brute_force_refuses_large_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = ReducedBipartiteGraph::new(
            random_diagram(&mut rng, 5),
            random_diagram(&mut rng, 4),
            2.0,
            Norm::Q(2.0),
        );
        let q = build_qubo(&g, &Penalty::auto()).unwrap();
        assert!(matches!(
            brute_force_minimize(&q),
            Err(Error::TooManyVariables { num_vars: 29, .. })
        ));
    }

    #[test]
    fn brute_force_agrees_with_maximal_matching_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 50 {
            let n = rng.gen_range(0..=3);
            let m = rng.gen_range(0..=3);
            let g = ReducedBipartiteGraph::new(
                random_diagram(&mut rng, n),
                random_diagram(&mut rng, m),
                2.0,
                Norm::Q(2.0),
            );
            if g.num_edges() == 0 || g.num_edges() > 15 {
                continue;
            }
            checked += 1;
            let q = build_qubo(&g, &Penalty::auto()).unwrap();
            let (min, _) = brute_force_minimize(&q).unwrap();
            let best_matching = g
                .maximal_matchings()
                .unwrap()
                .iter()
                .map(|m| g.matching_cost(m))
                .fold(f64::INFINITY, f64::min);
            assert!(
                (min - best_matching).abs() <= 1e-9 * best_matching.abs().max(1.0),
                "brute {min} vs matchings {best_matching}"
            );
        }
    }

    /// Scaling every weight and B by a common positive factor scales all
    /// energies by that factor and leaves the minimizing set unchanged.
    #[test]
    fn scaling_preserves_minimizers() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let x = random_diagram(&mut rng, n);
            let y = random_diagram(&mut rng, m);
            let factor: f64 = rng.gen_range(0.2..8.0);
            // Dilating the plane by factor^(1/p) scales every edge weight by
            // the factor itself (weights are p-th powers of distances).
            let scale_coords = factor.sqrt();
            let dilate = |d: &PersistenceDiagram| {
                PersistenceDiagram::new(
                    d.points()
                        .iter()
                        .map(|pt| {
                            DiagramPoint::new(pt.birth() * scale_coords, pt.death() * scale_coords)
                                .unwrap()
                        })
                        .collect(),
                )
            };
            let g = ReducedBipartiteGraph::new(x.clone(), y.clone(), 2.0, Norm::Q(2.0));
            let g_scaled = ReducedBipartiteGraph::new(dilate(&x), dilate(&y), 2.0, Norm::Q(2.0));
            let b = crate::qubo::compute_b_star(&g).unwrap() * 1.3;
            let q = build_qubo(&g, &Penalty::Explicit(b)).unwrap();
            let q_scaled = build_qubo(&g_scaled, &Penalty::Explicit(b * factor)).unwrap();

            for _ in 0..30 {
                let bits =
                    BitAssignment::new((0..q.num_vars()).map(|_| rng.gen::<bool>()).collect());
                let e = q.energy(&bits).unwrap();
                let e_scaled = q_scaled.energy(&bits).unwrap();
                assert!(
                    (e_scaled - factor * e).abs() <= 1e-9 * (factor * e).abs().max(1.0),
                    "{e_scaled} vs {factor} * {e}"
                );
            }

            let (min, minimizers) = brute_force_minimize(&q).unwrap();
            let (min_scaled, minimizers_scaled) = brute_force_minimize(&q_scaled).unwrap();
            assert!((min_scaled - factor * min).abs() <= 1e-9 * (factor * min).abs().max(1.0));
            assert_eq!(minimizers, minimizers_scaled);
        }
    }

    #[test]
    fn incremental_delta_matches_energy_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(0..=4);
            let g = ReducedBipartiteGraph::new(
                random_diagram(&mut rng, n),
                random_diagram(&mut rng, m),
                2.0,
                Norm::Q(2.0),
            );
            let b = rng.gen_range(0.0..20.0);
            let q = build_qubo(&g, &Penalty::Explicit(b)).unwrap();
            let adj = Adjacency::new(&q);
            let mut bits =
                BitAssignment::new((0..q.num_vars()).map(|_| rng.gen::<bool>()).collect());
            let mut fields = adj.fields(&bits);
            for _ in 0..20 {
                let i = rng.gen_range(0..q.num_vars());
                let before = q.energy(&bits).unwrap();
                let delta = adj.flip_delta(&fields, &bits, i);
                adj.apply_flip(&mut fields, &mut bits, i);
                let after = q.energy(&bits).unwrap();
                assert!(
                    (after - before - delta).abs() <= 1e-9 * after.abs().max(before.abs()).max(1.0),
                    "delta {delta} vs {after} - {before}"
                );
            }
        }
    }

    #[test]
    fn anneal_is_deterministic_for_equal_seeds() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(9.0)).unwrap();
        let schedule = AnnealSchedule::default_for(&q);
        let a = simulated_anneal(&q, &schedule, 200, 7);
        let b = simulated_anneal(&q, &schedule, 200, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn anneal_finds_the_small_ground_state() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(9.0)).unwrap();
        let schedule = AnnealSchedule::default_for(&q);
        let set = simulated_anneal(&q, &schedule, 200, 0);
        assert_eq!(set.total_reads(), 200);
        assert_eq!(
            set.samples().iter().map(|s| s.occurrences).sum::<u64>(),
            200
        );
        assert!((set.min_energy().unwrap() - 4.0).abs() <= 1e-9);
    }

    #[test]
    fn cold_chains_end_in_local_minima() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = ReducedBipartiteGraph::new(
            random_diagram(&mut rng, 3),
            random_diagram(&mut rng, 2),
            2.0,
            Norm::Q(2.0),
        );
        let q = build_qubo(&g, &Penalty::auto()).unwrap();
        let schedule = AnnealSchedule::new(1e8, 1e9, 300).unwrap();
        let set = simulated_anneal(&q, &schedule, 50, 12);
        for s in set.samples() {
            for i in 0..q.num_vars() {
                let mut flipped = s.assignment.clone();
                flipped.flip(i);
                let neighbor = q.energy(&flipped).unwrap();
                assert!(
                    neighbor >= s.energy - 1e-9 * s.energy.abs().max(1.0),
                    "flip {i} improves {} -> {neighbor}",
                    s.energy
                );
            }
        }
    }

    #[test]
    fn sample_energies_are_consistent() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::auto()).unwrap();
        let set = simulated_anneal(&q, &AnnealSchedule::default_for(&q), 100, 5);
        for s in set.samples() {
            assert_eq!(q.energy(&s.assignment).unwrap(), s.energy);
        }
        // Sorted ascending by energy.
        for pair in set.samples().windows(2) {
            assert!(pair[0].energy <= pair[1].energy);
        }
    }

    #[test]
    fn classification_examples() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(9.0)).unwrap();
        let sample = |bits: &str| Sample {
            assignment: BitAssignment::from_bit_string(bits).unwrap(),
            energy: q
                .energy(&BitAssignment::from_bit_string(bits).unwrap())
                .unwrap(),
            occurrences: 1,
        };
        let c = classify(&sample("100"), &g, Some(4.0)).unwrap();
        assert_eq!(
            c,
            SampleClassification {
                is_matching: true,
                is_maximal: true,
                is_ground: true
            }
        );
        let c = classify(&sample("000"), &g, Some(4.0)).unwrap();
        assert_eq!(
            c,
            SampleClassification {
                is_matching: true,
                is_maximal: false,
                is_ground: false
            }
        );
        let c = classify(&sample("110"), &g, None).unwrap();
        assert!(!c.is_matching);
        assert!(!c.is_maximal);
        assert!(!c.is_ground);
    }

    #[test]
    fn histogram_examples() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(9.0)).unwrap();
        let set = simulated_anneal(&q, &AnnealSchedule::default_for(&q), 50, 9);
        let hist = energy_histogram(&set, 1.0);
        let total: u64 = hist.iter().map(|&(_, c)| c).sum();
        assert_eq!(total, 50);
        for &(edge, _) in &hist {
            assert_eq!(edge, edge.floor());
        }

        // Two energies in the same bin aggregate.
        let synthetic = SampleSet {
            samples: vec![
                Sample {
                    assignment: BitAssignment::zeros(1),
                    energy: 4.0,
                    occurrences: 2,
                },
                Sample {
                    assignment: BitAssignment::new(vec![true]),
                    energy: 4.4,
                    occurrences: 3,
                },
            ],
            total_reads: 5,
            seed: 0,
            schedule: AnnealSchedule::new(0.1, 1.0, 1).unwrap(),
        };
        assert_eq!(energy_histogram(&synthetic, 1.0), vec![(4.0, 5)]);
        let empty = SampleSet {
            samples: vec![],
            total_reads: 1,
            seed: 0,
            schedule: AnnealSchedule::new(0.1, 1.0, 1).unwrap(),
        };
        assert!(energy_histogram(&empty, 1.0).is_empty());
    }

    #[test]
    fn sample_json_round_trip() {
        let g = one_by_one();
        let q = build_qubo(&g, &Penalty::Explicit(9.0)).unwrap();
        let set = simulated_anneal(&q, &AnnealSchedule::default_for(&q), 100, 2);
        let json = set.to_json(Some(&g)).unwrap();
        let doc = SampleSetJson::parse(&json).unwrap();
        assert_eq!(doc.total_reads, 100);
        assert_eq!(doc.seed, 2);
        assert_eq!(doc.samples.iter().map(|s| s.occurrences).sum::<u64>(), 100);
        for s in &doc.samples {
            let bits = BitAssignment::from_bit_string(&s.bits).unwrap();
            assert_eq!(q.energy(&bits).unwrap(), s.energy);
            assert!(s.is_matching.is_some());
        }
        // Without a graph the classification flags are null.
        let json = set.to_json(None).unwrap();
        let doc = SampleSetJson::parse(&json).unwrap();
        assert!(doc.samples.iter().all(|s| s.is_matching.is_none()));
    }

    #[test]
    fn schedule_validation() {
        assert!(AnnealSchedule::new(0.0, 1.0, 10).is_err());
        assert!(AnnealSchedule::new(1.0, 0.5, 10).is_err());
        assert!(AnnealSchedule::new(1.0, 2.0, 0).is_err());
        let s = AnnealSchedule::new(1.0, 8.0, 4).unwrap();
        let betas = s.betas();
        assert_eq!(betas.len(), 4);
        assert!((betas[0] - 1.0).abs() < 1e-12);
        assert!((betas[3] - 8.0).abs() < 1e-9);
        assert!((betas[1] - 2.0).abs() < 1e-9);
    }
}
