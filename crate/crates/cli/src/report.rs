//! Run reports and text rendering of sampler output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use wasserq::{classify, ReducedBipartiteGraph, SampleSet};

/// Everything a run prints, in recomputable form.
#[derive(Serialize)]
pub struct RunReport {
    pub inputs: Inputs,
    pub num_vars: usize,
    #[serde(rename = "B_star")]
    pub b_star: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    /// Set when B is known: whether B <= B*, where minimizers are no longer
    /// guaranteed to be maximal matchings.
    pub outside_guarantee: Option<bool>,
    pub oracle: OracleReport,
    pub solver: Option<SolverReport>,
    pub timing_seconds: f64,
}

#[derive(Serialize)]
pub struct Inputs {
    pub x_path: String,
    pub y_path: String,
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub q: String,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub power_cost: f64,
    pub distance: f64,
}

#[derive(Serialize)]
pub struct SolverReport {
    pub method: String,
    pub reads: u64,
    pub seed: u64,
    pub min_energy: f64,
    pub ground_energy: Option<f64>,
    pub fraction_matching: Option<f64>,
    pub fraction_maximal: Option<f64>,
    pub fraction_ground: Option<f64>,
}

/// Occurrence-weighted classification fractions of a sample set.
pub struct SetStats {
    pub fraction_matching: Option<f64>,
    pub fraction_maximal: Option<f64>,
    pub fraction_ground: Option<f64>,
}

pub fn set_stats(
    set: &SampleSet,
    graph: Option<&ReducedBipartiteGraph>,
    ground: Option<f64>,
) -> anyhow::Result<SetStats> {
    let total = set.total_reads() as f64;
    let mut matching = 0u64;
    let mut maximal = 0u64;
    let mut at_ground = 0u64;
    for s in set.samples() {
        if let Some(g) = graph {
            let cls = classify(s, g, ground)?;
            if cls.is_matching {
                matching += s.occurrences;
            }
            if cls.is_maximal {
                maximal += s.occurrences;
            }
        }
        if let Some(min) = ground {
            if (s.energy - min).abs() <= 1e-9 * min.abs().max(1.0) {
                at_ground += s.occurrences;
            }
        }
    }
    Ok(SetStats {
        fraction_matching: graph.map(|_| matching as f64 / total),
        fraction_maximal: graph.map(|_| maximal as f64 / total),
        fraction_ground: ground.map(|_| at_ground as f64 / total),
    })
}

/// Auto bin width: a fiftieth of the observed energy range.
pub fn auto_bin_width(set: &SampleSet) -> f64 {
    let lo = set.samples().first().map(|s| s.energy).unwrap_or(0.0);
    let hi = set.samples().last().map(|s| s.energy).unwrap_or(0.0);
    let range = hi - lo;
    if range > 0.0 {
        range / 50.0
    } else {
        1.0
    }
}

struct BinAgg {
    occurrences: u64,
    matching: u64,
    maximal: u64,
}

/// Text histogram: one row per occupied energy bin, with a bar, the share of
/// reads in the bin that decode to (maximal) matchings, and a marker on the
/// bin holding the ground energy.
pub fn render_histogram(
    set: &SampleSet,
    graph: Option<&ReducedBipartiteGraph>,
    ground: Option<f64>,
    bin_width: f64,
) -> anyhow::Result<String> {
    let mut bins: BTreeMap<i64, BinAgg> = BTreeMap::new();
    for s in set.samples() {
        let key = (s.energy / bin_width).floor() as i64;
        let agg = bins.entry(key).or_insert(BinAgg {
            occurrences: 0,
            matching: 0,
            maximal: 0,
        });
        agg.occurrences += s.occurrences;
        if let Some(g) = graph {
            let cls = classify(s, g, None)?;
            if cls.is_matching {
                agg.matching += s.occurrences;
            }
            if cls.is_maximal {
                agg.maximal += s.occurrences;
            }
        }
    }

    let max_count = bins.values().map(|a| a.occurrences).max().unwrap_or(1);
    let ground_key = ground.map(|e| (e / bin_width).floor() as i64);

    let mut out = String::new();
    writeln!(out, "energy histogram (bin width {bin_width}):").unwrap();
    for (key, agg) in &bins {
        let lo = *key as f64 * bin_width;
        let hi = lo + bin_width;
        let bar_len = ((agg.occurrences * 40).div_ceil(max_count)).max(1) as usize;
        let mut line = format!(
            "  [{lo:>12.6}, {hi:>12.6})  {:>6}  {}",
            agg.occurrences,
            "#".repeat(bar_len)
        );
        if graph.is_some() && agg.occurrences > 0 {
            let pct = |n: u64| 100.0 * n as f64 / agg.occurrences as f64;
            write!(
                line,
                "  matching {:.0}% maximal {:.0}%",
                pct(agg.matching),
                pct(agg.maximal)
            )
            .unwrap();
        }
        if ground_key == Some(*key) {
            line.push_str("  << ground");
        }
        writeln!(out, "{line}").unwrap();
    }
    match ground {
        Some(e) => writeln!(
            out,
            "legend: << ground marks the bin holding the exact minimum {e}"
        )
        .unwrap(),
        None => writeln!(
            out,
            "legend: ground unknown (too many variables for brute force)"
        )
        .unwrap(),
    }
    Ok(out)
}

/// Sweep table, one row per penalty weight.
pub fn render_sweep_table(rows: &[RunReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<22} {:<8} {:>9} {:>9} {:>9} {:>22} {:>22}",
        "B", "regime", "matching", "maximal", "ground", "min energy", "oracle d^p"
    )
    .unwrap();
    for row in rows {
        let solver = row.solver.as_ref().expect("sweep rows carry solver stats");
        let ground = solver
            .fraction_ground
            .map(|f| format!("{f:.3}"))
            .unwrap_or_else(|| "unknown".into());
        writeln!(
            out,
            "{:<22} {:<8} {:>9.3} {:>9.3} {:>9} {:>22} {:>22}",
            row.b.unwrap_or(f64::NAN),
            if row.outside_guarantee == Some(true) {
                "B<=B*"
            } else {
                "B>B*"
            },
            solver.fraction_matching.unwrap_or(f64::NAN),
            solver.fraction_maximal.unwrap_or(f64::NAN),
            ground,
            solver.min_energy,
            row.oracle.power_cost
        )
        .unwrap();
    }
    out
}
