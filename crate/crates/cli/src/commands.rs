use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::CommandFactory;
use wasserq::{
    brute_force_minimize, build_qubo, compute_b_star, simulated_anneal, wasserstein_distance,
    AnnealSchedule, BitAssignment, Penalty, PersistenceDiagram, Qubo, ReducedBipartiteGraph,
    SampleSetJson, BRUTE_FORCE_LIMIT,
};

use crate::report::{
    auto_bin_width, render_histogram, render_sweep_table, set_stats, Inputs, OracleReport,
    RunReport, SolverReport,
};
use crate::{
    Cli, DistanceArgs, MetricArgs, PenaltyArg, QuboArgs, SampleArgs, SamplerArgs, SweepArgs,
    SweepPoint, VerifyArgs,
};

fn read_diagram(path: &Path) -> anyhow::Result<PersistenceDiagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PersistenceDiagram::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Loads an exported QUBO, accepting either format (JSON documents start
/// with a brace).
fn load_qubo(path: &Path) -> anyhow::Result<Qubo> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = if text.trim_start().starts_with('{') {
        Qubo::from_json(&text)
    } else {
        Qubo::from_qubo_text(&text)
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn penalty_of(arg: PenaltyArg) -> Penalty {
    match arg {
        PenaltyArg::Auto => Penalty::auto(),
        PenaltyArg::Value(v) => Penalty::Explicit(v),
    }
}

fn schedule_for(qubo: &Qubo, args: &SamplerArgs) -> anyhow::Result<AnnealSchedule> {
    let base = AnnealSchedule::default_for(qubo);
    AnnealSchedule::new(
        args.beta0.unwrap_or_else(|| base.beta_initial()),
        args.beta1.unwrap_or_else(|| base.beta_final()),
        args.sweeps.unwrap_or_else(|| base.sweeps()),
    )
    .context("invalid annealing schedule")
}

fn ground_energy(qubo: &Qubo) -> anyhow::Result<Option<f64>> {
    if qubo.num_vars() <= BRUTE_FORCE_LIMIT {
        Ok(Some(brute_force_minimize(qubo)?.0))
    } else {
        Ok(None)
    }
}

fn usage_error(message: &str) -> ! {
    Cli::command()
        .error(ErrorKind::WrongNumberOfValues, message)
        .exit()
}

struct Checks {
    failures: usize,
}

impl Checks {
    fn check(&mut self, label: &str, ok: bool, detail: String) {
        if ok {
            println!("ok   - {label}");
        } else {
            println!("FAIL - {label}: {detail}");
            self.failures += 1;
        }
    }
}

pub fn distance(args: DistanceArgs) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let x = read_diagram(&args.x)?;
    let y = read_diagram(&args.y)?;
    let MetricArgs { p, q } = args.metric;
    let result = wasserstein_distance(&x, &y, p, q);
    let graph = ReducedBipartiteGraph::new(x, y, p, q);

    let report = RunReport {
        inputs: Inputs {
            x_path: args.x.display().to_string(),
            y_path: args.y.display().to_string(),
            n: graph.n(),
            m: graph.m(),
            p,
            q: q.to_string(),
        },
        num_vars: graph.num_edges(),
        b_star: graph.max_edge_weight(),
        b: None,
        outside_guarantee: None,
        oracle: OracleReport {
            power_cost: result.power_cost,
            distance: result.distance,
        },
        solver: None,
        timing_seconds: start.elapsed().as_secs_f64(),
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "X: {} (n = {}), Y: {} (m = {})",
            report.inputs.x_path, report.inputs.n, report.inputs.y_path, report.inputs.m
        );
        println!("p = {p}, q = {q}, variables M = {}", report.num_vars);
        println!("power cost d^p = {}", result.power_cost);
        println!("distance  d   = {}", result.distance);
    }
    Ok(ExitCode::SUCCESS)
}

pub fn qubo(args: QuboArgs) -> anyhow::Result<ExitCode> {
    let x = read_diagram(&args.x)?;
    let y = read_diagram(&args.y)?;
    let MetricArgs { p, q } = args.metric;
    let graph = ReducedBipartiteGraph::new(x, y, p, q);
    let qubo = build_qubo(&graph, &penalty_of(args.b))?;

    let content = match args.format.as_str() {
        "qubo" => qubo.to_qubo_text(),
        "json" => qubo.to_json(),
        other => unreachable!("clap validated the format {other}"),
    };
    match &args.output {
        Some(path) => {
            fs::write(path, &content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }

    let b = qubo.b().expect("graph-built qubo has B");
    let b_star = qubo.b_star().expect("graph-built qubo has B*");
    eprintln!(
        "n = {}, m = {}, M = {} variables, B = {b}, B* = {b_star}{}",
        graph.n(),
        graph.m(),
        qubo.num_vars(),
        if b <= b_star && b_star > 0.0 {
            " (B <= B*: minimizers may violate the matching constraints)"
        } else {
            ""
        }
    );
    Ok(ExitCode::SUCCESS)
}

pub fn sample(args: SampleArgs) -> anyhow::Result<ExitCode> {
    let (qubo, graph) = match (&args.qubo, args.diagrams.as_slice()) {
        (Some(path), []) => (load_qubo(path)?, None),
        (None, [x_path, y_path]) => {
            let x = read_diagram(x_path)?;
            let y = read_diagram(y_path)?;
            let MetricArgs { p, q } = args.metric;
            let graph = ReducedBipartiteGraph::new(x, y, p, q);
            (build_qubo(&graph, &penalty_of(args.b))?, Some(graph))
        }
        _ => usage_error("sample needs either --qubo FILE or exactly two diagram files"),
    };

    let schedule = schedule_for(&qubo, &args.sampler)?;
    let set = simulated_anneal(&qubo, &schedule, args.sampler.reads, args.sampler.seed);
    let ground = ground_energy(&qubo)?;

    let json = set.to_json(graph.as_ref())?;
    if let Some(path) = &args.output {
        fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        println!("{json}");
        return Ok(ExitCode::SUCCESS);
    }

    let stats = set_stats(&set, graph.as_ref(), ground)?;
    println!(
        "{} reads, seed {}, {} sweeps, beta {} -> {}",
        set.total_reads(),
        set.seed(),
        schedule.sweeps(),
        schedule.beta_initial(),
        schedule.beta_final()
    );
    println!(
        "M = {} variables{}{}",
        qubo.num_vars(),
        qubo.b().map(|b| format!(", B = {b}")).unwrap_or_default(),
        qubo.b_star()
            .map(|bs| format!(", B* = {bs}"))
            .unwrap_or_default()
    );
    match ground {
        Some(e) => println!("ground energy {e} (exhaustive search)"),
        None => println!(
            "ground energy unknown (M = {} > {BRUTE_FORCE_LIMIT})",
            qubo.num_vars()
        ),
    }
    println!(
        "{} distinct samples, min energy observed {}",
        set.samples().len(),
        set.min_energy().unwrap_or(f64::NAN)
    );
    if let (Some(g), Some(best)) = (graph.as_ref(), set.samples().first()) {
        let edges = g.decode(&best.assignment)?;
        println!(
            "best sample selects edges {edges:?}{}",
            if g.is_maximal_matching(&edges) {
                " (maximal matching)"
            } else if g.is_matching(&edges) {
                " (matching, not maximal)"
            } else {
                " (not a matching)"
            }
        );
    }
    if let (Some(fm), Some(fx)) = (stats.fraction_matching, stats.fraction_maximal) {
        println!("fraction matching {fm:.3}, maximal {fx:.3}");
    }
    if let Some(fg) = stats.fraction_ground {
        println!("fraction at ground {fg:.3}");
    }
    let width = args.bins.unwrap_or_else(|| auto_bin_width(&set));
    anyhow::ensure!(width > 0.0, "bin width must be positive, got {width}");
    print!("{}", render_histogram(&set, graph.as_ref(), ground, width)?);
    Ok(ExitCode::SUCCESS)
}

pub fn sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    if args.b_list.is_empty() {
        usage_error("--B-list must contain at least one entry");
    }
    let x = read_diagram(&args.x)?;
    let y = read_diagram(&args.y)?;
    let MetricArgs { p, q } = args.metric;
    let graph = ReducedBipartiteGraph::new(x, y, p, q);
    let b_star = compute_b_star(&graph)?;
    let oracle = wasserstein_distance(graph.x(), graph.y(), p, q);

    let mut rows = Vec::new();
    for point in &args.b_list {
        let b = match point {
            SweepPoint::Value(v) => *v,
            SweepPoint::BStar => b_star,
            SweepPoint::BStarPlusEps => b_star * (1.0 + Penalty::DEFAULT_DELTA),
        };
        let start = Instant::now();
        let qubo = build_qubo(&graph, &Penalty::Explicit(b))?;
        let schedule = schedule_for(&qubo, &args.sampler)?;
        let set = simulated_anneal(&qubo, &schedule, args.sampler.reads, args.sampler.seed);
        let ground = ground_energy(&qubo)?;
        let stats = set_stats(&set, Some(&graph), ground)?;
        rows.push(RunReport {
            inputs: Inputs {
                x_path: args.x.display().to_string(),
                y_path: args.y.display().to_string(),
                n: graph.n(),
                m: graph.m(),
                p,
                q: q.to_string(),
            },
            num_vars: qubo.num_vars(),
            b_star: Some(b_star),
            b: Some(b),
            outside_guarantee: Some(b <= b_star),
            oracle: OracleReport {
                power_cost: oracle.power_cost,
                distance: oracle.distance,
            },
            solver: Some(SolverReport {
                method: "simulated annealing".into(),
                reads: args.sampler.reads,
                seed: args.sampler.seed,
                min_energy: set.min_energy().unwrap_or(f64::NAN),
                ground_energy: ground,
                fraction_matching: stats.fraction_matching,
                fraction_maximal: stats.fraction_maximal,
                fraction_ground: stats.fraction_ground,
            }),
            timing_seconds: start.elapsed().as_secs_f64(),
        });
    }

    if args.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        println!(
            "sweep over {} values of B (B* = {b_star}), {} reads each, seed {}",
            rows.len(),
            args.sampler.reads,
            args.sampler.seed
        );
        print!("{}", render_sweep_table(&rows));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let qubo = load_qubo(&args.qubo)?;
    let samples_text = fs::read_to_string(&args.samples)
        .with_context(|| format!("reading {}", args.samples.display()))?;
    let doc = SampleSetJson::parse(&samples_text)
        .with_context(|| format!("parsing {}", args.samples.display()))?;

    let mut checks = Checks { failures: 0 };

    let total: u64 = doc.samples.iter().map(|s| s.occurrences).sum();
    checks.check(
        "occurrences sum to total_reads",
        total == doc.total_reads,
        format!("{total} != {}", doc.total_reads),
    );

    let mut assignments = Vec::with_capacity(doc.samples.len());
    let mut lengths_ok = true;
    let mut energies_ok = true;
    let mut worst_gap = 0.0f64;
    for s in &doc.samples {
        let bits = BitAssignment::from_bit_string(&s.bits)?;
        if bits.len() != qubo.num_vars() {
            lengths_ok = false;
        } else {
            let e = qubo.energy(&bits)?;
            let gap = (e - s.energy).abs();
            if gap > 1e-9 * e.abs().max(s.energy.abs()).max(1.0) {
                energies_ok = false;
            }
            worst_gap = worst_gap.max(gap);
        }
        assignments.push(bits);
    }
    checks.check(
        "assignment lengths match the qubo",
        lengths_ok,
        format!("expected {} bits", qubo.num_vars()),
    );
    checks.check(
        "stored energies recompute from the qubo",
        energies_ok,
        format!("worst gap {worst_gap:e}"),
    );

    let sorted = doc.samples.windows(2).all(|w| {
        w[0].energy < w[1].energy || (w[0].energy == w[1].energy && w[0].bits <= w[1].bits)
    });
    checks.check(
        "samples sorted by energy, ties by bits",
        sorted,
        "order violated".into(),
    );

    match args.diagrams.as_slice() {
        [] => {}
        [x_path, y_path] => {
            let x = read_diagram(x_path)?;
            let y = read_diagram(y_path)?;
            let MetricArgs { p, q } = args.metric;
            let graph = ReducedBipartiteGraph::new(x, y, p, q);
            checks.check(
                "graph edge count matches the qubo variables",
                graph.num_edges() == qubo.num_vars(),
                format!(
                    "{} edges vs {} variables",
                    graph.num_edges(),
                    qubo.num_vars()
                ),
            );

            let mut flags_ok = true;
            for (s, bits) in doc.samples.iter().zip(&assignments) {
                let subset = graph.decode(bits)?;
                let matching = graph.is_matching(&subset);
                let maximal = matching && graph.is_maximal_matching(&subset);
                if s.is_matching != Some(matching) || s.is_maximal != Some(maximal) {
                    flags_ok = false;
                }
            }
            checks.check(
                "classification flags recompute from the diagrams",
                flags_ok,
                "stored is_matching/is_maximal disagree".into(),
            );

            if let Some(stored) = qubo.b_star() {
                let recomputed = compute_b_star(&graph)?;
                checks.check(
                    "B* matches the largest edge weight",
                    (stored - recomputed).abs() <= 1e-12 * recomputed.abs().max(1.0),
                    format!("{stored} vs {recomputed}"),
                );
            }
            if let Some(b) = qubo.b() {
                let rebuilt = build_qubo(&graph, &Penalty::Explicit(b))?;
                let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
                let coefficients_ok = rebuilt.num_vars() == qubo.num_vars()
                    && close(rebuilt.offset(), qubo.offset())
                    && rebuilt
                        .linear()
                        .iter()
                        .zip(qubo.linear())
                        .all(|(&a, &b)| close(a, b))
                    && rebuilt.quadratic().len() == qubo.quadratic().len()
                    && rebuilt
                        .quadratic()
                        .iter()
                        .zip(qubo.quadratic())
                        .all(|((ka, &va), (kb, &vb))| ka == kb && close(va, vb));
                checks.check(
                    "qubo coefficients rebuild from the diagrams and B",
                    coefficients_ok,
                    "coefficient mismatch".into(),
                );
            }
        }
        _ => usage_error("verify takes either no diagram files or exactly two"),
    }

    if checks.failures == 0 {
        println!("verification passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification failed: {} check(s)", checks.failures);
        Ok(ExitCode::FAILURE)
    }
}
