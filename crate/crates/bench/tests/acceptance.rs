//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! The frb benchmark graphs are looked up in `$CCSUB_DATA_DIR`, then in
//! `<workspace>/data/`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ccsub_bench::config::{BoundPolicy, ExperimentConfig, ProblemSpec};
use ccsub_bench::report::write_reports;
use ccsub_bench::runner::load_objective;
use ccsub_bench::stats::kruskal_wallis;
use ccsub_bench::{run_experiment, run_on};
use ccsub_core::algorithms::{greedy_run, gsemo_run, max_safe_cardinality, AlgoConfig, AlgorithmKind};
use ccsub_core::fitness::Formulation;
use ccsub_core::oracle::{brute_force_optimum, empirical_violation_probability};
use ccsub_core::problems::{
    graph_to_coverage, load_dimacs, CascadeSettings, CoverageInstance, InfluenceGraph,
    InfluenceInstance,
};
use ccsub_core::rng::{stream_rng, Stream};
use ccsub_core::weights::surrogate_violation_probability;
use ccsub_core::{BoundKind, ProblemInstance, Subset, WeightModel};
use rand::Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn data_dirs() -> Vec<PathBuf> {
    let mut dirs = Vec::new();
    if let Some(d) = std::env::var_os("CCSUB_DATA_DIR") {
        dirs.push(PathBuf::from(d));
    }
    dirs.push(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    dirs
}

fn find_frb(name: &str) -> Result<PathBuf, String> {
    // frb30-15-01 is also distributed as frb30-15-1.
    let short = name.replace("-0", "-");
    let dirs = data_dirs();
    for dir in &dirs {
        for stem in [name, short.as_str()] {
            for ext in ["clq", "mis", "txt", "col", ""] {
                let file = if ext.is_empty() { stem.to_string() } else { format!("{stem}.{ext}") };
                let path = dir.join(file);
                if path.is_file() {
                    return Ok(path);
                }
            }
        }
    }
    Err(format!(
        "dataset {name} not found; place it in one of {}",
        dirs.iter().map(|d| d.display().to_string()).collect::<Vec<_>>().join(", ")
    ))
}

fn load_frb(name: &str) -> Result<CoverageInstance, String> {
    let path = find_frb(name)?;
    let g = load_dimacs(&path).map_err(|e| e.to_string())?;
    graph_to_coverage(g.nodes, &g.edges).map_err(|e| e.to_string())
}

fn random_graph_coverage(nodes: usize, edges: usize, seed: u64) -> CoverageInstance {
    let mut rng = stream_rng(seed, Stream::Generator);
    let list: Vec<(usize, usize)> = (0..edges)
        .map(|_| (rng.random_range(0..nodes), rng.random_range(0..nodes)))
        .filter(|(u, v)| u != v)
        .collect();
    graph_to_coverage(nodes, &list).unwrap()
}

fn random_coverage(n: usize, universe: usize, seed: u64) -> CoverageInstance {
    let mut rng = stream_rng(seed, Stream::Generator);
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let size = rng.random_range(1..=universe / 3);
            (0..size).map(|_| rng.random_range(0..universe)).collect()
        })
        .collect();
    CoverageInstance::new(universe, &sets).unwrap()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn greedy_on_frb() -> Outcome {
    let inst = load_frb("frb30-15-01")?;
    if inst.num_sets() != 450 {
        return Err(format!("frb30-15-01 has {} vertices, expected 450", inst.num_sets()));
    }
    let mut found = Vec::new();
    for (c, expected) in [(10.0, 371.0), (15.0, 431.0), (20.0, 446.0)] {
        let m = WeightModel::uniform(450, 1.0, 0.5, c, 0.1).unwrap();
        let mut p = ProblemInstance::new(&inst, m, BoundKind::Chebyshev).unwrap();
        let start = Instant::now();
        let value = greedy_run(&mut p).best_value.unwrap_or(-1.0);
        within(start.elapsed(), Duration::from_secs(5), &format!("greedy at C={c}"))?;
        if (value - expected).abs() > 1.0 {
            return Err(format!("C={c}: greedy {value}, expected {expected}±1"));
        }
        found.push(format!("C={c}: {value}"));
    }
    Ok(found.join(", "))
}

fn safe_cardinality() -> Outcome {
    let m = WeightModel::uniform(300, 1.0, 0.5, 20.0, 0.1).unwrap();
    let k = max_safe_cardinality(&m, BoundKind::Chebyshev).map_err(|e| e.to_string())?;
    if k != 16 {
        return Err(format!("k* = {k}, expected 16"));
    }
    let inst = random_graph_coverage(300, 900, 2);
    let mut p = ProblemInstance::new(&inst, m, BoundKind::Chebyshev).unwrap();
    let size = greedy_run(&mut p).best_subset.map_or(0, |x| x.count());
    if size != k {
        return Err(format!("greedy stopped at {size} elements, k* = {k}"));
    }
    Ok(format!("k* = {k}, greedy size {size}"))
}

fn bound_soundness() -> Outcome {
    let samples = 100_000u64;
    let start = Instant::now();
    let mut rng = stream_rng(2024, Stream::Generator);
    let mut worst = f64::NEG_INFINITY;
    let mut nontrivial = 0;
    for kind in [BoundKind::Chebyshev, BoundKind::Chernoff] {
        for case in 0..200u64 {
            let n = rng.random_range(1..=40);
            let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
            let min_a = a.iter().copied().fold(f64::INFINITY, f64::min);
            let delta = rng.random_range(0.01..=min_a);
            let mut x = Subset::random(n, &mut rng);
            if x.is_empty() {
                x.insert(0);
            }
            let e: f64 = x.iter().map(|i| a[i]).sum();
            let spread = delta * (x.count() as f64).sqrt();
            let c = e + rng.random_range(0.0..2.5) * spread + 1e-9;
            let m = WeightModel::new(a, delta, c, 0.1).map_err(|e| e.to_string())?;
            let bound = surrogate_violation_probability(&x, &m, kind);
            let p = empirical_violation_probability(&x, &m, samples, case);
            let se = (p * (1.0 - p) / samples as f64).sqrt();
            if p > bound + 3.0 * se {
                return Err(format!("{kind} case {case}: empirical {p} > bound {bound} + 3·{se}"));
            }
            if bound > 0.0 && bound < 1.0 {
                nontrivial += 1;
            }
            worst = worst.max(p - bound);
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "sweep")?;
    Ok(format!(
        "400/400 sound ({nontrivial} with a bound strictly inside (0,1)), max empirical-bound {worst:.4}, {:.1?}",
        start.elapsed()
    ))
}

fn oracle_optimality() -> Outcome {
    let start = Instant::now();
    let combos = [(0.5, 0.1), (1.0, 0.1), (0.5, 0.001), (1.0, 0.001)];
    let mut exact = 0;
    let total = 50;
    for i in 0..total as u64 {
        let (delta, alpha) = combos[i as usize % 4];
        let kind = BoundPolicy::Auto.for_alpha(alpha);
        let inst = random_coverage(12, 40, 1000 + i);
        let c = 4.0 + (i % 5) as f64;
        let m = WeightModel::uniform(12, 1.0, delta, c, alpha).unwrap();
        let opt = brute_force_optimum(&inst, &m, kind).map_err(|e| e.to_string())?.optimum;
        let mut p = ProblemInstance::new(&inst, m, kind).unwrap();
        let cfg = AlgoConfig {
            budget: 100_000,
            seed: i,
            ..AlgoConfig::default()
        };
        let value = gsemo_run(&mut p, &cfg, Formulation::G).best_value.unwrap_or(-1.0);
        if value < (1.0 - 1.0 / std::f64::consts::E) * opt {
            return Err(format!("instance {i}: {value} below (1-1/e)·{opt}"));
        }
        exact += (value == opt) as usize;
    }
    within(start.elapsed(), Duration::from_secs(300), "oracle comparison")?;
    if exact * 100 < 95 * total {
        return Err(format!("exact optimum in {exact}/{total} runs"));
    }
    Ok(format!("exact in {exact}/{total}, all ≥ (1-1/e)·OPT, {:.1?}", start.elapsed()))
}

fn frb_ordering() -> Outcome {
    let path = find_frb("frb30-15-01")?;
    let start = Instant::now();
    let mut cfg = ExperimentConfig::new(ProblemSpec::Coverage { graph: path });
    cfg.capacities = vec![20.0];
    cfg.alphas = vec![0.1];
    cfg.deltas = vec![1.0];
    cfg.budget = 500_000;
    cfg.runs = 10;
    let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(900), "experiment")?;
    let row = |a| out.rows.iter().find(|r| r.algorithm == a).unwrap();
    let ga = row(AlgorithmKind::Greedy).summary.ok_or("GA found nothing")?.mean;
    let gsemo = row(AlgorithmKind::Gsemo);
    let mean = gsemo.summary.ok_or("GSEMO found nothing")?.mean;
    if mean < ga {
        return Err(format!("mean GSEMO {mean} < GA {ga}"));
    }
    if !gsemo.stat.iter().any(|s| s == "1(+)") {
        return Err(format!("GSEMO marks {:?} lack 1(+)", gsemo.stat));
    }
    Ok(format!("GA {ga}, GSEMO mean {mean} [{}]", gsemo.stat.join(",")))
}

fn kruskal_wallis_check() -> Outcome {
    let r = kruskal_wallis(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).map_err(|e| e.to_string())?;
    if (r.h - 3.857143).abs() > 1e-6 {
        return Err(format!("H = {}", r.h));
    }
    Ok(format!("H = {:.6}, p = {:.4}", r.h, r.p_value))
}

fn influence() -> Outcome {
    let g = InfluenceGraph::new(400, &[]).unwrap();
    let inst = InfluenceInstance::new(g, CascadeSettings::default()).unwrap();
    let mut rng = stream_rng(7, Stream::Generator);
    for i in 0..20 {
        let x = Subset::random(400, &mut rng);
        let v = inst.influence_spread(&x, i);
        if v != x.count() as f64 {
            return Err(format!("edgeless spread {v} for |X| = {}", x.count()));
        }
    }
    for len in [1usize, 2, 10, 57] {
        let edges: Vec<_> = (1..len).map(|i| (i - 1, i, 1.0)).collect();
        for crn in [true, false] {
            let settings = CascadeSettings {
                common_random_numbers: crn,
                ..CascadeSettings::default()
            };
            let inst = InfluenceInstance::new(InfluenceGraph::new(len, &edges).unwrap(), settings).unwrap();
            let v = inst.influence_spread(&Subset::from_indices(len, [0]), 3);
            if v != len as f64 {
                return Err(format!("chain of {len}: spread {v}"));
            }
        }
    }

    // Same budget and repetitions as the frb ordering check.
    let start = Instant::now();
    let mut cfg = ExperimentConfig::new(ProblemSpec::InfluenceGenerated {
        nodes: 400,
        edges: 1594,
        p: 0.1,
    });
    cfg.budget = 500_000;
    cfg.runs = 10;
    cfg.algorithms = vec![AlgorithmKind::Greedy, AlgorithmKind::Gsemo];
    let objective = load_objective(&cfg).map_err(|e| e.to_string())?;
    let out = run_on(&cfg, objective.as_dyn()).map_err(|e| e.to_string())?;
    let mut wins = 0;
    let mut cells = 0;
    for pair in out.rows.chunks(2) {
        cells += 1;
        let ga = pair[0].summary.map_or(f64::NEG_INFINITY, |s| s.mean);
        let gsemo = pair[1].summary.map_or(f64::NEG_INFINITY, |s| s.mean);
        wins += (gsemo >= ga) as usize;
    }
    // At least 80% of the grid cells.
    if wins * 5 < cells * 4 {
        return Err(format!("mean GSEMO ≥ GA in {wins}/{cells} cells"));
    }
    Ok(format!(
        "exact trivial spreads; mean GSEMO ≥ GA in {wins}/{cells} cells, {:.1?}",
        start.elapsed()
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph = dir.path().join("g.txt");
    let mut rng = stream_rng(5, Stream::Generator);
    let mut text = String::new();
    for _ in 0..240 {
        let (u, v) = (rng.random_range(1..=60), rng.random_range(1..=60));
        if u != v {
            text += &format!("{u} {v}\n");
        }
    }
    std::fs::write(&graph, text).map_err(|e| e.to_string())?;

    let coverage = {
        let mut c = ExperimentConfig::new(ProblemSpec::Coverage { graph });
        c.capacities = vec![8.0, 12.0];
        c.budget = 3_000;
        c.runs = 4;
        c.seed = 11;
        c
    };
    let im = {
        let mut c = ExperimentConfig::new(ProblemSpec::InfluenceGenerated {
            nodes: 60,
            edges: 240,
            p: 0.2,
        });
        c.capacities = vec![10.0];
        c.budget = 1_000;
        c.runs = 3;
        c.simulations = 20;
        c.report_simulations = 500;
        c
    };
    for (name, cfg) in [("coverage", coverage), ("im", im)] {
        let mut files = Vec::new();
        for attempt in 0..2 {
            let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
            let target = dir.path().join(format!("{name}-{attempt}"));
            write_reports(&out.rows, &out.records, &target, true).map_err(|e| e.to_string())?;
            let csv = std::fs::read(target.join("results.csv")).map_err(|e| e.to_string())?;
            let jsonl = std::fs::read(target.join("runs.jsonl")).map_err(|e| e.to_string())?;
            files.push((csv, jsonl));
        }
        if files[0] != files[1] {
            return Err(format!("{name}: reports differ between reruns"));
        }
    }
    Ok("coverage and IM reports byte-identical across reruns".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("1 greedy on frb30-15-01 (371/431/446 ±1, <5 s)", greedy_on_frb),
        ("2 safe cardinality k* = 16 and greedy stop", safe_cardinality),
        ("3 bound soundness sweep (400 configs, 1e5 samples, <60 s)", bound_soundness),
        ("4 GSEMO vs brute force, n = 12 (≥95% exact, <5 min)", oracle_optimality),
        ("5 frb30-15-01 ordering, GSEMO 1(+) (<15 min)", frb_ordering),
        ("6 Kruskal-Wallis H = 3.857143", kruskal_wallis_check),
        ("7 influence sanity and GSEMO ≥ GA ordering on a generated graph", influence),
        ("8 byte-identical reports on rerun", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
