//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//!     cargo test --release --test acceptance

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use pdiffusion::asymptotics::{characteristic_roots, growth_ratio};
use pdiffusion::cli::main_with_args;
use pdiffusion::counting::{
    alternating_count, conjecture_recurrence_check, contract_agreeing, count_t_direct_with, count_t_recurrence,
    count_t_summation_with, per_orientation_counts, sever_at_flats, AgreeingLimit,
};
use pdiffusion::oracle::{enumerate_p2_configurations, enumerate_p2_on_bridge_graph};
use pdiffusion::rules::count_p2_orientations_recurrence;
use pdiffusion::{
    check_p2_orientation, count_configs_on_orientation, detect_period, enumerate_p2_orientations, induced_orientation,
    parse_graph, witness_configuration, Configuration, Limits, MultiplierVector, PathGraph, PathOrientation,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pdiffusion-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

fn five_vertex_trace() -> Outcome {
    let expected: [[i64; 5]; 7] = [
        [0, 2, 0, 4, 1],
        [1, 0, 2, 2, 2],
        [0, 2, 1, 2, 2],
        [1, 0, 3, 1, 2],
        [0, 2, 1, 3, 1],
        [1, 0, 3, 1, 2],
        [0, 2, 1, 3, 1],
    ];
    let trace_path = scratch("trace.jsonl");
    let code = main_with_args([
        "pdiffusion",
        "simulate",
        "--graph",
        "path:5",
        "--config",
        "0,2,0,4,1",
        "--steps",
        "6",
        "--out",
        trace_path.to_str().unwrap(),
    ]);
    check(code == 0, || format!("simulate exited {code}"))?;
    let text = std::fs::read_to_string(&trace_path).map_err(e)?;
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(serde_json::from_str)
        .collect::<Result<_, _>>()
        .map_err(e)?;
    check(lines.len() == 7, || format!("{} trace lines", lines.len()))?;
    for (t, (line, want)) in lines.iter().zip(expected.iter()).enumerate() {
        let got: Vec<i64> = serde_json::from_value(line["stacks"].clone()).map_err(e)?;
        check(line["step"] == t && got == want, || format!("step {t}: {line}"))?;
    }

    let period_path = scratch("period.json");
    let code = main_with_args([
        "pdiffusion",
        "period",
        "--graph",
        "path:5",
        "--config",
        "0,2,0,4,1",
        "--out",
        period_path.to_str().unwrap(),
    ]);
    check(code == 0, || format!("period exited {code}"))?;
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&period_path).map_err(e)?).map_err(e)?;
    check(report["preperiod"] == 3 && report["period"] == 2, || {
        format!("period report {report}")
    })?;

    let graph = PathGraph::new(5).map_err(e)?.to_graph();
    let start = Instant::now();
    let direct = detect_period(&graph, &Configuration::new(expected[0].to_vec()), 100).map_err(e)?;
    let micros = start.elapsed().as_micros();
    check(direct.preperiod == 3 && direct.period == 2, || format!("{direct:?}"))?;
    Ok(format!(
        "7 configurations exact, preperiod 3, period 2 ({micros} us in-process)"
    ))
}

fn orientation_sequence() -> Outcome {
    let prefix: [u128; 11] = [0, 2, 2, 4, 8, 14, 28, 52, 100, 190, 362];
    for n in 1..=18 {
        let listed = enumerate_p2_orientations(n).map_err(e)?.len() as u128;
        let r = count_p2_orientations_recurrence(n).map_err(e)?;
        check(listed == r, || format!("n = {n}: enumerated {listed}, recurrence {r}"))?;
        if n <= prefix.len() {
            check(listed == prefix[n - 1], || {
                format!("n = {n}: {listed} vs listed prefix {}", prefix[n - 1])
            })?;
        }
    }
    Ok(format!(
        "enumeration = recurrence for n = 1..18, R_18 = {}",
        count_p2_orientations_recurrence(18).map_err(e)?
    ))
}

fn oracle_equivalence() -> Outcome {
    let initial = [(2, 2u64), (3, 8), (4, 26)];
    let started = Instant::now();
    let mut last = 0;
    for n in 2..=10 {
        let oracle = enumerate_p2_configurations(n, 3).map_err(e)?;
        let t = count_t_recurrence(n).map_err(e)?;
        check(oracle.count as u128 == t, || {
            format!("n = {n}: oracle {}, recurrence {t}", oracle.count)
        })?;
        if let Some(&(_, want)) = initial.iter().find(|(m, _)| *m == n) {
            check(oracle.count == want, || {
                format!("n = {n}: oracle {} vs {want}", oracle.count)
            })?;
        }
        last = oracle.count;
    }
    Ok(format!(
        "oracle = recurrence for n = 2..10, T_10 = {last} ({:.1} s)",
        started.elapsed().as_secs_f64()
    ))
}

fn route_agreement() -> Outcome {
    let limits = Limits::default();
    for n in 2..=16 {
        let rec = count_t_recurrence(n).map_err(e)?;
        let sum = count_t_summation_with(n, AgreeingLimit::Full, &limits).map_err(e)?;
        let direct = count_t_direct_with(n, &limits).map_err(e)?;
        check(rec == sum && sum == direct, || {
            format!("n = {n}: {rec} / {sum} / {direct}")
        })?;
    }
    let truncated = count_t_summation_with(5, AgreeingLimit::Truncated, &limits).map_err(e)?;
    check(truncated == 88, || format!("truncated limit at n = 5 gave {truncated}"))?;
    check(truncated != count_t_recurrence(5).map_err(e)?, || {
        "truncated limit agrees at n = 5".into()
    })?;
    Ok("recurrence = summation = direct for n = 2..16; truncated limit gives 88 != 96 at n = 5".into())
}

fn ten_vertex_multipliers() -> Outcome {
    let o: PathOrientation = "LRLRRLFRL".parse().map_err(e)?;
    let m = MultiplierVector::of(&o).map_err(e)?;
    check(m.values() == [1, 2, 3, 3, 1, 1, 2, 1, 2, 2], || {
        format!("vector {:?}", m.values())
    })?;
    check(m.product() == 144, || format!("product {}", m.product()))?;
    Ok(format!("{o}: {:?}, product 144", m.values()))
}

fn alternating_counts() -> Outcome {
    let limits = Limits::default();
    for n in 3..=14 {
        let a = alternating_count(n).map_err(e)?;
        check(a == 8 * 3u128.pow(n as u32 - 3), || format!("A_{n} = {a}"))?;
        let enumerated: u128 = per_orientation_counts(n, &limits)
            .map_err(e)?
            .iter()
            .filter(|c| c.orientation.is_alternating())
            .map(|c| c.configurations)
            .sum();
        check(enumerated == a, || {
            format!("n = {n}: formula {a}, enumerated {enumerated}")
        })?;
        let next = alternating_count(n + 1).map_err(e)?;
        check(next == 3 * a, || format!("A_{} = {next} vs 3 A_{n} = {}", n + 1, 3 * a))?;
    }
    Ok("A_n = 8 3^(n-3) = enumeration for n = 3..14, A_(n+1) = 3 A_n".into())
}

fn structural() -> Outcome {
    let limits = Limits::default();
    let (mut severed, mut contracted) = (0usize, 0usize);
    for n in 2..=12 {
        for c in per_orientation_counts(n, &limits).map_err(e)? {
            let o = &c.orientation;
            if o.has_flat() {
                let mut product = 1u128;
                for part in sever_at_flats(o).map_err(e)? {
                    check(check_p2_orientation(&part).legal, || {
                        format!("{o}: part {part} illegal")
                    })?;
                    product *= count_configs_on_orientation(&part).map_err(e)?;
                }
                check(product == c.configurations, || {
                    format!("{o}: {} vs parts {product}", c.configurations)
                })?;
                severed += 1;
            }
            let s = o.senses();
            for i in 2..=s.len() {
                if s[i - 2].agrees(s[i - 1]) {
                    let smaller = contract_agreeing(o, i).map_err(e)?;
                    let after = count_configs_on_orientation(&smaller).map_err(e)?;
                    check(after == c.configurations, || {
                        format!("{o} at {i}: {} -> {after}", c.configurations)
                    })?;
                    contracted += 1;
                }
            }
        }
    }
    Ok(format!(
        "n <= 12: {severed} severings multiplicative, {contracted} contractions count-preserving"
    ))
}

fn witness_soundness() -> Outcome {
    let mut total = 0usize;
    for n in 2..=14 {
        let path = PathGraph::new(n).map_err(e)?;
        let graph = path.to_graph();
        for o in enumerate_p2_orientations(n).map_err(e)? {
            let w = witness_configuration(&o).map_err(e)?;
            let report = detect_period(&graph, &w, 16).map_err(e)?;
            check(report.preperiod == 0 && report.period == 2, || {
                format!("{o}: witness {w} gives {report:?}")
            })?;
            let induced = induced_orientation(&path, &w).map_err(e)?;
            check(induced == o, || format!("{o}: witness {w} induces {induced}"))?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} witnesses, all preperiod 0 period 2 with the requested orientation"
    ))
}

fn asymptotics() -> Outcome {
    let started = Instant::now();
    let model = characteristic_roots().map_err(e)?;
    let ratio = growth_ratio(30).map_err(e)?;
    let elapsed = started.elapsed();
    check((model.dominant_root - 3.6096).abs() <= 1e-4, || {
        format!("dominant {}", model.dominant_root)
    })?;
    check((model.second_real_root - 0.4290).abs() <= 1e-4, || {
        format!("second {}", model.second_real_root)
    })?;
    check((model.dominant_coefficient - 0.1564).abs() <= 1e-3, || {
        format!("c1 {}", model.dominant_coefficient)
    })?;
    check((ratio - model.dominant_root).abs() <= 1e-3, || {
        format!("T_31/T_30 = {ratio}")
    })?;
    check(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "root {:.6}, second {:.6}, c1 {:.5}, T_31/T_30 {:.6}",
        model.dominant_root, model.second_real_root, model.dominant_coefficient, ratio
    ))
}

fn bridge_residuals(g0_text: &str, k_max: usize) -> Result<Vec<i128>, String> {
    let g0 = parse_graph(g0_text).map_err(e)?;
    let counts = (0..=k_max)
        .map(|k| enumerate_p2_on_bridge_graph(&g0, 1, k, 3).map(|b| b.count as i128))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    conjecture_recurrence_check(&counts).map_err(e)
}

fn conjecture_exploration() -> Outcome {
    let single = bridge_residuals("vertices 1\n", 8)?;
    check(single.iter().all(|&r| r == 0), || {
        format!("single-vertex residuals {single:?}")
    })?;
    let triangle = bridge_residuals("1 2\n2 3\n3 1\n", 8)?;
    check(triangle.len() == 5, || format!("{} triangle residuals", triangle.len()))?;

    let g0_path = scratch("triangle.txt");
    std::fs::write(&g0_path, "1 2\n2 3\n3 1\n").map_err(e)?;
    let csv_path = scratch("triangle.csv");
    let code = main_with_args([
        "pdiffusion",
        "conjecture",
        "--g0",
        g0_path.to_str().unwrap(),
        "--k-min",
        "4",
        "--k-max",
        "8",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    check(code == 0, || format!("conjecture exited {code}"))?;
    let csv = std::fs::read_to_string(&csv_path).map_err(e)?;
    check(csv.lines().skip(1).all(|l| l.ends_with(",true")), || {
        "rows not flagged exploratory".into()
    })?;
    Ok(format!(
        "single vertex residuals {single:?}; triangle k = 4..8 residuals {triangle:?} (exploratory)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("five-vertex trace and period", five_vertex_trace),
        ("orientation count sequence", orientation_sequence),
        ("oracle equals recurrence", oracle_equivalence),
        ("counting routes agree", route_agreement),
        ("ten-vertex multiplier vector", ten_vertex_multipliers),
        ("alternating counts", alternating_counts),
        ("severing and contraction", structural),
        ("witness soundness", witness_soundness),
        ("asymptotic constants", asymptotics),
        ("bridge-graph residuals", conjecture_exploration),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{}/{} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
