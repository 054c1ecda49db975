//! Property suites behind `pdiffusion verify`.
//!
//! Each property reports pass or fail with a counterexample. Suites group the
//! properties by the part of the library they exercise.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::asymptotics::{characteristic_roots, growth_ratio};
use crate::config::Configuration;
use crate::counting::{
    alternating_count, contract_agreeing, count_t_direct_with, count_t_recurrence, count_t_summation_with,
    per_orientation_counts, sever_at_flats, AgreeingLimit, StageTable,
};
use crate::diffusion::{detect_period, fire_step, induced_orientation, is_p2_configuration};
use crate::error::Error;
use crate::graph::{parse_graph, PathGraph, SimpleGraph};
use crate::limits::Limits;
use crate::multiplier::count_configs_on_orientation;
use crate::oracle::{
    bound_stability_check_with, counts_by_orientation, enumerate_p2_configurations_with, orientations_realized,
};
use crate::orientation::{EdgeSense, PathOrientation};
use crate::rules::{
    check_p2_orientation, count_p2_orientations_recurrence, enumerate_p2_orientations_with, witness_configuration,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Graph,
    Engine,
    Orientation,
    Counting,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Graph,
        Suite::Engine,
        Suite::Orientation,
        Suite::Counting,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Graph => "graph",
            Suite::Engine => "engine",
            Suite::Orientation => "orientation",
            Suite::Counting => "counting",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Size parameters for the suites.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_n_orientation: usize,
    pub max_n_routes: usize,
    pub max_n_structural: usize,
    pub max_n_witness: usize,
    pub max_n_alternating: usize,
    pub max_n_oracle: usize,
    pub max_n_bound_stability: usize,
    pub random_trials: usize,
    pub seed: u64,
    #[serde(skip)]
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n_orientation: 18,
            max_n_routes: 16,
            max_n_structural: 12,
            max_n_witness: 14,
            max_n_alternating: 14,
            max_n_oracle: 10,
            max_n_bound_stability: 7,
            random_trials: 400,
            seed: 0x5eed_d1ff,
            limits: Limits::default(),
        }
    }
}

pub type CheckFn = Box<dyn Fn(&VerifyConfig) -> Result<(), String> + Send + Sync>;

pub struct PropertyCheck {
    pub suite: Suite,
    pub property: &'static str,
    pub run: CheckFn,
}

impl PropertyCheck {
    pub fn new(
        suite: Suite,
        property: &'static str,
        run: impl Fn(&VerifyConfig) -> Result<(), String> + Send + Sync + 'static,
    ) -> Self {
        PropertyCheck {
            suite,
            property,
            run: Box::new(run),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub suite: Suite,
    pub property: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub outcomes: Vec<PropertyOutcome>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

pub fn run_checks(checks: &[PropertyCheck], suites: &[Suite], config: &VerifyConfig) -> VerificationReport {
    let outcomes: Vec<PropertyOutcome> = checks
        .iter()
        .filter(|c| suites.is_empty() || suites.contains(&c.suite))
        .map(|c| {
            let result = (c.run)(config);
            PropertyOutcome {
                suite: c.suite,
                property: c.property.to_string(),
                passed: result.is_ok(),
                counterexample: result.err(),
            }
        })
        .collect();
    let all_passed = outcomes.iter().all(|o| o.passed);
    VerificationReport { outcomes, all_passed }
}

pub fn verify(suites: &[Suite], config: &VerifyConfig) -> VerificationReport {
    run_checks(&standard_checks(), suites, config)
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

fn random_config(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> Configuration {
    Configuration::new((0..n).map(|_| rng.random_range(lo..=hi)).collect())
}

/// Random simple graph on `n` vertices; connected when `connected` is set
/// (random spanning tree plus extra edges).
fn random_graph(rng: &mut StdRng, n: usize, connected: bool) -> SimpleGraph {
    let mut edges = BTreeSet::new();
    if connected {
        for v in 2..=n {
            let u = rng.random_range(1..v);
            edges.insert((u, v));
        }
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(0.2) {
                edges.insert((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges).expect("generated graph is simple")
}

pub fn standard_checks() -> Vec<PropertyCheck> {
    vec![
        // graph model
        PropertyCheck::new(Suite::Graph, "canonicalize is idempotent", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=10);
                let c = random_config(&mut rng, n, -50, 50);
                let once = c.canonicalize().map_err(err_str)?;
                let twice = once.canonicalize().map_err(err_str)?;
                ensure(once == twice && once.stacks()[0] == 0, || format!("config {c}"))?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Graph, "shift composes additively", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 1);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=10);
                let c = random_config(&mut rng, n, -50, 50);
                let (a, b) = (rng.random_range(-20..=20), rng.random_range(-20..=20));
                let lhs = c.shift(a).and_then(|x| x.shift(b)).map_err(err_str)?;
                let rhs = c.shift(a + b).map_err(err_str)?;
                ensure(lhs == rhs, || format!("config {c}, a = {a}, b = {b}"))?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Graph, "render round-trips through the parser", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 2);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=10);
                let connected = rng.random_bool(0.5);
                let g = random_graph(&mut rng, n, connected);
                let back = parse_graph(&g.render()).map_err(err_str)?;
                ensure(back == g, || format!("graph {:?}", g.render()))?;
            }
            Ok(())
        }),
        // diffusion engine
        PropertyCheck::new(Suite::Engine, "chips are conserved by a step", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 3);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=10);
                let g = random_graph(&mut rng, n, false);
                let c = random_config(&mut rng, n, -5, 5);
                let next = fire_step(&g, &c).map_err(err_str)?;
                ensure(next.total_chips() == c.total_chips(), || {
                    format!("{} with {c}", g.render())
                })?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Engine, "a step commutes with shifting", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 4);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=10);
                let g = random_graph(&mut rng, n, false);
                let c = random_config(&mut rng, n, -5, 5);
                let k = rng.random_range(-10..=10);
                let lhs = fire_step(&g, &c.shift(k).map_err(err_str)?).map_err(err_str)?;
                let rhs = fire_step(&g, &c).and_then(|x| x.shift(k)).map_err(err_str)?;
                ensure(lhs == rhs, || format!("{} with {c}, k = {k}", g.render()))?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Engine, "directed edges reverse inside a period-2 orbit", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 5);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(2..=10);
                let path = PathGraph::new(n).map_err(err_str)?;
                let g = path.to_graph();
                let c = random_config(&mut rng, n, -5, 5);
                let report = detect_period(&g, &c, 10_000).map_err(err_str)?;
                if report.period != 2 {
                    continue;
                }
                let before = induced_orientation(&path, &report.orbit[0]).map_err(err_str)?;
                let after = induced_orientation(&path, &report.orbit[1]).map_err(err_str)?;
                ensure(after == before.flipped(), || {
                    format!("orbit from {c}: {before} then {after}")
                })?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Engine, "every sequence reaches period 1 or 2", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 6);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=10);
                let g = if rng.random_bool(0.5) {
                    SimpleGraph::path(n).map_err(err_str)?
                } else {
                    random_graph(&mut rng, n, false)
                };
                let c = random_config(&mut rng, n, -5, 5);
                let report = detect_period(&g, &c, 10_000).map_err(|e| format!("{} with {c}: {e}", g.render()))?;
                ensure(report.period == 1 || report.period == 2, || {
                    format!("{} with {c}", g.render())
                })?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Engine, "fixed points on connected graphs are constant", |cfg| {
            let mut rng = StdRng::seed_from_u64(cfg.seed ^ 7);
            for _ in 0..cfg.random_trials {
                let n = rng.random_range(1..=8);
                let g = random_graph(&mut rng, n, true);
                let c = random_config(&mut rng, n, -2, 2);
                let fixed = fire_step(&g, &c).map_err(err_str)? == c;
                ensure(fixed == c.is_constant(), || format!("{} with {c}", g.render()))?;
                let report = detect_period(&g, &c, 10_000).map_err(err_str)?;
                if report.period == 1 {
                    ensure(report.orbit[0].is_constant(), || format!("{} from {c}", g.render()))?;
                }
            }
            Ok(())
        }),
        // orientation rules
        PropertyCheck::new(
            Suite::Orientation,
            "rules match orientations realised by the oracle",
            |cfg| {
                for n in 2..=cfg.max_n_oracle {
                    let oracle = enumerate_p2_configurations_with(n, 3, &cfg.limits).map_err(err_str)?;
                    let realised = orientations_realized(&oracle);
                    let classified: BTreeSet<PathOrientation> = enumerate_p2_orientations_with(n, &cfg.limits)
                        .map_err(err_str)?
                        .into_iter()
                        .collect();
                    ensure(realised == classified, || {
                        let extra: Vec<String> = realised.difference(&classified).map(|o| o.to_string()).collect();
                        let missing: Vec<String> = classified.difference(&realised).map(|o| o.to_string()).collect();
                        format!("n = {n}: realised only {extra:?}, classified only {missing:?}")
                    })?;
                }
                Ok(())
            },
        ),
        PropertyCheck::new(
            Suite::Orientation,
            "enumeration length equals the R recurrence",
            |cfg| {
                for n in 1..=cfg.max_n_orientation {
                    let listed = enumerate_p2_orientations_with(n, &cfg.limits).map_err(err_str)?.len() as u128;
                    let r = count_p2_orientations_recurrence(n).map_err(err_str)?;
                    ensure(listed == r, || format!("n = {n}: enumerated {listed}, recurrence {r}"))?;
                }
                Ok(())
            },
        ),
        PropertyCheck::new(
            Suite::Orientation,
            "witness configurations are exactly 2-periodic",
            |cfg| {
                for n in 2..=cfg.max_n_witness {
                    let path = PathGraph::new(n).map_err(err_str)?;
                    let g = path.to_graph();
                    for o in enumerate_p2_orientations_with(n, &cfg.limits).map_err(err_str)? {
                        let w = witness_configuration(&o).map_err(err_str)?;
                        ensure(is_p2_configuration(&g, &w).map_err(err_str)?, || {
                            format!("{o}: witness {w}")
                        })?;
                        ensure(induced_orientation(&path, &w).map_err(err_str)? == o, || {
                            format!("{o}: witness {w}")
                        })?;
                    }
                }
                Ok(())
            },
        ),
        PropertyCheck::new(Suite::Orientation, "legality is mirror symmetric", |cfg| {
            for n in 1..=cfg.max_n_structural {
                for o in all_orientations(n) {
                    let a = check_p2_orientation(&o).legal;
                    let b = check_p2_orientation(&o.mirrored()).legal;
                    ensure(a == b, || format!("{o}"))?;
                }
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Orientation, "legality is flip symmetric", |cfg| {
            for n in 1..=cfg.max_n_structural {
                for o in all_orientations(n) {
                    let a = check_p2_orientation(&o).legal;
                    let b = check_p2_orientation(&o.flipped()).legal;
                    ensure(a == b, || format!("{o}"))?;
                }
            }
            Ok(())
        }),
        // counting
        PropertyCheck::new(
            Suite::Counting,
            "recurrence, summation and direct routes agree",
            |cfg| {
                for n in 2..=cfg.max_n_routes {
                    let rec = count_t_recurrence(n).map_err(err_str)?;
                    let sum = count_t_summation_with(n, AgreeingLimit::Full, &cfg.limits).map_err(err_str)?;
                    let direct = count_t_direct_with(n, &cfg.limits).map_err(err_str)?;
                    ensure(rec == sum && sum == direct, || {
                        format!("n = {n}: recurrence {rec}, summation {sum}, direct {direct}")
                    })?;
                }
                Ok(())
            },
        ),
        PropertyCheck::new(
            Suite::Counting,
            "truncated agreeing-sum limit undercounts at n = 5",
            |cfg| {
                let truncated = count_t_summation_with(5, AgreeingLimit::Truncated, &cfg.limits).map_err(err_str)?;
                let truth = count_t_recurrence(5).map_err(err_str)?;
                ensure(truncated == 88 && truth == 96, || {
                    format!("truncated {truncated}, recurrence {truth}")
                })
            },
        ),
        PropertyCheck::new(Suite::Counting, "severing at flats is multiplicative", |cfg| {
            for n in 2..=cfg.max_n_structural {
                for c in per_orientation_counts(n, &cfg.limits).map_err(err_str)? {
                    if !c.orientation.has_flat() {
                        continue;
                    }
                    let parts = sever_at_flats(&c.orientation).map_err(err_str)?;
                    let mut product = 1u128;
                    for p in &parts {
                        ensure(check_p2_orientation(p).legal, || {
                            format!("{}: part {p} illegal", c.orientation)
                        })?;
                        product *= count_configs_on_orientation(p).map_err(err_str)?;
                    }
                    ensure(product == c.configurations, || {
                        format!("{}: whole {}, parts {product}", c.orientation, c.configurations)
                    })?;
                }
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Counting, "contracting an agreeing pair keeps the count", |cfg| {
            for n in 2..=cfg.max_n_structural {
                for c in per_orientation_counts(n, &cfg.limits).map_err(err_str)? {
                    let s = c.orientation.senses();
                    for i in 2..=s.len() {
                        if !s[i - 2].agrees(s[i - 1]) {
                            continue;
                        }
                        let contracted = contract_agreeing(&c.orientation, i).map_err(err_str)?;
                        ensure(check_p2_orientation(&contracted).legal, || {
                            format!("{} at {i}: {contracted} illegal", c.orientation)
                        })?;
                        let after = count_configs_on_orientation(&contracted).map_err(err_str)?;
                        ensure(after == c.configurations, || {
                            format!("{} at {i}: {} before, {after} after", c.orientation, c.configurations)
                        })?;
                    }
                }
            }
            Ok(())
        }),
        PropertyCheck::new(
            Suite::Counting,
            "alternating counts triple and match the multipliers",
            |cfg| {
                for n in 2..=cfg.max_n_alternating {
                    let a = alternating_count(n).map_err(err_str)?;
                    if n >= 3 {
                        let next = alternating_count(n + 1).map_err(err_str)?;
                        ensure(next == 3 * a, || format!("A_{} = {next}, A_{n} = {a}", n + 1))?;
                    }
                    let direct: u128 = [EdgeSense::Right, EdgeSense::Left]
                        .into_iter()
                        .map(|first| count_configs_on_orientation(&PathOrientation::alternating(n, first)))
                        .sum::<Result<u128, Error>>()
                        .map_err(err_str)?;
                    ensure(direct == a, || format!("n = {n}: formula {a}, multipliers {direct}"))?;
                }
                Ok(())
            },
        ),
        PropertyCheck::new(Suite::Counting, "stages are monotone and reach T_n", |cfg| {
            for n in 2..=cfg.max_n_structural {
                let table = StageTable::new(n, &cfg.limits).map_err(err_str)?;
                let t = count_t_recurrence(n).map_err(err_str)?;
                for k in 0..n + 1 {
                    ensure(table.stage(k) <= table.stage(k + 1), || format!("n = {n}, k = {k}"))?;
                }
                ensure(table.stage(n - 1) == t, || {
                    format!("n = {n}: stage {} vs T {t}", table.stage(n - 1))
                })?;
                if n >= 3 {
                    let a = alternating_count(n).map_err(err_str)?;
                    ensure(table.stage(n - 2) == t - a && table.stage(n - 3) == t - a, || {
                        format!("n = {n}")
                    })?;
                }
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Counting, "growth ratio approaches the dominant root", |_| {
            let model = characteristic_roots().map_err(err_str)?;
            let ratio = growth_ratio(30).map_err(err_str)?;
            ensure((ratio - model.dominant_root).abs() < 1e-3, || {
                format!("T_31/T_30 = {ratio}, root {}", model.dominant_root)
            })
        }),
        // oracle
        PropertyCheck::new(Suite::Oracle, "oracle counts equal the T recurrence", |cfg| {
            for n in 2..=cfg.max_n_oracle {
                let oracle = enumerate_p2_configurations_with(n, 3, &cfg.limits).map_err(err_str)?;
                let t = count_t_recurrence(n).map_err(err_str)?;
                ensure(oracle.count as u128 == t, || {
                    format!("n = {n}: oracle {}, T {t}", oracle.count)
                })?;
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Oracle, "oracle reproduces every multiplier product", |cfg| {
            for n in 2..=cfg.max_n_oracle {
                let oracle = enumerate_p2_configurations_with(n, 3, &cfg.limits).map_err(err_str)?;
                let grouped = counts_by_orientation(&oracle);
                for c in per_orientation_counts(n, &cfg.limits).map_err(err_str)? {
                    let seen = grouped.get(&c.orientation).copied().unwrap_or(0) as u128;
                    ensure(seen == c.configurations, || {
                        format!("{}: oracle {seen}, multipliers {}", c.orientation, c.configurations)
                    })?;
                }
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Oracle, "orbit partners are oracle members", |cfg| {
            for n in 2..=cfg.max_n_oracle.min(8) {
                let g = SimpleGraph::path(n).map_err(err_str)?;
                let oracle = enumerate_p2_configurations_with(n, 3, &cfg.limits).map_err(err_str)?;
                let members: BTreeSet<&Configuration> = oracle.configurations.iter().collect();
                for c in &oracle.configurations {
                    let partner = fire_step(&g, c).and_then(|x| x.canonicalize()).map_err(err_str)?;
                    ensure(members.contains(&partner), || format!("{c} -> {partner}"))?;
                }
            }
            Ok(())
        }),
        PropertyCheck::new(Suite::Oracle, "difference bound 3 is as good as 4", |cfg| {
            for n in 2..=cfg.max_n_bound_stability {
                ensure(bound_stability_check_with(n, &cfg.limits).map_err(err_str)?, || {
                    format!("n = {n}")
                })?;
            }
            Ok(())
        }),
    ]
}

fn all_orientations(n: usize) -> Vec<PathOrientation> {
    let m = n.saturating_sub(1);
    (0..3usize.pow(m as u32))
        .map(|mut code| {
            PathOrientation::new(
                (0..m)
                    .map(|_| {
                        let s = EdgeSense::ALL[code % 3];
                        code /= 3;
                        s
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_n_orientation: 10,
            max_n_routes: 8,
            max_n_structural: 7,
            max_n_witness: 8,
            max_n_alternating: 8,
            max_n_oracle: 6,
            max_n_bound_stability: 5,
            random_trials: 50,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn all_suites_pass_at_small_sizes() {
        let report = verify(&[], &small());
        let failed: Vec<_> = report.failures().collect();
        assert!(report.all_passed, "{failed:?}");
        assert_eq!(report.outcomes.len(), standard_checks().len());
    }

    #[test]
    fn suite_filter() {
        let report = verify(&[Suite::Orientation], &small());
        assert!(report.outcomes.iter().all(|o| o.suite == Suite::Orientation));
        assert_eq!(report.outcomes.len(), 5);
    }

    #[test]
    fn injected_fault_names_the_property() {
        let mut checks = standard_checks();
        checks.push(PropertyCheck::new(Suite::Counting, "injected fault", |_| {
            Err("T_5 = 95".into())
        }));
        let report = run_checks(&checks, &[Suite::Counting], &small());
        assert!(!report.all_passed);
        let failed: Vec<_> = report.failures().collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].property, "injected fault");
        assert_eq!(failed[0].counterexample.as_deref(), Some("T_5 = 95"));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
