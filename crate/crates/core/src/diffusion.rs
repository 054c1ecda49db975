//! Simultaneous firing, configuration sequences and period detection.
//!
//! Every vertex sends one chip to each strictly poorer neighbour, all
//! comparisons made against the configuration before the step.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::{PathGraph, SimpleGraph};
use crate::orientation::{EdgeSense, PathOrientation};

/// One Parallel Diffusion step.
pub fn fire_step(graph: &SimpleGraph, config: &Configuration) -> Result<Configuration> {
    config.check_matches(graph)?;
    let stacks = config.stacks();
    let mut next = Vec::with_capacity(stacks.len());
    for (v, nbrs) in graph.adjacency().iter().enumerate() {
        let mine = stacks[v];
        let mut delta: i64 = 0;
        for &u in nbrs {
            match stacks[u].cmp(&mine) {
                std::cmp::Ordering::Less => delta -= 1,
                std::cmp::Ordering::Greater => delta += 1,
                std::cmp::Ordering::Equal => {}
            }
        }
        next.push(mine.checked_add(delta).ok_or(Error::StackOverflow)?);
    }
    Ok(Configuration::new(next))
}

/// Allocation-free step on a path given as a slice `v_1..v_n`.
///
/// The caller guarantees stacks stay far from the `i64` bounds.
#[inline]
pub fn fire_path_into(stacks: &[i64], out: &mut [i64]) {
    let n = stacks.len();
    debug_assert_eq!(n, out.len());
    for v in 0..n {
        let mine = stacks[v];
        let mut delta = 0;
        if v > 0 {
            delta += (stacks[v - 1] > mine) as i64 - ((stacks[v - 1] < mine) as i64);
        }
        if v + 1 < n {
            delta += (stacks[v + 1] > mine) as i64 - ((stacks[v + 1] < mine) as i64);
        }
        out[v] = mine + delta;
    }
}

/// Allocation-free step on an arbitrary graph given by 0-based adjacency.
#[inline]
pub(crate) fn fire_adjacency_into(adjacency: &[Vec<usize>], stacks: &[i64], out: &mut [i64]) {
    for (v, nbrs) in adjacency.iter().enumerate() {
        let mine = stacks[v];
        let mut delta = 0;
        for &u in nbrs {
            delta += (stacks[u] > mine) as i64 - ((stacks[u] < mine) as i64);
        }
        out[v] = mine + delta;
    }
}

/// `C_0, C_1, ...` with consecutive entries one step apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTrace {
    pub initial: Configuration,
    /// Starts with `initial`.
    pub steps: Vec<Configuration>,
}

#[derive(Serialize)]
struct TraceLine<'a> {
    step: usize,
    stacks: &'a [i64],
}

impl SequenceTrace {
    /// One JSON object `{"step":t,"stacks":[..]}` per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (step, cfg) in self.steps.iter().enumerate() {
            let line = TraceLine {
                step,
                stacks: cfg.stacks(),
            };
            out.push_str(&serde_json::to_string(&line).expect("trace line serialises"));
            out.push('\n');
        }
        out
    }
}

/// Runs `max_steps` firings and returns all `max_steps + 1` configurations.
pub fn run_sequence(graph: &SimpleGraph, config: &Configuration, max_steps: usize) -> Result<SequenceTrace> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    config.check_matches(graph)?;
    let mut steps = Vec::with_capacity(max_steps + 1);
    steps.push(config.clone());
    for _ in 0..max_steps {
        let next = fire_step(graph, steps.last().expect("non-empty"))?;
        steps.push(next);
    }
    Ok(SequenceTrace {
        initial: config.clone(),
        steps,
    })
}

/// Preperiod, period and the configurations inside the period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub preperiod: usize,
    pub period: usize,
    /// `orbit[0]` is the period configuration reached first.
    pub orbit: Vec<Configuration>,
}

/// Finds the least `N` and least `p` with `C_{N+p} = C_N`.
///
/// The first repeated configuration of the sequence fixes both values. Any
/// offset other than 1 or 2 is reported as an internal inconsistency.
pub fn detect_period(graph: &SimpleGraph, config: &Configuration, max_steps: usize) -> Result<PeriodReport> {
    if max_steps < 2 {
        return Err(Error::InvalidArgument("max_steps must be at least 2".into()));
    }
    config.check_matches(graph)?;
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut history: Vec<Configuration> = Vec::new();
    let mut current = config.clone();
    for t in 0..=max_steps {
        if let Some(&first) = seen.get(&current) {
            let period = t - first;
            if period > 2 {
                return Err(Error::Internal(format!(
                    "configuration repeated at offset {period} (steps {first} and {t})"
                )));
            }
            let orbit = history[first..first + period].to_vec();
            return Ok(PeriodReport {
                preperiod: first,
                period,
                orbit,
            });
        }
        seen.insert(current.clone(), t);
        history.push(current.clone());
        if t < max_steps {
            current = fire_step(graph, &current)?;
        }
    }
    Err(Error::PeriodNotFound { max_steps })
}

/// Heuristic step budget `10 n (max - min + 1)`; no preperiod bound is known.
pub fn default_max_steps(graph: &SimpleGraph, config: &Configuration) -> usize {
    let stacks = config.stacks();
    let (lo, hi) = stacks
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    let spread = if stacks.is_empty() {
        1
    } else {
        (hi as i128 - lo as i128 + 1) as usize
    };
    (10usize)
        .saturating_mul(graph.vertex_count())
        .saturating_mul(spread)
        .max(2)
}

/// Orientation a configuration induces on a path: `e_i` is Right when
/// `v_{i+1}` is richer than `v_i`, Left when poorer, Flat when equal.
pub fn induced_orientation(path: &PathGraph, config: &Configuration) -> Result<PathOrientation> {
    let stacks = config.stacks();
    if stacks.len() != path.n() {
        return Err(Error::LengthMismatch {
            expected: path.n(),
            found: stacks.len(),
        });
    }
    Ok(induced_orientation_of(stacks))
}

pub(crate) fn induced_orientation_of(stacks: &[i64]) -> PathOrientation {
    PathOrientation::new(stacks.windows(2).map(|w| EdgeSense::between(w[0], w[1])).collect())
}

/// True when two steps return the configuration exactly (period 1 or 2).
pub fn is_inside_period(graph: &SimpleGraph, config: &Configuration) -> Result<bool> {
    let once = fire_step(graph, config)?;
    let twice = fire_step(graph, &once)?;
    Ok(&twice == config)
}

/// Inside a period of length exactly 2.
pub fn is_p2_configuration(graph: &SimpleGraph, config: &Configuration) -> Result<bool> {
    let once = fire_step(graph, config)?;
    if &once == config {
        return Ok(false);
    }
    Ok(&fire_step(graph, &once)? == config)
}
