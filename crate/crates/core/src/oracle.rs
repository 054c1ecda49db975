//! Brute-force ground truth for period-2 configurations.
//!
//! Nothing here consults the orientation rules or the multiplier table: a
//! configuration is kept exactly when two firings return it and one does not.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::diffusion::{fire_adjacency_into, fire_path_into, induced_orientation_of};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::limits::Limits;
use crate::orientation::PathOrientation;

/// Every period-2 configuration of `P_n` with `v_1 = 0` and neighbouring
/// stacks at most `diff_bound` apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub n: usize,
    pub diff_bound: u32,
    /// Ordered by difference vector, lexicographically.
    pub configurations: Vec<Configuration>,
    pub count: u64,
}

pub fn enumerate_p2_configurations(n: usize, diff_bound: u32) -> Result<OracleResult> {
    enumerate_p2_configurations_with(n, diff_bound, &Limits::default())
}

pub fn enumerate_p2_configurations_with(n: usize, diff_bound: u32, limits: &Limits) -> Result<OracleResult> {
    if n < 2 {
        return Err(Error::InvalidArgument("oracle needs n >= 2".into()));
    }
    if diff_bound == 0 {
        return Err(Error::InvalidArgument("diff_bound must be positive".into()));
    }
    limits.check_oracle(n, diff_bound)?;
    let b = diff_bound as i64;
    let m = n - 1;
    let head_len = m.min(2);
    let width = (2 * b + 1) as usize;
    let heads: Vec<Vec<i64>> = (0..width.pow(head_len as u32))
        .map(|mut code| {
            let mut head = vec![0i64; head_len];
            for j in (0..head_len).rev() {
                head[j] = (code % width) as i64 - b;
                code /= width;
            }
            head
        })
        .collect();

    let chunks: Vec<Vec<Configuration>> = heads.into_par_iter().map(|head| scan_tail(n, b, &head)).collect();
    let configurations: Vec<Configuration> = chunks.into_iter().flatten().collect();
    let count = configurations.len() as u64;
    Ok(OracleResult {
        n,
        diff_bound,
        configurations,
        count,
    })
}

/// Odometer over the free difference coordinates after a fixed head.
fn scan_tail(n: usize, b: i64, head: &[i64]) -> Vec<Configuration> {
    let m = n - 1;
    let mut diffs = vec![-b; m];
    diffs[..head.len()].copy_from_slice(head);
    let mut stacks = vec![0i64; n];
    let mut once = vec![0i64; n];
    let mut twice = vec![0i64; n];
    let mut found = Vec::new();
    loop {
        for i in 0..m {
            stacks[i + 1] = stacks[i] + diffs[i];
        }
        fire_path_into(&stacks, &mut once);
        if once != stacks {
            fire_path_into(&once, &mut twice);
            if twice == stacks {
                found.push(Configuration::new(stacks.clone()));
            }
        }
        // advance the last free coordinate first
        let mut j = m;
        loop {
            if j == head.len() {
                return found;
            }
            j -= 1;
            if diffs[j] < b {
                diffs[j] += 1;
                break;
            }
            diffs[j] = -b;
        }
    }
}

/// Orientations induced by the oracle's configurations.
/// CSV with header `n,count,diff_bound,wall_time` (seconds), one row per run.
pub fn oracle_csv(runs: &[(OracleResult, Duration)]) -> String {
    let mut out = String::from("n,count,diff_bound,wall_time\n");
    for (r, elapsed) in runs {
        out.push_str(&format!(
            "{},{},{},{:.6}\n",
            r.n,
            r.count,
            r.diff_bound,
            elapsed.as_secs_f64()
        ));
    }
    out
}

pub fn orientations_realized(result: &OracleResult) -> BTreeSet<PathOrientation> {
    result
        .configurations
        .iter()
        .map(|c| induced_orientation_of(c.stacks()))
        .collect()
}

/// Configuration count per induced orientation.
pub fn counts_by_orientation(result: &OracleResult) -> BTreeMap<PathOrientation, u64> {
    let mut map = BTreeMap::new();
    for c in &result.configurations {
        *map.entry(induced_orientation_of(c.stacks())).or_insert(0) += 1;
    }
    map
}

/// True when widening the difference bound from 3 to 4 finds nothing new.
pub fn bound_stability_check(n: usize) -> Result<bool> {
    bound_stability_check_with(n, &Limits::default())
}

pub fn bound_stability_check_with(n: usize, limits: &Limits) -> Result<bool> {
    limits.check_oracle(n, 4)?;
    let narrow = enumerate_p2_configurations_with(n, 3, limits)?;
    let wide = enumerate_p2_configurations_with(n, 4, limits)?;
    Ok(narrow.count == wide.count)
}

/// Windowed search on a general graph. Vertices are visited breadth first
/// from `pin`; each takes its parent's stack plus an offset in
/// `[-window, window]`. A vertex is checked for `fire^2(v) = v` as soon as
/// its whole distance-2 ball is assigned.
pub fn count_p2_windowed(graph: &SimpleGraph, pin: usize, window: i64) -> Result<u64> {
    let plan = SearchPlan::new(graph, pin)?;
    if window < 1 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let n = graph.vertex_count();
    if n == 1 {
        return Ok(0);
    }
    let width = (2 * window + 1) as usize;
    let head_len = (n - 1).min(2);
    let heads: Vec<Vec<i64>> = (0..width.pow(head_len as u32))
        .map(|mut code| {
            let mut head = vec![0i64; head_len];
            for j in (0..head_len).rev() {
                head[j] = (code % width) as i64 - window;
                code /= width;
            }
            head
        })
        .collect();
    let total: u64 = heads
        .into_par_iter()
        .map(|head| {
            let mut vals = vec![0i64; n];
            let mut ok = true;
            for (p, &offset) in head.iter().enumerate() {
                let pos = p + 1;
                let v = plan.order[pos];
                vals[v] = vals[plan.parent[v]] + offset;
                if !plan.checks_pass(pos, &vals) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                return 0;
            }
            plan.search(head_len + 1, window, &mut vals)
        })
        .sum();
    Ok(total)
}

struct SearchPlan<'g> {
    graph: &'g SimpleGraph,
    /// 0-based vertices in breadth-first order from the pin.
    order: Vec<usize>,
    parent: Vec<usize>,
    /// `ready[p]`: vertices whose distance-2 ball is complete at position p.
    ready: Vec<Vec<usize>>,
}

impl<'g> SearchPlan<'g> {
    fn new(graph: &'g SimpleGraph, pin: usize) -> Result<Self> {
        let n = graph.vertex_count();
        if pin == 0 || pin > n {
            return Err(Error::VertexOutOfRange { index: pin, n });
        }
        if !graph.is_connected() {
            return Err(Error::InvalidArgument("windowed oracle needs a connected graph".into()));
        }
        let adj = graph.adjacency();
        let root = pin - 1;
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; n];
        let mut position = vec![usize::MAX; n];
        position[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if position[w] == usize::MAX {
                    position[w] = order.len();
                    parent[w] = u;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        let mut ready = vec![Vec::new(); n];
        for v in 0..n {
            let mut last = position[v];
            for &u in &adj[v] {
                last = last.max(position[u]);
                for &w in &adj[u] {
                    last = last.max(position[w]);
                }
            }
            ready[last].push(v);
        }
        Ok(SearchPlan {
            graph,
            order,
            parent,
            ready,
        })
    }

    fn first_fire(&self, u: usize, vals: &[i64]) -> i64 {
        let mine = vals[u];
        self.graph.adjacency()[u]
            .iter()
            .map(|&w| (vals[w] > mine) as i64 - (vals[w] < mine) as i64)
            .sum::<i64>()
            + mine
    }

    fn returns_after_two(&self, v: usize, vals: &[i64]) -> bool {
        let own = self.first_fire(v, vals);
        let delta: i64 = self.graph.adjacency()[v]
            .iter()
            .map(|&u| {
                let theirs = self.first_fire(u, vals);
                (theirs > own) as i64 - (theirs < own) as i64
            })
            .sum();
        own + delta == vals[v]
    }

    fn checks_pass(&self, pos: usize, vals: &[i64]) -> bool {
        self.ready[pos].iter().all(|&v| self.returns_after_two(v, vals))
    }

    fn search(&self, pos: usize, window: i64, vals: &mut Vec<i64>) -> u64 {
        let n = self.order.len();
        if pos == n {
            let mut once = vec![0i64; n];
            fire_adjacency_into(self.graph.adjacency(), vals, &mut once);
            return (once != *vals) as u64;
        }
        let v = self.order[pos];
        let base = vals[self.parent[v]];
        let mut total = 0;
        for offset in -window..=window {
            vals[v] = base + offset;
            if self.checks_pass(pos, vals) {
                total += self.search(pos + 1, window, vals);
            }
        }
        total
    }
}

/// Count of period-2 configurations on `G_0` plus a bridged path of `k`
/// vertices. Exploratory: completeness rests on window stabilisation only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeCount {
    pub k: usize,
    pub vertex_count: usize,
    pub pinned_vertex: usize,
    pub count: u64,
    /// `(window, count)` for every window tried.
    pub windows: Vec<(i64, u64)>,
    pub exploratory: bool,
}

pub fn enumerate_p2_on_bridge_graph(
    g0: &SimpleGraph,
    base_vertex: usize,
    k: usize,
    diff_bound: u32,
) -> Result<BridgeCount> {
    enumerate_p2_on_bridge_graph_with(g0, base_vertex, k, diff_bound, &Limits::default())
}

pub fn enumerate_p2_on_bridge_graph_with(
    g0: &SimpleGraph,
    base_vertex: usize,
    k: usize,
    diff_bound: u32,
    limits: &Limits,
) -> Result<BridgeCount> {
    if !g0.is_connected() {
        return Err(Error::InvalidArgument("G_0 must be connected".into()));
    }
    if diff_bound == 0 {
        return Err(Error::InvalidArgument("diff_bound must be positive".into()));
    }
    let graph = g0.with_bridged_path(base_vertex, k)?;
    let total = graph.vertex_count();
    if total > limits.bridge_max_vertices {
        return Err(Error::Ceiling(format!(
            "bridge graph has {total} vertices, limit is {}",
            limits.bridge_max_vertices
        )));
    }
    let pinned_vertex = if k == 0 { base_vertex } else { total };
    let first = diff_bound as i64;
    let last = first + limits.bridge_max_escalations as i64;
    let mut windows: Vec<(i64, u64)> = Vec::new();
    for window in first..=last {
        let count = count_p2_windowed(&graph, pinned_vertex, window)?;
        if let Some(&(_, previous)) = windows.last() {
            if previous == count {
                windows.push((window, count));
                return Ok(BridgeCount {
                    k,
                    vertex_count: total,
                    pinned_vertex,
                    count,
                    windows,
                    exploratory: true,
                });
            }
        }
        windows.push((window, count));
    }
    Err(Error::WindowNotStabilized {
        first_window: first,
        last_window: last,
        counts: windows.iter().map(|&(_, c)| c).collect(),
    })
}
