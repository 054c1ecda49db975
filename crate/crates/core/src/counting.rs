//! Counting period-2 configurations on paths by three independent routes,
//! plus the severing and contraction reductions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multiplier::count_configs_on_orientation;
use crate::orientation::{EdgeSense, PathOrientation};
use crate::rules::{check_p2_orientation, count_p2_orientations_recurrence, enumerate_p2_orientations_with};

fn overflow(n: usize) -> Error {
    Error::CountOverflow { n }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("path length must be positive".into()));
    }
    Ok(())
}

/// `A_n`: configurations on the two alternating orientations.
/// `A_1 = 0`, `A_2 = 2`, `A_n = 8 * 3^(n-3)` for `n >= 3`.
pub fn alternating_count(n: usize) -> Result<u128> {
    require_positive(n)?;
    match n {
        1 => Ok(0),
        2 => Ok(2),
        _ => 3u128
            .checked_pow((n - 3) as u32)
            .and_then(|p| p.checked_mul(8))
            .ok_or_else(|| overflow(n)),
    }
}

/// `T_n` from `T_{n+4} = 3T_{n+3} + 2T_{n+2} + T_{n+1} - T_n` with
/// `T_1..T_4 = 0, 2, 8, 26`.
pub fn count_t_recurrence(n: usize) -> Result<u128> {
    t_sequence(n).map(|t| t[n - 1])
}

/// `T_1..=T_n`.
pub fn t_sequence(n: usize) -> Result<Vec<u128>> {
    require_positive(n)?;
    let mut t: Vec<u128> = vec![0, 2, 8, 26];
    while t.len() < n {
        let k = t.len();
        let next = (|| {
            t[k - 1]
                .checked_mul(3)?
                .checked_add(t[k - 2].checked_mul(2)?)?
                .checked_add(t[k - 3])?
                .checked_sub(t[k - 4])
        })()
        .ok_or_else(|| overflow(k + 1))?;
        t.push(next);
    }
    t.truncate(n);
    Ok(t)
}

/// One enumerated orientation with its configuration count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationCount {
    pub orientation: PathOrientation,
    pub configurations: u128,
}

/// Counts for every period-2 orientation of `P_n`, in enumeration order.
pub fn per_orientation_counts(n: usize, limits: &Limits) -> Result<Vec<OrientationCount>> {
    let orientations = enumerate_p2_orientations_with(n, limits)?;
    orientations
        .into_par_iter()
        .map(|orientation| {
            let configurations = count_configs_on_orientation(&orientation)?;
            Ok(OrientationCount {
                orientation,
                configurations,
            })
        })
        .collect()
}

/// `T_n` as the sum of multiplier products over all period-2 orientations.
pub fn count_t_direct(n: usize) -> Result<u128> {
    count_t_direct_with(n, &Limits::default())
}

pub fn count_t_direct_with(n: usize, limits: &Limits) -> Result<u128> {
    require_positive(n)?;
    per_orientation_counts(n, limits)?
        .iter()
        .try_fold(0u128, |acc, c| acc.checked_add(c.configurations))
        .ok_or_else(|| overflow(n))
}

/// Stage sums of one path length, computed from a single enumeration.
///
/// `stage(k)` counts configurations whose orientation has a Flat among
/// `e_1..e_{k+1}` or an agreeing pair `(e_{i-1}, e_i)` with `i <= k+1`.
/// Once `k >= n - 1` the window covers the whole path and every
/// configuration counts, alternating ones included.
#[derive(Debug, Clone)]
pub struct StageTable {
    n: usize,
    /// `by_event[i]` sums orientations whose first event is at edge `i`.
    by_event: Vec<u128>,
    total: u128,
}

impl StageTable {
    pub fn new(n: usize, limits: &Limits) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("stage needs n >= 2".into()));
        }
        let mut by_event = vec![0u128; n];
        let mut total = 0u128;
        for c in per_orientation_counts(n, limits)? {
            if let Some(i) = c.orientation.first_event() {
                by_event[i] = by_event[i].checked_add(c.configurations).ok_or_else(|| overflow(n))?;
            }
            total = total.checked_add(c.configurations).ok_or_else(|| overflow(n))?;
        }
        Ok(StageTable { n, by_event, total })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stage(&self, k: usize) -> u128 {
        if k + 1 >= self.n {
            return self.total;
        }
        self.by_event[..=k + 1].iter().sum()
    }
}

pub fn stage(n: usize, k: usize) -> Result<u128> {
    Ok(StageTable::new(n, &Limits::default())?.stage(k))
}

/// Upper limit of the agreeing-first sum in the summation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AgreeingLimit {
    /// Sum `k = 3..=n-2`; agrees with the recurrence.
    Full,
    /// Sum `k = 3..=n-3`; undercounts from `n = 5`.
    Truncated,
}

/// `T_n = A_n + sum_{k=2}^{n-2} (A_k/2) T_{n-k}
///            + sum_{k=3}^{K} (T_{n-2} - stage_{n-2}^{k-2})`
/// with `K = n - 2`. Right-hand `T` values come from the recurrence.
pub fn count_t_summation(n: usize) -> Result<u128> {
    count_t_summation_with(n, AgreeingLimit::Full, &Limits::default())
}

pub fn count_t_summation_with(n: usize, limit: AgreeingLimit, limits: &Limits) -> Result<u128> {
    require_positive(n)?;
    if n == 1 {
        return Ok(0);
    }
    let t = t_sequence(n)?;
    let t_of = |m: usize| t[m - 1];
    let mut total = alternating_count(n)?;

    // a flat comes first, at e_k
    for k in 2..=n.saturating_sub(2) {
        let a = alternating_count(k)?;
        if a % 2 != 0 {
            return Err(Error::Internal(format!("A_{k} = {a} is odd")));
        }
        let term = (a / 2).checked_mul(t_of(n - k)).ok_or_else(|| overflow(n))?;
        total = total.checked_add(term).ok_or_else(|| overflow(n))?;
    }

    // an agreeing pair comes first, ending at e_k
    let upper = match limit {
        AgreeingLimit::Full => n.saturating_sub(2),
        AgreeingLimit::Truncated => n.saturating_sub(3),
    };
    if upper >= 3 {
        let table = StageTable::new(n - 2, limits)?;
        for k in 3..=upper {
            let term = t_of(n - 2)
                .checked_sub(table.stage(k - 2))
                .ok_or_else(|| Error::Internal(format!("stage exceeds T_{}", n - 2)))?;
            total = total.checked_add(term).ok_or_else(|| overflow(n))?;
        }
    }
    Ok(total)
}

/// Splits a legal orientation at every Flat edge into its flat-free pieces,
/// right to left.
pub fn sever_at_flats(orient: &PathOrientation) -> Result<Vec<PathOrientation>> {
    if !check_p2_orientation(orient).legal {
        return Err(Error::IllegalOrientation(orient.to_string()));
    }
    Ok(orient
        .senses()
        .split(|&s| s == EdgeSense::Flat)
        .map(|piece| PathOrientation::new(piece.to_vec()))
        .collect())
}

/// Removes the agreeing pair `(e_{i-1}, e_i)` and reverses every directed
/// edge beyond it. The result lives on `P_{n-2}`.
pub fn contract_agreeing(orient: &PathOrientation, i: usize) -> Result<PathOrientation> {
    if !check_p2_orientation(orient).legal {
        return Err(Error::IllegalOrientation(orient.to_string()));
    }
    let pair = (i >= 2).then(|| (orient.edge(i - 1), orient.edge(i)));
    match pair {
        Some((Some(a), Some(b))) if a.agrees(b) => {}
        _ => return Err(Error::NotAnAgreeingPair { index: i }),
    }
    let senses = orient.senses();
    let mut out: Vec<EdgeSense> = senses[..i - 2].to_vec();
    out.extend(senses[i..].iter().map(|s| s.flipped()));
    Ok(PathOrientation::new(out))
}

/// Residuals `F_k - (3F_{k-1} + 2F_{k-2} + F_{k-3} - F_{k-4})` for every
/// `k >= 4`.
pub fn conjecture_recurrence_check(counts: &[i128]) -> Result<Vec<i128>> {
    if counts.len() < 5 {
        return Err(Error::InvalidArgument(
            "need at least five counts F(G_0)..F(G_4)".into(),
        ));
    }
    Ok((4..counts.len())
        .map(|k| counts[k] - (3 * counts[k - 1] + 2 * counts[k - 2] + counts[k - 3] - counts[k - 4]))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerTotals {
    pub r_n: u128,
    pub a_n: u128,
    pub t_recurrence: u128,
    pub t_summation: u128,
    pub t_direct: u128,
}

/// Every count for one path length, with the per-orientation breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountLedger {
    pub n: usize,
    pub per_orientation: Vec<OrientationCount>,
    pub totals: LedgerTotals,
}

impl CountLedger {
    pub fn build(n: usize, limits: &Limits) -> Result<Self> {
        let per_orientation = per_orientation_counts(n, limits)?;
        let t_direct = per_orientation
            .iter()
            .try_fold(0u128, |acc, c| acc.checked_add(c.configurations))
            .ok_or_else(|| overflow(n))?;
        let totals = LedgerTotals {
            r_n: count_p2_orientations_recurrence(n)?,
            a_n: alternating_count(n)?,
            t_recurrence: count_t_recurrence(n)?,
            t_summation: count_t_summation_with(n, AgreeingLimit::Full, limits)?,
            t_direct,
        };
        Ok(CountLedger {
            n,
            per_orientation,
            totals,
        })
    }

    pub fn routes_agree(&self) -> bool {
        let t = &self.totals;
        t.t_direct == t.t_recurrence && t.t_recurrence == t.t_summation
    }
}

/// CSV with header `n,R_n,A_n,T_n`, one row per path length.
pub fn sequence_csv(max_n: usize) -> Result<String> {
    let mut out = String::from("n,R_n,A_n,T_n\n");
    for n in 1..=max_n {
        out.push_str(&format!(
            "{n},{},{},{}\n",
            count_p2_orientations_recurrence(n)?,
            alternating_count(n)?,
            count_t_recurrence(n)?
        ));
    }
    Ok(out)
}
