//! Forbidden-suborientation classification of period-2 path orientations.
//!
//! An orientation of `P_n` is induced by some period-2 configuration iff
//! none of these local patterns occur:
//!
//! * (a) two adjacent Flat edges;
//! * (b) a Flat edge at either end of the path;
//! * (c) a Flat edge whose two neighbouring edges are not directed in
//!   opposite senses;
//! * (d) an agreeing directed pair whose two outer neighbours are not both
//!   directed against the pair.
//!
//! A run of three agreeing edges fails (d) because its middle pair is never
//! bookended. Pairs may share a bookending edge.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orientation::{EdgeSense, PathOrientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternRule {
    AdjacentFlats,
    FlatAtLeaf,
    FlatNotBookendedByDisagreeing,
    AgreeingPairNotBookended,
    /// `P_1` has no edges and only the fixed configuration.
    TrivialPath,
}

/// One occurrence of a forbidden pattern over edges `first_edge..=last_edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: PatternRule,
    pub first_edge: usize,
    pub last_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenPatternReport {
    pub legal: bool,
    pub violations: Vec<Violation>,
}

impl ForbiddenPatternReport {
    pub fn has(&self, rule: PatternRule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

pub fn check_p2_orientation(orient: &PathOrientation) -> ForbiddenPatternReport {
    let s = orient.senses();
    let m = s.len();
    let mut violations = Vec::new();
    let mut push = |rule, first: usize, last: usize| {
        violations.push(Violation {
            rule,
            first_edge: first,
            last_edge: last,
        })
    };

    if m == 0 {
        push(PatternRule::TrivialPath, 0, 0);
    }
    // 1-based edge i lives at s[i - 1]
    let at = |i: usize| -> Option<EdgeSense> { i.checked_sub(1).and_then(|j| s.get(j).copied()) };

    for i in 1..m {
        if s[i - 1] == EdgeSense::Flat && s[i] == EdgeSense::Flat {
            push(PatternRule::AdjacentFlats, i, i + 1);
        }
    }

    if m > 0 && s[0] == EdgeSense::Flat {
        push(PatternRule::FlatAtLeaf, 1, 1);
    }
    if m > 1 && s[m - 1] == EdgeSense::Flat {
        push(PatternRule::FlatAtLeaf, m, m);
    }

    for i in 1..=m {
        if at(i) != Some(EdgeSense::Flat) {
            continue;
        }
        let ok = match (at(i.wrapping_sub(1)), at(i + 1)) {
            (Some(a), Some(b)) => a.disagrees(b),
            _ => false,
        };
        if !ok {
            push(
                PatternRule::FlatNotBookendedByDisagreeing,
                i.saturating_sub(1).max(1),
                (i + 1).min(m),
            );
        }
    }

    for i in 1..m {
        let (a, b) = (s[i - 1], s[i]);
        if !a.agrees(b) {
            continue;
        }
        // pair is (e_i, e_{i+1}); bookends e_{i-1} and e_{i+2}
        let left_ok = at(i - 1).is_some_and(|x| x.disagrees(a));
        let right_ok = at(i + 2).is_some_and(|x| x.disagrees(a));
        if !(left_ok && right_ok) {
            push(PatternRule::AgreeingPairNotBookended, (i - 1).max(1), (i + 2).min(m));
        }
    }

    ForbiddenPatternReport {
        legal: violations.is_empty(),
        violations,
    }
}

pub fn is_p2_orientation(orient: &PathOrientation) -> bool {
    check_p2_orientation(orient).legal
}

#[inline]
fn sense_at(bits: u64, j: usize) -> EdgeSense {
    EdgeSense::from_code((bits >> (2 * j)) & 3)
}

/// Rejects a packed prefix `s[0..=j]` when a rule instance that lies wholly
/// inside the prefix is already violated.
#[inline]
fn prefix_admissible(bits: u64, j: usize) -> bool {
    let s = |k: usize| sense_at(bits, k);
    let cur = s(j);
    if j == 0 {
        return cur != EdgeSense::Flat;
    }
    let prev = s(j - 1);
    if prev == EdgeSense::Flat && cur == EdgeSense::Flat {
        return false;
    }
    if j == 1 && prev.agrees(cur) {
        return false;
    }
    if j >= 2 {
        let before = s(j - 2);
        if prev == EdgeSense::Flat && !before.disagrees(cur) {
            return false;
        }
        if before.agrees(prev) {
            let left_ok = j >= 3 && s(j - 3).disagrees(before);
            if !left_ok || !cur.disagrees(prev) {
                return false;
            }
        }
    }
    true
}

fn unpack(bits: u64, len: usize) -> PathOrientation {
    PathOrientation::new((0..len).map(|j| sense_at(bits, j)).collect())
}

fn extend(bits: u64, len: usize, target: usize, out: &mut Vec<PathOrientation>) {
    if len == target {
        let orient = unpack(bits, len);
        if is_p2_orientation(&orient) {
            out.push(orient);
        }
        return;
    }
    for sense in EdgeSense::ALL {
        let next = bits | (sense.code() << (2 * len));
        if prefix_admissible(next, len) {
            extend(next, len + 1, target, out);
        }
    }
}

fn prefixes(bits: u64, len: usize, target: usize, out: &mut Vec<(u64, usize)>) {
    if len == target {
        out.push((bits, len));
        return;
    }
    for sense in EdgeSense::ALL {
        let next = bits | (sense.code() << (2 * len));
        if prefix_admissible(next, len) {
            prefixes(next, len + 1, target, out);
        }
    }
}

/// All period-2 orientations of `P_n` in lexicographic order with
/// Right < Left < Flat, `e_1` most significant.
pub fn enumerate_p2_orientations(n: usize) -> Result<Vec<PathOrientation>> {
    enumerate_p2_orientations_with(n, &Limits::default())
}

pub fn enumerate_p2_orientations_with(n: usize, limits: &Limits) -> Result<Vec<PathOrientation>> {
    if n == 0 {
        return Err(Error::InvalidArgument("path length must be positive".into()));
    }
    limits.check_orientation_n(n)?;
    let m = n - 1;
    if m == 0 {
        return Ok(Vec::new());
    }
    let split = m.min(6);
    let mut heads = Vec::new();
    prefixes(0, 0, split, &mut heads);
    let chunks: Vec<Vec<PathOrientation>> = heads
        .into_par_iter()
        .map(|(bits, len)| {
            let mut out = Vec::new();
            extend(bits, len, m, &mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Reference enumerator: filters all `3^(n-1)` orientations through the
/// checker with no pruning.
pub fn enumerate_p2_orientations_naive(n: usize) -> Vec<PathOrientation> {
    let m = n.saturating_sub(1);
    if n <= 1 {
        return Vec::new();
    }
    let total = 3usize.pow(m as u32);
    (0..total)
        .map(|mut code| {
            let mut senses = vec![EdgeSense::Right; m];
            for j in (0..m).rev() {
                senses[j] = EdgeSense::ALL[code % 3];
                code /= 3;
            }
            PathOrientation::new(senses)
        })
        .filter(is_p2_orientation)
        .collect()
}

/// `R_n = R_{n-1} + 2 R_{n-2} - R_{n-4}` from `0, 2, 2, 4`.
pub fn count_p2_orientations_recurrence(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument("path length must be positive".into()));
    }
    let mut r: Vec<u128> = vec![0, 2, 2, 4];
    while r.len() < n {
        let k = r.len();
        let next = r[k - 1]
            .checked_add(r[k - 2].checked_mul(2).ok_or(Error::CountOverflow { n: k + 1 })?)
            .and_then(|x| x.checked_sub(r[k - 4]))
            .ok_or(Error::CountOverflow { n: k + 1 })?;
        r.push(next);
    }
    Ok(r[n - 1])
}

/// Builds `v_1 = 0` then steps `+1` across Right, `-1` across Left and `0`
/// across Flat edges. The result induces `orient` and lies in a period of
/// length 2.
pub fn witness_configuration(orient: &PathOrientation) -> Result<Configuration> {
    let report = check_p2_orientation(orient);
    if !report.legal {
        let rules: Vec<String> = report.violations.iter().map(|v| format!("{:?}", v.rule)).collect();
        return Err(Error::IllegalOrientation(format!("{orient}: {}", rules.join(", "))));
    }
    let mut stacks = Vec::with_capacity(orient.n());
    stacks.push(0i64);
    for sense in orient.senses() {
        let last = *stacks.last().expect("non-empty");
        stacks.push(match sense {
            EdgeSense::Right => last + 1,
            EdgeSense::Left => last - 1,
            EdgeSense::Flat => last,
        });
    }
    Ok(Configuration::new(stacks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> PathOrientation {
        s.parse().unwrap()
    }

    #[test]
    fn classification_examples() {
        assert!(check_p2_orientation(&o("RLRL")).legal);

        let r = check_p2_orientation(&o("RFR"));
        assert!(!r.legal);
        assert!(r.has(PatternRule::FlatNotBookendedByDisagreeing));

        let r = check_p2_orientation(&o("RRL"));
        assert!(!r.legal);
        assert!(r.has(PatternRule::AgreeingPairNotBookended));
    }

    #[test]
    fn boundary_cases() {
        let r = check_p2_orientation(&o(""));
        assert!(!r.legal);
        assert!(r.has(PatternRule::TrivialPath));

        assert!(check_p2_orientation(&o("R")).legal);
        assert!(check_p2_orientation(&o("L")).legal);
        let r = check_p2_orientation(&o("F"));
        assert!(r.has(PatternRule::FlatAtLeaf));

        let r = check_p2_orientation(&o("RLFFRL"));
        assert!(r.has(PatternRule::AdjacentFlats));
        let r = check_p2_orientation(&o("RLRF"));
        assert!(r.has(PatternRule::FlatAtLeaf));
        // run of three agreeing edges
        let r = check_p2_orientation(&o("LRRRL"));
        assert!(r.has(PatternRule::AgreeingPairNotBookended));
        // shared bookend between two pairs
        assert!(check_p2_orientation(&o("LRRLLR")).legal);
    }

    #[test]
    fn violation_spans() {
        let r = check_p2_orientation(&o("RRL"));
        assert_eq!(
            r.violations,
            vec![Violation {
                rule: PatternRule::AgreeingPairNotBookended,
                first_edge: 1,
                last_edge: 3
            }]
        );
        let r = check_p2_orientation(&o("RLFFRL"));
        assert!(r.violations.contains(&Violation {
            rule: PatternRule::AdjacentFlats,
            first_edge: 3,
            last_edge: 4
        }));
    }

    #[test]
    fn small_enumerations() {
        assert!(enumerate_p2_orientations(1).unwrap().is_empty());
        let two: Vec<String> = enumerate_p2_orientations(2)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(two, vec!["R", "L"]);
        let four: Vec<String> = enumerate_p2_orientations(4)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(four, vec!["RLR", "RFL", "LRL", "LFR"]);
        assert_eq!(enumerate_p2_orientations(5).unwrap().len(), 8);
    }

    #[test]
    fn pruned_matches_naive() {
        for n in 1..=10 {
            assert_eq!(
                enumerate_p2_orientations(n).unwrap(),
                enumerate_p2_orientations_naive(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn recurrence_values() {
        let expected = [0u128, 2, 2, 4, 8, 14, 28, 52, 100, 190, 362];
        for (i, &r) in expected.iter().enumerate() {
            assert_eq!(count_p2_orientations_recurrence(i + 1).unwrap(), r);
        }
    }

    #[test]
    fn ceiling() {
        assert!(matches!(enumerate_p2_orientations(21), Err(Error::Ceiling(_))));
    }

    #[test]
    fn witnesses() {
        assert_eq!(witness_configuration(&o("RLRL")).unwrap().stacks(), &[0, 1, 0, 1, 0]);
        assert_eq!(witness_configuration(&o("RFL")).unwrap().stacks(), &[0, 1, 1, 0]);
        assert_eq!(witness_configuration(&o("L")).unwrap().stacks(), &[0, -1]);
        assert!(matches!(
            witness_configuration(&o("RR")),
            Err(Error::IllegalOrientation(_))
        ));
    }
}
