//! Vertex multipliers: how many stack sizes `v_k` may take in a period-2
//! configuration once `v_1..v_{k-1}` are fixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{EdgeSense, PathOrientation};
use crate::rules::check_p2_orientation;

use EdgeSense::{Flat as F, Left as L, Right as R};

/// Interior multipliers keyed by `(e_k, e_{k-1}, e_{k-2})`. `None` marks the
/// 13 triples that cannot occur inside a period-2 orientation.
pub const MULTIPLIER_TABLE: [((EdgeSense, EdgeSense, EdgeSense), Option<u8>); 27] = [
    // alternating
    ((L, R, L), Some(3)),
    ((R, L, R), Some(3)),
    // disagreeing pair beside a flat
    ((L, R, F), Some(2)),
    ((R, L, F), Some(2)),
    ((F, R, L), Some(2)),
    ((F, L, R), Some(2)),
    // agreeing pair present
    ((L, R, R), Some(1)),
    ((R, L, L), Some(1)),
    ((L, L, R), Some(1)),
    ((R, R, L), Some(1)),
    // flats on both outer edges
    ((F, R, F), Some(1)),
    ((F, L, F), Some(1)),
    // flat in the middle
    ((L, F, R), Some(1)),
    ((R, F, L), Some(1)),
    // adjacent flats
    ((F, F, F), None),
    ((F, F, R), None),
    ((F, F, L), None),
    ((R, F, F), None),
    ((L, F, F), None),
    // flat between agreeing edges
    ((R, F, R), None),
    ((L, F, L), None),
    // agreeing pair without a bookend
    ((R, R, R), None),
    ((L, L, L), None),
    ((R, R, F), None),
    ((L, L, F), None),
    ((F, R, R), None),
    ((F, L, L), None),
];

fn table_lookup(triple: (EdgeSense, EdgeSense, EdgeSense)) -> Option<u8> {
    MULTIPLIER_TABLE
        .iter()
        .find(|(key, _)| *key == triple)
        .and_then(|&(_, value)| value)
}

fn require_legal(orient: &PathOrientation) -> Result<()> {
    let report = check_p2_orientation(orient);
    if !report.legal {
        return Err(Error::IllegalOrientation(orient.to_string()));
    }
    Ok(())
}

/// Multiplier of the 1-based vertex `k`, assuming `orient` is legal.
fn multiplier_unchecked(orient: &PathOrientation, k: usize) -> Result<u8> {
    let n = orient.n();
    if k == 0 || k > n {
        return Err(Error::VertexOutOfRange { index: k, n });
    }
    let edge = |i: usize| orient.edge(i).expect("edge index checked by caller");
    if k == 1 {
        return Ok(1);
    }
    if n == 2 {
        // T_2 = 2 over two orientations forces one configuration each
        return Ok(1);
    }
    if k == 2 {
        return Ok(if edge(2) == F { 1 } else { 2 });
    }
    if k == n {
        return Ok(if edge(n - 2) == F { 1 } else { 2 });
    }
    let triple = (edge(k), edge(k - 1), edge(k - 2));
    table_lookup(triple).ok_or_else(|| Error::IllegalLocalPattern {
        vertex: k,
        pattern: format!("{}{}{}", triple.0, triple.1, triple.2),
    })
}

pub fn vertex_multiplier(orient: &PathOrientation, k: usize) -> Result<u8> {
    require_legal(orient)?;
    multiplier_unchecked(orient, k)
}

/// Multipliers of `v_1..v_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplierVector {
    values: Vec<u8>,
}

impl MultiplierVector {
    pub fn of(orient: &PathOrientation) -> Result<Self> {
        require_legal(orient)?;
        let values = (1..=orient.n())
            .map(|k| multiplier_unchecked(orient, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiplierVector { values })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn product(&self) -> u128 {
        self.values.iter().map(|&v| v as u128).product()
    }
}

/// Number of period-2 configurations (with `v_1` at zero) inducing `orient`.
pub fn count_configs_on_orientation(orient: &PathOrientation) -> Result<u128> {
    MultiplierVector::of(orient).map(|m| m.product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> PathOrientation {
        s.parse().unwrap()
    }

    #[test]
    fn table_shape() {
        let legal = MULTIPLIER_TABLE.iter().filter(|(_, v)| v.is_some()).count();
        assert_eq!(legal, 14);
        let mut keys: Vec<_> = MULTIPLIER_TABLE.iter().map(|(k, _)| *k).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 27);
        // direction flips share values
        for &((a, b, c), v) in &MULTIPLIER_TABLE {
            assert_eq!(table_lookup((a.flipped(), b.flipped(), c.flipped())), v);
        }
    }

    #[test]
    fn worked_ten_vertex_example() {
        let orient = o("LRLRRLFRL");
        let m = MultiplierVector::of(&orient).unwrap();
        assert_eq!(m.values(), &[1, 2, 3, 3, 1, 1, 2, 1, 2, 2]);
        assert_eq!(m.product(), 144);
        assert_eq!(count_configs_on_orientation(&orient).unwrap(), 144);
    }

    #[test]
    fn alternating_interior_is_three() {
        for n in 4..=9 {
            let a = PathOrientation::alternating(n, R);
            for k in 3..n {
                assert_eq!(vertex_multiplier(&a, k).unwrap(), 3);
            }
        }
        assert_eq!(
            count_configs_on_orientation(&PathOrientation::alternating(5, L)).unwrap(),
            36
        );
    }

    #[test]
    fn flat_middle_and_short_paths() {
        assert_eq!(vertex_multiplier(&o("RFL"), 3).unwrap(), 1);
        assert_eq!(count_configs_on_orientation(&o("RFL")).unwrap(), 1);
        assert_eq!(count_configs_on_orientation(&o("R")).unwrap(), 1);
        assert_eq!(count_configs_on_orientation(&o("L")).unwrap(), 1);
        assert_eq!(MultiplierVector::of(&o("RL")).unwrap().values(), &[1, 2, 2]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            vertex_multiplier(&o("RR"), 1),
            Err(Error::IllegalOrientation(_))
        ));
        assert!(matches!(
            vertex_multiplier(&o("RLR"), 5),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            multiplier_unchecked(&o("RLRRRLR"), 5),
            Err(Error::IllegalLocalPattern { vertex: 5, .. })
        ));
    }
}
