//! Edge senses and path orientations.
//!
//! On a path drawn with `v_1` rightmost, a [`EdgeSense::Right`] edge `e_i`
//! carries chips from `v_{i+1}` to `v_i`, a [`EdgeSense::Left`] edge from `v_i`
//! to `v_{i+1}`. Serialised as a string over `R`, `L`, `F` with `e_1` first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSense {
    Right,
    Left,
    Flat,
}

impl EdgeSense {
    pub const ALL: [EdgeSense; 3] = [EdgeSense::Right, EdgeSense::Left, EdgeSense::Flat];

    pub fn is_directed(self) -> bool {
        self != EdgeSense::Flat
    }

    /// Both directed and pointing the same way.
    pub fn agrees(self, other: EdgeSense) -> bool {
        self.is_directed() && self == other
    }

    /// Both directed and pointing opposite ways.
    pub fn disagrees(self, other: EdgeSense) -> bool {
        self.is_directed() && other.is_directed() && self != other
    }

    /// Swaps Right and Left, keeps Flat.
    pub fn flipped(self) -> EdgeSense {
        match self {
            EdgeSense::Right => EdgeSense::Left,
            EdgeSense::Left => EdgeSense::Right,
            EdgeSense::Flat => EdgeSense::Flat,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            EdgeSense::Right => 'R',
            EdgeSense::Left => 'L',
            EdgeSense::Flat => 'F',
        }
    }

    pub fn from_symbol(c: char) -> Option<EdgeSense> {
        match c {
            'R' | 'r' => Some(EdgeSense::Right),
            'L' | 'l' => Some(EdgeSense::Left),
            'F' | 'f' => Some(EdgeSense::Flat),
            _ => None,
        }
    }

    /// Sense of the edge between a lower-index stack and a higher-index stack.
    pub fn between(lower: i64, higher: i64) -> EdgeSense {
        match higher.cmp(&lower) {
            std::cmp::Ordering::Greater => EdgeSense::Right,
            std::cmp::Ordering::Less => EdgeSense::Left,
            std::cmp::Ordering::Equal => EdgeSense::Flat,
        }
    }

    pub(crate) fn code(self) -> u64 {
        self as u64
    }

    pub(crate) fn from_code(code: u64) -> EdgeSense {
        match code {
            0 => EdgeSense::Right,
            1 => EdgeSense::Left,
            _ => EdgeSense::Flat,
        }
    }
}

impl fmt::Display for EdgeSense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Orientation of every edge of a path, `senses[i-1]` describing `e_i`.
/// The path has `senses.len() + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathOrientation {
    senses: Vec<EdgeSense>,
}

impl PathOrientation {
    pub fn new(senses: Vec<EdgeSense>) -> Self {
        PathOrientation { senses }
    }

    /// Checks the orientation against a path with `n` vertices.
    pub fn for_path(n: usize, senses: Vec<EdgeSense>) -> Result<Self> {
        if n == 0 || senses.len() != n - 1 {
            return Err(Error::OrientationLength {
                expected: n.saturating_sub(1),
                found: senses.len(),
            });
        }
        Ok(PathOrientation { senses })
    }

    pub fn alternating(n: usize, first: EdgeSense) -> Self {
        let other = first.flipped();
        let senses = (0..n.saturating_sub(1))
            .map(|i| if i % 2 == 0 { first } else { other })
            .collect();
        PathOrientation { senses }
    }

    /// Vertex count of the underlying path.
    pub fn n(&self) -> usize {
        self.senses.len() + 1
    }

    pub fn edge_count(&self) -> usize {
        self.senses.len()
    }

    pub fn senses(&self) -> &[EdgeSense] {
        &self.senses
    }

    /// Sense of `e_i`, 1-based. `None` when the edge does not exist.
    pub fn edge(&self, i: usize) -> Option<EdgeSense> {
        i.checked_sub(1).and_then(|j| self.senses.get(j).copied())
    }

    pub fn has_flat(&self) -> bool {
        self.senses.contains(&EdgeSense::Flat)
    }

    /// Every adjacent pair of edges disagrees.
    pub fn is_alternating(&self) -> bool {
        self.senses.windows(2).all(|w| w[0].disagrees(w[1])) && self.senses.iter().all(|s| s.is_directed())
    }

    /// Swaps Right and Left on every edge.
    pub fn flipped(&self) -> Self {
        PathOrientation {
            senses: self.senses.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// The orientation seen after relabelling the path end to end
    /// (`v_i` becomes `v_{n+1-i}`). Edge order reverses and so does each
    /// direction.
    pub fn mirrored(&self) -> Self {
        PathOrientation {
            senses: self.senses.iter().rev().map(|s| s.flipped()).collect(),
        }
    }

    /// Index of the first edge (1-based) that is Flat or agrees with its
    /// predecessor, if any.
    pub fn first_event(&self) -> Option<usize> {
        (0..self.senses.len())
            .find(|&j| self.senses[j] == EdgeSense::Flat || (j > 0 && self.senses[j - 1].agrees(self.senses[j])))
            .map(|j| j + 1)
    }
}

impl FromStr for PathOrientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| EdgeSense::from_symbol(c).ok_or_else(|| Error::MalformedOrientation(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(PathOrientation::new)
    }
}

impl fmt::Display for PathOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.senses {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for PathOrientation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PathOrientation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
