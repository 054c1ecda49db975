//! Configurations: one signed stack size per vertex, ordered `v_1..v_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Stack sizes indexed by vertex. Debt (negative stacks) is legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration {
    stacks: Vec<i64>,
}

impl Configuration {
    pub fn new(stacks: Vec<i64>) -> Self {
        Configuration { stacks }
    }

    pub fn zeros(n: usize) -> Self {
        Configuration { stacks: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.stacks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stacks.is_empty()
    }

    pub fn stacks(&self) -> &[i64] {
        &self.stacks
    }

    pub fn into_stacks(self) -> Vec<i64> {
        self.stacks
    }

    /// Stack size of the 1-based vertex `v`.
    pub fn stack(&self, v: usize) -> Result<i64> {
        v.checked_sub(1)
            .and_then(|i| self.stacks.get(i).copied())
            .ok_or(Error::VertexOutOfRange {
                index: v,
                n: self.stacks.len(),
            })
    }

    pub fn check_matches(&self, graph: &SimpleGraph) -> Result<()> {
        if self.stacks.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                found: self.stacks.len(),
            });
        }
        Ok(())
    }

    /// Adds `k` to every stack.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let stacks = self
            .stacks
            .iter()
            .map(|&s| s.checked_add(k).ok_or(Error::StackOverflow))
            .collect::<Result<_>>()?;
        Ok(Configuration { stacks })
    }

    /// Shifts so that the 1-based `base` vertex holds zero chips.
    pub fn canonicalize_at(&self, base: usize) -> Result<Self> {
        let pivot = self.stack(base)?;
        let k = pivot.checked_neg().ok_or(Error::StackOverflow)?;
        self.shift(k)
    }

    /// Shifts so that `v_1` holds zero chips.
    pub fn canonicalize(&self) -> Result<Self> {
        if self.stacks.is_empty() {
            return Ok(self.clone());
        }
        self.canonicalize_at(1)
    }

    pub fn is_constant(&self) -> bool {
        self.stacks.windows(2).all(|w| w[0] == w[1])
    }

    pub fn total_chips(&self) -> i128 {
        self.stacks.iter().map(|&s| s as i128).sum()
    }

    /// The same stacks read from `v_n` down to `v_1`.
    pub fn reversed(&self) -> Self {
        let mut stacks = self.stacks.clone();
        stacks.reverse();
        Configuration { stacks }
    }
}

impl From<Vec<i64>> for Configuration {
    fn from(stacks: Vec<i64>) -> Self {
        Configuration { stacks }
    }
}

/// Comma-separated integers ordered `v_1..v_n`.
impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        if body.is_empty() {
            return Err(Error::MalformedConfiguration(s.to_string()));
        }
        body.split(',')
            .map(|field| {
                field
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::MalformedConfiguration(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Configuration::new)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.stacks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
