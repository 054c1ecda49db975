//! Resource ceilings for the exhaustive enumerators.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::orientation_max_n`].
pub const ENV_ORIENTATION_CEILING: &str = "PDIFFUSION_ORIENTATION_MAX_N";
/// Environment variable overriding [`Limits::oracle_max_candidates`].
pub const ENV_ORACLE_CEILING: &str = "PDIFFUSION_ORACLE_MAX_CANDIDATES";

/// Hard limit imposed by the 2-bit packing of orientation prefixes.
pub const PACKED_MAX_N: usize = 33;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest path length the orientation enumerator will visit.
    pub orientation_max_n: usize,
    /// Largest raw candidate count `(2b+1)^(n-1)` the brute-force oracle may
    /// scan. The default `7^10` admits `n = 11` at bound 3 and `n = 9` at
    /// bound 4.
    pub oracle_max_candidates: u128,
    /// Window escalation stops after this many sizes beyond the start.
    pub bridge_max_escalations: u32,
    /// Largest bridge graph (vertices of `G_0` plus the path) the windowed
    /// oracle accepts.
    pub bridge_max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            orientation_max_n: 20,
            oracle_max_candidates: 7u128.pow(10),
            bridge_max_escalations: 4,
            bridge_max_vertices: 16,
        }
    }
}

impl Limits {
    /// Defaults with any environment overrides applied.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(ENV_ORIENTATION_CEILING) {
            limits.orientation_max_n = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{ENV_ORIENTATION_CEILING}={raw}")))?;
        }
        if let Ok(raw) = std::env::var(ENV_ORACLE_CEILING) {
            limits.oracle_max_candidates = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{ENV_ORACLE_CEILING}={raw}")))?;
        }
        Ok(limits)
    }

    pub(crate) fn check_orientation_n(&self, n: usize) -> Result<()> {
        let max = self.orientation_max_n.min(PACKED_MAX_N);
        if n > max {
            return Err(Error::Ceiling(format!(
                "orientation enumeration limited to n <= {max}, asked for n = {n}"
            )));
        }
        Ok(())
    }

    pub(crate) fn check_oracle(&self, n: usize, diff_bound: u32) -> Result<()> {
        let width = 2 * diff_bound as u128 + 1;
        let candidates = (0..n.saturating_sub(1)).try_fold(1u128, |acc, _| acc.checked_mul(width));
        match candidates {
            Some(c) if c <= self.oracle_max_candidates => Ok(()),
            _ => Err(Error::Ceiling(format!(
                "oracle at n = {n}, bound {diff_bound} exceeds {} candidates",
                self.oracle_max_candidates
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_oracle_ceilings() {
        let l = Limits::default();
        assert!(l.check_oracle(11, 3).is_ok());
        assert!(l.check_oracle(12, 3).is_err());
        assert!(l.check_oracle(9, 4).is_ok());
        assert!(l.check_oracle(10, 4).is_err());
        assert!(l.check_oracle(50, 3).is_err());
    }

    #[test]
    fn orientation_ceiling() {
        let l = Limits::default();
        assert!(l.check_orientation_n(20).is_ok());
        assert!(l.check_orientation_n(21).is_err());
        let wide = Limits {
            orientation_max_n: 100,
            ..l
        };
        assert!(wide.check_orientation_n(PACKED_MAX_N + 1).is_err());
    }
}
