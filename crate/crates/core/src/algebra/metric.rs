use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Diagonal Lorentz signature.
///
/// The metric is its own inverse, so `eta` serves for both index placements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// diag(+1, −1, −1, −1)
    Standard,
    /// diag(−1, +1, +1, +1)
    #[default]
    Nonstandard,
}

impl Metric {
    /// Diagonal entry η_μμ.
    pub fn eta_diag(self, mu: usize) -> i64 {
        assert!(mu < 4, "spacetime index out of range: {mu}");
        match (self, mu) {
            (Metric::Standard, 0) | (Metric::Nonstandard, 1..) => 1,
            _ => -1,
        }
    }

    pub fn eta(self, mu: usize, nu: usize) -> i64 {
        if mu == nu {
            self.eta_diag(mu)
        } else {
            0
        }
    }

    pub fn matrix(self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            row[mu] = self.eta_diag(mu) as f64;
        }
        m
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Standard => write!(f, "standard"),
            Metric::Nonstandard => write!(f, "nonstandard"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Metric::Standard),
            "nonstandard" => Ok(Metric::Nonstandard),
            _ => Err(Error::Domain(format!(
                "unknown metric `{s}` (expected standard or nonstandard)"
            ))),
        }
    }
}
