//! Verification reports: one line per identity, exact or numeric.

use std::fmt;

use crate::algebra::Multivector;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Symbolic residual; passes iff exactly zero.
    Exact(Multivector),
    /// Numeric error against a tolerance.
    Numeric { error: f64, tolerance: f64 },
    /// A boolean property with a short explanation on failure.
    Holds(bool),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Exact(r) => r.is_zero(),
            Outcome::Numeric { error, tolerance } => error.is_finite() && error <= tolerance,
            Outcome::Holds(ok) => *ok,
        }
    }
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// The identity as a formula, e.g. `{g_mu, g_nu}*C = 2 eta_mu_nu`.
    pub identity: String,
    /// Which instance was checked (indices, test point, ...).
    pub instance: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn exact(identity: impl Into<String>, instance: impl Into<String>, residual: Multivector) -> Self {
        Self { identity: identity.into(), instance: instance.into(), outcome: Outcome::Exact(residual) }
    }

    pub fn numeric(identity: impl Into<String>, instance: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Self {
            identity: identity.into(),
            instance: instance.into(),
            outcome: Outcome::Numeric { error, tolerance },
        }
    }

    pub fn holds(identity: impl Into<String>, instance: impl Into<String>, ok: bool) -> Self {
        Self { identity: identity.into(), instance: instance.into(), outcome: Outcome::Holds(ok) }
    }

    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}  [{}]", self.identity, self.instance)?;
        match &self.outcome {
            Outcome::Exact(r) if !r.is_zero() => write!(f, "  residual = {r}"),
            Outcome::Numeric { error, tolerance } => write!(f, "  error = {error:.3e} (tol {tolerance:.0e})"),
            _ => Ok(()),
        }
    }
}

/// An ordered collection of checks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}
