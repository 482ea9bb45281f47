//! Verification batteries behind `starprod verify`.

use starprod::algebra::{int, Metric, Multivector};
use starprod::calculus::schrodinger_residual;
use starprod::dirac::dirac_report;
use starprod::lorentz::{active_algebra_check, finite_transform_report, passive_algebra_check, poincare_check};
use starprod::mechanics::{classical_report, spin_report, CovariantHamiltonian};
use starprod::report::{Check, Report};
use starprod::star::ProductKind;

const METRICS: [Metric; 2] = [Metric::Nonstandard, Metric::Standard];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Dirac,
    Lorentz,
    Poincare,
    ClassicalLimit,
    Spin,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Dirac, Suite::Lorentz, Suite::Poincare, Suite::ClassicalLimit, Suite::Spin];
}

/// `iħ d/ds Exp(Ks) = K ⋆ Exp(Ks)` through order N − 1 for the free `K`.
pub fn schrodinger_report(order: usize) -> Report {
    let mut report = Report::new(format!("proper-time star exponential, N = {order}"));
    for metric in METRICS {
        let k = CovariantHamiltonian::free(int(1), metric).expect("positive mass").k;
        match schrodinger_residual(&k, order, ProductKind::moyal4(metric)) {
            Ok(r) => {
                for (n, c) in r.coefficients.iter().take(order).enumerate() {
                    report.push(Check::exact(
                        "ih d/ds Exp(Ks) = K *M Exp(Ks)",
                        format!("{metric} K = p.p/2m, s^{n}"),
                        c.clone(),
                    ));
                }
            }
            Err(e) => report.push(Check::exact(
                "ih d/ds Exp(Ks) = K *M Exp(Ks)",
                format!("{metric}: {e}"),
                Multivector::one(),
            )),
        }
    }
    report
}

fn one(suite: Suite) -> Vec<Report> {
    match suite {
        Suite::Dirac => vec![dirac_report()],
        Suite::Lorentz => {
            let mut v: Vec<Report> = METRICS.iter().map(|m| passive_algebra_check(*m)).collect();
            v.extend(METRICS.iter().map(|m| active_algebra_check(*m)));
            v.push(finite_transform_report(100, 0x5eed));
            v
        }
        Suite::Poincare => METRICS.iter().map(|m| poincare_check(*m)).collect(),
        Suite::ClassicalLimit => {
            let mut v: Vec<Report> = METRICS.iter().map(|m| classical_report(*m)).collect();
            v.push(schrodinger_report(8));
            v
        }
        Suite::Spin => METRICS.iter().map(|m| spin_report(*m)).collect(),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Runs a suite; `All` runs every suite on its own thread and returns the
/// reports in the fixed suite order.
pub fn run_suite(suite: Suite) -> Vec<Report> {
    if suite != Suite::All {
        return one(suite);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = Suite::EACH.iter().map(|s| scope.spawn(move || one(*s))).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

pub fn reports_json(reports: &[Report]) -> serde_json::Value {
    let items: Vec<_> = reports
        .iter()
        .map(|r| {
            let checks: Vec<_> = r
                .checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "identity": c.identity,
                        "instance": c.instance,
                        "passed": c.passed(),
                    })
                })
                .collect();
            serde_json::json!({ "title": r.title, "passed": r.passed(), "checks": checks })
        })
        .collect();
    serde_json::json!({ "passed": reports.iter().all(Report::passed), "reports": items })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schrodinger_suite_passes() {
        assert!(schrodinger_report(4).passed());
    }

    #[test]
    fn poincare_suite_passes() {
        assert!(run_suite(Suite::Poincare).iter().all(Report::passed));
    }
}
