//! Fixed-step RK4 integration of the Hamilton equations.

use std::io::{self, Write};

use super::{hamilton_rhs, CovariantHamiltonian};
use crate::algebra::poly::CompiledPoly;
use crate::algebra::{Var, NVARS};
use crate::error::{domain, Error, Result};

/// One point of a trajectory. `p` holds the canonical lower-index momenta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub s: f64,
    pub q: [f64; 4],
    pub p: [f64; 4],
    /// `π_μ π^μ(s) − π_μ π^μ(0)`.
    pub pi2_drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub step: f64,
    pub method: &'static str,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectories hold the initial sample")
    }

    pub fn max_abs_drift(&self) -> f64 {
        self.samples.iter().map(|s| s.pi2_drift.abs()).fold(0.0, f64::max)
    }

    pub const CSV_HEADER: &'static str = "s,q0,q1,q2,q3,p0,p1,p2,p3,pi2_drift";

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::CSV_HEADER)?;
        for x in &self.samples {
            write!(w, "{}", x.s)?;
            for v in x.q.iter().chain(&x.p) {
                write!(w, ",{v}")?;
            }
            writeln!(w, ",{}", x.pi2_drift)?;
        }
        Ok(())
    }
}

type State = [f64; 8];

struct Rhs {
    polys: Vec<CompiledPoly>,
    pi2: CompiledPoly,
}

impl Rhs {
    fn point(state: &State, s: f64) -> [f64; NVARS] {
        let mut pt = [0.0; NVARS];
        for mu in 0..4 {
            pt[Var::q(mu).slot()] = state[mu];
            pt[Var::p(mu).slot()] = state[mu + 4];
        }
        pt[Var::S.slot()] = s;
        pt
    }

    fn eval(&self, state: &State, s: f64) -> State {
        let pt = Self::point(state, s);
        std::array::from_fn(|i| self.polys[i].eval(&pt))
    }
}

fn axpy(x: &State, k: &State, h: f64) -> State {
    std::array::from_fn(|i| x[i] + h * k[i])
}

/// Classical RK4 from `s = 0` to `s_max` with a fixed step.
///
/// The number of steps is `round(s_max / step)`; samples are recorded at
/// every step.
pub fn integrate(
    h: &CovariantHamiltonian,
    q0: [f64; 4],
    p0: [f64; 4],
    s_max: f64,
    step: f64,
) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return domain(format!("step must be positive and finite, got {step}"));
    }
    if !(s_max >= 0.0 && s_max.is_finite()) {
        return domain(format!("s_max must be non-negative and finite, got {s_max}"));
    }
    let rhs = Rhs {
        polys: hamilton_rhs(h)?
            .iter()
            .map(|p| p.compile())
            .collect::<Result<_>>()?,
        pi2: h.kinetic_square().compile()?,
    };
    let n = (s_max / step).round() as usize;
    let mut state: State = std::array::from_fn(|i| if i < 4 { q0[i] } else { p0[i - 4] });
    let pi2_at = |state: &State, s: f64| rhs.pi2.eval(&Rhs::point(state, s));
    let pi2_0 = pi2_at(&state, 0.0);
    let sample = |state: &State, s: f64| Sample {
        s,
        q: [state[0], state[1], state[2], state[3]],
        p: [state[4], state[5], state[6], state[7]],
        pi2_drift: pi2_at(state, s) - pi2_0,
    };
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(sample(&state, 0.0));
    for k in 0..n {
        let s = k as f64 * step;
        let k1 = rhs.eval(&state, s);
        let k2 = rhs.eval(&axpy(&state, &k1, step / 2.0), s + step / 2.0);
        let k3 = rhs.eval(&axpy(&state, &k2, step / 2.0), s + step / 2.0);
        let k4 = rhs.eval(&axpy(&state, &k3, step), s + step);
        let next: State = std::array::from_fn(|i| state[i] + step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        let s_next = (k + 1) as f64 * step;
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::IntegrationDiverged {
                s: s_next,
                last: Box::new(*samples.last().expect("initial sample")),
            });
        }
        state = next;
        samples.push(sample(&state, s_next));
    }
    Ok(Trajectory { samples, step, method: "rk4" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Metric, Multivector, PhasePoly};

    #[test]
    fn free_particle_is_linear() {
        let h = CovariantHamiltonian::free(int(1), Metric::Standard).unwrap();
        let p = [1.25, 0.0, 0.0, 0.75];
        let t = integrate(&h, [0.0; 4], p, 1.0, 1e-2).unwrap();
        assert_eq!(t.samples.len(), 101);
        let last = t.last();
        let expected = [1.25, 0.0, 0.0, -0.75];
        for mu in 0..4 {
            assert!((last.q[mu] - expected[mu]).abs() < 1e-12);
        }
        assert_eq!(last.p, p);
        assert!(t.max_abs_drift() < 1e-14);
    }

    #[test]
    fn rejects_bad_steps() {
        let h = CovariantHamiltonian::free(int(1), Metric::Standard).unwrap();
        assert!(integrate(&h, [0.0; 4], [1.0, 0.0, 0.0, 0.0], 1.0, 0.0).is_err());
        assert!(integrate(&h, [0.0; 4], [1.0, 0.0, 0.0, 0.0], f64::NAN, 0.1).is_err());
    }

    #[test]
    fn divergence_is_reported() {
        // K = p0 q0^3 blows up in finite s
        let k = &PhasePoly::p(0) * &PhasePoly::q(0).pow(3);
        let h = CovariantHamiltonian::custom(Multivector::from_poly(k), int(1), Metric::Standard).unwrap();
        match integrate(&h, [1.0, 0.0, 0.0, 0.0], [0.0; 4], 10.0, 0.01) {
            Err(Error::IntegrationDiverged { s, last }) => {
                assert!(s > 0.0 && s <= 10.0);
                assert!(last.q[0].is_finite());
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn csv_layout() {
        let h = CovariantHamiltonian::free(int(1), Metric::Standard).unwrap();
        let t = integrate(&h, [0.0; 4], [1.0, 0.0, 0.0, 0.0], 0.2, 0.1).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], Trajectory::CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| l.split(',').count() == 10));
    }
}
