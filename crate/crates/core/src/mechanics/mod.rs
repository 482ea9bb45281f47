//! Parametrized relativistic mechanics in the evolution parameter `s`.
//!
//! Momenta are the lower-index `p_μ`, coordinates the upper-index `q^μ`.
//! The kinetic momentum is `π_μ = p_μ − e A_μ(q)` and the field tensor is
//! `F_μν = ∂_μ A_ν − ∂_ν A_μ`.

mod integrate;

pub use integrate::{integrate, Sample, Trajectory};

use crate::algebra::{int, rat, Blade, Metric, Multivector, PhasePoly, Rational, ScalarH, Var};
use crate::error::{domain, Error, Result};
use crate::report::{Check, Report};
use crate::star::{moyal_poly, ProductKind};
use num_traits::{One, Signed, Zero};

const ALL_PAIRS: [usize; 4] = [0, 1, 2, 3];

fn depends_only_on_q(p: &PhasePoly) -> bool {
    p.terms().all(|(m, c)| {
        c.min_power().unwrap_or(0) == 0
            && c.max_power().unwrap_or(0) == 0
            && m.factors().all(|(v, _)| matches!(v, Var::Q(_)))
    })
}

/// `F_μν = ∂_μ A_ν − ∂_ν A_μ` with `∂_μ = ∂/∂q^μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTensor {
    f: [[PhasePoly; 4]; 4],
}

impl FieldTensor {
    pub fn from_potentials(a: &[PhasePoly; 4]) -> Self {
        let f = std::array::from_fn(|mu| {
            std::array::from_fn(|nu| &a[nu].partial(Var::q(mu)) - &a[mu].partial(Var::q(nu)))
        });
        Self { f }
    }

    /// Lower-index component `F_μν`.
    pub fn get(&self, mu: usize, nu: usize) -> &PhasePoly {
        &self.f[mu][nu]
    }

    /// Upper-index component `F^{μν} = η^{μμ} η^{νν} F_μν`.
    pub fn upper(&self, mu: usize, nu: usize, metric: Metric) -> PhasePoly {
        self.f[mu][nu].scale_rational(&int(metric.eta_diag(mu) * metric.eta_diag(nu)))
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().flatten().all(PhasePoly::is_zero)
    }
}

/// The scalar (and optionally multivector) generator `K` of `s`-evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantHamiltonian {
    pub k: Multivector,
    pub charge: Rational,
    pub mass: Rational,
    pub potentials: [PhasePoly; 4],
    pub metric: Metric,
}

impl CovariantHamiltonian {
    /// `K = p^μ p_μ / 2m`.
    pub fn free(mass: Rational, metric: Metric) -> Result<Self> {
        Self::charged(Rational::zero(), mass, std::array::from_fn(|_| PhasePoly::zero()), metric)
    }

    /// `K = η^{μν} π_μ π_ν / 2m`.
    pub fn charged(charge: Rational, mass: Rational, potentials: [PhasePoly; 4], metric: Metric) -> Result<Self> {
        if !mass.is_positive() {
            return domain(format!("mass must be positive, got {mass}"));
        }
        if let Some(a) = potentials.iter().find(|a| !depends_only_on_q(a)) {
            return domain(format!("potential {a} must be a real polynomial in q only"));
        }
        let mut h = Self {
            k: Multivector::zero(),
            charge,
            mass,
            potentials,
            metric,
        };
        h.k = Multivector::from_poly(h.kinetic_square().scale_rational(&(Rational::one() / (int(2) * &h.mass))));
        Ok(h)
    }

    /// Homogeneous magnetic field along the 3-axis: `A₁ = −B q²/2`, `A₂ = B q¹/2`.
    pub fn homogeneous_b(b3: Rational, charge: Rational, mass: Rational, metric: Metric) -> Result<Self> {
        Self::charged(charge, mass, homogeneous_b_potentials(&b3), metric)
    }

    /// A user-supplied generator; charge and potentials are zero.
    pub fn custom(k: Multivector, mass: Rational, metric: Metric) -> Result<Self> {
        let mut h = Self::free(mass, metric)?;
        h.k = k;
        Ok(h)
    }

    /// `K` as a polynomial; fails when `K` has nonzero higher grades.
    pub fn scalar(&self) -> Result<PhasePoly> {
        if !self.k.is_grade(0) && !self.k.is_zero() {
            return domain(format!("expected a grade-0 generator, got {}", self.k));
        }
        Ok(self.k.scalar_part())
    }

    /// `π_μ = p_μ − e A_μ`.
    pub fn kinetic_momentum(&self, mu: usize) -> PhasePoly {
        &PhasePoly::p(mu) - &self.potentials[mu].scale_rational(&self.charge)
    }

    /// `π^μ = η^{μμ} π_μ`.
    pub fn kinetic_momentum_upper(&self, mu: usize) -> PhasePoly {
        self.kinetic_momentum(mu).scale_rational(&int(self.metric.eta_diag(mu)))
    }

    /// `π_μ π^μ`.
    pub fn kinetic_square(&self) -> PhasePoly {
        let mut acc = PhasePoly::zero();
        for mu in 0..4 {
            acc += &(&self.kinetic_momentum(mu) * &self.kinetic_momentum_upper(mu));
        }
        acc
    }

    pub fn field(&self) -> FieldTensor {
        FieldTensor::from_potentials(&self.potentials)
    }
}

pub fn homogeneous_b_potentials(b3: &Rational) -> [PhasePoly; 4] {
    let half = b3 * rat(1, 2);
    [
        PhasePoly::zero(),
        PhasePoly::q(2).scale_rational(&-half.clone()),
        PhasePoly::q(1).scale_rational(&half),
        PhasePoly::zero(),
    ]
}

/// `{f, g} = Σ_μ (∂f/∂q^μ ∂g/∂p_μ − ∂f/∂p_μ ∂g/∂q^μ)`.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut acc = PhasePoly::zero();
    for mu in 0..4 {
        let (q, p) = (Var::q(mu), Var::p(mu));
        acc += &(&f.partial(q) * &g.partial(p));
        acc -= &(&f.partial(p) * &g.partial(q));
    }
    acc
}

/// Right-hand sides `(q̊^0..q̊^3, p̊_0..p̊_3)`.
pub fn hamilton_rhs(h: &CovariantHamiltonian) -> Result<[PhasePoly; 8]> {
    let k = h.scalar()?;
    Ok(std::array::from_fn(|i| {
        if i < 4 {
            k.partial(Var::p(i))
        } else {
            -k.partial(Var::q(i - 4))
        }
    }))
}

/// `df/ds = {f, K} + ∂f/∂s`.
pub fn s_derivative(f: &PhasePoly, h: &CovariantHamiltonian) -> Result<PhasePoly> {
    let k = h.scalar()?;
    Ok(&poisson_bracket(f, &k) + &f.partial(Var::S))
}

/// Residuals of the Lorentz force law along the Hamiltonian flow.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzForceResidual {
    /// `π̊_μ − e F_μν q̊^ν`.
    pub force: [PhasePoly; 4],
    /// `d/ds (π_μ π^μ)`.
    pub kinetic_square_rate: PhasePoly,
}

impl LorentzForceResidual {
    pub fn is_zero(&self) -> bool {
        self.force.iter().all(PhasePoly::is_zero) && self.kinetic_square_rate.is_zero()
    }
}

pub fn lorentz_force_residual(h: &CovariantHamiltonian) -> Result<LorentzForceResidual> {
    let field = h.field();
    let qdot: Vec<PhasePoly> = (0..4)
        .map(|nu| s_derivative(&PhasePoly::q(nu), h))
        .collect::<Result<_>>()?;
    let mut force: [PhasePoly; 4] = std::array::from_fn(|_| PhasePoly::zero());
    for (mu, slot) in force.iter_mut().enumerate() {
        let mut r = s_derivative(&h.kinetic_momentum(mu), h)?;
        for (nu, qd) in qdot.iter().enumerate() {
            r -= &(field.get(mu, nu) * qd).scale_rational(&h.charge);
        }
        *slot = r;
    }
    let kinetic_square_rate = s_derivative(&h.kinetic_square(), h)?;
    Ok(LorentzForceResidual { force, kinetic_square_rate })
}

/// `(1/iħ)[f, g]⋆_M` at ħ = 0 against `{f, g}`.
pub fn classical_limit_check(f: &PhasePoly, g: &PhasePoly) -> Result<bool> {
    let comm = &moyal_poly(f, g, &ALL_PAIRS) - &moyal_poly(g, f, &ALL_PAIRS);
    let limit = comm.divide_by_ihbar()?.hbar_set_zero();
    Ok(limit == poisson_bracket(f, g))
}

/// `[π_μ, π_ν]⋆_M` for all index pairs.
pub fn kinetic_commutator(potentials: &[PhasePoly; 4], charge: &Rational) -> [[Multivector; 4]; 4] {
    let pi: [PhasePoly; 4] =
        std::array::from_fn(|mu| &PhasePoly::p(mu) - &potentials[mu].scale_rational(charge));
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            Multivector::from_poly(&moyal_poly(&pi[mu], &pi[nu], &ALL_PAIRS) - &moyal_poly(&pi[nu], &pi[mu], &ALL_PAIRS))
        })
    })
}

/// `[π_μ, π_ν]⋆_M − iħ e F_μν` for all index pairs.
pub fn kinetic_commutator_residuals(potentials: &[PhasePoly; 4], charge: &Rational) -> [[Multivector; 4]; 4] {
    let table = kinetic_commutator(potentials, charge);
    let field = FieldTensor::from_potentials(potentials);
    let ihe = ScalarH::i_hbar().scale_rational(charge);
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| &table[mu][nu] - &Multivector::from_poly(field.get(mu, nu).scale(&ihe)))
    })
}

/// `K = (1/2m) π ⋆_MC π` with `π = π^μ γ_μ`, split by grade.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinHamiltonian {
    pub full: Multivector,
    /// Grade-0 part.
    pub scalar: Multivector,
    /// Grade-2 part (the antisymmetric combination only survives).
    pub spin: Multivector,
    /// `(iħe/4m) F^{μν} γ_μ γ_ν`.
    pub expected_spin: Multivector,
}

impl SpinHamiltonian {
    pub fn spin_residual(&self) -> Multivector {
        &self.spin - &self.expected_spin
    }
}

pub fn spin_hamiltonian(
    potentials: &[PhasePoly; 4],
    charge: &Rational,
    mass: &Rational,
    metric: Metric,
) -> Result<SpinHamiltonian> {
    let h = CovariantHamiltonian::charged(charge.clone(), mass.clone(), potentials.clone(), metric)?;
    let pi = Multivector::vector(std::array::from_fn(|mu| h.kinetic_momentum_upper(mu)));
    let inv_2m = Rational::one() / (int(2) * mass);
    let full = ProductKind::moyal_clifford(metric).star(&pi, &pi).scale_rational(&inv_2m);
    let field = h.field();
    let mut expected_spin = Multivector::zero();
    let factor = ScalarH::i_hbar().scale_rational(&(charge * &inv_2m));
    for mu in 0..4 {
        for nu in mu + 1..4 {
            // (iħe/4m) F^{μν} γ_μ∧γ_ν summed over both orders
            let blade = Blade::from_indices(&[mu, nu]).expect("ascending pair");
            expected_spin.add_component(blade, &field.upper(mu, nu, metric).scale(&factor));
        }
    }
    Ok(SpinHamiltonian {
        scalar: full.grade_project(0)?,
        spin: full.grade_project(2)?,
        full,
        expected_spin,
    })
}

/// `L = (m/2) η_μν q̊^μ q̊^ν`.
pub fn free_lagrangian(mass: &Rational, metric: Metric) -> PhasePoly {
    charged_lagrangian(&Rational::zero(), mass, &std::array::from_fn(|_| PhasePoly::zero()), metric)
}

/// `L = (m/2) η_μν q̊^μ q̊^ν + e q̊^μ A_μ`.
pub fn charged_lagrangian(charge: &Rational, mass: &Rational, potentials: &[PhasePoly; 4], metric: Metric) -> PhasePoly {
    let half_m = mass * rat(1, 2);
    let mut l = PhasePoly::zero();
    for mu in 0..4 {
        let qd = PhasePoly::var(Var::qd(mu));
        l += &qd.pow(2).scale_rational(&(&half_m * int(metric.eta_diag(mu))));
        l += &(&qd * &potentials[mu]).scale_rational(charge);
    }
    l
}

/// Legendre transform of a Lagrangian quadratic in the velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreTransform {
    /// `K(q, p, s) = p_μ q̊^μ − L`.
    pub hamiltonian: PhasePoly,
    /// `q̊^μ(q, p, s)` solved from `p_μ = ∂L/∂q̊^μ`.
    pub velocities: [PhasePoly; 4],
    /// `∂K/∂p_μ − q̊^μ` then `−∂K/∂q^μ − ∂L/∂q^μ`, on the Legendre map.
    pub residuals: [PhasePoly; 8],
}

impl LegendreTransform {
    /// True when the Euler–Lagrange and Hamilton flows coincide.
    pub fn is_consistent(&self) -> bool {
        self.residuals.iter().all(PhasePoly::is_zero)
    }
}

/// Legendre transform of `L(q, q̊, s)` and the equivalence of its
/// Euler–Lagrange equations with the Hamilton equations of the result.
///
/// `L` must be at most quadratic in `q̊` with a constant, diagonal,
/// invertible velocity Hessian.
pub fn euler_lagrange_check(l: &PhasePoly) -> Result<LegendreTransform> {
    if let Some((m, _)) = l.terms().find(|(m, _)| m.factors().any(|(v, _)| matches!(v, Var::P(_)))) {
        return Err(Error::Unsupported(format!("Lagrangian term {m} depends on momenta")));
    }
    let qd = |mu| Var::qd(mu);
    let mut hessian = Vec::with_capacity(4);
    for mu in 0..4 {
        for nu in 0..4 {
            let d2 = l.partial(qd(mu)).partial(qd(nu));
            if mu != nu && !d2.is_zero() {
                return Err(Error::Unsupported(format!("velocity Hessian is not diagonal at ({mu},{nu})")));
            }
            if mu == nu {
                let w = d2
                    .as_constant()
                    .and_then(|c| c.as_rational())
                    .filter(|w| !w.is_zero())
                    .ok_or_else(|| Error::Unsupported(format!("velocity Hessian entry ({mu},{mu}) = {d2} is not a nonzero constant")))?;
                hessian.push(w);
            }
        }
    }
    // b_μ = ∂L/∂q̊^μ at q̊ = 0
    let mut at_rest = l.clone();
    for mu in 0..4 {
        at_rest = at_rest.substitute(qd(mu), &PhasePoly::zero());
    }
    let velocities: [PhasePoly; 4] = std::array::from_fn(|mu| {
        let mut b = l.partial(qd(mu));
        for nu in 0..4 {
            b = b.substitute(qd(nu), &PhasePoly::zero());
        }
        (&PhasePoly::p(mu) - &b).scale_rational(&(Rational::one() / &hessian[mu]))
    });
    let on_shell = |f: &PhasePoly| {
        let mut out = f.clone();
        for mu in 0..4 {
            out = out.substitute(qd(mu), &velocities[mu]);
        }
        out
    };
    let mut k = -on_shell(l);
    for (mu, v) in velocities.iter().enumerate() {
        k += &(&PhasePoly::p(mu) * v);
    }
    let residuals = std::array::from_fn(|i| {
        if i < 4 {
            &k.partial(Var::p(i)) - &velocities[i]
        } else {
            let mu = i - 4;
            -(&k.partial(Var::q(mu)) + &on_shell(&l.partial(Var::q(mu))))
        }
    });
    Ok(LegendreTransform { hamiltonian: k, velocities, residuals })
}

/// Symbolic identities of the proper-time mechanics as a report.
pub fn classical_report(metric: Metric) -> Report {
    use rand::SeedableRng;
    let mut report = Report::new(format!("classical limit and Poisson brackets ({metric} metric)"));
    for mu in 0..4 {
        for nu in 0..4 {
            let delta = if mu == nu { PhasePoly::one() } else { PhasePoly::zero() };
            let inst = format!("m={mu} n={nu}");
            let (q, p) = (|i| PhasePoly::q(i), |i| PhasePoly::p(i));
            report.push(Check::exact("{q^m, p_n} = delta^m_n", &inst, Multivector::from_poly(&poisson_bracket(&q(mu), &p(nu)) - &delta)));
            report.push(Check::exact("{q^m, q^n} = 0", &inst, Multivector::from_poly(poisson_bracket(&q(mu), &q(nu)))));
            report.push(Check::exact("{p_m, p_n} = 0", &inst, Multivector::from_poly(poisson_bracket(&p(mu), &p(nu)))));
            let comm = &moyal_poly(&q(mu), &p(nu), &ALL_PAIRS) - &moyal_poly(&p(nu), &q(mu), &ALL_PAIRS);
            report.push(Check::exact(
                "[q^m, p_n]*M = ih delta^m_n",
                &inst,
                Multivector::from_poly(&comm - &delta.scale(&ScalarH::i_hbar())),
            ));
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(51);
    for n in 0..25 {
        let f = crate::sample::random_poly(&mut rng, 3, 3).hbar_set_zero();
        let g = crate::sample::random_poly(&mut rng, 3, 3).hbar_set_zero();
        let ok = classical_limit_check(&f, &g).unwrap_or(false);
        report.push(Check::holds("lim hb->0 (1/ih)[f, g]*M = {f, g}", format!("random pair {n}"), ok));
    }
    let free = CovariantHamiltonian::free(int(1), metric).expect("positive mass");
    let field = CovariantHamiltonian::homogeneous_b(rat(3, 2), int(1), int(2), metric).expect("positive mass");
    for (label, h) in [("A = 0", &free), ("homogeneous B3", &field)] {
        match lorentz_force_residual(h) {
            Ok(r) => {
                for mu in 0..4 {
                    report.push(Check::exact(
                        "d/ds pi_m = e F_mn dq^n/ds",
                        format!("{label} m={mu}"),
                        Multivector::from_poly(r.force[mu].clone()),
                    ));
                }
                report.push(Check::exact(
                    "d/ds (pi_m pi^m) = 0",
                    label,
                    Multivector::from_poly(r.kinetic_square_rate),
                ));
            }
            Err(e) => report.push(Check::holds("d/ds pi_m = e F_mn dq^n/ds", format!("{label}: {e}"), false)),
        }
    }
    let legendre = euler_lagrange_check(&charged_lagrangian(&int(1), &int(2), &homogeneous_b_potentials(&int(1)), metric));
    let expected = CovariantHamiltonian::homogeneous_b(int(1), int(1), int(2), metric).expect("positive mass");
    match legendre {
        Ok(t) => {
            report.push(Check::exact(
                "K = p_m dq^m/ds - L = pi_m pi^m / 2m",
                "charged Lagrangian",
                Multivector::from_poly(&t.hamiltonian - &expected.k.scalar_part()),
            ));
            report.push(Check::holds("Euler-Lagrange <=> Hamilton equations", "charged Lagrangian", t.is_consistent()));
        }
        Err(e) => report.push(Check::holds("Euler-Lagrange <=> Hamilton equations", e.to_string(), false)),
    }
    report
}

/// Kinetic commutator and spin-term identities as a report.
pub fn spin_report(metric: Metric) -> Report {
    let mut report = Report::new(format!("kinetic momenta and spin term ({metric} metric)"));
    let b3 = rat(3, 2);
    let (e, m) = (int(1), int(2));
    let a = homogeneous_b_potentials(&b3);
    let res = kinetic_commutator_residuals(&a, &e);
    for mu in 0..4 {
        for nu in 0..4 {
            report.push(Check::exact(
                "[pi_m, pi_n]*M = ih e F_mn",
                format!("homogeneous B3 m={mu} n={nu}"),
                res[mu][nu].clone(),
            ));
        }
    }
    match spin_hamiltonian(&a, &e, &m, metric) {
        Ok(k) => {
            let expected = Multivector::term(
                Blade::from_indices(&[1, 2]).expect("ascending"),
                PhasePoly::constant(ScalarH::i_hbar().scale_rational(&(&e * &b3 / (int(2) * &m)))),
            );
            report.push(Check::exact(
                "<(1/2m) pi *MC pi>_2 = (ih e/4m) F^mn g_m g_n",
                "homogeneous B3",
                k.spin_residual(),
            ));
            report.push(Check::exact(
                "<(1/2m) pi *MC pi>_2 = i(e hb/2m) B3 g1g2",
                "homogeneous B3",
                &k.spin - &expected,
            ));
        }
        Err(err) => report.push(Check::holds("(1/2m) pi *MC pi", err.to_string(), false)),
    }
    let labels = [
        ("i g1g2 *C W_pm = +-W_pm", "W+"),
        ("i g1g2 *C W_pm = +-W_pm", "W-"),
        ("W_pm *C W_pm = W_pm", "W+"),
        ("W_pm *C W_pm = W_pm", "W-"),
        ("W+ *C W- = 0", ""),
        ("W+ + W- = 1", ""),
    ];
    for ((identity, inst), r) in labels.into_iter().zip(crate::dirac::magnetic_spin_residuals(metric)) {
        report.push(Check::exact(identity, inst, r));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_poly, random_potentials};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_brackets() {
        for mu in 0..4 {
            for nu in 0..4 {
                let delta = if mu == nu { PhasePoly::one() } else { PhasePoly::zero() };
                assert_eq!(poisson_bracket(&PhasePoly::q(mu), &PhasePoly::p(nu)), delta);
                assert!(poisson_bracket(&PhasePoly::q(mu), &PhasePoly::q(nu)).is_zero());
                assert!(poisson_bracket(&PhasePoly::p(mu), &PhasePoly::p(nu)).is_zero());
            }
        }
    }

    #[test]
    fn bracket_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let f = random_poly(&mut rng, 3, 3);
            let g = random_poly(&mut rng, 3, 3);
            let h = random_poly(&mut rng, 3, 3);
            assert!(poisson_bracket(&f, &f).is_zero());
            assert_eq!(poisson_bracket(&f, &g), -poisson_bracket(&g, &f));
            assert_eq!(poisson_bracket(&f, &(&g * &h)), &(&poisson_bracket(&f, &g) * &h) + &(&g * &poisson_bracket(&f, &h)));
            let jacobi = &(&poisson_bracket(&f, &poisson_bracket(&g, &h)) + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
                + &poisson_bracket(&h, &poisson_bracket(&f, &g));
            assert!(jacobi.is_zero());
        }
    }

    #[test]
    fn free_flow() {
        for metric in [Metric::Standard, Metric::Nonstandard] {
            let h = CovariantHamiltonian::free(int(3), metric).unwrap();
            let rhs = hamilton_rhs(&h).unwrap();
            for mu in 0..4 {
                assert_eq!(rhs[mu], PhasePoly::p(mu).scale_rational(&rat(metric.eta_diag(mu), 3)));
                assert!(rhs[mu + 4].is_zero());
            }
            assert_eq!(s_derivative(&PhasePoly::var(Var::S), &h).unwrap(), PhasePoly::one());
            assert!(s_derivative(&h.kinetic_square(), &h).unwrap().is_zero());
        }
        let zero = CovariantHamiltonian::custom(Multivector::zero(), int(1), Metric::Standard).unwrap();
        assert!(hamilton_rhs(&zero).unwrap().iter().all(PhasePoly::is_zero));
        let bad = CovariantHamiltonian::custom(Multivector::gamma(0), int(1), Metric::Standard).unwrap();
        assert!(hamilton_rhs(&bad).is_err());
        assert!(CovariantHamiltonian::free(int(0), Metric::Standard).is_err());
        assert!(CovariantHamiltonian::charged(int(1), int(1), [PhasePoly::p(0), PhasePoly::zero(), PhasePoly::zero(), PhasePoly::zero()], Metric::Standard).is_err());
    }

    #[test]
    fn charged_flow_matches_hand_expansion() {
        let metric = Metric::Nonstandard;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_potentials(&mut rng, 2, 3);
        let (e, m) = (rat(2, 3), rat(5, 2));
        let h = CovariantHamiltonian::charged(e.clone(), m.clone(), a.clone(), metric).unwrap();
        let rhs = hamilton_rhs(&h).unwrap();
        for mu in 0..4 {
            assert_eq!(rhs[mu], h.kinetic_momentum_upper(mu).scale_rational(&(Rational::one() / &m)));
            // p̊_μ = (e/m) π^ν ∂_μ A_ν
            let mut expected = PhasePoly::zero();
            for nu in 0..4 {
                expected += &(&h.kinetic_momentum_upper(nu) * &a[nu].partial(Var::q(mu)));
            }
            assert_eq!(rhs[mu + 4], expected.scale_rational(&(&e / &m)));
        }
    }

    #[test]
    fn lorentz_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for metric in [Metric::Standard, Metric::Nonstandard] {
            assert!(lorentz_force_residual(&CovariantHamiltonian::free(int(1), metric).unwrap()).unwrap().is_zero());
            let h = CovariantHamiltonian::homogeneous_b(int(2), rat(-1, 3), int(1), metric).unwrap();
            assert!(lorentz_force_residual(&h).unwrap().is_zero());
            for _ in 0..5 {
                let h = CovariantHamiltonian::charged(rat(1, 2), int(3), random_potentials(&mut rng, 2, 3), metric).unwrap();
                assert!(lorentz_force_residual(&h).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn classical_limit() {
        assert!(classical_limit_check(&PhasePoly::q(0), &PhasePoly::p(0)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = random_poly(&mut rng, 4, 3).hbar_set_zero();
            let g = random_poly(&mut rng, 4, 3).hbar_set_zero();
            assert!(classical_limit_check(&f, &f).unwrap());
            assert!(classical_limit_check(&f, &g).unwrap());
        }
    }

    #[test]
    fn kinetic_commutators() {
        let zero: [PhasePoly; 4] = std::array::from_fn(|_| PhasePoly::zero());
        assert!(kinetic_commutator(&zero, &int(1)).iter().flatten().all(Multivector::is_zero));
        let b = rat(7, 3);
        let table = kinetic_commutator(&homogeneous_b_potentials(&b), &int(2));
        assert_eq!(table[1][2], Multivector::scalar(ScalarH::i_hbar().scale_rational(&(&b * int(2)))));
        assert_eq!(table[2][1], -&table[1][2]);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let a = random_potentials(&mut rng, 2, 3);
            let res = kinetic_commutator_residuals(&a, &rat(-3, 2));
            assert!(res.iter().flatten().all(Multivector::is_zero));
        }
    }

    #[test]
    fn spin_term() {
        for metric in [Metric::Standard, Metric::Nonstandard] {
            let zero: [PhasePoly; 4] = std::array::from_fn(|_| PhasePoly::zero());
            let k = spin_hamiltonian(&zero, &int(1), &int(2), metric).unwrap();
            assert!(k.spin.is_zero());
            let free = CovariantHamiltonian::free(int(2), metric).unwrap();
            assert_eq!(k.full, free.k);

            let b = rat(5, 4);
            let k = spin_hamiltonian(&homogeneous_b_potentials(&b), &int(3), &int(2), metric).unwrap();
            let expected = Multivector::term(
                Blade::from_indices(&[1, 2]).unwrap(),
                PhasePoly::constant(ScalarH::i_hbar().scale_rational(&(int(3) * &b / int(4)))),
            );
            assert_eq!(k.spin, expected);
            assert!(k.spin_residual().is_zero());
            let h = CovariantHamiltonian::homogeneous_b(b.clone(), int(3), int(2), metric).unwrap();
            assert_eq!(k.scalar, h.k);

            // pure gauge A_μ = ∂_μ χ
            let chi = &(&PhasePoly::q(0) * &PhasePoly::q(1)).pow(2) + &PhasePoly::q(3).pow(3);
            let a = std::array::from_fn(|mu| chi.partial(Var::q(mu)));
            assert!(FieldTensor::from_potentials(&a).is_zero());
            assert!(spin_hamiltonian(&a, &int(1), &int(1), metric).unwrap().spin.is_zero());
        }
    }

    #[test]
    fn legendre() {
        for metric in [Metric::Standard, Metric::Nonstandard] {
            let m = rat(3, 2);
            let t = euler_lagrange_check(&free_lagrangian(&m, metric)).unwrap();
            assert_eq!(t.hamiltonian, CovariantHamiltonian::free(m.clone(), metric).unwrap().k.scalar_part());
            assert!(t.is_consistent());
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let a = random_potentials(&mut rng, 2, 3);
            let t = euler_lagrange_check(&charged_lagrangian(&rat(1, 2), &m, &a, metric)).unwrap();
            let h = CovariantHamiltonian::charged(rat(1, 2), m.clone(), a, metric).unwrap();
            assert_eq!(t.hamiltonian, h.k.scalar_part());
            assert!(t.is_consistent());
        }
        let cubic = PhasePoly::var(Var::qd(0)).pow(3);
        assert!(matches!(euler_lagrange_check(&cubic), Err(Error::Unsupported(_))));
        let mixed = &PhasePoly::var(Var::qd(0)) * &PhasePoly::var(Var::qd(1));
        assert!(matches!(euler_lagrange_check(&mixed), Err(Error::Unsupported(_))));
    }

    #[test]
    fn reports_pass() {
        for metric in [Metric::Standard, Metric::Nonstandard] {
            let r = classical_report(metric);
            assert!(r.passed(), "{r}");
            let r = spin_report(metric);
            assert!(r.passed(), "{r}");
        }
    }
}
