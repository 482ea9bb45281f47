//! The Dirac sector: Hamiltonian, energy and spin Wigner functions, and the
//! spin eigenfunctions of a homogeneous magnetic field.
//!
//! Defaults follow the Dirac-theory conventions: standard metric, 3D Moyal
//! on coefficients combined with Clifford on blades.

use num_traits::{One, Signed, Zero};

use crate::algebra::scalar::rational_sqrt;
use crate::algebra::{int, rat, Metric, Multivector, PhasePoly, Rational, ScalarH};
use crate::calculus::{projector_split_with_root, ProjectorSplit};
use crate::error::{domain, Error, Result};
use crate::report::{Check, Report};
use crate::star::{p_upper, ProductKind};

/// Free Dirac particle with exact mass, momentum p^i and energy.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracSystem {
    pub mass: Rational,
    /// Contravariant spatial momentum (p¹, p², p³).
    pub momentum: [Rational; 3],
    /// E = √(p⃗² + m²), exact.
    pub energy: Rational,
    pub metric: Metric,
}

impl DiracSystem {
    pub fn new(mass: Rational, momentum: [Rational; 3], metric: Metric) -> Result<Self> {
        if !mass.is_positive() {
            return domain(format!("mass must be positive, got {mass}"));
        }
        let e2 = momentum.iter().map(|p| p * p).sum::<Rational>() + &mass * &mass;
        let energy = rational_sqrt(&e2).ok_or_else(|| Error::IrrationalEigenvalue(e2.to_string()))?;
        Ok(Self { mass, momentum, energy, metric })
    }

    pub fn standard(mass: Rational, momentum: [Rational; 3]) -> Result<Self> {
        Self::new(mass, momentum, Metric::Standard)
    }

    /// 3D Moyal ⊗ Clifford with this system's metric.
    pub fn product(&self) -> ProductKind {
        ProductKind::moyal3_clifford(self.metric)
    }
}

/// Unit spin axis u⃗.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinAxis {
    pub u: [Rational; 3],
}

impl SpinAxis {
    pub fn new(u: [Rational; 3]) -> Result<Self> {
        let norm: Rational = u.iter().map(|x| x * x).sum();
        if !norm.is_one() {
            return domain(format!("spin axis must be a unit vector, |u|^2 = {norm}"));
        }
        Ok(Self { u })
    }

    /// A unit axis orthogonal to the momentum of `sys`.
    pub fn for_system(u: [Rational; 3], sys: &DiracSystem) -> Result<Self> {
        let axis = Self::new(u)?;
        let dot: Rational = axis.u.iter().zip(&sys.momentum).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return domain(format!("spin axis must be orthogonal to the momentum, u.p = {dot}"));
        }
        Ok(axis)
    }
}

/// Pythagorean `(m, |p⃗|, E)` triples giving exact energies.
pub const PYTHAGOREAN_POINTS: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];

/// Test points: each Pythagorean triple with momentum along z (axis x) and
/// along (3/5, 4/5, 0) (axis z).
pub fn pythagorean_catalogue() -> Vec<(DiracSystem, SpinAxis)> {
    let mut out = Vec::new();
    for (m, p, _) in PYTHAGOREAN_POINTS {
        let z = DiracSystem::standard(int(m), [int(0), int(0), int(p)]).expect("exact energy");
        let ux = SpinAxis::for_system([int(1), int(0), int(0)], &z).expect("orthogonal axis");
        out.push((z, ux));
        let tilted = DiracSystem::standard(int(m), [rat(3 * p, 5), rat(4 * p, 5), int(0)])
            .expect("exact energy");
        let uz = SpinAxis::for_system([int(0), int(0), int(1)], &tilted).expect("orthogonal axis");
        out.push((tilted, uz));
    }
    out
}

/// β = γ₀.
pub fn beta() -> Multivector {
    Multivector::gamma(0)
}

/// α_i = γ₀γ_i.
pub fn alpha(i: usize) -> Multivector {
    assert!((1..=3).contains(&i), "spatial index out of range: {i}");
    Multivector::gamma(0).grassmann_mul(&Multivector::gamma(i))
}

/// γ⁵ = iγ₀γ₁γ₂γ₃.
pub fn gamma5() -> Multivector {
    Multivector::pseudoscalar().scale(&ScalarH::i())
}

/// H_D = α_i p^i + βm at numeric momentum.
pub fn dirac_hamiltonian(sys: &DiracSystem) -> Multivector {
    let mut h = beta().scale_rational(&sys.mass);
    for i in 1..=3 {
        h += &alpha(i).scale_rational(&sys.momentum[i - 1]);
    }
    h
}

/// H_D with the momenta left as variables, p^i = η^{ii} p_i.
pub fn dirac_hamiltonian_symbolic(mass: &Rational, metric: Metric) -> Multivector {
    let mut h = beta().scale_rational(mass);
    for i in 1..=3 {
        h += &alpha(i).mul_poly(&p_upper(i, metric));
    }
    h
}

/// π_{±E} = ½(1 ± H_D/E).
pub fn energy_projectors(sys: &DiracSystem) -> Result<ProjectorSplit> {
    projector_split_with_root(
        &dirac_hamiltonian(sys),
        ScalarH::from_rational(sys.energy.clone()),
        sys.product(),
    )
}

/// S_u = (ħ/2) γ⁵ ⋆_C (γ_i u^i).
pub fn spin_operator(axis: &SpinAxis, metric: Metric) -> Multivector {
    let mut u = Multivector::zero();
    for i in 1..=3 {
        u += &Multivector::gamma(i).scale_rational(&axis.u[i - 1]);
    }
    let half_hbar = ScalarH::hbar().scale_rational(&rat(1, 2));
    ProductKind::clifford(metric)
        .star(&gamma5(), &u)
        .scale(&half_hbar)
}

/// π_{±½} = ½ ± S_u/ħ.
pub fn spin_projectors(axis: &SpinAxis, metric: Metric) -> Result<ProjectorSplit> {
    projector_split_with_root(
        &spin_operator(axis, metric),
        ScalarH::hbar().scale_rational(&rat(1, 2)),
        ProductKind::clifford(metric),
    )
}

/// The four Wigner functions π_{±E,±½} = π_{±E} ⋆ π_{±½}.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedProjectors {
    /// `(energy sign, spin sign, projector)` in the order
    /// (+,+), (+,−), (−,+), (−,−).
    pub entries: Vec<(i8, i8, Multivector)>,
    pub hamiltonian: Multivector,
    pub spin: Multivector,
    pub energy: ScalarH,
    pub kind: ProductKind,
}

impl CombinedProjectors {
    pub fn completeness_residual(&self) -> Multivector {
        let mut sum = Multivector::zero();
        for (_, _, p) in &self.entries {
            sum += p;
        }
        &sum - &Multivector::one()
    }

    /// `π_a ⋆ π_b − δ_ab π_a` over all ordered pairs.
    pub fn product_residuals(&self) -> Vec<Multivector> {
        let mut out = Vec::new();
        for (a, (_, _, pa)) in self.entries.iter().enumerate() {
            for (b, (_, _, pb)) in self.entries.iter().enumerate() {
                let prod = self.kind.star(pa, pb);
                out.push(if a == b { &prod - pa } else { prod });
            }
        }
        out
    }

    /// Energy and spin eigenvalue residuals for every entry.
    pub fn eigen_residuals(&self) -> Vec<Multivector> {
        let half_hbar = ScalarH::hbar().scale_rational(&rat(1, 2));
        let mut out = Vec::new();
        for (es, ss, p) in &self.entries {
            let e = self.energy.scale_rational(&int(*es as i64));
            let s = half_hbar.scale_rational(&int(*ss as i64));
            out.push(&self.kind.star(&self.hamiltonian, p) - &p.scale(&e));
            out.push(&self.kind.star(&self.spin, p) - &p.scale(&s));
        }
        out
    }

    pub fn verify(&self) -> bool {
        self.completeness_residual().is_zero()
            && self.product_residuals().iter().all(Multivector::is_zero)
            && self.eigen_residuals().iter().all(Multivector::is_zero)
    }
}

pub fn combined_projectors(sys: &DiracSystem, axis: &SpinAxis) -> Result<CombinedProjectors> {
    let axis = SpinAxis::for_system(axis.u.clone(), sys)?;
    let energy = energy_projectors(sys)?;
    let spin = spin_projectors(&axis, sys.metric)?;
    let kind = sys.product();
    let mut entries = Vec::with_capacity(4);
    for (es, pe) in [(1, &energy.pi_plus), (-1, &energy.pi_minus)] {
        for (ss, ps) in [(1, &spin.pi_plus), (-1, &spin.pi_minus)] {
            entries.push((es, ss, kind.star(pe, ps)));
        }
    }
    Ok(CombinedProjectors {
        entries,
        hamiltonian: dirac_hamiltonian(sys),
        spin: spin_operator(&axis, sys.metric),
        energy: ScalarH::from_rational(sys.energy.clone()),
        kind,
    })
}

/// iγ₁γ₂, the spin generator of a field along the third axis.
pub fn magnetic_spin_generator() -> Multivector {
    Multivector::gamma(1)
        .grassmann_mul(&Multivector::gamma(2))
        .scale(&ScalarH::i())
}

/// W± = ½ ± (i/2)γ₁γ₂.
pub fn magnetic_spin_eigenfunctions() -> (Multivector, Multivector) {
    let half = Multivector::from_rational(rat(1, 2));
    let b = magnetic_spin_generator().scale_rational(&rat(1, 2));
    (&half + &b, &half - &b)
}

/// Residuals of `iγ₁γ₂ ⋆_C W± = ±W±` and of `W± ⋆_C W± = W±`.
pub fn magnetic_spin_residuals(metric: Metric) -> Vec<Multivector> {
    let c = ProductKind::clifford(metric);
    let gen = magnetic_spin_generator();
    let (wp, wm) = magnetic_spin_eigenfunctions();
    vec![
        &c.star(&gen, &wp) - &wp,
        &c.star(&gen, &wm) + &wm,
        &c.star(&wp, &wp) - &wp,
        &c.star(&wm, &wm) - &wm,
        c.star(&wp, &wm),
        &(&wp + &wm) - &Multivector::one(),
    ]
}

/// Residuals of β⋆β = 1, α_i⋆α_i = 1, {β,α_i} = 0, {α_i,α_j} = 2δ_ij,
/// labeled by relation.
pub fn dirac_matrix_relations(metric: Metric) -> Vec<(String, Multivector)> {
    let c = ProductKind::clifford(metric);
    let one = Multivector::one();
    let mut out = vec![("beta*beta = 1".to_string(), &c.star(&beta(), &beta()) - &one)];
    for i in 1..=3 {
        out.push((format!("alpha{i}*alpha{i} = 1"), &c.star(&alpha(i), &alpha(i)) - &one));
        out.push((format!("{{beta, alpha{i}}} = 0"), c.anticommutator(&beta(), &alpha(i))));
        for j in 1..=3 {
            let expected = Multivector::from_int(if i == j { 2 } else { 0 });
            out.push((
                format!("{{alpha{i}, alpha{j}}} = 2 delta"),
                &c.anticommutator(&alpha(i), &alpha(j)) - &expected,
            ));
        }
    }
    out
}

/// `H_D ⋆ H_D − (p⃗² + m²)` for symbolic momenta.
pub fn mass_shell_residual(mass: &Rational, metric: Metric) -> Multivector {
    let h = dirac_hamiltonian_symbolic(mass, metric);
    let square = ProductKind::moyal3_clifford(metric).star(&h, &h);
    let mut expected = PhasePoly::constant(ScalarH::from_rational(mass * mass));
    for i in 1..=3 {
        expected += &PhasePoly::p(i).pow(2);
    }
    &square - &Multivector::from_poly(expected)
}

/// Clifford relations, mass shell and all Wigner-function identities at
/// every catalogue point.
pub fn dirac_report() -> Report {
    let mut report = Report::new("Dirac sector");
    for metric in [Metric::Standard, Metric::Nonstandard] {
        let c = ProductKind::clifford(metric);
        for mu in 0..4 {
            for nu in 0..4 {
                let expected = Multivector::from_int(2 * metric.eta(mu, nu));
                report.push(Check::exact(
                    "{g_m, g_n}*C = 2 eta_mn",
                    format!("{metric} m={mu} n={nu}"),
                    &c.anticommutator(&Multivector::gamma(mu), &Multivector::gamma(nu)) - &expected,
                ));
            }
        }
    }
    report.push(Check::exact(
        "H_D *MC H_D = p^2 + m^2",
        "standard m=3",
        mass_shell_residual(&int(3), Metric::Standard),
    ));
    for (label, residual) in dirac_matrix_relations(Metric::Standard) {
        report.push(Check::exact(label, "standard", residual));
    }
    for (sys, axis) in pythagorean_catalogue() {
        let inst = format!(
            "m={} p=({}, {}, {}) E={}",
            sys.mass, sys.momentum[0], sys.momentum[1], sys.momentum[2], sys.energy
        );
        let push_split = |report: &mut Report, name: &str, split: Result<ProjectorSplit>, a: &Multivector| match split {
            Ok(sp) => {
                report.push(Check::exact(format!("{name}+ + {name}- = 1"), &inst, sp.completeness_residual()));
                let [ip, im] = sp.idempotency_residuals();
                report.push(Check::exact(format!("{name}+ * {name}+ = {name}+"), &inst, ip));
                report.push(Check::exact(format!("{name}- * {name}- = {name}-"), &inst, im));
                let [o1, o2] = sp.orthogonality_residuals();
                report.push(Check::exact(format!("{name}+ * {name}- = 0"), &inst, o1));
                report.push(Check::exact(format!("{name}- * {name}+ = 0"), &inst, o2));
                let [ep, em] = sp.eigen_residuals(a);
                report.push(Check::exact(format!("A * {name}+ = +c {name}+"), &inst, ep));
                report.push(Check::exact(format!("A * {name}- = -c {name}-"), &inst, em));
            }
            Err(e) => report.push(Check::holds(format!("{name} split"), format!("{inst}: {e}"), false)),
        };
        push_split(&mut report, "pi_E", energy_projectors(&sys), &dirac_hamiltonian(&sys));
        push_split(&mut report, "pi_S", spin_projectors(&axis, sys.metric), &spin_operator(&axis, sys.metric));
        match combined_projectors(&sys, &axis) {
            Ok(cp) => {
                report.push(Check::exact("sum pi_(+-E,+-1/2) = 1", &inst, cp.completeness_residual()));
                for r in cp.product_residuals() {
                    report.push(Check::exact("pi_a *MC pi_b = delta_ab pi_a", &inst, r));
                }
                for (k, r) in cp.eigen_residuals().into_iter().enumerate() {
                    let identity = if k % 2 == 0 {
                        "H_D *MC pi_(+-E,s) = +-E pi_(+-E,s)"
                    } else {
                        "S_u *MC pi_(e,+-1/2) = +-hb/2 pi_(e,+-1/2)"
                    };
                    report.push(Check::exact(identity, &inst, r));
                }
            }
            Err(e) => report.push(Check::holds("combined projectors", format!("{inst}: {e}"), false)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::star_eigencheck;

    fn sys345() -> DiracSystem {
        DiracSystem::standard(int(3), [int(0), int(0), int(4)]).unwrap()
    }

    #[test]
    fn energy_is_exact_or_rejected() {
        assert_eq!(sys345().energy, int(5));
        let e = DiracSystem::standard(int(1), [int(1), int(0), int(0)]).unwrap_err();
        assert!(matches!(e, Error::IrrationalEigenvalue(_)));
        assert!(DiracSystem::standard(int(0), [int(3), int(4), int(0)]).is_err());
    }

    #[test]
    fn rest_frame_hamiltonian() {
        let sys = DiracSystem::standard(int(1), [int(0), int(0), int(0)]).unwrap();
        assert_eq!(dirac_hamiltonian(&sys), Multivector::gamma(0));
        let split = energy_projectors(&sys).unwrap();
        let half = Multivector::from_rational(rat(1, 2));
        assert_eq!(split.pi_plus, &half + &Multivector::gamma(0).scale_rational(&rat(1, 2)));
    }

    #[test]
    fn hamiltonian_at_345() {
        let h = dirac_hamiltonian(&sys345());
        let expected = &alpha(3).scale_rational(&int(4)) + &beta().scale_rational(&int(3));
        assert_eq!(h, expected);
        let split = energy_projectors(&sys345()).unwrap();
        let half = Multivector::from_rational(rat(1, 2));
        assert_eq!(split.pi_plus, &half + &expected.scale_rational(&rat(1, 10)));
        assert!(split.verify(&h));
        assert!(star_eigencheck(&h, &split.pi_plus, &ScalarH::from_int(5), sys345().product()));
    }

    #[test]
    fn dirac_relations_hold_in_standard_metric() {
        for (label, r) in dirac_matrix_relations(Metric::Standard) {
            assert!(r.is_zero(), "{label}: {r}");
        }
        assert!(mass_shell_residual(&int(3), Metric::Standard).is_zero());
    }

    #[test]
    fn spin_operator_squares_to_quarter_hbar_squared() {
        let axis = SpinAxis::new([int(0), int(0), int(1)]).unwrap();
        let s = spin_operator(&axis, Metric::Standard);
        let c = ProductKind::clifford(Metric::Standard);
        assert_eq!(
            c.star(&s, &s),
            Multivector::scalar(ScalarH::hbar_pow(2).scale_rational(&rat(1, 4)))
        );
        // (ħ/2) i I ⋆ γ₃ = (ħ/2) i η₃₃ γ₀γ₁γ₂ (moving γ₃ through nothing)
        let g012 = Multivector::gamma(0)
            .grassmann_mul(&Multivector::gamma(1))
            .grassmann_mul(&Multivector::gamma(2));
        let expected = g012.scale(&(ScalarH::i() * ScalarH::hbar()).scale_rational(&rat(-1, 2)));
        assert_eq!(s, expected);
    }

    #[test]
    fn spin_projectors_and_commutation() {
        let axis = SpinAxis::new([int(0), int(0), int(1)]).unwrap();
        let split = spin_projectors(&axis, Metric::Standard).unwrap();
        let s = spin_operator(&axis, Metric::Standard);
        assert!(split.verify(&s));
        let half = Multivector::from_rational(rat(1, 2));
        assert_eq!(split.pi_plus, &half + &s.scale(&ScalarH::hbar_pow(-1)));

        let ux = SpinAxis::for_system([int(1), int(0), int(0)], &sys345()).unwrap();
        let sx = spin_operator(&ux, Metric::Standard);
        let h = dirac_hamiltonian(&sys345());
        assert!(ProductKind::clifford(Metric::Standard).commutator(&h, &sx).is_zero());
    }

    #[test]
    fn axis_validation() {
        assert!(SpinAxis::new([int(1), int(1), int(0)]).is_err());
        assert!(SpinAxis::for_system([int(0), int(0), int(1)], &sys345()).is_err());
    }

    #[test]
    fn combined_projectors_at_345() {
        let axis = SpinAxis::for_system([int(1), int(0), int(0)], &sys345()).unwrap();
        let cp = combined_projectors(&sys345(), &axis).unwrap();
        assert!(cp.verify());
    }

    #[test]
    fn magnetic_eigenfunctions() {
        for metric in [Metric::Standard, Metric::Nonstandard] {
            for r in magnetic_spin_residuals(metric) {
                assert!(r.is_zero(), "{r}");
            }
        }
    }

    #[test]
    fn report_passes() {
        let r = dirac_report();
        assert!(r.passed(), "{}", r.failures().next().unwrap());
        assert!(r.len() > 250);
    }
}
