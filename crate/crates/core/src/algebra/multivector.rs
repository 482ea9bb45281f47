use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::blade::Blade;
use super::poly::{Monomial, PhasePoly, Var};
use super::scalar::{Rational, ScalarH};
use crate::error::{domain, Result};

/// Multivector with phase-space polynomial coefficients:
/// a map from the 16 blades to [`PhasePoly`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multivector {
    components: BTreeMap<Blade, PhasePoly>,
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ScalarH::one())
    }

    pub fn scalar(c: ScalarH) -> Self {
        Self::from_poly(PhasePoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::scalar(ScalarH::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::scalar(ScalarH::from_rational(r))
    }

    pub fn from_poly(p: PhasePoly) -> Self {
        Self::term(Blade::SCALAR, p)
    }

    pub fn term(blade: Blade, coeff: PhasePoly) -> Self {
        let mut components = BTreeMap::new();
        if !coeff.is_zero() {
            components.insert(blade, coeff);
        }
        Self { components }
    }

    pub fn blade(blade: Blade) -> Self {
        Self::term(blade, PhasePoly::one())
    }

    /// The basis vector γ_μ.
    pub fn gamma(mu: usize) -> Self {
        Self::blade(Blade::generator(mu))
    }

    /// The pseudoscalar γ₀γ₁γ₂γ₃.
    pub fn pseudoscalar() -> Self {
        Self::blade(Blade::PSEUDOSCALAR)
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(PhasePoly::var(v))
    }

    pub fn q(mu: usize) -> Self {
        Self::var(Var::q(mu))
    }

    pub fn p(mu: usize) -> Self {
        Self::var(Var::p(mu))
    }

    /// Grade-1 element `Σ coeffs[μ] γ_μ`.
    pub fn vector(coeffs: [PhasePoly; 4]) -> Self {
        let mut out = Self::zero();
        for (mu, c) in coeffs.into_iter().enumerate() {
            out.add_component(Blade::generator(mu), &c);
        }
        out
    }

    pub fn from_components(parts: impl IntoIterator<Item = (Blade, PhasePoly)>) -> Self {
        let mut out = Self::zero();
        for (b, p) in parts {
            out.add_component(b, &p);
        }
        out
    }

    /// Flat `(blade, monomial, coefficient)` terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Blade, Monomial, ScalarH)>) -> Self {
        let mut out = Self::zero();
        for (b, m, c) in terms {
            out.add_component(b, &PhasePoly::term(m, c));
        }
        out
    }

    pub fn add_component(&mut self, blade: Blade, coeff: &PhasePoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.components.entry(blade).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.components.remove(&blade);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (Blade, &PhasePoly)> {
        self.components.iter().map(|(b, p)| (*b, p))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Monomial, &ScalarH)> {
        self.components
            .iter()
            .flat_map(|(b, p)| p.terms().map(move |(m, c)| (*b, m, c)))
    }

    pub fn coefficient(&self, blade: Blade) -> PhasePoly {
        self.components.get(&blade).cloned().unwrap_or_default()
    }

    /// Grade-0 coefficient ⟨A⟩₀.
    pub fn scalar_part(&self) -> PhasePoly {
        self.coefficient(Blade::SCALAR)
    }

    /// The constant value of a grade-0, variable-free multivector.
    pub fn as_scalar_constant(&self) -> Option<ScalarH> {
        match self.components.len() {
            0 => Some(ScalarH::zero()),
            1 => self.components.get(&Blade::SCALAR)?.as_constant(),
            _ => None,
        }
    }

    /// True when every coefficient is a constant (no phase-space variable).
    pub fn has_constant_coefficients(&self) -> bool {
        self.components.values().all(|p| p.as_constant().is_some())
    }

    pub fn grades(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().map(|b| b.grade())
    }

    pub fn is_grade(&self, n: u32) -> bool {
        self.grades().all(|g| g == n)
    }

    pub fn scale(&self, c: &ScalarH) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&ScalarH::from_rational(r.clone()))
    }

    /// Multiplies every coefficient by a commuting polynomial.
    pub fn mul_poly(&self, f: &PhasePoly) -> Self {
        self.map_coeffs(|p| p * f)
    }

    pub fn map_coeffs(&self, f: impl Fn(&PhasePoly) -> PhasePoly) -> Self {
        Self::from_components(self.components.iter().map(|(b, p)| (*b, f(p))))
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&PhasePoly) -> Result<PhasePoly>) -> Result<Self> {
        let mut out = Self::zero();
        for (b, p) in &self.components {
            out.add_component(*b, &f(p)?);
        }
        Ok(out)
    }

    /// Undeformed exterior product; coefficients multiply as commuting polynomials.
    pub fn grassmann_mul(&self, other: &Multivector) -> Multivector {
        self.bilinear(other, |a, b| a.wedge(b).map(|(s, c)| (s as i64, c)), |f, g| f * g)
    }

    /// Bilinear extension of a blade rule and a coefficient rule.
    ///
    /// `blade_rule` maps a pair of blades to at most one signed blade,
    /// `coeff_rule` multiplies the coefficients.
    pub fn bilinear(
        &self,
        other: &Multivector,
        blade_rule: impl Fn(Blade, Blade) -> Option<(i64, Blade)>,
        coeff_rule: impl Fn(&PhasePoly, &PhasePoly) -> PhasePoly,
    ) -> Multivector {
        let mut out = Multivector::zero();
        for (ba, pa) in &self.components {
            for (bb, pb) in &other.components {
                let Some((factor, blade)) = blade_rule(*ba, *bb) else {
                    continue;
                };
                let prod = coeff_rule(pa, pb);
                if factor == 1 {
                    out.add_component(blade, &prod);
                } else {
                    out.add_component(blade, &prod.scale(&ScalarH::from_int(factor)));
                }
            }
        }
        out
    }

    /// ⟨A⟩_n, the part of Grassmann grade `n`.
    pub fn grade_project(&self, n: u32) -> Result<Multivector> {
        if n > 4 {
            return domain(format!("grade {n} outside 0..=4"));
        }
        Ok(Self::from_components(
            self.components
                .iter()
                .filter(|(b, _)| b.grade() == n)
                .map(|(b, p)| (*b, p.clone())),
        ))
    }

    /// Coefficient-wise partial derivative; blades untouched.
    pub fn partial(&self, v: Var) -> Multivector {
        self.map_coeffs(|p| p.partial(v))
    }

    /// Left Grassmann derivative ∂⃗/∂γ_μ.
    pub fn grassmann_partial_left(&self, mu: usize) -> Multivector {
        assert!(mu < 4, "generator index out of range: {mu}");
        self.grassmann_derivative(|b| b.left_derivative(mu))
    }

    /// Right Grassmann derivative ∂⃖/∂γ_μ.
    pub fn grassmann_partial_right(&self, mu: usize) -> Multivector {
        assert!(mu < 4, "generator index out of range: {mu}");
        self.grassmann_derivative(|b| b.right_derivative(mu))
    }

    fn grassmann_derivative(&self, rule: impl Fn(Blade) -> Option<(i8, Blade)>) -> Multivector {
        let mut out = Multivector::zero();
        for (b, p) in &self.components {
            if let Some((sign, rest)) = rule(*b) {
                if sign > 0 {
                    out.add_component(rest, p);
                } else {
                    out.add_component(rest, &-p);
                }
            }
        }
        out
    }

    /// Drops every term with a positive power of ħ.
    pub fn hbar_set_zero(&self) -> Multivector {
        self.map_coeffs(PhasePoly::hbar_set_zero)
    }

    /// Exact division by iħ.
    pub fn divide_by_ihbar(&self) -> Result<Multivector> {
        self.try_map_coeffs(PhasePoly::divide_by_ihbar)
    }

    /// Coefficient of `s^n`, with `s` removed.
    pub fn coefficient_of(&self, v: Var, n: u32) -> Multivector {
        self.map_coeffs(|p| p.coefficient_of(v, n))
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.components.values().map(|p| p.degree_in(v)).max().unwrap_or(0)
    }

    /// Replaces a variable everywhere by a polynomial.
    pub fn substitute(&self, v: Var, value: &PhasePoly) -> Multivector {
        self.map_coeffs(|p| p.substitute(v, value))
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (b, m, c)) in self.terms().enumerate() {
            let rest = match (m.is_one(), b == Blade::SCALAR) {
                (true, true) => "1".to_string(),
                (true, false) => b.to_string(),
                (false, true) => m.to_string(),
                (false, false) => format!("{m}*{b}"),
            };
            let (neg, body) = super::format_term(c, &rest);
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}

impl From<PhasePoly> for Multivector {
    fn from(p: PhasePoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<ScalarH> for Multivector {
    fn from(c: ScalarH) -> Self {
        Self::scalar(c)
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        for (b, p) in &rhs.components {
            self.add_component(*b, p);
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        for (b, p) in &rhs.components {
            self.add_component(*b, &-p);
        }
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += &rhs;
        self
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= &rhs;
        self
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_coeffs(|p| -p)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

/// `*` is the undeformed Grassmann product.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.grassmann_mul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};
    use crate::sample::random_multivector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(mu: usize) -> Multivector {
        Multivector::gamma(mu)
    }

    #[test]
    fn grassmann_examples() {
        let g01 = Multivector::blade(Blade::from_indices(&[0, 1]).unwrap());
        assert_eq!(g(0).grassmann_mul(&g(1)), g01);
        assert!(g(1).grassmann_mul(&g(1)).is_zero());
        assert_eq!(g(1).grassmann_mul(&g(0)), -&g01);
    }

    #[test]
    fn generators_anticommute() {
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(g(mu).grassmann_mul(&g(nu)), -g(nu).grassmann_mul(&g(mu)));
            }
        }
    }

    #[test]
    fn grassmann_associative_and_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_multivector(&mut rng, 3, 3);
            let b = random_multivector(&mut rng, 3, 3);
            let c = random_multivector(&mut rng, 3, 3);
            assert_eq!(
                a.grassmann_mul(&b).grassmann_mul(&c),
                a.grassmann_mul(&b.grassmann_mul(&c))
            );
            assert_eq!(
                a.grassmann_mul(&(&b + &c)),
                &a.grassmann_mul(&b) + &a.grassmann_mul(&c)
            );
            let k = ScalarH::from_rational(rat(-3, 7));
            assert_eq!(a.scale(&k).grassmann_mul(&b), a.grassmann_mul(&b).scale(&k));
        }
    }

    #[test]
    fn grade_projection() {
        let g01 = Multivector::blade(Blade::from_indices(&[0, 1]).unwrap());
        let x = &Multivector::one() + &g01;
        assert_eq!(x.grade_project(0).unwrap(), Multivector::one());
        let i4 = Multivector::pseudoscalar();
        assert_eq!(i4.grade_project(4).unwrap(), i4);
        let a = Multivector::q(1).grassmann_mul(&g(0));
        let b = Multivector::p(2).grassmann_mul(&g01);
        assert_eq!((&a + &b).grade_project(1).unwrap(), a);
        assert!(x.grade_project(5).is_err());
    }

    #[test]
    fn grade_projections_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_multivector(&mut rng, 3, 5);
            let mut sum = Multivector::zero();
            for n in 0..=4 {
                sum += &a.grade_project(n).unwrap();
            }
            assert_eq!(sum, a);
        }
    }

    #[test]
    fn coefficient_partials() {
        let x = Multivector::from_poly(&PhasePoly::q(1) * &PhasePoly::p(2));
        assert_eq!(x.partial(Var::q(1)), Multivector::p(2));
        assert!(Multivector::q(0).partial(Var::p(0)).is_zero());
        let y = Multivector::from_poly(PhasePoly::q(2).pow(2)).grassmann_mul(&g(0));
        assert_eq!(
            y.partial(Var::q(2)),
            Multivector::q(2).grassmann_mul(&g(0)).scale_rational(&int(2))
        );
    }

    #[test]
    fn grassmann_partials() {
        let g01 = Multivector::blade(Blade::from_indices(&[0, 1]).unwrap());
        assert_eq!(g01.grassmann_partial_left(0), g(1));
        assert_eq!(g01.grassmann_partial_left(1), -g(0));
        assert!(g01.grassmann_partial_left(2).is_zero());
    }

    #[test]
    fn hbar_operations() {
        let x = &Multivector::one() + &Multivector::q(0).scale(&ScalarH::hbar());
        assert_eq!(x.hbar_set_zero(), Multivector::one());
        let g01 = Multivector::blade(Blade::from_indices(&[0, 1]).unwrap());
        assert!(g01.scale(&ScalarH::hbar_pow(2)).hbar_set_zero().is_zero());
        assert_eq!(
            Multivector::scalar(ScalarH::i_hbar()).divide_by_ihbar().unwrap(),
            Multivector::one()
        );
        assert!(Multivector::q(0).divide_by_ihbar().is_err());
    }

    #[test]
    fn canonical_text() {
        let c = ScalarH::from_rational(rat(3, 2))
            + ScalarH::monomial(num_complex::Complex::new(int(0), rat(1, 2)), 2);
        let m = Monomial::one().with(Var::q(1), 2).with(Var::p(0), 1);
        let x = Multivector::from_terms([(Blade::from_indices(&[0, 1]).unwrap(), m, c)]);
        assert_eq!(x.to_string(), "(1/2*i*hb^2 + 3/2)*q1^2*p0*g0g1");
        let y = &g(0) - &Multivector::from_int(2);
        assert_eq!(y.to_string(), "-2 + g0");
    }
}
