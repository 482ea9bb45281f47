//! Star powers, star exponentials and their projector splitting.
//!
//! The exponent convention is `Exp(Ks) = Σ (1/n!) (−is/ħ)ⁿ K^{n⋆}` throughout.
//! Phase factors `e^{∓isc/ħ}` are never materialized: a closed form is the
//! pair of projectors plus the eigenvalue, and it is compared against the
//! series coefficient by coefficient.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::algebra::poly::factorial;
use crate::algebra::{rat, Multivector, PhasePoly, Rational, ScalarH, Var};
use crate::error::{domain, Error, Result};
use crate::star::ProductKind;

/// n-fold star product; `A^{0⋆} = 1`.
pub fn star_power(a: &Multivector, n: i64, kind: ProductKind) -> Result<Multivector> {
    if n < 0 {
        return domain(format!("negative star power {n}"));
    }
    let mut acc = Multivector::one();
    for _ in 0..n {
        acc = kind.star(&acc, a);
    }
    Ok(acc)
}

/// `(−i/ħ)^n / n!`.
fn exp_weight(n: usize) -> ScalarH {
    let minus_i = ScalarH::from_complex(Complex::new(Rational::zero(), -Rational::one()));
    let base = &minus_i * &ScalarH::hbar_pow(-1);
    base.pow(n as u32).scale_rational(&(Rational::one() / factorial(n as u32)))
}

/// Projector pair of an element whose star square is a constant scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSplit {
    /// `c` with `c² = A ⋆ A`.
    pub eigenvalue: ScalarH,
    /// ½(1 − A/c)
    pub pi_minus: Multivector,
    /// ½(1 + A/c)
    pub pi_plus: Multivector,
    pub kind: ProductKind,
}

impl ProjectorSplit {
    pub fn completeness_residual(&self) -> Multivector {
        &(&self.pi_plus + &self.pi_minus) - &Multivector::one()
    }

    /// `π± ⋆ π± − π±`, plus first then minus.
    pub fn idempotency_residuals(&self) -> [Multivector; 2] {
        let k = self.kind;
        [
            &k.star(&self.pi_plus, &self.pi_plus) - &self.pi_plus,
            &k.star(&self.pi_minus, &self.pi_minus) - &self.pi_minus,
        ]
    }

    /// `π+ ⋆ π−` and `π− ⋆ π+`.
    pub fn orthogonality_residuals(&self) -> [Multivector; 2] {
        let k = self.kind;
        [
            k.star(&self.pi_plus, &self.pi_minus),
            k.star(&self.pi_minus, &self.pi_plus),
        ]
    }

    /// `A ⋆ π± ∓ c π±`.
    pub fn eigen_residuals(&self, a: &Multivector) -> [Multivector; 2] {
        let k = self.kind;
        [
            &k.star(a, &self.pi_plus) - &self.pi_plus.scale(&self.eigenvalue),
            &k.star(a, &self.pi_minus) + &self.pi_minus.scale(&self.eigenvalue),
        ]
    }

    /// All projector identities for the element `a` this split came from.
    pub fn verify(&self, a: &Multivector) -> bool {
        self.completeness_residual().is_zero()
            && self.idempotency_residuals().iter().all(Multivector::is_zero)
            && self.orthogonality_residuals().iter().all(Multivector::is_zero)
            && self.eigen_residuals(a).iter().all(Multivector::is_zero)
    }

    /// n-th Taylor coefficient in `s` of `π− e^{+isc/ħ} + π+ e^{−isc/ħ}`.
    pub fn exp_coefficient(&self, n: usize) -> Multivector {
        let w = exp_weight(n);
        let c_n = self.eigenvalue.pow(n as u32);
        let plus = self.pi_plus.scale(&(&w * &c_n));
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let minus = self.pi_minus.scale(&(&w * &c_n).scale_rational(&rat(sign, 1)));
        &plus + &minus
    }
}

/// Splits `a` into ½(1 ± a/c) where `c = √(a ⋆ a)` must be exact.
pub fn projector_split(a: &Multivector, kind: ProductKind) -> Result<ProjectorSplit> {
    let square = kind.star(a, a);
    let c2 = square.as_scalar_constant().ok_or_else(|| {
        Error::NotSplittable(format!("star square {square} is not a constant scalar"))
    })?;
    let c = c2.sqrt().ok_or_else(|| Error::IrrationalEigenvalue(c2.to_string()))?;
    build_split(a, c, kind)
}

/// As [`projector_split`] with a caller-supplied exact root `c`, checked
/// against `a ⋆ a = c²`.
pub fn projector_split_with_root(a: &Multivector, root: ScalarH, kind: ProductKind) -> Result<ProjectorSplit> {
    let square = kind.star(a, a);
    if square != Multivector::scalar(&root * &root) {
        return Err(Error::NotSplittable(format!(
            "star square {square} differs from ({root})^2"
        )));
    }
    build_split(a, root, kind)
}

fn build_split(a: &Multivector, c: ScalarH, kind: ProductKind) -> Result<ProjectorSplit> {
    let inv = c
        .inverse()
        .ok_or_else(|| Error::NotSplittable(format!("eigenvalue {c} is not invertible")))?;
    let half = Multivector::from_rational(rat(1, 2));
    let shifted = a.scale(&inv.scale_rational(&rat(1, 2)));
    Ok(ProjectorSplit {
        eigenvalue: c,
        pi_minus: &half - &shifted,
        pi_plus: &half + &shifted,
        kind,
    })
}

/// Leading coefficients of a star exponential.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedExp {
    pub order: usize,
    /// `coefficients[n] = (1/n!)(−i/ħ)ⁿ K^{n⋆}`.
    pub coefficients: Vec<Multivector>,
}

impl TruncatedExp {
    /// The partial sum `Σ_n coefficients[n] sⁿ` as a multivector in `s`.
    pub fn series(&self) -> Multivector {
        let mut out = Multivector::zero();
        for (n, c) in self.coefficients.iter().enumerate() {
            out += &c.mul_poly(&PhasePoly::var(Var::S).pow(n as u32));
        }
        out
    }
}

/// First `order + 1` coefficients of `Exp(Ks)`, by the recurrence
/// `c_{n+1} = (−i/ħ)/(n+1) · K ⋆ c_n`.
pub fn star_exp_truncated(k: &Multivector, order: usize, kind: ProductKind) -> TruncatedExp {
    let mut coefficients = Vec::with_capacity(order + 1);
    let mut power = Multivector::one();
    for n in 0..=order {
        if n > 0 {
            power = kind.star(k, &power);
        }
        coefficients.push(power.scale(&exp_weight(n)));
    }
    TruncatedExp { order, coefficients }
}

/// True iff `H ⋆ W − λW` is exactly zero.
pub fn star_eigencheck(h: &Multivector, w: &Multivector, lambda: &ScalarH, kind: ProductKind) -> bool {
    (&kind.star(h, w) - &w.scale(lambda)).is_zero()
}

/// Coefficients in `s` of a series-valued residual.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResidual {
    pub order: usize,
    pub coefficients: Vec<Multivector>,
}

impl SeriesResidual {
    /// True when every coefficient of `sⁿ`, `n < order`, is zero.
    pub fn vanishes_below(&self, order: usize) -> bool {
        self.coefficients.iter().take(order).all(Multivector::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }
}

/// `iħ d/ds Exp(Ks) − K ⋆ Exp(Ks)` on the order-`n` truncation.
///
/// Only the top coefficient `sⁿ` survives when the series is correct.
pub fn schrodinger_residual(k: &Multivector, n: usize, kind: ProductKind) -> Result<SeriesResidual> {
    if n < 1 {
        return domain("truncation order must be at least 1");
    }
    let exp = star_exp_truncated(k, n, kind).series();
    let lhs = exp.partial(Var::S).scale(&ScalarH::i_hbar());
    let residual = &lhs - &kind.star(k, &exp);
    let coefficients = (0..=n).map(|j| residual.coefficient_of(Var::S, j as u32)).collect();
    Ok(SeriesResidual { order: n, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Metric;

    #[test]
    fn powers() {
        let c = ProductKind::clifford(Metric::Standard);
        assert_eq!(star_power(&Multivector::gamma(0), 2, c).unwrap(), Multivector::one());
        assert_eq!(star_power(&Multivector::q(1), 0, c).unwrap(), Multivector::one());
        assert!(star_power(&Multivector::q(1), -1, c).is_err());
    }

    #[test]
    fn split_of_timelike_generator() {
        let c = ProductKind::clifford(Metric::Standard);
        let g0 = Multivector::gamma(0);
        let split = projector_split(&g0, c).unwrap();
        assert_eq!(split.eigenvalue, ScalarH::one());
        let half = Multivector::from_rational(rat(1, 2));
        assert_eq!(split.pi_plus, &half + &g0.scale_rational(&rat(1, 2)));
        assert!(split.verify(&g0));
    }

    #[test]
    fn split_errors() {
        let c = ProductKind::clifford(Metric::Standard);
        // γ₁ ⋆ γ₁ = −1 has no real root
        let e = projector_split(&Multivector::gamma(1), c).unwrap_err();
        assert!(matches!(e, Error::IrrationalEigenvalue(_)));
        // (γ₀ + γ₀γ₁)⋆² = 2
        let g01 = Multivector::blade(crate::algebra::Blade::from_indices(&[0, 1]).unwrap());
        let e = projector_split(&(&Multivector::gamma(0) + &g01), c).unwrap_err();
        assert!(matches!(e, Error::IrrationalEigenvalue(_)));
        let m4 = ProductKind::moyal4(Metric::Nonstandard);
        let e = projector_split(&Multivector::q(0), m4).unwrap_err();
        assert!(matches!(e, Error::NotSplittable(_)));
    }

    #[test]
    fn exp_of_zero_and_of_a_momentum() {
        let m4 = ProductKind::moyal4(Metric::Nonstandard);
        let e = star_exp_truncated(&Multivector::zero(), 3, m4);
        assert_eq!(e.coefficients[0], Multivector::one());
        assert!(e.coefficients[1..].iter().all(Multivector::is_zero));

        let p0 = Multivector::p(0);
        let e = star_exp_truncated(&p0, 2, m4);
        let minus_i_over_hbar = ScalarH::from_complex(Complex::new(Rational::zero(), -Rational::one()))
            * ScalarH::hbar_pow(-1);
        assert_eq!(e.coefficients[1], p0.scale(&minus_i_over_hbar));
        let p0sq = Multivector::from_poly(PhasePoly::p(0).pow(2));
        let w2 = minus_i_over_hbar.pow(2).scale_rational(&rat(1, 2));
        assert_eq!(e.coefficients[2], p0sq.scale(&w2));
    }

    #[test]
    fn residual_of_a_momentum() {
        let m4 = ProductKind::moyal4(Metric::Nonstandard);
        let r = schrodinger_residual(&Multivector::p(0), 6, m4).unwrap();
        assert!(r.vanishes_below(6));
        assert_eq!(r.first_nonzero(), Some(6));
        let r0 = schrodinger_residual(&Multivector::zero(), 4, m4).unwrap();
        assert!(r0.coefficients.iter().all(Multivector::is_zero));
        assert!(schrodinger_residual(&Multivector::p(0), 0, m4).is_err());
    }

    #[test]
    fn eigencheck_trivial() {
        let c = ProductKind::clifford(Metric::Standard);
        assert!(star_eigencheck(&Multivector::zero(), &Multivector::one(), &ScalarH::zero(), c));
    }
}
