//! The deformed products: Clifford, 3D and 4D Moyal, and their combination.
//!
//! All products are computed by expanding the exponential bidifferential
//! operator term by term until it terminates, so results are exact.
//!
//! Internally positions carry an upper index and momenta a lower one. With
//! that placement the metric weights of the 4D Moyal operator cancel against
//! the index lowering of ∂/∂p^ν, leaving `[q^μ, p_ν] = iħ δ^μ_ν` in either
//! signature. The metric enters only when a momentum is raised with
//! [`p_upper`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::algebra::poly::{factorial, falling};
use crate::algebra::{int, Blade, Metric, Monomial, Multivector, PhasePoly, Rational, ScalarH, Var};
use crate::error::{Error, Result};

/// Which deformation to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarKind {
    /// Fermionic product on the blades, coefficients multiply pointwise.
    Clifford,
    /// Bosonic product over the spatial pairs (q^i, p_i), i = 1..3.
    Moyal3,
    /// Bosonic product over all four pairs (q^μ, p_μ).
    Moyal4,
    /// 4D Moyal on coefficients tensored with Clifford on blades.
    MoyalClifford,
    /// 3D Moyal on coefficients tensored with Clifford on blades.
    Moyal3Clifford,
}

impl StarKind {
    pub const ALL: [StarKind; 5] = [
        StarKind::Clifford,
        StarKind::Moyal3,
        StarKind::Moyal4,
        StarKind::MoyalClifford,
        StarKind::Moyal3Clifford,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StarKind::Clifford => "C",
            StarKind::Moyal3 => "M3",
            StarKind::Moyal4 => "M4",
            StarKind::MoyalClifford => "MC",
            StarKind::Moyal3Clifford => "M3C",
        }
    }
}

impl fmt::Display for StarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StarKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Domain(format!("unknown product kind `{s}`")))
    }
}

/// A star product together with the metric it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductKind {
    pub kind: StarKind,
    pub metric: Metric,
}

impl ProductKind {
    pub fn new(kind: StarKind, metric: Metric) -> Self {
        Self { kind, metric }
    }

    pub fn clifford(metric: Metric) -> Self {
        Self::new(StarKind::Clifford, metric)
    }

    /// The 3D Moyal product carries no metric weight; the metric stored here
    /// only matters for index raising by callers.
    pub fn moyal3() -> Self {
        Self::new(StarKind::Moyal3, Metric::Nonstandard)
    }

    pub fn moyal4(metric: Metric) -> Self {
        Self::new(StarKind::Moyal4, metric)
    }

    pub fn moyal_clifford(metric: Metric) -> Self {
        Self::new(StarKind::MoyalClifford, metric)
    }

    pub fn moyal3_clifford(metric: Metric) -> Self {
        Self::new(StarKind::Moyal3Clifford, metric)
    }

    pub fn star(&self, a: &Multivector, b: &Multivector) -> Multivector {
        match self.kind {
            StarKind::Clifford => clifford_star(a, b, self.metric),
            StarKind::Moyal3 => moyal3_star(a, b),
            StarKind::Moyal4 => moyal4_star(a, b, self.metric),
            StarKind::MoyalClifford => mc_star(a, b, self.metric),
            StarKind::Moyal3Clifford => combined(a, b, self.metric, &SPATIAL),
        }
    }

    pub fn commutator(&self, a: &Multivector, b: &Multivector) -> Multivector {
        &self.star(a, b) - &self.star(b, a)
    }

    pub fn anticommutator(&self, a: &Multivector, b: &Multivector) -> Multivector {
        &self.star(a, b) + &self.star(b, a)
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind, self.metric)
    }
}

const SPATIAL: [usize; 3] = [1, 2, 3];
const SPACETIME: [usize; 4] = [0, 1, 2, 3];

/// The contravariant momentum p^μ = η^{μμ} p_μ.
pub fn p_upper(mu: usize, metric: Metric) -> PhasePoly {
    PhasePoly::p(mu).scale_rational(&int(metric.eta_diag(mu)))
}

/// The covariant position q_μ = η_{μμ} q^μ.
pub fn q_lower(mu: usize, metric: Metric) -> PhasePoly {
    PhasePoly::q(mu).scale_rational(&int(metric.eta_diag(mu)))
}

/// Clifford product through its Grassmann-derivative series.
///
/// `A ⋆ B = Σ_k (1/k!) Σ_{μ₁…μ_k} η_{μ₁μ₁}…η_{μ_kμ_k}
/// (A ∂⃖_{μ₁}…∂⃖_{μ_k}) ∧ (∂⃗_{μ_k}…∂⃗_{μ₁} B)`; the series stops at k = 4.
pub fn clifford_star_by_derivatives(a: &Multivector, b: &Multivector, metric: Metric) -> Multivector {
    let mut out = Multivector::zero();
    contract(a.clone(), b.clone(), 0, 0, int(1), metric, &mut out);
    out
}

fn contract(
    left: Multivector,
    right: Multivector,
    used: u8,
    depth: u32,
    weight: Rational,
    metric: Metric,
    out: &mut Multivector,
) {
    if left.is_zero() || right.is_zero() {
        return;
    }
    let term = left.grassmann_mul(&right);
    *out += &term.scale_rational(&(&weight / factorial(depth)));
    for mu in 0..4 {
        // a repeated index differentiates an odd generator twice
        if used & (1 << mu) != 0 {
            continue;
        }
        contract(
            left.grassmann_partial_right(mu),
            right.grassmann_partial_left(mu),
            used | (1 << mu),
            depth + 1,
            &weight * int(metric.eta_diag(mu)),
            metric,
            out,
        );
    }
}

type BladeTable = [[Option<(i64, Blade)>; 16]; 16];

fn build_table(metric: Metric) -> BladeTable {
    let mut table = [[None; 16]; 16];
    for a in 0..16u8 {
        for b in 0..16u8 {
            let prod = clifford_star_by_derivatives(
                &Multivector::blade(Blade::from_bits(a)),
                &Multivector::blade(Blade::from_bits(b)),
                metric,
            );
            let mut terms = prod.terms();
            table[a as usize][b as usize] = terms.next().map(|(blade, m, c)| {
                debug_assert!(m.is_one());
                let r = c.as_rational().expect("blade products are real rationals");
                debug_assert!(r.is_integer());
                (r.to_integer().try_into().expect("unit blade factor"), blade)
            });
            debug_assert!(terms.next().is_none(), "diagonal metric gives a single blade");
        }
    }
    table
}

fn blade_table(metric: Metric) -> &'static BladeTable {
    static STANDARD: OnceLock<BladeTable> = OnceLock::new();
    static NONSTANDARD: OnceLock<BladeTable> = OnceLock::new();
    match metric {
        Metric::Standard => STANDARD.get_or_init(|| build_table(metric)),
        Metric::Nonstandard => NONSTANDARD.get_or_init(|| build_table(metric)),
    }
}

/// Clifford product of two blades: the sign/metric factor and the result.
pub fn clifford_blade(a: Blade, b: Blade, metric: Metric) -> Option<(i64, Blade)> {
    blade_table(metric)[a.bits() as usize][b.bits() as usize]
}

/// The fermionic Clifford star product; coefficients multiply pointwise.
pub fn clifford_star(a: &Multivector, b: &Multivector, metric: Metric) -> Multivector {
    let table = blade_table(metric);
    a.bilinear(b, |x, y| table[x.bits() as usize][y.bits() as usize], |f, g| f * g)
}

/// The 3D Moyal product on coefficients; blades multiply by the exterior product.
pub fn moyal3_star(f: &Multivector, g: &Multivector) -> Multivector {
    f.bilinear(
        g,
        |x, y| x.wedge(y).map(|(s, c)| (s as i64, c)),
        |a, b| moyal_poly(a, b, &SPATIAL),
    )
}

/// The 4D Moyal product on coefficients; blades multiply by the exterior product.
///
/// The metric argument is accepted for uniformity; see the module docs for
/// why it does not change the product of lower-index momenta.
pub fn moyal4_star(f: &Multivector, g: &Multivector, _metric: Metric) -> Multivector {
    f.bilinear(
        g,
        |x, y| x.wedge(y).map(|(s, c)| (s as i64, c)),
        |a, b| moyal_poly(a, b, &SPACETIME),
    )
}

/// 4D Moyal on the coefficients tensored with Clifford on the blades.
pub fn mc_star(a: &Multivector, b: &Multivector, metric: Metric) -> Multivector {
    combined(a, b, metric, &SPACETIME)
}

fn combined(a: &Multivector, b: &Multivector, metric: Metric, pairs: &[usize]) -> Multivector {
    let table = blade_table(metric);
    a.bilinear(
        b,
        |x, y| table[x.bits() as usize][y.bits() as usize],
        |f, g| moyal_poly(f, g, pairs),
    )
}

pub fn star_commutator(a: &Multivector, b: &Multivector, kind: ProductKind) -> Multivector {
    kind.commutator(a, b)
}

pub fn star_anticommutator(a: &Multivector, b: &Multivector, kind: ProductKind) -> Multivector {
    kind.anticommutator(a, b)
}

/// Moyal product of two polynomials over the conjugate pairs `(q^μ, p_μ)`, μ ∈ `pairs`.
///
/// Expanding `exp[(iħ/2) Σ_μ (∂⃖_{q^μ}∂⃗_{p_μ} − ∂⃖_{p_μ}∂⃗_{q^μ})]` gives
/// `Σ_{α,β} (iħ/2)^{|α|+|β|} (−1)^{|β|} / (α! β!) (∂_q^α ∂_p^β f)(∂_p^α ∂_q^β g)`.
pub fn moyal_poly(f: &PhasePoly, g: &PhasePoly, pairs: &[usize]) -> PhasePoly {
    let mut out = PhasePoly::zero();
    let mut half_i_hbar: Vec<ScalarH> = vec![ScalarH::one()];
    let step = ScalarH::monomial(Complex::new(Rational::zero(), Rational::new(1.into(), 2.into())), 1);
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let base = cf * cg;
            let mut expand = |order: usize, weight: Rational, lm: Monomial, rm: Monomial| {
                while half_i_hbar.len() <= order {
                    let next = half_i_hbar.last().unwrap() * &step;
                    half_i_hbar.push(next);
                }
                let c = (&base * &half_i_hbar[order]).scale_rational(&weight);
                out.add_term(lm.mul(&rm), &c);
            };
            expand_pairs(*mf, *mg, pairs, 0, Rational::one(), &mut expand);
        }
    }
    out
}

fn expand_pairs(
    lm: Monomial,
    rm: Monomial,
    pairs: &[usize],
    order: usize,
    weight: Rational,
    emit: &mut impl FnMut(usize, Rational, Monomial, Monomial),
) {
    let Some((&mu, rest)) = pairs.split_first() else {
        emit(order, weight, lm, rm);
        return;
    };
    let (q, p) = (Var::q(mu), Var::p(mu));
    let (fq, fp, gq, gp) = (lm.exponent(q), lm.exponent(p), rm.exponent(q), rm.exponent(p));
    for alpha in 0..=fq.min(gp) {
        for beta in 0..=fp.min(gq) {
            let mut w = &weight * falling(fq, alpha) * falling(gp, alpha) / factorial(alpha);
            w = w * falling(fp, beta) * falling(gq, beta) / factorial(beta);
            if beta % 2 == 1 {
                w = -w;
            }
            let l = lm.with(q, fq - alpha).with(p, fp - beta);
            let r = rm.with(p, gp - alpha).with(q, gq - beta);
            expand_pairs(l, r, rest, order + (alpha + beta) as usize, w, emit);
        }
    }
}
