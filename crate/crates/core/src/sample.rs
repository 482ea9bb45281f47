//! Seeded random instances for the randomized identity checks.

use num_complex::Complex;
use rand::Rng;

use crate::algebra::{rat, Blade, Monomial, Multivector, PhasePoly, ScalarH, Var};

/// Small Gaussian rational, occasionally carrying a power of ħ.
pub fn random_scalar<R: Rng>(rng: &mut R) -> ScalarH {
    let re = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let im = if rng.gen_bool(0.3) {
        rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))
    } else {
        rat(0, 1)
    };
    let power = if rng.gen_bool(0.2) { 1 } else { 0 };
    let c = ScalarH::monomial(Complex::new(re, im), power);
    if c.is_zero() {
        ScalarH::one()
    } else {
        c
    }
}

/// Random monomial in the eight phase-space variables of total degree ≤ `max_degree`.
pub fn random_monomial<R: Rng>(rng: &mut R, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut m = Monomial::one();
    for _ in 0..degree {
        let v = Var::ALL[rng.gen_range(0..8)];
        m = m.with(v, m.exponent(v) + 1);
    }
    m
}

/// Random phase-space polynomial with at most `max_terms` terms.
pub fn random_poly<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> PhasePoly {
    let n = rng.gen_range(1..=max_terms.max(1));
    PhasePoly::from_terms((0..n).map(|_| (random_monomial(rng, max_degree), random_scalar(rng))))
}

/// Random multivector over all grades with at most `max_terms` flat terms.
pub fn random_multivector<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> Multivector {
    let n = rng.gen_range(1..=max_terms.max(1));
    Multivector::from_terms((0..n).map(|_| {
        (
            Blade::from_bits(rng.gen_range(0..16)),
            random_monomial(rng, max_degree),
            random_scalar(rng),
        )
    }))
}

/// Random multivector with constant coefficients.
pub fn random_constant_multivector<R: Rng>(rng: &mut R, max_terms: usize) -> Multivector {
    random_multivector(rng, 0, max_terms)
}

/// Random real polynomial in q⁰..q³ only, for potentials.
pub fn random_q_poly<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> PhasePoly {
    let n = rng.gen_range(1..=max_terms.max(1));
    PhasePoly::from_terms((0..n).map(|_| {
        let degree = rng.gen_range(0..=max_degree);
        let mut m = Monomial::one();
        for _ in 0..degree {
            let v = Var::q(rng.gen_range(0..4));
            m = m.with(v, m.exponent(v) + 1);
        }
        let c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        (m, ScalarH::from_rational(c))
    }))
}

/// Four random potentials `A_μ(q)`.
pub fn random_potentials<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> [PhasePoly; 4] {
    std::array::from_fn(|_| random_q_poly(rng, max_degree, max_terms))
}
