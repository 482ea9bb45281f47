//! Oracles shared by the integration tests. None of them call into the
//! star-product code they are used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex;
use starprod::algebra::{int, Blade, Metric, Monomial, Multivector, PhasePoly, Rational, ScalarH, Var};

pub type Mat4 = [[ScalarH; 4]; 4];

fn c(re: i64, im: i64) -> ScalarH {
    ScalarH::from_complex(Complex::new(int(re), int(im)))
}

pub fn mat_zero() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| ScalarH::zero()))
}

pub fn mat_identity() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { ScalarH::one() } else { ScalarH::zero() }))
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

fn mat_add_scaled(acc: &mut Mat4, m: &Mat4, s: &ScalarH) {
    for i in 0..4 {
        for j in 0..4 {
            acc[i][j] += &(&m[i][j] * s);
        }
    }
}

/// Dirac representation: γ⁰ = diag(1, 1, −1, −1), γᵏ = [[0, σₖ], [−σₖ, 0]],
/// squaring to (+1, −1, −1, −1). Every matrix is multiplied by i for the
/// (−, +, +, +) signature.
pub fn gamma_matrix(mu: usize, metric: Metric) -> Mat4 {
    let pauli: [[[ScalarH; 2]; 2]; 3] = [
        [[c(0, 0), c(1, 0)], [c(1, 0), c(0, 0)]],
        [[c(0, 0), c(0, -1)], [c(0, 1), c(0, 0)]],
        [[c(1, 0), c(0, 0)], [c(0, 0), c(-1, 0)]],
    ];
    let mut g = mat_zero();
    if mu == 0 {
        for i in 0..4 {
            g[i][i] = if i < 2 { c(1, 0) } else { c(-1, 0) };
        }
    } else {
        let s = &pauli[mu - 1];
        for i in 0..2 {
            for j in 0..2 {
                g[i][j + 2] = s[i][j].clone();
                g[i + 2][j] = -s[i][j].clone();
            }
        }
    }
    if metric == Metric::Nonstandard {
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x * &c(0, 1);
            }
        }
    }
    g
}

/// Matrix image of a constant-coefficient multivector; the blade with
/// indices μ₁ < … < μₖ maps to γ^{μ₁}⋯γ^{μₖ}.
pub fn to_matrix(m: &Multivector, metric: Metric) -> Mat4 {
    let mut out = mat_zero();
    for (blade, mono, coeff) in m.terms() {
        assert!(mono.is_one(), "constant coefficients only");
        let mut b = mat_identity();
        for mu in blade.indices() {
            b = mat_mul(&b, &gamma_matrix(mu, metric));
        }
        mat_add_scaled(&mut out, &b, coeff);
    }
    out
}

/// The blade for a list of ascending indices.
pub fn blade(indices: &[usize]) -> Blade {
    Blade::from_indices(indices).unwrap()
}

fn lower(m: &Monomial, v: Var) -> Option<(Monomial, u32)> {
    let e = m.exponent(v);
    (e > 0).then(|| (m.with(v, e - 1), e))
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = *a;
    for v in Var::ALL {
        out = out.with(v, a.exponent(v) + b.exponent(v));
    }
    out
}

/// `{f, g} = Σ_μ ∂f/∂q^μ ∂g/∂p_μ − ∂f/∂p_μ ∂g/∂q^μ`, term by term.
pub fn poisson_oracle(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut out = PhasePoly::zero();
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            for mu in 0..4 {
                for (a, b, sign) in [(Var::q(mu), Var::p(mu), 1), (Var::p(mu), Var::q(mu), -1)] {
                    if let (Some((df, ef)), Some((dg, eg))) = (lower(mf, a), lower(mg, b)) {
                        let k: Rational = int(sign * i64::from(ef) * i64::from(eg));
                        out.add_term(mono_mul(&df, &dg), &(cf * cg).scale_rational(&k));
                    }
                }
            }
        }
    }
    out
}

/// Canonical expressions: each prints back to itself after parsing.
pub const CORPUS: [&str; 50] = [
    "0",
    "1",
    "-1",
    "3/4",
    "i",
    "hb",
    "q0",
    "p3",
    "s",
    "g0",
    "g0g1",
    "g0g1g2g3",
    "q0 + p0",
    "q0 - p0",
    "-q0",
    "q0*p0",
    "q1^2",
    "hb^-2",
    "q1^2*p0*g0g1",
    "g0 *C g0",
    "g1 *C g2 + g2 *C g1",
    "q0 *M4 p0",
    "q1 *M3 p1",
    "p0 *MC g0",
    "q2 *M3C g2",
    "(q0 + p0)*(q0 - p0)",
    "(q0 + p0)^2",
    "-(q0 + p0)",
    "q0 - (p0 - q1)",
    "q0*(p0 *M4 q0)",
    "q0 *M4 p0 *M4 q0",
    "comm(q0, p0)",
    "comm(M4; q0, p0)",
    "acomm(C; g1, g2)",
    "comm(MC; g0g1, g2g3)",
    "pb(q0, p0)",
    "pb(q1^2, p1^2)",
    "grade(1 + g0g1, 0)",
    "grade(q0*g0 + g1g2, 2)",
    "exp(M4; p0)",
    "exp(C; g0g1)",
    "split(C; g0g1)",
    "split(MC; 3*g0g1 + 4*g0g3)",
    "eigencheck(C; g0g1, 1/2 + 1/2*g0g1, 1)",
    "1/2*i*hb + q0*p0",
    "(1 + i)*q0",
    "-1/2*hb^2*p1^2",
    "i*hb*g1g2 - 1/4*q3",
    "1/2*(p1^2 + p2^2 + p3^2)",
    "(g0 + g1)^3",
];
