//! Lorentz transformations on both sides of the algebra.
//!
//! Passive transformations rotate the basis vectors γ_μ with Clifford-side
//! bivector generators. Active transformations act on the coefficients
//! q^μ through Moyal commutators with `M^{μν} = q^μ p^ν − p^μ q^ν`.
//!
//! Parameters `α` are antisymmetric and summed over all index pairs, so a
//! single plane enters twice (`α_{01} M^{01} + α_{10} M^{10} = 2α_{01} M^{01}`).
//! Finite active transformations go through the adjoint matrix `G`, which is
//! exact; only the final matrix exponential is evaluated in binary64.
//!
//! With the same `α` on both sides, the passive generator on the basis is
//! `P = ½ Gᵀ`, so `passive(x, α) = Λ(α/2)ᵀ x`.

use nalgebra::Matrix4;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::poly::factorial;
use crate::algebra::{int, rat, Blade, Metric, Multivector, PhasePoly, Rational, ScalarH, Var};
use crate::error::{domain, Error, Result};
use crate::report::{Check, Report};
use crate::star::{clifford_blade, p_upper, ProductKind};

/// Exact 4×4 matrix, row-major.
pub type RatMatrix4 = [[Rational; 4]; 4];

pub fn rat_zero4() -> RatMatrix4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

pub fn rat_identity4() -> RatMatrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

pub fn rat_mul4(a: &RatMatrix4, b: &RatMatrix4) -> RatMatrix4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).map(|k| &a[i][k] * &b[k][j]).sum())
    })
}

pub fn rat_to_f64(a: &RatMatrix4) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| a[i][j].to_f64().unwrap_or(f64::NAN))
}

/// Totally antisymmetric symbol on spatial indices 1..=3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1,
        _ => 0,
    }
}

/// Antisymmetric exact parameters α.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzParams {
    values: RatMatrix4,
}

impl LorentzParams {
    pub fn new(values: RatMatrix4) -> Result<Self> {
        for mu in 0..4 {
            for nu in 0..4 {
                if values[mu][nu] != -values[nu][mu].clone() {
                    return domain(format!(
                        "parameters are not antisymmetric at ({mu},{nu}): {} vs {}",
                        values[mu][nu], values[nu][mu]
                    ));
                }
            }
        }
        Ok(Self { values })
    }

    pub fn zero() -> Self {
        Self { values: rat_zero4() }
    }

    /// Sets the plane `(mu, nu)` to `value` and `(nu, mu)` to `-value`.
    pub fn with_plane(mut self, mu: usize, nu: usize, value: Rational) -> Self {
        assert!(mu != nu && mu < 4 && nu < 4, "invalid plane ({mu},{nu})");
        self.values[nu][mu] = -value.clone();
        self.values[mu][nu] = value;
        self
    }

    pub fn get(&self, mu: usize, nu: usize) -> &Rational {
        &self.values[mu][nu]
    }

    pub fn values(&self) -> &RatMatrix4 {
        &self.values
    }
}

/// Checks that float parameters are antisymmetric.
pub fn check_antisymmetric(alpha: &[[f64; 4]; 4]) -> Result<()> {
    for mu in 0..4 {
        for nu in 0..4 {
            let (a, b) = (alpha[mu][nu], alpha[nu][mu]);
            if (a + b).abs() > 1e-15 * (1.0 + a.abs()) || !a.is_finite() {
                return domain(format!("parameters are not antisymmetric at ({mu},{nu})"));
            }
        }
    }
    Ok(())
}

fn planes() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|mu| (mu + 1..4).map(move |nu| (mu, nu)))
}

// ---------------------------------------------------------------- passive

/// Clifford-side bivector generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveGenerators {
    pub metric: Metric,
    /// σ_{μν} = (I/2) ⋆ [γ_μ, γ_ν], all 16 entries.
    pub sigma: [[Multivector; 4]; 4],
    /// K_i = ½ σ_{0i}, indexed 0..3 for i = 1..3.
    pub boosts: [Multivector; 3],
    /// L_i = ½ Σ_{j<k} ε_{ijk} σ_{jk}.
    pub rotations: [Multivector; 3],
}

impl PassiveGenerators {
    pub fn new(metric: Metric) -> Self {
        let c = ProductKind::clifford(metric);
        let half_i = Multivector::pseudoscalar().scale_rational(&rat(1, 2));
        let sigma: [[Multivector; 4]; 4] = std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                c.star(&half_i, &c.commutator(&Multivector::gamma(mu), &Multivector::gamma(nu)))
            })
        });
        let half = rat(1, 2);
        let boosts = std::array::from_fn(|i| sigma[0][i + 1].scale_rational(&half));
        let rotations = std::array::from_fn(|i| {
            let mut l = Multivector::zero();
            for (j, k) in [(1, 2), (1, 3), (2, 3)] {
                let e = levi_civita(i + 1, j, k);
                if e != 0 {
                    l += &sigma[j][k].scale_rational(&(&half * int(e)));
                }
            }
            l
        });
        Self { metric, sigma, boosts, rotations }
    }
}

/// The passive algebra with `I` replaced by `−I` in the standard metric.
pub fn passive_algebra_check(metric: Metric) -> Report {
    let gens = PassiveGenerators::new(metric);
    let c = ProductKind::clifford(metric);
    let pseudo = match metric {
        Metric::Nonstandard => Multivector::pseudoscalar(),
        Metric::Standard => -Multivector::pseudoscalar(),
    };
    let i_label = match metric {
        Metric::Nonstandard => "I",
        Metric::Standard => "(-I)",
    };
    let mut report = Report::new(format!("passive Lorentz algebra ({metric} metric)"));
    let contract = |set: &[Multivector; 3], i: usize, j: usize| {
        let mut acc = Multivector::zero();
        for k in 1..=3 {
            let e = levi_civita(i, j, k);
            if e != 0 {
                acc += &set[k - 1].scale_rational(&int(e));
            }
        }
        c.star(&pseudo, &acc)
    };
    let (l, k) = (&gens.rotations, &gens.boosts);
    for i in 1..=3 {
        for j in 1..=3 {
            let inst = format!("i={i} j={j}");
            report.push(Check::exact(
                format!("[L_i, L_j]*C = -{i_label}*C eps_ijk L_k"),
                &inst,
                &c.commutator(&l[i - 1], &l[j - 1]) + &contract(l, i, j),
            ));
            report.push(Check::exact(
                format!("[L_i, K_j]*C = -{i_label}*C eps_ijk K_k"),
                &inst,
                &c.commutator(&l[i - 1], &k[j - 1]) + &contract(k, i, j),
            ));
            report.push(Check::exact(
                format!("[K_i, K_j]*C = {i_label}*C eps_ijk L_k"),
                &inst,
                &c.commutator(&k[i - 1], &k[j - 1]) - &contract(l, i, j),
            ));
        }
    }
    report
}

/// ¼ I ⋆ σ_{μν}, the exponent contribution of one unit parameter.
fn passive_plane_bivector(mu: usize, nu: usize, metric: Metric) -> Multivector {
    let gens = PassiveGenerators::new(metric);
    ProductKind::clifford(metric)
        .star(&Multivector::pseudoscalar(), &gens.sigma[mu][nu])
        .scale_rational(&rat(1, 4))
}

/// The rotor exponent `B = ¼ I ⋆ α^{μν} σ_{μν}`.
pub fn passive_exponent(alpha: &LorentzParams, metric: Metric) -> Multivector {
    let mut b = Multivector::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let a = alpha.get(mu, nu);
            if !a.is_zero() {
                b += &passive_plane_bivector(mu, nu, metric).scale_rational(a);
            }
        }
    }
    b
}

fn grade1_components(x: &Multivector) -> Result<[PhasePoly; 4]> {
    if !x.is_grade(1) {
        return domain(format!("expected a grade-1 multivector, got {x}"));
    }
    Ok(std::array::from_fn(|mu| x.coefficient(Blade::generator(mu))))
}

/// Matrix `P` with `B ⋆ γ_ν − γ_ν ⋆ B = P^μ_ν γ_μ` (row μ, column ν).
pub fn passive_generator_matrix(alpha: &LorentzParams, metric: Metric) -> RatMatrix4 {
    let c = ProductKind::clifford(metric);
    let b = passive_exponent(alpha, metric);
    let mut out = rat_zero4();
    for nu in 0..4 {
        let image = c.commutator(&b, &Multivector::gamma(nu));
        let comps = grade1_components(&image).expect("bivector adjoint preserves grade 1");
        for (mu, comp) in comps.iter().enumerate() {
            out[mu][nu] = comp
                .as_constant()
                .and_then(|s| s.as_rational())
                .expect("constant real generator entries");
        }
    }
    out
}

/// `e^B ⋆ x ⋆ e^{−B}` as the exact series `Σ_{n≤order} ad_B^n(x)/n!`.
pub fn passive_transform_series(
    x: &Multivector,
    alpha: &LorentzParams,
    order: usize,
    metric: Metric,
) -> Result<Multivector> {
    grade1_components(x)?;
    let c = ProductKind::clifford(metric);
    let b = passive_exponent(alpha, metric);
    let mut term = x.clone();
    let mut sum = x.clone();
    for n in 1..=order {
        term = c.commutator(&b, &term).scale_rational(&rat(1, n as i64));
        sum += &term;
    }
    Ok(sum)
}

/// Float multivector indexed by blade bitmask, for numeric rotors.
#[derive(Debug, Clone, Copy, PartialEq)]
struct FloatMv([f64; 16]);

impl FloatMv {
    fn from_exact(x: &Multivector) -> Result<Self> {
        let mut out = [0.0; 16];
        for (b, p) in x.components() {
            out[b.bits() as usize] = p
                .as_constant()
                .and_then(|s| s.to_f64())
                .ok_or_else(|| Error::Unsupported(format!("coefficient {p} is not a real constant")))?;
        }
        Ok(Self(out))
    }

    fn scalar(v: f64) -> Self {
        let mut out = [0.0; 16];
        out[0] = v;
        Self(out)
    }

    fn add_scaled(&self, other: &FloatMv, k: f64) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + k * other.0[i]))
    }

    fn mul(&self, other: &FloatMv, metric: Metric) -> Self {
        let mut out = [0.0; 16];
        for a in 0..16u8 {
            if self.0[a as usize] == 0.0 {
                continue;
            }
            for b in 0..16u8 {
                if other.0[b as usize] == 0.0 {
                    continue;
                }
                if let Some((f, blade)) = clifford_blade(Blade::from_bits(a), Blade::from_bits(b), metric) {
                    out[blade.bits() as usize] += f as f64 * self.0[a as usize] * other.0[b as usize];
                }
            }
        }
        Self(out)
    }

    fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Numeric passive transformation of a constant grade-1 vector.
///
/// When `B ⋆ B` is a scalar the rotor is resummed in closed form
/// (`cosh`/`cos`); otherwise the adjoint series is summed until its terms
/// fall below binary64 resolution.
pub fn passive_transform(x: &Multivector, alpha: &[[f64; 4]; 4], metric: Metric) -> Result<[f64; 4]> {
    check_antisymmetric(alpha)?;
    grade1_components(x)?;
    let xf = FloatMv::from_exact(x)?;
    let mut b = FloatMv::scalar(0.0);
    for (mu, nu) in planes() {
        let weight = alpha[mu][nu] - alpha[nu][mu];
        if weight != 0.0 {
            b = b.add_scaled(&FloatMv::from_exact(&passive_plane_bivector(mu, nu, metric))?, weight);
        }
    }
    let b2 = b.mul(&b, metric);
    let non_scalar = FloatMv(std::array::from_fn(|i| if i == 0 { 0.0 } else { b2.0[i] })).norm();
    let out = if non_scalar <= 1e-14 * (1.0 + b2.norm()) {
        let c = b2.0[0];
        let (even, odd) = if c > 0.0 {
            let r = c.sqrt();
            (r.cosh(), r.sinh() / r)
        } else if c < 0.0 {
            let r = (-c).sqrt();
            (r.cos(), r.sin() / r)
        } else {
            (1.0, 1.0)
        };
        let rotor = FloatMv::scalar(even).add_scaled(&b, odd);
        let inverse = FloatMv::scalar(even).add_scaled(&b, -odd);
        rotor.mul(&xf, metric).mul(&inverse, metric)
    } else {
        let mut term = xf;
        let mut sum = xf;
        let mut n = 1.0;
        while term.norm() > 1e-18 * (1.0 + sum.norm()) && n < 400.0 {
            let comm = b.mul(&term, metric).add_scaled(&term.mul(&b, metric), -1.0);
            term = FloatMv(comm.0.map(|v| v / n));
            sum = sum.add_scaled(&term, 1.0);
            n += 1.0;
        }
        sum
    };
    Ok(std::array::from_fn(|mu| out.0[Blade::generator(mu).bits() as usize]))
}

// ---------------------------------------------------------------- active

/// Moyal-side generators `M^{μν} = q^μ p^ν − p^μ q^ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveGenerators {
    pub metric: Metric,
    pub m: [[Multivector; 4]; 4],
    /// K^i = M^{0i}.
    pub boosts: [Multivector; 3],
    /// L^i = Σ_{j<k} ε^{ijk} M^{jk}.
    pub rotations: [Multivector; 3],
}

impl ActiveGenerators {
    pub fn new(metric: Metric) -> Self {
        let m: [[Multivector; 4]; 4] = std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                let a = &PhasePoly::q(mu) * &p_upper(nu, metric);
                let b = &p_upper(mu, metric) * &PhasePoly::q(nu);
                Multivector::from_poly(&a - &b)
            })
        });
        let boosts = std::array::from_fn(|i| m[0][i + 1].clone());
        let rotations = std::array::from_fn(|i| {
            let mut l = Multivector::zero();
            for (j, k) in [(1, 2), (1, 3), (2, 3)] {
                let e = levi_civita(i + 1, j, k);
                if e != 0 {
                    l += &m[j][k].scale_rational(&int(e));
                }
            }
            l
        });
        Self { metric, m, boosts, rotations }
    }
}

fn i_hbar_times(x: &Multivector) -> Multivector {
    x.scale(&ScalarH::i_hbar())
}

/// The Moyal commutator algebra of the `M^{μν}` and of boosts/rotations.
///
/// In the standard metric the boost/rotation structure constants pick up
/// the spatial metric sign η^{11} = −1.
pub fn active_algebra_check(metric: Metric) -> Report {
    let gens = ActiveGenerators::new(metric);
    let kind = ProductKind::moyal4(metric);
    let eta = |a: usize, b: usize| int(metric.eta(a, b));
    let m = &gens.m;
    let mut report = Report::new(format!("active Lorentz algebra ({metric} metric)"));
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let mut rhs = Multivector::zero();
                    rhs += &m[nu][sigma].scale_rational(&eta(mu, rho));
                    rhs -= &m[mu][sigma].scale_rational(&eta(nu, rho));
                    rhs += &m[rho][nu].scale_rational(&eta(mu, sigma));
                    rhs -= &m[rho][mu].scale_rational(&eta(nu, sigma));
                    report.push(Check::exact(
                        "[M^mn, M^rs]*M = ih (eta^mr M^ns - eta^nr M^ms + eta^ms M^rn - eta^ns M^rm)",
                        format!("m={mu} n={nu} r={rho} s={sigma}"),
                        &kind.commutator(&m[mu][nu], &m[rho][sigma]) - &i_hbar_times(&rhs),
                    ));
                }
            }
        }
    }
    let s = int(metric.eta_diag(1));
    let (l, k) = (&gens.rotations, &gens.boosts);
    let contract = |set: &[Multivector; 3], i: usize, j: usize| {
        let mut acc = Multivector::zero();
        for kk in 1..=3 {
            let e = levi_civita(i, j, kk);
            if e != 0 {
                acc += &set[kk - 1].scale_rational(&int(e));
            }
        }
        i_hbar_times(&acc).scale_rational(&s)
    };
    for i in 1..=3 {
        for j in 1..=3 {
            let inst = format!("i={i} j={j}");
            report.push(Check::exact(
                "[L^i, L^j]*M = ih eps^ijk L^k",
                &inst,
                &kind.commutator(&l[i - 1], &l[j - 1]) - &contract(l, i, j),
            ));
            report.push(Check::exact(
                "[L^i, K^j]*M = ih eps^ijk K^k",
                &inst,
                &kind.commutator(&l[i - 1], &k[j - 1]) - &contract(k, i, j),
            ));
            report.push(Check::exact(
                "[K^i, K^j]*M = -ih eps^ijk L^k",
                &inst,
                &kind.commutator(&k[i - 1], &k[j - 1]) + &contract(l, i, j),
            ));
        }
    }
    report
}

/// Translations and the Poincaré extension.
///
/// The mixed relation is checked in index-consistent form,
/// `[M^{μν}, p^ρ]⋆ = iħ(η^{μρ} p^ν − η^{νρ} p^μ)`.
pub fn poincare_check(metric: Metric) -> Report {
    let gens = ActiveGenerators::new(metric);
    let kind = ProductKind::moyal4(metric);
    let mut report = Report::new(format!("Poincare algebra ({metric} metric)"));
    for mu in 0..4 {
        for nu in 0..4 {
            report.push(Check::exact(
                "[p_m, p_n]*M = 0",
                format!("m={mu} n={nu}"),
                kind.commutator(&Multivector::p(mu), &Multivector::p(nu)),
            ));
        }
    }
    let p_up = |mu: usize| Multivector::from_poly(p_upper(mu, metric));
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                let mut rhs = p_up(nu).scale_rational(&int(metric.eta(mu, rho)));
                rhs -= &p_up(mu).scale_rational(&int(metric.eta(nu, rho)));
                report.push(Check::exact(
                    "[M^mn, p^r]*M = ih (eta^mr p^n - eta^nr p^m)",
                    format!("m={mu} n={nu} r={rho}"),
                    &kind.commutator(&gens.m[mu][nu], &p_up(rho)) - &i_hbar_times(&rhs),
                ));
            }
        }
    }
    report
}

/// Linear coefficients of a polynomial that must be `Σ_σ c_σ q^σ`.
fn linear_in_q(p: &PhasePoly) -> Option<[Rational; 4]> {
    let mut out: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    for (m, c) in p.terms() {
        let (v, e) = {
            let mut it = m.factors();
            let first = it.next()?;
            if it.next().is_some() {
                return None;
            }
            first
        };
        match (v, e) {
            (Var::Q(s), 1) => out[s as usize] = c.as_rational()?,
            _ => return None,
        }
    }
    Some(out)
}

/// The matrix `G` with `(−i/ħ)[α_{μν} M^{μν}, q^ρ]⋆ = G^ρ_σ q^σ`.
pub fn active_adjoint_matrix(alpha: &LorentzParams, metric: Metric) -> RatMatrix4 {
    let gens = ActiveGenerators::new(metric);
    let kind = ProductKind::moyal4(metric);
    let mut generator = Multivector::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let a = alpha.get(mu, nu);
            if !a.is_zero() {
                generator += &gens.m[mu][nu].scale_rational(a);
            }
        }
    }
    let minus_i_over_hbar = ScalarH::i_hbar()
        .inverse()
        .expect("i*hb is a unit");
    let mut out = rat_zero4();
    for rho in 0..4 {
        let image = kind
            .commutator(&generator, &Multivector::q(rho))
            .scale(&minus_i_over_hbar);
        let coeffs = linear_in_q(&image.scalar_part()).expect("adjoint action is linear in q");
        out[rho] = coeffs;
    }
    out
}

/// `G` for the unit parameter in plane `(mu, nu)`, `mu < nu`.
fn unit_plane_generator(mu: usize, nu: usize, metric: Metric) -> RatMatrix4 {
    active_adjoint_matrix(&LorentzParams::zero().with_plane(mu, nu, Rational::one()), metric)
}

/// Float generator `G` for float parameters; `G` is linear in `α` so it is
/// assembled from the six exact unit-plane generators.
pub fn active_generator_f64(alpha: &[[f64; 4]; 4], metric: Metric) -> Result<Matrix4<f64>> {
    check_antisymmetric(alpha)?;
    let mut g = Matrix4::zeros();
    for (mu, nu) in planes() {
        if alpha[mu][nu] != 0.0 {
            g += rat_to_f64(&unit_plane_generator(mu, nu, metric)) * alpha[mu][nu];
        }
    }
    Ok(g)
}

/// Λ = exp(G) in binary64 (Padé scaling and squaring).
pub fn matrix_exp(g: &Matrix4<f64>) -> Matrix4<f64> {
    g.exp()
}

/// Exact truncated Taylor series `Σ_{n≤order} Gⁿ/n!`, `order ≤ 20`.
pub fn exp_taylor_exact(g: &RatMatrix4, order: usize) -> Result<RatMatrix4> {
    if order > 20 {
        return domain(format!("exact Taylor order {order} exceeds 20"));
    }
    let mut sum = rat_identity4();
    let mut power = rat_identity4();
    for n in 1..=order {
        power = rat_mul4(&power, g);
        let inv = Rational::one() / factorial(n as u32);
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] += &power[i][j] * &inv;
            }
        }
    }
    Ok(sum)
}

/// The Lorentz matrix `Λ = exp(G(α))`.
pub fn lorentz_matrix(alpha: &[[f64; 4]; 4], metric: Metric) -> Result<Matrix4<f64>> {
    Ok(matrix_exp(&active_generator_f64(alpha, metric)?))
}

/// Applies `Λ = exp(G(α))` to the coefficient vector `x^μ`.
pub fn active_transform(x: [f64; 4], alpha: &[[f64; 4]; 4], metric: Metric) -> Result<[f64; 4]> {
    let lambda = lorentz_matrix(alpha, metric)?;
    let v = lambda * nalgebra::Vector4::from(x);
    Ok([v[0], v[1], v[2], v[3]])
}

/// `e^{−iαM/ħ} ⋆ q^ρ ⋆ e^{iαM/ħ}` as the exact adjoint series to `order`.
pub fn active_transform_series(alpha: &LorentzParams, order: usize, metric: Metric) -> [PhasePoly; 4] {
    let gens = ActiveGenerators::new(metric);
    let kind = ProductKind::moyal4(metric);
    let mut generator = Multivector::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let a = alpha.get(mu, nu);
            if !a.is_zero() {
                generator += &gens.m[mu][nu].scale_rational(a);
            }
        }
    }
    let minus_i_over_hbar = ScalarH::i_hbar().inverse().expect("i*hb is a unit");
    std::array::from_fn(|rho| {
        let mut term = Multivector::q(rho);
        let mut sum = term.clone();
        for n in 1..=order {
            term = kind
                .commutator(&generator, &term)
                .scale(&minus_i_over_hbar)
                .scale_rational(&rat(1, n as i64));
            sum += &term;
        }
        sum.scalar_part()
    })
}

/// Float parameters for a boost of rapidity `a` along spatial `axis`,
/// normalized so that `Λ` has `cosh a` on the diagonal and `sinh a` in the
/// time/axis entries.
pub fn boost_parameters(axis: usize, rapidity: f64, metric: Metric) -> [[f64; 4]; 4] {
    assert!((1..=3).contains(&axis), "spatial axis out of range: {axis}");
    let unit = unit_plane_generator(0, axis, metric);
    let scale = rapidity / unit[0][axis].to_f64().expect("finite generator entry");
    let mut alpha = [[0.0; 4]; 4];
    alpha[0][axis] = scale;
    alpha[axis][0] = -scale;
    alpha
}

/// Float parameters for a rotation by `angle` in the spatial plane `(j, k)`,
/// normalized so that `Λ^j_k = −sin(angle)`.
pub fn rotation_parameters(j: usize, k: usize, angle: f64, metric: Metric) -> [[f64; 4]; 4] {
    assert!(j != k && (1..=3).contains(&j) && (1..=3).contains(&k), "invalid plane ({j},{k})");
    let unit = unit_plane_generator(j.min(k), j.max(k), metric);
    let entry = unit[j][k].to_f64().expect("finite generator entry");
    let scale = -angle / entry;
    let (a, b) = (j.min(k), j.max(k));
    let mut alpha = [[0.0; 4]; 4];
    alpha[a][b] = scale;
    alpha[b][a] = -scale;
    alpha
}

/// Random antisymmetric float parameters with entries in `[-scale, scale]`.
pub fn random_parameters<R: rand::Rng>(rng: &mut R, scale: f64) -> [[f64; 4]; 4] {
    let mut alpha = [[0.0; 4]; 4];
    for (mu, nu) in planes() {
        let v = rng.gen_range(-scale..=scale);
        alpha[mu][nu] = v;
        alpha[nu][mu] = -v;
    }
    alpha
}

/// Numeric checks of finite transformations: boosts of rapidity 0.5,
/// metric preservation and passive/active agreement on `samples` random
/// parameter sets.
pub fn finite_transform_report(samples: usize, seed: u64) -> Report {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("finite Lorentz transformations");
    let a = 0.5f64;
    for metric in [Metric::Nonstandard, Metric::Standard] {
        for axis in 1..=3 {
            let out = active_transform([1.0, 0.0, 0.0, 0.0], &boost_parameters(axis, a, metric), metric);
            let err = match out {
                Ok(v) => (0..4)
                    .map(|mu| {
                        let expected = match mu {
                            0 => a.cosh(),
                            m if m == axis => a.sinh(),
                            _ => 0.0,
                        };
                        (v[mu] - expected).abs()
                    })
                    .fold(0.0, f64::max),
                Err(_) => f64::NAN,
            };
            report.push(Check::numeric(
                "exp(G) e_0 = (cosh a, sinh a n)",
                format!("{metric} axis {axis} a=0.5"),
                err,
                1e-12,
            ));
        }
        let eta = Matrix4::from_fn(|i, j| metric.eta(i, j) as f64);
        let x = Multivector::vector([1, -2, 3, 1].map(|v| PhasePoly::constant(ScalarH::from_int(v))));
        let xv = nalgebra::Vector4::new(1.0, -2.0, 3.0, 1.0);
        let (mut worst_eta, mut worst_pa) = (0.0f64, 0.0f64);
        for _ in 0..samples {
            let alpha = random_parameters(&mut rng, 0.6);
            let half = alpha.map(|row| row.map(|v| v / 2.0));
            match (lorentz_matrix(&alpha, metric), lorentz_matrix(&half, metric), passive_transform(&x, &alpha, metric)) {
                (Ok(l), Ok(lh), Ok(p)) => {
                    worst_eta = worst_eta.max((l.transpose() * eta * l - eta).amax());
                    let expected = lh.transpose() * xv;
                    worst_pa = worst_pa.max((0..4).map(|mu| (p[mu] - expected[mu]).abs()).fold(0.0, f64::max));
                }
                _ => {
                    worst_eta = f64::NAN;
                    worst_pa = f64::NAN;
                }
            }
        }
        report.push(Check::numeric(
            "L^T eta L = eta",
            format!("{metric}, {samples} random parameter sets"),
            worst_eta,
            1e-12,
        ));
        report.push(Check::numeric(
            "e^B x e^-B = L(alpha/2)^T x",
            format!("{metric}, {samples} random parameter sets"),
            worst_pa,
            1e-10,
        ));
    }
    report
}

/// Transpose of an exact 4×4 matrix.
pub fn rat_transpose4(a: &RatMatrix4) -> RatMatrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}
