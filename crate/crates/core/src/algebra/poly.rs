//! Sparse commuting polynomials over [`ScalarH`] in the phase-space variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::One;

use super::scalar::{int, Rational, ScalarH};
use crate::error::{Error, Result};

/// Number of commuting variables.
pub const NVARS: usize = 13;

/// A commuting variable of the extended phase space.
///
/// Positions carry an upper index and momenta a lower one. `s` is the
/// evolution parameter; the star products never differentiate it. The four
/// velocities `qd^μ` only appear in Lagrangians before the Legendre transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q(u8),
    P(u8),
    S,
    Qd(u8),
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Q(0),
        Var::Q(1),
        Var::Q(2),
        Var::Q(3),
        Var::P(0),
        Var::P(1),
        Var::P(2),
        Var::P(3),
        Var::S,
        Var::Qd(0),
        Var::Qd(1),
        Var::Qd(2),
        Var::Qd(3),
    ];

    pub fn slot(self) -> usize {
        match self {
            Var::Q(m) => m as usize,
            Var::P(m) => 4 + m as usize,
            Var::S => 8,
            Var::Qd(m) => 9 + m as usize,
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        Var::ALL[slot]
    }

    pub fn q(mu: usize) -> Var {
        assert!(mu < 4, "spacetime index out of range: {mu}");
        Var::Q(mu as u8)
    }

    pub fn p(mu: usize) -> Var {
        assert!(mu < 4, "spacetime index out of range: {mu}");
        Var::P(mu as u8)
    }

    pub fn qd(mu: usize) -> Var {
        assert!(mu < 4, "spacetime index out of range: {mu}");
        Var::Qd(mu as u8)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q(m) => write!(f, "q{m}"),
            Var::P(m) => write!(f, "p{m}"),
            Var::S => write!(f, "s"),
            Var::Qd(m) => write!(f, "qd{m}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| Error::Domain(format!("unknown variable `{s}`")))
    }
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::one().with(v, 1)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.slot()]
    }

    pub fn with(mut self, v: Var, e: u32) -> Self {
        self.0[v.slot()] = e;
        self
    }

    pub fn exponents(&self) -> &[u32; NVARS] {
        &self.0
    }

    pub fn from_exponents(exps: [u32; NVARS]) -> Self {
        Self(exps)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }

    /// Nonzero `(variable, exponent)` pairs in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(slot, e)| (Var::from_slot(slot), *e))
    }

    pub fn eval(&self, point: &[f64; NVARS]) -> f64 {
        self.factors()
            .map(|(v, e)| point[v.slot()].powi(e as i32))
            .product()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors()
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Multivariate polynomial with [`ScalarH`] coefficients, canonical sparse form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhasePoly {
    terms: BTreeMap<Monomial, ScalarH>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ScalarH::one())
    }

    pub fn constant(c: ScalarH) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), ScalarH::one())
    }

    pub fn q(mu: usize) -> Self {
        Self::var(Var::q(mu))
    }

    pub fn p(mu: usize) -> Self {
        Self::var(Var::p(mu))
    }

    pub fn term(m: Monomial, c: ScalarH) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ScalarH)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarH)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> ScalarH {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value when no variable appears.
    pub fn as_constant(&self) -> Option<ScalarH> {
        match self.terms.len() {
            0 => Some(ScalarH::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: &ScalarH) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ScalarH) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, &(a * c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&ScalarH::from_rational(r.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarH) -> ScalarH) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            out.add_term(m.with(v, e - 1), &c.scale_rational(&int(e as i64)));
        }
        out
    }

    pub fn hbar_set_zero(&self) -> Self {
        self.map_coeffs(ScalarH::hbar_set_zero)
    }

    pub fn divide_by_ihbar(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &c.divide_by_ihbar()?);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by the polynomial `value` everywhere.
    pub fn substitute(&self, v: Var, value: &PhasePoly) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<PhasePoly> = vec![PhasePoly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = PhasePoly::term(m.with(v, 0), c.clone());
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Coefficient of `v^e` as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == e)
                .map(|(m, c)| (m.with(v, 0), c.clone())),
        )
    }

    /// Binary64 evaluation; requires real, ħ-free coefficients.
    pub fn eval_f64(&self, point: &[f64; NVARS]) -> Result<f64> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let c = c.to_f64().ok_or_else(|| {
                Error::Unsupported(format!("coefficient {c} is not a real hb-free number"))
            })?;
            acc += c * m.eval(point);
        }
        Ok(acc)
    }

    /// Compiles the polynomial into a flat list for repeated float evaluation.
    pub fn compile(&self) -> Result<CompiledPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c = c.to_f64().ok_or_else(|| {
                Error::Unsupported(format!("coefficient {c} is not a real hb-free number"))
            })?;
            let factors: Vec<(usize, i32)> = m.factors().map(|(v, e)| (v.slot(), e as i32)).collect();
            terms.push((c, factors));
        }
        Ok(CompiledPoly { terms })
    }

}

/// Float evaluation form of a [`PhasePoly`].
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, point: &[f64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(c, fs)| c * fs.iter().map(|(slot, e)| point[*slot].powi(*e)).product::<f64>())
            .sum()
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = super::format_term(c, &m.to_string());
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

impl fmt::Debug for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhasePoly({self})")
    }
}

impl From<ScalarH> for PhasePoly {
    fn from(c: ScalarH) -> Self {
        Self::constant(c)
    }
}

impl From<Var> for PhasePoly {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl AddAssign<&PhasePoly> for PhasePoly {
    fn add_assign(&mut self, rhs: &PhasePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl SubAssign<&PhasePoly> for PhasePoly {
    fn sub_assign(&mut self, rhs: &PhasePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, &-c);
        }
    }
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for PhasePoly {
    type Output = PhasePoly;
    fn add(mut self, rhs: PhasePoly) -> PhasePoly {
        self += &rhs;
        self
    }
}

impl Sub for PhasePoly {
    type Output = PhasePoly;
    fn sub(mut self, rhs: PhasePoly) -> PhasePoly {
        self -= &rhs;
        self
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        -&self
    }
}

impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: PhasePoly) -> PhasePoly {
        &self * &rhs
    }
}

/// `n!/(n-k)!` as a rational.
pub(crate) fn falling(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * int((n - j) as i64))
}

pub(crate) fn factorial(n: u32) -> Rational {
    falling(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_derivatives() {
        let q1p2 = &PhasePoly::q(1) * &PhasePoly::p(2);
        assert_eq!(q1p2.partial(Var::q(1)), PhasePoly::p(2));
        assert!(PhasePoly::q(0).partial(Var::p(0)).is_zero());
        let q2sq = PhasePoly::q(2).pow(2);
        assert_eq!(q2sq.partial(Var::q(2)), PhasePoly::q(2).scale(&ScalarH::from_int(2)));
    }

    #[test]
    fn substitution() {
        // (qd0)^2 with qd0 -> p0 + 1
        let f = PhasePoly::var(Var::qd(0)).pow(2);
        let value = &PhasePoly::p(0) + &PhasePoly::one();
        let expected = &(&value * &value) + &PhasePoly::zero();
        assert_eq!(f.substitute(Var::qd(0), &value), expected);
    }

    #[test]
    fn display() {
        let f = &PhasePoly::q(1).pow(2) * &PhasePoly::p(0);
        assert_eq!(f.to_string(), "q1^2*p0");
        assert_eq!((-&f).to_string(), "-q1^2*p0");
        let g = &f + &PhasePoly::constant(ScalarH::i_hbar());
        assert_eq!(g.to_string(), "i*hb + q1^2*p0");
    }

    #[test]
    fn variable_names_round_trip() {
        for v in Var::ALL {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
    }

    #[test]
    fn compiled_matches_direct_evaluation() {
        let f = &(&PhasePoly::q(1).pow(2) * &PhasePoly::p(0)) + &PhasePoly::constant(ScalarH::from_int(3));
        let mut point = [0.0; NVARS];
        point[1] = 2.0;
        point[4] = -0.5;
        assert_eq!(f.eval_f64(&point).unwrap(), 1.0);
        assert_eq!(f.compile().unwrap().eval(&point), 1.0);
    }
}
