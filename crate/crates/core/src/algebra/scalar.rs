//! Exact complex-rational scalars with a formal power series in ħ.
//!
//! A [`ScalarH`] is a finite Laurent polynomial in ħ whose coefficients lie in
//! ℚ(i). Nonnegative powers are what the star products generate; negative
//! powers only appear through the `1/ħ` factors of star exponentials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Gaussian rational `a + b i`.
pub type ComplexRational = Complex<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(r.numer())?;
    let d = integer_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Polynomial in ħ (Laurent, finitely many terms) over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarH {
    terms: BTreeMap<i32, ComplexRational>,
}

impl ScalarH {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::monomial(Complex::new(Rational::zero(), Rational::one()), 0)
    }

    /// The deformation parameter ħ.
    pub fn hbar() -> Self {
        Self::hbar_pow(1)
    }

    pub fn hbar_pow(power: i32) -> Self {
        Self::monomial(Complex::new(Rational::one(), Rational::zero()), power)
    }

    /// `coeff * ħ^power`.
    pub fn monomial(coeff: ComplexRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(power, coeff);
        }
        Self { terms }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(Complex::new(r, Rational::zero()), 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_complex(c: ComplexRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `i ħ`.
    pub fn i_hbar() -> Self {
        Self::monomial(Complex::new(Rational::zero(), Rational::one()), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `(power, coefficient)` pairs in ascending power.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &ComplexRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, power: i32) -> ComplexRational {
        self.terms.get(&power).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The value when this scalar is a real rational free of ħ.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next()?;
                (*k == 0 && c.im.is_zero()).then(|| c.re.clone())
            }
            _ => None,
        }
    }

    /// The value when this scalar is free of ħ.
    pub fn as_complex(&self) -> Option<ComplexRational> {
        match self.terms.len() {
            0 => Some(Complex::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Binary64 value of an ħ-free real scalar.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_rational().and_then(|r| r.to_f64())
    }

    /// Drops every term carrying a positive power of ħ.
    pub fn hbar_set_zero(&self) -> Self {
        Self {
            terms: self.terms.range(..=0).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Exact division by `iħ`; fails on any term without a factor of ħ.
    pub fn divide_by_ihbar(&self) -> Result<Self> {
        if let Some((k, c)) = self.terms.iter().find(|(k, _)| **k < 1) {
            return Err(Error::Divisibility(
                Self::monomial(c.clone(), *k).to_string(),
            ));
        }
        // c / i = -i c
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k - 1, Complex::new(c.im.clone(), -c.re.clone())))
            .collect();
        Ok(Self { terms })
    }

    /// Multiplicative inverse; only single-term scalars are units of the ring.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inv(), -k))
    }

    /// Exact square root of `c ħ^{2k}` with `c` a nonnegative rational square.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        if !c.im.is_zero() || k.is_odd() {
            return None;
        }
        let root = rational_sqrt(&c.re)?;
        Some(Self::monomial(Complex::new(root, Rational::zero()), k / 2))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, Complex::new(&c.re * r, &c.im * r)))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }

    fn add_term(&mut self, power: i32, coeff: ComplexRational) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(power) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() = o.get() + coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Real summands `(rational, imaginary?, power)` in printing order:
    /// highest power of ħ first, real before imaginary.
    fn summands(&self) -> Vec<(Rational, bool, i32)> {
        let mut out = Vec::new();
        for (k, c) in self.terms.iter().rev() {
            if !c.re.is_zero() {
                out.push((c.re.clone(), false, *k));
            }
            if !c.im.is_zero() {
                out.push((c.im.clone(), true, *k));
            }
        }
        out
    }

    /// True when the canonical text is a single signed product, so it may
    /// appear as a factor without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.summands().len() <= 1
    }
}

fn fmt_summand(f: &mut fmt::Formatter<'_>, mag: &Rational, imag: bool, power: i32) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() {
        parts.push(mag.to_string());
    }
    if imag {
        parts.push("i".into());
    }
    match power {
        0 => {}
        1 => parts.push("hb".into()),
        k => parts.push(format!("hb^{k}")),
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for ScalarH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let summands = self.summands();
        if summands.is_empty() {
            return write!(f, "0");
        }
        for (n, (r, imag, k)) in summands.iter().enumerate() {
            let neg = r.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_summand(f, &r.abs(), *imag, *k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ScalarH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarH({self})")
    }
}

impl From<Rational> for ScalarH {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for ScalarH {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<ComplexRational> for ScalarH {
    fn from(c: ComplexRational) -> Self {
        Self::from_complex(c)
    }
}

impl AddAssign<&ScalarH> for ScalarH {
    fn add_assign(&mut self, rhs: &ScalarH) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&ScalarH> for ScalarH {
    fn sub_assign(&mut self, rhs: &ScalarH) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl MulAssign<&ScalarH> for ScalarH {
    fn mul_assign(&mut self, rhs: &ScalarH) {
        *self = &*self * rhs;
    }
}

impl Mul for &ScalarH {
    type Output = ScalarH;

    fn mul(self, rhs: &ScalarH) -> ScalarH {
        let mut out = ScalarH::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ScalarH {
    type Output = ScalarH;

    fn neg(self) -> ScalarH {
        ScalarH {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for ScalarH {
    type Output = ScalarH;

    fn neg(self) -> ScalarH {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&ScalarH> for &ScalarH {
            type Output = ScalarH;
            fn $method(self, rhs: &ScalarH) -> ScalarH {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr for ScalarH {
            type Output = ScalarH;
            fn $method(mut self, rhs: ScalarH) -> ScalarH {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&ScalarH> for ScalarH {
            type Output = ScalarH;
            fn $method(mut self, rhs: &ScalarH) -> ScalarH {
                self.$assign(&rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul for ScalarH {
    type Output = ScalarH;
    fn mul(self, rhs: ScalarH) -> ScalarH {
        &self * &rhs
    }
}

impl Mul<&ScalarH> for ScalarH {
    type Output = ScalarH;
    fn mul(self, rhs: &ScalarH) -> ScalarH {
        &self * rhs
    }
}
