//! Canonical products of distinct Grassmann generators γ₀..γ₃.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};

/// A blade γ_{i₁}γ_{i₂}…γ_{i_k} with `i₁ < i₂ < … < i_k`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub fn from_bits(bits: u8) -> Blade {
        assert!(bits < 16, "blade bitmask out of range: {bits}");
        Blade(bits)
    }

    /// Builds a blade from strictly ascending generator indices.
    pub fn from_indices(indices: &[usize]) -> Result<Blade> {
        let mut bits = 0u8;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i > 3 {
                return domain(format!("generator index {i} out of range 0..=3"));
            }
            if last.is_some_and(|l| l >= i) {
                return domain(format!("blade indices {indices:?} are not strictly ascending"));
            }
            bits |= 1 << i;
            last = Some(i);
        }
        Ok(Blade(bits))
    }

    pub fn generator(mu: usize) -> Blade {
        assert!(mu < 4, "generator index out of range: {mu}");
        Blade(1 << mu)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, mu: usize) -> bool {
        self.0 & (1 << mu) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |i| self.0 & (1 << i) != 0)
    }

    /// All 16 blades in canonical order.
    pub fn all() -> impl Iterator<Item = Blade> {
        let mut v: Vec<Blade> = (0..16).map(Blade).collect();
        v.sort();
        v.into_iter()
    }

    /// Number of generators of `self` with index strictly below `mu`.
    fn count_below(self, mu: usize) -> u32 {
        (self.0 & ((1u8 << mu) - 1)).count_ones()
    }

    /// Number of generators of `self` with index strictly above `mu`.
    fn count_above(self, mu: usize) -> u32 {
        (self.0 >> (mu + 1)).count_ones()
    }

    /// Exterior product of two blades: `None` when an index repeats,
    /// otherwise the sign of the sorting permutation and the result.
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each generator of `other` passes the generators of `self` above it
        let swaps: u32 = other.indices().map(|j| self.count_above(j)).sum();
        Some((parity(swaps), Blade(self.0 | other.0)))
    }

    /// Left derivative ∂⃗/∂γ_μ: γ_μ is anticommuted to the front and removed.
    pub fn left_derivative(self, mu: usize) -> Option<(i8, Blade)> {
        self.contains(mu)
            .then(|| (parity(self.count_below(mu)), Blade(self.0 & !(1 << mu))))
    }

    /// Right derivative ∂⃖/∂γ_μ: γ_μ is anticommuted to the back and removed.
    pub fn right_derivative(self, mu: usize) -> Option<(i8, Blade)> {
        self.contains(mu)
            .then(|| (parity(self.count_above(mu)), Blade(self.0 & !(1 << mu))))
    }

    fn sort_key(self) -> (u32, [u8; 4]) {
        let mut key = [u8::MAX; 4];
        for (slot, i) in self.indices().enumerate() {
            key[slot] = i as u8;
        }
        (self.grade(), key)
    }
}

fn parity(n: u32) -> i8 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "g{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Blade({self})")
    }
}
