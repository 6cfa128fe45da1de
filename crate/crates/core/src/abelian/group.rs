use std::fmt;

use serde::{Deserialize, Serialize};

use super::{factorize, gcd, prime_of_power};
use crate::{Error, Result};

/// A finite abelian group `Z/d_1 ⊕ ... ⊕ Z/d_r` with `d_1 ≥ 2` and
/// `d_{i+1} | d_i`.
///
/// Elements are coordinate vectors with `0 ≤ x_i < d_i`, and are indexed in
/// mixed radix with the last coordinate varying fastest.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    prime: Option<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must be at least 2: {invariant_factors:?}"
            )));
        }
        if invariant_factors.windows(2).any(|w| w[0] % w[1] != 0) {
            return Err(Error::InvalidInput(format!(
                "each invariant factor must divide the previous one: {invariant_factors:?}"
            )));
        }
        let prime = invariant_factors.first().and_then(|&d| prime_of_power(d));
        Ok(FiniteAbelianGroup {
            invariant_factors,
            prime,
        })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
            prime: None,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_factors(&[n])
    }

    /// Normalizes an arbitrary product of cyclic groups into invariant
    /// factor form. Factors `0` are rejected by assertion; `1` is dropped.
    pub fn from_cyclic_factors(factors: &[u64]) -> Self {
        assert!(factors.iter().all(|&d| d > 0), "cyclic factors must be finite");
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &d in factors {
            for (p, e) in factorize(d) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut inv = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.iter().enumerate() {
                inv[i] *= q;
            }
        }
        Self::new(inv).expect("normalized factors form a divisibility chain")
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// The prime `p` when this is a nontrivial `p`-group.
    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.first().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.is_trivial() || self.prime == Some(p)
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rank(), "coordinate length mismatch");
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&v, &d)| v.rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, d)| (d - a) % d)
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[u64]) -> Vec<u64> {
        let v: Vec<i64> = x.iter().map(|&a| a as i64 * k).collect();
        self.reduce(&v)
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| d / gcd(a, d))
            .fold(1, super::lcm)
    }

    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&a, &d)| acc * d as usize + a as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Vec<u64> {
        let mut x = vec![0; self.rank()];
        for (slot, &d) in x.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        x
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_cyclic_factors() {
        let g = FiniteAbelianGroup::from_cyclic_factors(&[2, 3, 4, 1]);
        assert_eq!(g.invariant_factors(), &[12, 2]);
        assert_eq!(g.order(), 24);
        assert_eq!(g.prime(), None);
        let g = FiniteAbelianGroup::from_cyclic_factors(&[2, 4]);
        assert_eq!(g.invariant_factors(), &[4, 2]);
        assert_eq!(g.prime(), Some(2));
    }

    #[test]
    fn rejects_bad_chain() {
        assert!(FiniteAbelianGroup::new(vec![2, 4]).is_err());
        assert!(FiniteAbelianGroup::new(vec![1]).is_err());
    }

    #[test]
    fn indexing_round_trip() {
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        for i in 0..8 {
            assert_eq!(g.index_of(&g.element_at(i)), i);
        }
        assert_eq!(g.element_order(&[2, 1]), 2);
        assert_eq!(g.element_order(&[1, 0]), 4);
    }
}
