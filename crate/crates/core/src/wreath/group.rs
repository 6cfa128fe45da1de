use std::cmp::Reverse;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::abelian::FiniteAbelianGroup;
use crate::error::bound;
use crate::perm::{all_perms, Perm};
use crate::{Error, Result};

/// Default bound on `|A|^n · n!` for anything that works class by class.
pub const DEFAULT_MAX_ORDER: u128 = 1_000_000;

/// `A ≀ Σ_n = A^n ⋊ Σ_n` with `(a, σ)(b, τ) = (a + σ·b, στ)` and
/// `(σ·b)_i = b_{σ⁻¹(i)}`.
///
/// Elements of `A` are handled by their index in [`FiniteAbelianGroup`]
/// order.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    base: FiniteAbelianGroup,
    n: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub vector: Vec<u32>,
    pub perm: Perm,
}

/// Conjugacy invariant: the multiset of (cycle length, cycle sum) pairs,
/// sorted by length descending and then by element index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConjClassLabel {
    parts: Vec<(usize, u32)>,
}

impl ConjClassLabel {
    pub fn new(mut parts: Vec<(usize, u32)>) -> Self {
        parts.sort_by_key(|&(len, a)| (Reverse(len), a));
        ConjClassLabel { parts }
    }

    pub fn parts(&self) -> &[(usize, u32)] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|p| p.0).sum()
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.0).collect()
    }

    /// Whether the permutation part is a single `n`-cycle.
    pub fn is_full_cycle(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn union(&self, other: &ConjClassLabel) -> ConjClassLabel {
        ConjClassLabel::new(self.parts.iter().chain(&other.parts).copied().collect())
    }
}

impl fmt::Debug for ConjClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ConjClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(l, a)| format!("({l},{a})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.vector, self.perm)
    }
}

impl WreathProduct {
    pub fn new(base: FiniteAbelianGroup, n: usize) -> Result<Self> {
        Self::with_limit(base, n, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(base: FiniteAbelianGroup, n: usize, max_order: u128) -> Result<Self> {
        let order = group_order(&base, n);
        bound("wreath product order |A|^n n!", order, max_order)?;
        let size = base.order() as usize;
        let elems: Vec<Vec<u64>> = base.elements().collect();
        let mut add = vec![0; size * size];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                add[i * size + j] = base.index_of(&base.add(x, y)) as u32;
            }
        }
        let neg = elems
            .iter()
            .map(|x| base.index_of(&base.neg(x)) as u32)
            .collect();
        Ok(WreathProduct { base, n, add, neg })
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base_order(&self) -> usize {
        self.neg.len()
    }

    pub fn order(&self) -> u128 {
        group_order(&self.base, self.n)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.base_order() + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            vector: vec![0; self.n],
            perm: Perm::identity(self.n),
        }
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let mut vector = x.vector.clone();
        for (i, &b) in y.vector.iter().enumerate() {
            let j = x.perm.apply(i);
            vector[j] = self.add(vector[j], b);
        }
        WreathElement {
            vector,
            perm: x.perm.compose(&y.perm),
        }
    }

    pub fn inverse(&self, x: &WreathElement) -> WreathElement {
        let inv = x.perm.inverse();
        let mut vector = vec![0; self.n];
        for (i, &a) in x.vector.iter().enumerate() {
            vector[inv.apply(i)] = self.neg(a);
        }
        WreathElement { vector, perm: inv }
    }

    /// `x g x⁻¹`.
    pub fn conjugate(&self, g: &WreathElement, x: &WreathElement) -> WreathElement {
        self.mul(&self.mul(x, g), &self.inverse(x))
    }

    /// Every element. Panics if the group is too large to list, which the
    /// constructor bound prevents for the default limit.
    pub fn elements(&self) -> Vec<WreathElement> {
        let perms = all_perms(self.n);
        let vectors: Vec<Vec<u32>> = (0..self.n)
            .map(|_| 0..self.base_order() as u32)
            .multi_cartesian_product()
            .collect();
        let vectors = if self.n == 0 { vec![Vec::new()] } else { vectors };
        let mut out = Vec::with_capacity(self.order() as usize);
        for p in &perms {
            for v in &vectors {
                out.push(WreathElement {
                    vector: v.clone(),
                    perm: p.clone(),
                });
            }
        }
        out
    }

    pub fn label(&self, g: &WreathElement) -> ConjClassLabel {
        ConjClassLabel::new(
            g.perm
                .cycles()
                .iter()
                .map(|c| (c.len(), c.iter().fold(0, |acc, &i| self.add(acc, g.vector[i]))))
                .collect(),
        )
    }

    /// `N_A`: the sum of all coordinates.
    pub fn norm(&self, g: &WreathElement) -> u32 {
        g.vector.iter().fold(0, |acc, &a| self.add(acc, a))
    }

    /// `[a_1, ..., a_r] ≀ σ` with `σ` the consecutive-cycle permutation of
    /// the label's cycle type and `a_k` placed at the start of cycle `k`.
    pub fn canonical_representative(&self, label: &ConjClassLabel) -> Result<WreathElement> {
        if label.degree() != self.n
            || label.parts().iter().any(|&(l, a)| l == 0 || a as usize >= self.base_order())
        {
            return Err(Error::InvalidInput(format!(
                "label {label} is not a class of {} wr S_{}",
                self.base, self.n
            )));
        }
        let mut vector = vec![0; self.n];
        let mut cycles = Vec::new();
        let mut start = 0;
        for &(len, a) in label.parts() {
            vector[start] = a;
            cycles.push((start..start + len).collect::<Vec<_>>());
            start += len;
        }
        Ok(WreathElement {
            vector,
            perm: Perm::from_cycles(self.n, &cycles),
        })
    }

    /// `Π_{(λ, a)} (λ |A|)^{m} m!` over distinct pairs of multiplicity `m`.
    pub fn centralizer_order(&self, label: &ConjClassLabel) -> u128 {
        let size = self.base_order() as u128;
        label
            .parts()
            .iter()
            .dedup_with_count()
            .map(|(m, &(len, _))| {
                let fact: u128 = (1..=m as u128).product();
                (len as u128 * size).pow(m as u32) * fact
            })
            .product()
    }

    /// Every class label with its size, sorted by label.
    pub fn conjugacy_classes(&self) -> Vec<(ConjClassLabel, u128)> {
        let order = self.order();
        let mut out: Vec<(ConjClassLabel, u128)> = class_labels(self.n, self.base_order() as u32)
            .into_iter()
            .map(|l| {
                let size = order / self.centralizer_order(&l);
                (l, size)
            })
            .collect();
        out.sort();
        out
    }

    /// The classes `[a] ≀ (1 ... n)`.
    pub fn full_cycle_labels(&self) -> Vec<ConjClassLabel> {
        (0..self.base_order() as u32)
            .map(|a| ConjClassLabel::new(vec![(self.n, a)]))
            .collect()
    }
}

fn group_order(base: &FiniteAbelianGroup, n: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    (base.order() as u128).saturating_pow(n as u32).saturating_mul(fact)
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn class_labels(n: usize, base_order: u32) -> Vec<ConjClassLabel> {
    let mut out = Vec::new();
    for lambda in partitions(n, n) {
        let groups: Vec<(usize, usize)> = lambda
            .iter()
            .dedup_with_count()
            .map(|(m, &len)| (len, m))
            .collect();
        if groups.is_empty() {
            out.push(ConjClassLabel::new(Vec::new()));
            continue;
        }
        let choices: Vec<Vec<Vec<(usize, u32)>>> = groups
            .iter()
            .map(|&(len, m)| {
                (0..base_order)
                    .combinations_with_replacement(m)
                    .map(|elems| elems.into_iter().map(|a| (len, a)).collect())
                    .collect()
            })
            .collect();
        for combo in choices.into_iter().multi_cartesian_product() {
            out.push(ConjClassLabel::new(combo.concat()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    #[test]
    fn class_counts() {
        let g = WreathProduct::new(z(2), 2).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 5);
        let g = WreathProduct::new(FiniteAbelianGroup::trivial(), 3).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 3);
        let g = WreathProduct::new(z(3), 1).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 3);
    }

    #[test]
    fn class_equation() {
        for (a, n) in [(z(2), 3), (z(3), 2), (FiniteAbelianGroup::new(vec![2, 2]).unwrap(), 2)] {
            let g = WreathProduct::new(a, n).unwrap();
            let total: u128 = g.conjugacy_classes().iter().map(|c| c.1).sum();
            assert_eq!(total, g.order());
        }
    }

    #[test]
    fn canonical_representatives() {
        let g = WreathProduct::new(z(2), 2).unwrap();
        let r = g
            .canonical_representative(&ConjClassLabel::new(vec![(2, 1)]))
            .unwrap();
        assert_eq!(r.vector, vec![1, 0]);
        assert_eq!(r.perm, Perm::from_cycles(2, &[vec![0, 1]]));
        let id = g
            .canonical_representative(&ConjClassLabel::new(vec![(1, 0), (1, 0)]))
            .unwrap();
        assert_eq!(id, g.identity());

        let g = WreathProduct::new(z(2), 3).unwrap();
        let label = ConjClassLabel::new(vec![(1, 1), (2, 1)]);
        let r = g.canonical_representative(&label).unwrap();
        assert_eq!(r.vector, vec![1, 0, 1]);
        assert_eq!(r.perm, Perm::from_cycles(3, &[vec![0, 1]]));
        assert_eq!(g.label(&r), label);
    }

    #[test]
    fn invalid_label() {
        let g = WreathProduct::new(z(2), 2).unwrap();
        assert!(g
            .canonical_representative(&ConjClassLabel::new(vec![(3, 0)]))
            .is_err());
        assert!(g
            .canonical_representative(&ConjClassLabel::new(vec![(2, 5)]))
            .is_err());
    }

    #[test]
    fn resource_bound() {
        assert!(matches!(
            WreathProduct::new(z(4), 8),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn group_axioms_spot_check() {
        let g = WreathProduct::new(z(3), 2).unwrap();
        let els = g.elements();
        assert_eq!(els.len() as u128, g.order());
        for x in els.iter().step_by(5) {
            assert_eq!(g.mul(x, &g.inverse(x)), g.identity());
            for y in els.iter().step_by(7) {
                for w in els.iter().step_by(11) {
                    assert_eq!(g.mul(&g.mul(x, y), w), g.mul(x, &g.mul(y, w)));
                }
            }
        }
    }
}
