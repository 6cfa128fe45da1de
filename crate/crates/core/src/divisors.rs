//! Components of the iterated inertia groupoid of `BU(m)`, the divisor of
//! the regular representation of a transitive abelian action, and the rank
//! identity between transitive commuting tuples and subgroups of `(Q/Z)^d`.
//!
//! Roots of unity of order `p^k` are written additively as elements of
//! `Z/p^k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::abelian::{
    dual_of_surjection, enumerate_subgroups_of, is_power_of, is_prime,
    subgroups_with_projection, FiniteAbelianGroup, QzSubgroup,
};
use crate::actions::{enumerate_types_of_index, ActionClass};
use crate::error::bound;
use crate::perm::{all_perms, centralizer_order, orbits, Perm};
use crate::{Error, Result};

/// Largest number of labels [`enumerate_components`] will materialize.
pub const MAX_COMPONENTS: u128 = 1_000_000;
/// Largest number of labels [`count_components`] will walk through.
pub const MAX_COMPONENT_WALK: u128 = 1_000_000_000;

/// An unordered `m`-tuple of ordered `h`-tuples in `Z/p^k`: one component
/// of `L^h_k BU(m)`.
///
/// Each `h`-tuple is stored by its index in base `p^k`, first coordinate
/// most significant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ComponentLabel {
    pub p: u64,
    pub k: u32,
    pub h: usize,
    /// `(tuple index, multiplicity)`, indices increasing, multiplicities positive.
    pub parts: Vec<(u64, usize)>,
}

impl ComponentLabel {
    pub fn size(&self) -> usize {
        self.parts.iter().map(|(_, s)| s).sum()
    }

    pub fn tuple(&self, index: u64) -> Vec<u64> {
        let q = self.p.pow(self.k);
        let mut out = vec![0; self.h];
        let mut rest = index;
        for c in out.iter_mut().rev() {
            *c = rest % q;
            rest /= q;
        }
        out
    }

    /// `(h-tuple, multiplicity)` pairs.
    pub fn tuples(&self) -> Vec<(Vec<u64>, usize)> {
        self.parts.iter().map(|&(i, s)| (self.tuple(i), s)).collect()
    }
}

impl fmt::Debug for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tuples()
            .iter()
            .map(|(t, s)| {
                let c: Vec<String> = t.iter().map(u64::to_string).collect();
                format!("{s}*({})", c.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

fn torus_points(k: u32, h: usize, p: u64) -> Result<FiniteAbelianGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let q = p
        .checked_pow(k)
        .filter(|q| (*q as u128).checked_pow(h as u32).is_some_and(|n| n <= u64::MAX as u128))
        .ok_or(Error::ResourceBound {
            what: "p^(hk)",
            requested: u128::MAX,
            limit: u64::MAX as u128,
        })?;
    Ok(FiniteAbelianGroup::from_cyclic_factors(&vec![q; h]))
}

/// `C(m + N − 1, m)` with `N = p^{hk}`.
pub fn component_count_closed_form(m: usize, k: u32, h: usize, p: u64) -> Result<BigUint> {
    let n = torus_points(k, h, p)?.order();
    Ok(binomial(BigUint::from(m as u64 + n - 1), BigUint::from(m as u64)))
}

/// Walks the non-decreasing sequences `0 ≤ i_1 ≤ ... ≤ i_m < N`, one per
/// multiset of size `m` over `N` symbols.
fn walk_multisets(m: usize, symbols: u64, mut visit: impl FnMut(&[u64])) {
    if m == 0 {
        visit(&[]);
        return;
    }
    if symbols == 0 {
        return;
    }
    let mut seq = vec![0u64; m];
    let last = m - 1;
    loop {
        for v in seq[last]..symbols {
            seq[last] = v;
            visit(&seq);
        }
        let Some(j) = (0..last).rev().find(|&j| seq[j] + 1 < symbols) else {
            return;
        };
        let v = seq[j] + 1;
        seq[j..].fill(v);
    }
}

/// Every component label for `(m, k, h, p)`.
pub fn enumerate_components(m: usize, k: u32, h: usize, p: u64) -> Result<Vec<ComponentLabel>> {
    let torus = torus_points(k, h, p)?;
    let expected = component_count_closed_form(m, k, h, p)?;
    bound("component count", expected.to_u128().unwrap_or(u128::MAX), MAX_COMPONENTS)?;
    let mut out = Vec::with_capacity(expected.to_usize().unwrap_or(0));
    walk_multisets(m, torus.order(), |seq| {
        let mut parts: Vec<(u64, usize)> = Vec::with_capacity(seq.len());
        for &i in seq {
            match parts.last_mut() {
                Some((j, s)) if *j == i => *s += 1,
                _ => parts.push((i, 1)),
            }
        }
        out.push(ComponentLabel { p, k, h, parts });
    });
    Ok(out)
}

/// The number of component labels, found by walking all of them without
/// materializing the list.
pub fn count_components(m: usize, k: u32, h: usize, p: u64) -> Result<u64> {
    let torus = torus_points(k, h, p)?;
    let expected = component_count_closed_form(m, k, h, p)?;
    bound("component walk", expected.to_u128().unwrap_or(u128::MAX), MAX_COMPONENT_WALK)?;
    let mut count = 0u64;
    walk_multisets(m, torus.order(), |_| count += 1);
    Ok(count)
}

/// A divisor on `Λ_k = ((Z/p^k)^d)^*`: points written as numerators over
/// `p^k`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorOnTorus {
    pub p: u64,
    pub k: u32,
    pub d: usize,
    pub points: BTreeMap<Vec<u64>, usize>,
}

impl DivisorOnTorus {
    pub fn degree(&self) -> usize {
        self.points.values().sum()
    }

    /// The support, as a subset of `(Q/Z)^d`.
    pub fn support(&self) -> BTreeSet<Vec<u64>> {
        self.points.keys().cloned().collect()
    }

    /// The subgroup generated by the support.
    pub fn support_subgroup(&self) -> QzSubgroup {
        let gens: Vec<Vec<i64>> = self
            .points
            .keys()
            .map(|x| x.iter().map(|&c| c as i64).collect())
            .collect();
        QzSubgroup::from_numerators(self.p.pow(self.k), self.d, &gens)
    }

    /// Whether the support is exactly a subgroup.
    pub fn support_is_subgroup(&self) -> bool {
        let sub = self.support_subgroup();
        let q = self.p.pow(self.k);
        let elements: BTreeSet<Vec<u64>> = sub.realize_at(q).elements().into_iter().collect();
        elements == self.support()
    }
}

/// The divisor `Σ_{χ ∈ A^*} [χ]` of the regular representation of the
/// image `A` of a transitive map `Z^d → Σ_{p^k}`.
pub fn regular_divisor(class: &ActionClass, p: u64) -> Result<DivisorOnTorus> {
    if !class.base().is_trivial() {
        return Err(Error::InvalidInput("regular divisors need the trivial base group".into()));
    }
    if !class.survives_transfer() {
        return Err(Error::NotTransitive);
    }
    let n = class.n() as u64;
    if !is_power_of(n, p) {
        return Err(Error::InvalidInput(format!("degree {n} is not a power of {p}")));
    }
    let k = exponent_of(n, p);
    let t = &class.types()[0].0;
    let images: Vec<Vec<i64>> = t
        .surjection()
        .iter()
        .map(|v| v.iter().map(|&c| c as i64).collect())
        .collect();
    let dual = dual_of_surjection(t.quotient(), &images)?;
    let points = dual
        .realize_at(n)
        .elements()
        .into_iter()
        .map(|x| (x, 1))
        .collect();
    Ok(DivisorOnTorus {
        p,
        k,
        d: class.h(),
        points,
    })
}

fn exponent_of(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Largest degree and rank for the permutation oracle in
/// [`rank_identity_check`].
pub const ORACLE_MAX_DEGREE: usize = 8;
pub const ORACLE_MAX_RANK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankIdentityReport {
    pub p: u64,
    pub k: u32,
    pub d: usize,
    /// Transitive classes of commuting `d`-tuples of `p`-power order in `Σ_{p^k}`.
    pub lhs: usize,
    /// Subgroups of order `p^k` in `(Q/Z)^d`.
    pub rhs: usize,
    /// `α ↦ (im α)^*` is a bijection between the two sets.
    pub bijection_ok: bool,
    /// Independent count of the left side in `Σ_{p^k}`, when within budget.
    pub permutation_count: Option<u64>,
}

impl RankIdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
            && self.bijection_ok
            && self.permutation_count.is_none_or(|c| c == self.lhs as u64)
    }
}

pub fn rank_identity_check(p: u64, k: u32, d: usize) -> Result<RankIdentityReport> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let n = p.checked_pow(k).unwrap_or(u64::MAX);
    bound("p^k", n as u128, 16)?;
    bound("rank d", d as u128, 4)?;
    let trivial = FiniteAbelianGroup::trivial();
    let classes: Vec<ActionClass> = enumerate_types_of_index(&trivial, d, n)
        .into_iter()
        .filter(|t| is_power_of(t.quotient().order(), p))
        .map(|t| ActionClass::new(trivial.clone(), d, n as usize, vec![(t, 1)]))
        .collect::<Result<_>>()?;
    let subgroups: BTreeSet<QzSubgroup> = QzSubgroup::all_of_order(d, n).into_iter().collect();

    let mut images = BTreeSet::new();
    let mut bijection_ok = true;
    for c in &classes {
        let div = regular_divisor(c, p)?;
        bijection_ok &= div.degree() as u64 == n && div.support_is_subgroup();
        images.insert(div.support_subgroup());
    }
    bijection_ok &= images.len() == classes.len() && images == subgroups;

    let permutation_count = if n as usize <= ORACLE_MAX_DEGREE && d <= ORACLE_MAX_RANK {
        Some(transitive_tuple_classes(p, n as usize, d))
    } else {
        None
    };
    Ok(RankIdentityReport {
        p,
        k,
        d,
        lhs: classes.len(),
        rhs: subgroups.len(),
        bijection_ok,
        permutation_count,
    })
}

/// Conjugacy classes of transitive commuting `d`-tuples of `p`-power order
/// elements of `Σ_n`, by Burnside: each class contributes
/// `Σ_{t in class} |C(t)| = n!`.
fn transitive_tuple_classes(p: u64, n: usize, d: usize) -> u64 {
    let candidates: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|g| is_power_of(g.order(), p))
        .collect();
    let mut total: u128 = 0;
    let mut stack: Vec<Perm> = Vec::new();
    fn go(candidates: &[Perm], n: usize, d: usize, stack: &mut Vec<Perm>, total: &mut u128) {
        if stack.len() == d {
            if orbits(n, stack).len() == 1 {
                *total += centralizer_order(n, stack);
            }
            return;
        }
        for g in candidates {
            if stack.iter().all(|s| s.commutes_with(g)) {
                stack.push(g.clone());
                go(candidates, n, d, stack, total);
                stack.pop();
            }
        }
    }
    go(&candidates, n, d, &mut stack, &mut total);
    let fact: u128 = (1..=n as u128).product();
    debug_assert_eq!(total % fact, 0);
    (total / fact) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub m: u64,
    pub h: usize,
    pub a_star: String,
    pub a_star_order: u64,
    pub fiber: usize,
    pub holds: bool,
}

/// Counts subgroups of order `m` in `Q/Z ⊕ (Q/Z)^h` projecting onto `A^*`,
/// which should be `|A^*|`.
pub fn fiber_count_check(m: u64, a_star: &QzSubgroup) -> Result<FiberReport> {
    let fiber = subgroups_with_projection(m, a_star)?.len();
    Ok(FiberReport {
        m,
        h: a_star.rank(),
        a_star: a_star.to_string(),
        a_star_order: a_star.order(),
        fiber,
        holds: fiber as u64 == a_star.order(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub m: u64,
    pub h: usize,
    pub fibers: Vec<FiberReport>,
    pub sum_of_fibers: usize,
    pub total: usize,
    pub holds: bool,
}

/// Runs [`fiber_count_check`] over every `A^* ⊆ (Q/Z)^h` with `|A^*|`
/// dividing `m`, and compares the sum with the number of subgroups of
/// order `m` in `Q/Z ⊕ (Q/Z)^h`.
pub fn fiber_partition_check(m: u64, h: usize) -> Result<PartitionReport> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let candidates: Vec<QzSubgroup> = (1..=m)
        .filter(|o| m.is_multiple_of(*o))
        .flat_map(|o| {
            enumerate_subgroups_of(&vec![m; h], o)
                .into_iter()
                .map(|s| QzSubgroup::from_realization(m, h, &s))
                .collect::<Vec<_>>()
        })
        .collect();
    let fibers: Vec<FiberReport> = candidates
        .iter()
        .map(|a| fiber_count_check(m, a))
        .collect::<Result<_>>()?;
    let sum_of_fibers = fibers.iter().map(|f| f.fiber).sum();
    let total = QzSubgroup::all_of_order(h + 1, m).len();
    let holds = sum_of_fibers == total && fibers.iter().all(|f| f.holds);
    Ok(PartitionReport {
        m,
        h,
        fibers,
        sum_of_fibers,
        total,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::decompose_permutations;

    #[test]
    fn component_examples() {
        assert_eq!(enumerate_components(2, 1, 1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_components(2, 1, 2, 2).unwrap().len(), 10);
        for (k, h, p) in [(1u32, 1usize, 3u64), (2, 1, 2), (1, 2, 5)] {
            let n = p.pow(k * h as u32) as usize;
            let labels = enumerate_components(1, k, h, p).unwrap();
            assert_eq!(labels.len(), n);
            assert!(labels.iter().all(|l| l.size() == 1));
        }
        assert_eq!(enumerate_components(0, 1, 1, 2).unwrap().len(), 1);
        assert_eq!(count_components(3, 1, 2, 3).unwrap(), 165);
        assert!(matches!(
            enumerate_components(6, 1, 6, 2),
            Err(Error::ResourceBound { .. })
        ));
    }

    fn class_of(perms: &[Perm]) -> ActionClass {
        let n = perms[0].degree();
        decompose_permutations(&FiniteAbelianGroup::trivial(), n, perms, &[]).unwrap()
    }

    #[test]
    fn divisor_examples() {
        let swap = class_of(&[Perm::from_cycles(2, &[vec![0, 1]])]);
        let div = regular_divisor(&swap, 2).unwrap();
        assert_eq!(div.support(), [vec![0], vec![1]].into_iter().collect());

        let four = class_of(&[Perm::from_cycles(4, &[vec![0, 1, 2, 3]])]);
        let div = regular_divisor(&four, 2).unwrap();
        assert_eq!(div.degree(), 4);
        assert_eq!(div.support_subgroup(), QzSubgroup::torsion(1, 4));

        let klein = class_of(&[
            Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]),
            Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]),
        ]);
        let div = regular_divisor(&klein, 2).unwrap();
        assert_eq!(div.support_subgroup(), QzSubgroup::torsion(2, 2));
        assert!(div.support_is_subgroup());

        let split = class_of(&[Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])]);
        assert_eq!(regular_divisor(&split, 2), Err(Error::NotTransitive));
    }

    #[test]
    fn rank_examples() {
        for (p, k, d, count) in [(2, 1, 2, 3), (2, 2, 2, 7), (3, 1, 1, 1)] {
            let r = rank_identity_check(p, k, d).unwrap();
            assert_eq!((r.lhs, r.rhs), (count, count));
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn fiber_examples() {
        let half = QzSubgroup::torsion(1, 2);
        assert_eq!(fiber_count_check(2, &half).unwrap().fiber, 2);
        assert_eq!(fiber_count_check(4, &half).unwrap().fiber, 2);
        for l in 1..6 {
            assert_eq!(fiber_count_check(l, &QzSubgroup::trivial(1)).unwrap().fiber, 1);
        }
        assert!(fiber_partition_check(4, 1).unwrap().holds);
    }
}
