use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::types::{enumerate_types, TypeClass};
use crate::abelian::{is_power_of, FiniteAbelianGroup, Subgroup};
use crate::perm::{orbits, Perm};
use crate::{Error, Result};

/// Which types may appear in an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderFilter {
    All,
    /// Only types with `|A_t|` a power of `p`: the maps that extend
    /// continuously to `Z_p^h`.
    PrimePower(u64),
}

impl OrderFilter {
    fn admits(&self, t: &TypeClass) -> bool {
        match *self {
            OrderFilter::All => true,
            OrderFilter::PrimePower(p) => is_power_of(t.quotient().order(), p),
        }
    }
}

/// A conjugacy class of maps `Z^h → A ≀ Σ_n`, as the multiset of types of
/// the corresponding `Z^h ⊕ A`-set `A × [n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ActionClass {
    base: FiniteAbelianGroup,
    h: usize,
    n: usize,
    /// Sorted by type, multiplicities at least one.
    types: Vec<(TypeClass, usize)>,
}

/// `Π_t A_t ≀ Σ_{N_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub factors: Vec<(FiniteAbelianGroup, usize)>,
}

impl CentralizerShape {
    pub fn order(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(g, mult)| {
                let fact: BigUint = (1..=*mult as u64).map(BigUint::from).product();
                BigUint::from(g.order()).pow(*mult as u32) * fact
            })
            .product()
    }
}

impl fmt::Display for CentralizerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, m)| format!("({g}) wr S_{m}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Permutations realizing an action class on `A × [n]`, numbered so that
/// the point `(a, i)` is `i · |A| + index(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationModel {
    pub degree: usize,
    /// Images of the `h` generators of `Z^h`.
    pub tuple: Vec<Perm>,
    /// Images of the invariant generators of `A` (the embedding of `A` into
    /// `Σ_{|A| n}`).
    pub base: Vec<Perm>,
}

impl PermutationModel {
    pub fn all_generators(&self) -> Vec<Perm> {
        self.tuple.iter().chain(&self.base).cloned().collect()
    }

    /// The induced permutations of the blocks `[n]`.
    pub fn on_blocks(&self, block: usize) -> Vec<Perm> {
        let n = self.degree / block;
        self.tuple
            .iter()
            .map(|p| Perm::from_images((0..n).map(|i| p.apply(i * block) / block).collect()))
            .collect()
    }
}

impl ActionClass {
    /// Validates and sorts a multiset of types.
    pub fn new(
        base: FiniteAbelianGroup,
        h: usize,
        n: usize,
        mut types: Vec<(TypeClass, usize)>,
    ) -> Result<Self> {
        if types.iter().any(|(t, m)| *m == 0 || t.base() != &base || t.h() != h) {
            return Err(Error::InvalidInput(
                "types must share the base group and rank, with positive multiplicity".into(),
            ));
        }
        types.sort();
        let mut merged: Vec<(TypeClass, usize)> = Vec::new();
        for (t, m) in types {
            match merged.last_mut() {
                Some((last, lm)) if *last == t => *lm += m,
                _ => merged.push((t, m)),
            }
        }
        let covered: u64 = merged.iter().map(|(t, m)| *m as u64 * t.quotient().order()).sum();
        if covered != n as u64 * base.order() {
            return Err(Error::InvalidInput(format!(
                "orbits cover {covered} points, expected n|A| = {}",
                n as u64 * base.order()
            )));
        }
        Ok(ActionClass {
            base,
            h,
            n,
            types: merged,
        })
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn types(&self) -> &[(TypeClass, usize)] {
        &self.types
    }

    pub fn orbit_count(&self) -> usize {
        self.types.iter().map(|(_, m)| m).sum()
    }

    pub fn centralizer_shape(&self) -> CentralizerShape {
        CentralizerShape {
            factors: self
                .types
                .iter()
                .map(|(t, m)| (t.quotient().clone(), *m))
                .collect(),
        }
    }

    pub fn is_monotypical(&self) -> bool {
        self.types.len() == 1
    }

    /// Whether the class avoids every `A ≀ (Σ_m × Σ_{n−m})`, `0 < m < n`.
    ///
    /// A class with two distinct types splits along them, and a single type
    /// with multiplicity `N ≥ 2` splits off one orbit, so only the
    /// transitive classes survive.
    pub fn survives_transfer(&self) -> bool {
        self.is_monotypical() && self.types[0].1 == 1
    }

    pub fn to_permutations(&self) -> PermutationModel {
        let base = &self.base;
        let r = base.rank();
        let block = base.order() as usize;
        let degree = self.n * block;
        let mut tuple: Vec<Vec<usize>> = vec![vec![0; degree]; self.h];
        let mut base_perms: Vec<Vec<usize>> = vec![vec![0; degree]; r];

        let mut next_block = 0usize;
        for (t, mult) in &self.types {
            let q = t.quotient();
            // Points of one orbit: elements of A_t, grouped into t(A)-cosets.
            let base_images: Vec<Vec<u64>> = base
                .elements()
                .map(|a| {
                    let mut v = vec![0i64; self.h];
                    v.extend(a.iter().map(|&x| x as i64));
                    t.apply(&v)
                })
                .collect();
            let mut label_of: HashMap<Vec<u64>, usize> = HashMap::new();
            let mut coset = 0usize;
            for x in q.elements() {
                if label_of.contains_key(&x) {
                    continue;
                }
                for (ai, ta) in base_images.iter().enumerate() {
                    label_of.insert(q.add(&x, ta), coset * block + ai);
                }
                coset += 1;
            }
            let gen_images: Vec<Vec<u64>> = (0..self.h + r)
                .map(|g| {
                    let mut e = vec![0i64; self.h + r];
                    e[g] = 1;
                    t.apply(&e)
                })
                .collect();
            for _ in 0..*mult {
                let offset = next_block * block;
                for (x, &lx) in &label_of {
                    for (g, img) in gen_images.iter().enumerate() {
                        let target = offset + label_of[&q.add(x, img)];
                        if g < self.h {
                            tuple[g][offset + lx] = target;
                        } else {
                            base_perms[g - self.h][offset + lx] = target;
                        }
                    }
                }
                next_block += coset;
            }
        }
        debug_assert_eq!(next_block, self.n);
        PermutationModel {
            degree,
            tuple: tuple.into_iter().map(Perm::from_images).collect(),
            base: base_perms.into_iter().map(Perm::from_images).collect(),
        }
    }
}

impl fmt::Debug for ActionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ActionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .types
            .iter()
            .map(|(t, m)| format!("{m} x [{t}]"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Every conjugacy class of maps `Z^h → A ≀ Σ_n`.
pub fn enumerate_action_classes(base: &FiniteAbelianGroup, h: usize, n: usize) -> Vec<ActionClass> {
    enumerate_action_classes_filtered(base, h, n, OrderFilter::All)
}

/// Classes whose types all pass `filter`.
pub fn enumerate_action_classes_filtered(
    base: &FiniteAbelianGroup,
    h: usize,
    n: usize,
    filter: OrderFilter,
) -> Vec<ActionClass> {
    let types: Vec<TypeClass> = enumerate_types(base, h, n as u64)
        .into_iter()
        .filter(|t| filter.admits(t))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    choose_multiplicities(&types, 0, n as u64, &mut chosen, &mut |chosen| {
        let class = ActionClass::new(base.clone(), h, n, chosen.to_vec())
            .expect("multiplicities cover n blocks");
        out.push(class);
    });
    out.sort();
    out
}

fn choose_multiplicities(
    types: &[TypeClass],
    from: usize,
    remaining: u64,
    chosen: &mut Vec<(TypeClass, usize)>,
    emit: &mut dyn FnMut(&[(TypeClass, usize)]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for i in from..types.len() {
        let j = types[i].index();
        let mut mult = 1;
        while mult as u64 * j <= remaining {
            chosen.push((types[i].clone(), mult));
            choose_multiplicities(types, i + 1, remaining - mult as u64 * j, chosen, emit);
            chosen.pop();
            mult += 1;
        }
    }
}

/// Reads the type multiset back off commuting permutations.
///
/// `tuple` gives the `Z^h` action and `base_gens` the action of the
/// invariant generators of `A`. The stabilizer of a point in an orbit of size
/// `s` contains `s · Z^h`, so it is found by testing every vector of
/// `(Z/s)^h ⊕ A` against the point.
pub fn decompose_permutations(
    base: &FiniteAbelianGroup,
    degree: usize,
    tuple: &[Perm],
    base_gens: &[Perm],
) -> Result<ActionClass> {
    let h = tuple.len();
    let r = base.rank();
    if base_gens.len() != r || base.order() == 0 || !degree.is_multiple_of(base.order() as usize) {
        return Err(Error::InvalidInput("permutation data does not match the base group".into()));
    }
    let gens: Vec<Perm> = tuple.iter().chain(base_gens).cloned().collect();
    for (i, g) in gens.iter().enumerate() {
        if g.degree() != degree {
            return Err(Error::InvalidInput("permutation degree mismatch".into()));
        }
        if gens[..i].iter().any(|o| !o.commutes_with(g)) {
            return Err(Error::InvalidInput("permutations do not commute".into()));
        }
    }
    let mut types = Vec::new();
    for orbit in orbits(degree, &gens) {
        let s = orbit.len() as u64;
        let x0 = orbit[0];
        let mut moduli = vec![s; h];
        moduli.extend_from_slice(base.invariant_factors());
        let fixing: Vec<Vec<i64>> = Subgroup::whole(&moduli)
            .elements()
            .into_iter()
            .filter(|v| {
                let mut x = x0;
                for (g, &k) in gens.iter().zip(v) {
                    for _ in 0..k {
                        x = g.apply(x);
                    }
                }
                x == x0
            })
            .map(|v| v.into_iter().map(|c| c as i64).collect())
            .collect();
        let stabilizer = Subgroup::generated_by(&moduli, &fixing);
        let t = TypeClass::from_kernel(base, h, stabilizer.basis().to_vec())?;
        types.push((t, 1));
    }
    ActionClass::new(base.clone(), h, degree / base.order() as usize, types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::centralizer_order;

    fn trivial() -> FiniteAbelianGroup {
        FiniteAbelianGroup::trivial()
    }

    #[test]
    fn partitions_of_three() {
        assert_eq!(enumerate_action_classes(&trivial(), 1, 3).len(), 3);
    }

    #[test]
    fn commuting_pairs_in_s2() {
        assert_eq!(enumerate_action_classes(&trivial(), 2, 2).len(), 4);
    }

    #[test]
    fn h_zero_single_class() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let classes = enumerate_action_classes(&z2, 0, 2);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].types()[0].1, 2);
    }

    fn class_of(cycle_type: &[usize]) -> ActionClass {
        let n = cycle_type.iter().sum();
        let pts: usize = n;
        let mut cycles = Vec::new();
        let mut next = 0;
        for &len in cycle_type {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        let p = Perm::from_cycles(pts, &cycles);
        decompose_permutations(&trivial(), n, &[p], &[]).unwrap()
    }

    #[test]
    fn double_transposition() {
        let c = class_of(&[2, 2]);
        assert!(c.is_monotypical());
        assert!(!c.survives_transfer());
        assert_eq!(c.centralizer_shape().order(), BigUint::from(8u32));
    }

    #[test]
    fn four_cycle() {
        let c = class_of(&[4]);
        assert!(c.is_monotypical());
        assert!(c.survives_transfer());
        assert_eq!(c.centralizer_shape().order(), BigUint::from(4u32));
        let model = c.to_permutations();
        assert_eq!(model.tuple[0].cycle_type(), vec![4]);
    }

    #[test]
    fn transposition_in_s3() {
        let c = class_of(&[2, 1]);
        assert!(!c.is_monotypical());
        assert!(!c.survives_transfer());
    }

    #[test]
    fn trivial_map_has_full_centralizer() {
        let c = class_of(&[1, 1, 1, 1]);
        assert_eq!(c.centralizer_shape().order(), BigUint::from(24u32));
    }

    #[test]
    fn regular_z2_embedding() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let classes = enumerate_action_classes(&z2, 0, 1);
        assert_eq!(classes.len(), 1);
        let model = classes[0].to_permutations();
        assert!(model.tuple.is_empty());
        assert_eq!(model.base, vec![Perm::from_cycles(2, &[vec![0, 1]])]);
    }

    #[test]
    fn round_trip_and_centralizer_small() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        for c in enumerate_action_classes(&z2, 1, 2) {
            let m = c.to_permutations();
            let back = decompose_permutations(&z2, m.degree, &m.tuple, &m.base).unwrap();
            assert_eq!(back, c);
            let brute = centralizer_order(m.degree, &m.all_generators());
            assert_eq!(BigUint::from(brute), c.centralizer_shape().order());
        }
    }
}
