use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::group::{ConjClassLabel, WreathElement, WreathProduct};
use crate::{Error, Int, Rational, Result};

/// A rational valued class function, keyed by class label.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction<K: Ord = ConjClassLabel> {
    values: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> ClassFunction<K> {
    pub fn zero<'a>(domain: impl IntoIterator<Item = &'a K>) -> Self
    where
        K: 'a,
    {
        ClassFunction {
            values: domain.into_iter().map(|k| (k.clone(), Rational::zero())).collect(),
        }
    }

    pub fn indicator<'a>(domain: impl IntoIterator<Item = &'a K>, at: &K) -> Self
    where
        K: 'a,
    {
        let mut f = Self::zero(domain);
        f.set(at, Rational::from_integer(Int::from(1)));
        f
    }

    pub fn from_values(values: BTreeMap<K, Rational>) -> Self {
        ClassFunction { values }
    }

    pub fn get(&self, k: &K) -> &Rational {
        &self.values[k]
    }

    /// Panics if `k` is outside the domain.
    pub fn set(&mut self, k: &K, v: Rational) {
        *self.values.get_mut(k).expect("label outside the domain") = v;
    }

    pub fn values(&self) -> &BTreeMap<K, Rational> {
        &self.values
    }

    pub fn domain(&self) -> impl Iterator<Item = &K> {
        self.values.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// Values in the order of `domain`.
    pub fn to_vector(&self, domain: &[K]) -> Vec<Rational> {
        domain.iter().map(|k| self.values[k].clone()).collect()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for ClassFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.values.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

/// `Σ_classes (|class| / |G|) f g`.
pub fn inner_product<K: Ord>(
    classes: &[(K, u128)],
    group_order: u128,
    f: &ClassFunction<K>,
    g: &ClassFunction<K>,
) -> Rational {
    let total: Rational = classes
        .iter()
        .map(|(k, size)| Rational::from_integer(Int::from(*size)) * &f.values[k] * &g.values[k])
        .sum();
    total / Rational::from_integer(Int::from(group_order))
}

/// A class of `A ≀ (Σ_l × Σ_m)`: one label per factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungLabel {
    pub left: ConjClassLabel,
    pub right: ConjClassLabel,
}

impl fmt::Debug for YoungLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.left, self.right)
    }
}

/// `A ≀ (Σ_l × Σ_{n−l}) ⊆ A ≀ Σ_n`: the elements whose permutation
/// preserves `{0, ..., l−1}`.
#[derive(Clone, Debug)]
pub struct YoungSubgroup {
    ambient: WreathProduct,
    left: WreathProduct,
    right: WreathProduct,
}

impl YoungSubgroup {
    pub fn new(ambient: &WreathProduct, l: usize) -> Result<Self> {
        let n = ambient.n();
        if l > n {
            return Err(Error::InvalidInput(format!("cannot split {n} as {l} + {}", n as i64 - l as i64)));
        }
        let base = ambient.base().clone();
        Ok(YoungSubgroup {
            ambient: ambient.clone(),
            left: WreathProduct::with_limit(base.clone(), l, u128::MAX)?,
            right: WreathProduct::with_limit(base, n - l, u128::MAX)?,
        })
    }

    pub fn ambient(&self) -> &WreathProduct {
        &self.ambient
    }

    pub fn split(&self) -> (usize, usize) {
        (self.left.n(), self.right.n())
    }

    pub fn order(&self) -> u128 {
        self.left.order() * self.right.order()
    }

    pub fn conjugacy_classes(&self) -> Vec<(YoungLabel, u128)> {
        let mut out = Vec::new();
        for (l, ls) in self.left.conjugacy_classes() {
            for (r, rs) in self.right.conjugacy_classes() {
                out.push((
                    YoungLabel {
                        left: l.clone(),
                        right: r,
                    },
                    ls * rs,
                ));
            }
        }
        out.sort();
        out
    }

    pub fn centralizer_order(&self, label: &YoungLabel) -> u128 {
        self.left.centralizer_order(&label.left) * self.right.centralizer_order(&label.right)
    }

    /// The class of the ambient group containing a subgroup class.
    pub fn fuse(&self, label: &YoungLabel) -> ConjClassLabel {
        label.left.union(&label.right)
    }

    pub fn contains(&self, g: &WreathElement) -> bool {
        let l = self.left.n();
        (0..l).all(|i| g.perm.apply(i) < l)
    }

    /// Subgroup class of an element. Panics unless `contains(g)`.
    pub fn label(&self, g: &WreathElement) -> YoungLabel {
        assert!(self.contains(g), "element outside the Young subgroup");
        let l = self.left.n();
        let left = WreathElement {
            vector: g.vector[..l].to_vec(),
            perm: crate::perm::Perm::from_images(g.perm.images()[..l].to_vec()),
        };
        let right = WreathElement {
            vector: g.vector[l..].to_vec(),
            perm: crate::perm::Perm::from_images(g.perm.images()[l..].iter().map(|&x| x - l).collect()),
        };
        YoungLabel {
            left: self.left.label(&left),
            right: self.right.label(&right),
        }
    }
}

/// Induction from the Young subgroup, by the class formula
/// `(Ind f)(g) = |C_G(g)| Σ_{c ⊆ [g]} f(c) / |C_H(c)|`.
pub fn induce(young: &YoungSubgroup, f: &ClassFunction<YoungLabel>) -> ClassFunction {
    let ambient = young.ambient();
    let classes = ambient.conjugacy_classes();
    let mut out = ClassFunction::zero(classes.iter().map(|c| &c.0));
    let mut sums: BTreeMap<ConjClassLabel, Rational> = BTreeMap::new();
    for (label, value) in f.values() {
        if value.is_zero() {
            continue;
        }
        let weight = Rational::new(Int::from(1), Int::from(young.centralizer_order(label)));
        *sums.entry(young.fuse(label)).or_insert_with(Rational::zero) += value * weight;
    }
    for (label, s) in sums {
        let c = Rational::from_integer(Int::from(ambient.centralizer_order(&label)));
        out.set(&label, s * c);
    }
    out
}

pub fn restrict(young: &YoungSubgroup, g: &ClassFunction) -> ClassFunction<YoungLabel> {
    let classes = young.conjugacy_classes();
    let mut out = ClassFunction::zero(classes.iter().map(|c| &c.0));
    for (label, _) in &classes {
        out.set(label, g.get(&young.fuse(label)).clone());
    }
    out
}
