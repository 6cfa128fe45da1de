use std::fmt;

use num_rational::Ratio;

use super::{enumerate_subgroups_of, lcm, FiniteAbelianGroup, Subgroup};
use crate::{Error, Result};

/// A finite subgroup of `(Q/Z)^rank`.
///
/// Stored inside `(Z/e)^rank` where `e` is the exponent of the subgroup
/// itself; a coordinate `x` denotes `x/e`. With that normalization, equality
/// of values is equality of subgroups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QzSubgroup {
    rank: usize,
    exponent: u64,
    inner: Subgroup,
}

impl QzSubgroup {
    /// Subgroup generated by the points `g / exponent`.
    pub fn from_numerators(exponent: u64, rank: usize, gens: &[Vec<i64>]) -> Self {
        assert!(exponent > 0, "exponent must be positive");
        let sub = Subgroup::generated_by(&vec![exponent; rank], gens);
        Self::from_realization(exponent, rank, &sub)
    }

    /// Reads a subgroup of `(Z/e)^rank` as a subgroup of `(Q/Z)^rank`.
    pub fn from_realization(exponent: u64, rank: usize, sub: &Subgroup) -> Self {
        assert!(
            sub.moduli().len() == rank && sub.moduli().iter().all(|&d| d == exponent),
            "realization must live in (Z/{exponent})^{rank}"
        );
        let own = sub.exponent();
        let shrink = (exponent / own) as i64;
        let gens: Vec<Vec<i64>> = sub
            .generators()
            .iter()
            .map(|g| g.iter().map(|&x| x as i64 / shrink).collect())
            .collect();
        QzSubgroup {
            rank,
            exponent: own,
            inner: Subgroup::generated_by(&vec![own; rank], &gens),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::from_numerators(1, rank, &[])
    }

    /// The full `e`-torsion `((1/e)Z/Z)^rank`.
    pub fn torsion(rank: usize, e: u64) -> Self {
        let gens: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_numerators(e, rank, &gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.inner.order()
    }

    pub fn iso_type(&self) -> FiniteAbelianGroup {
        self.inner.iso_type()
    }

    /// The subgroup inside `(Z/e)^rank`; `e` must be a multiple of the
    /// exponent.
    pub fn realize_at(&self, e: u64) -> Subgroup {
        assert!(e.is_multiple_of(self.exponent), "{e} is not a multiple of {}", self.exponent);
        let scale = (e / self.exponent) as i64;
        let gens: Vec<Vec<i64>> = self
            .inner
            .generators()
            .iter()
            .map(|g| g.iter().map(|&x| x as i64 * scale).collect())
            .collect();
        Subgroup::generated_by(&vec![e; self.rank], &gens)
    }

    /// Numerators over the own exponent, one vector per element.
    pub fn numerators(&self) -> Vec<Vec<u64>> {
        self.inner.elements()
    }

    pub fn points(&self) -> Vec<Vec<Ratio<u64>>> {
        self.numerators()
            .into_iter()
            .map(|x| x.into_iter().map(|a| Ratio::new(a, self.exponent)).collect())
            .collect()
    }

    pub fn generators(&self) -> Vec<Vec<Ratio<u64>>> {
        self.inner
            .generators()
            .into_iter()
            .map(|x| x.into_iter().map(|a| Ratio::new(a, self.exponent)).collect())
            .collect()
    }

    /// Whether the point with numerators `x` over `denominator` lies here.
    pub fn contains(&self, denominator: u64, x: &[i64]) -> bool {
        let e = lcm(denominator, self.exponent);
        let scale = (e / denominator) as i64;
        let y: Vec<i64> = x.iter().map(|&a| a * scale).collect();
        self.realize_at(e).contains(&y)
    }

    pub fn is_subgroup_of(&self, other: &QzSubgroup) -> bool {
        let e = lcm(self.exponent, other.exponent);
        self.rank == other.rank && self.realize_at(e).is_subgroup_of(&other.realize_at(e))
    }

    /// Image under the coordinate projection onto `keep`.
    pub fn project(&self, keep: &[usize]) -> QzSubgroup {
        let sub = self.inner.project(keep);
        Self::from_realization(self.exponent, keep.len(), &sub)
    }

    /// All subgroups of `(Q/Z)^rank` of the given order, which all live in
    /// the `order`-torsion.
    pub fn all_of_order(rank: usize, order: u64) -> Vec<QzSubgroup> {
        let mut out: Vec<QzSubgroup> = enumerate_subgroups_of(&vec![order; rank], order)
            .iter()
            .map(|s| Self::from_realization(order, rank, s))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Debug for QzSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QzSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                let c: Vec<String> = g.iter().map(|q| q.to_string()).collect();
                format!("({})", c.join(", "))
            })
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Subgroups `H ⊆ Q/Z ⊕ (Q/Z)^h` of order `m` whose projection away from
/// the first coordinate is `a_star`.
pub fn subgroups_with_projection(m: u64, a_star: &QzSubgroup) -> Result<Vec<QzSubgroup>> {
    if m == 0 || !m.is_multiple_of(a_star.order()) {
        return Err(Error::InvalidInput(format!(
            "|A*| = {} does not divide m = {m}",
            a_star.order()
        )));
    }
    let h = a_star.rank();
    let e = lcm(m, a_star.exponent());
    let keep: Vec<usize> = (1..=h).collect();
    let mut out: Vec<QzSubgroup> = enumerate_subgroups_of(&vec![e; h + 1], m)
        .iter()
        .map(|s| QzSubgroup::from_realization(e, h + 1, s))
        .filter(|s| &s.project(&keep) == a_star)
        .collect();
    out.sort();
    Ok(out)
}
