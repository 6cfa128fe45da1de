use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::abelian::{enumerate_subgroups_of, FiniteAbelianGroup, Presentation, Subgroup};
use crate::{Error, Result};

/// The type of a point of an `A`-free `Z^h ⊕ A`-set: the quotient
/// `t: Z^h ⊕ A ↠ A_t` by the stabilizer.
///
/// Coordinates on `Z^h ⊕ A` are the `h` free generators followed by the
/// invariant generators of `A`. The stabilizer is kept as the Hermite basis
/// of its preimage lattice in `Z^{h+r}`, which identifies the type.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TypeClass {
    base: FiniteAbelianGroup,
    h: usize,
    kernel: Vec<Vec<i64>>,
    quotient: FiniteAbelianGroup,
    /// Images of the `h + r` generators in `A_t`.
    surjection: Vec<Vec<u64>>,
}

impl TypeClass {
    /// The type with the given stabilizer. `kernel` must be the Hermite basis
    /// of a full rank lattice containing the relations of `A`.
    pub fn from_kernel(base: &FiniteAbelianGroup, h: usize, kernel: Vec<Vec<i64>>) -> Result<Self> {
        let r = base.rank();
        if kernel.len() != h + r || kernel.iter().any(|row| row.len() != h + r) {
            return Err(Error::InvalidInput("kernel basis has the wrong shape".into()));
        }
        let presentation = Presentation {
            generators: h + r,
            relations: kernel.clone(),
        };
        let coker = presentation.cokernel();
        if !coker.is_finite() {
            return Err(Error::InvalidInput("stabilizer must have finite index".into()));
        }
        let surjection = (0..h + r).map(|i| coker.generator_image(i)).collect();
        let t = TypeClass {
            base: base.clone(),
            h,
            kernel,
            quotient: coker.torsion,
            surjection,
        };
        if !t.is_free_on_base() {
            return Err(Error::InvalidInput(
                "stabilizer meets A nontrivially, so A does not act freely".into(),
            ));
        }
        Ok(t)
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn kernel(&self) -> &[Vec<i64>] {
        &self.kernel
    }

    pub fn quotient(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    pub fn surjection(&self) -> &[Vec<u64>] {
        &self.surjection
    }

    /// `|A_t| / |A|`, the number of points of `[n]` an orbit of this type covers.
    pub fn index(&self) -> u64 {
        self.quotient.order() / self.base.order()
    }

    /// `t(v)` for `v ∈ Z^h ⊕ Z^r`.
    pub fn apply(&self, v: &[i64]) -> Vec<u64> {
        let mut acc = vec![0i64; self.quotient.rank()];
        for (c, img) in v.iter().zip(&self.surjection) {
            for (a, &b) in acc.iter_mut().zip(img) {
                *a += c * b as i64;
            }
        }
        self.quotient.reduce(&acc)
    }

    /// `t` restricted to `A` is injective: the stabilizer meets `0 ⊕ A`
    /// only in the relations, i.e. the lower right block of the Hermite
    /// basis is `diag(d_1, ..., d_r)`.
    pub fn is_free_on_base(&self) -> bool {
        let h = self.h;
        self.base
            .invariant_factors()
            .iter()
            .enumerate()
            .all(|(j, &d)| {
                (0..self.base.rank()).all(|k| {
                    let want = if j == k { d as i64 } else { 0 };
                    self.kernel[h + j][h + k] == want
                })
            })
    }

    fn sort_key(&self) -> (u64, &[u64], &[Vec<i64>]) {
        (
            self.quotient.order(),
            self.quotient.invariant_factors(),
            &self.kernel,
        )
    }
}

impl Ord for TypeClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| self.h.cmp(&other.h))
    }
}

impl PartialOrd for TypeClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self
            .surjection
            .iter()
            .map(|v| {
                let c: Vec<String> = v.iter().map(u64::to_string).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "{} via [{}]", self.quotient, imgs.join(" "))
    }
}

/// Types of exact index `j` (that is, `|A_t| = j |A|`).
///
/// A stabilizer of index `N = j |A|` contains `N · Z^h`, so the candidates
/// are the subgroups of index `N` in `(Z/N)^h ⊕ A` meeting `A` trivially.
pub fn enumerate_types_of_index(base: &FiniteAbelianGroup, h: usize, j: u64) -> Vec<TypeClass> {
    if j == 0 || (h == 0 && j != 1) {
        return Vec::new();
    }
    let big_n = j * base.order();
    let mut moduli = vec![big_n; h];
    moduli.extend_from_slice(base.invariant_factors());
    let total: u64 = moduli.iter().product();
    let mut out: Vec<TypeClass> = enumerate_subgroups_of(&moduli, total / big_n)
        .into_iter()
        .filter(|s| meets_base_trivially(s, h, base))
        .map(|s| {
            TypeClass::from_kernel(base, h, s.basis().to_vec())
                .expect("filtered stabilizers are valid")
        })
        .collect();
    out.sort();
    out
}

fn meets_base_trivially(s: &Subgroup, h: usize, base: &FiniteAbelianGroup) -> bool {
    s.pivots()[h..] == *base.invariant_factors()
}

/// All types with `|A_t| / |A| ≤ max_index`, sorted.
pub fn enumerate_types(base: &FiniteAbelianGroup, h: usize, max_index: u64) -> Vec<TypeClass> {
    let mut out: Vec<TypeClass> = (1..=max_index)
        .flat_map(|j| enumerate_types_of_index(base, h, j))
        .collect();
    out.sort();
    out
}
