use super::lattice::{hermite_basis, lattice_coordinates};
use super::{lcm, FiniteAbelianGroup};
use crate::linalg::IntegerMatrix;
use crate::Int;

/// A subgroup of `Z/d_1 ⊕ ... ⊕ Z/d_r`, stored as the Hermite basis of its
/// preimage lattice in `Z^r`.
///
/// The coordinate system (`moduli`) is any product of cyclic groups; it need
/// not be in invariant factor form, and moduli equal to `1` are allowed.
/// Two subgroups of the same coordinate group are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    moduli: Vec<u64>,
    basis: Vec<Vec<i64>>,
}

impl Subgroup {
    pub fn generated_by(moduli: &[u64], gens: &[Vec<i64>]) -> Self {
        Subgroup {
            moduli: moduli.to_vec(),
            basis: hermite_basis(gens, moduli),
        }
    }

    pub fn from_unsigned(moduli: &[u64], gens: &[Vec<u64>]) -> Self {
        let gens: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as i64).collect())
            .collect();
        Self::generated_by(moduli, &gens)
    }

    /// The subgroup of `group` (in its invariant factor coordinates)
    /// generated by `gens`.
    pub fn in_group(group: &FiniteAbelianGroup, gens: &[Vec<u64>]) -> Self {
        Self::from_unsigned(group.invariant_factors(), gens)
    }

    pub fn trivial(moduli: &[u64]) -> Self {
        Self::generated_by(moduli, &[])
    }

    pub fn whole(moduli: &[u64]) -> Self {
        let gens: Vec<Vec<i64>> = (0..moduli.len())
            .map(|i| {
                let mut e = vec![0; moduli.len()];
                e[i] = 1;
                e
            })
            .collect();
        Self::generated_by(moduli, &gens)
    }

    /// Builds a subgroup from a matrix already in Hermite form relative to
    /// `moduli`. Returns `None` unless the lattice contains every
    /// `moduli[i] · e_i`.
    pub(crate) fn from_hermite(moduli: &[u64], basis: Vec<Vec<i64>>) -> Option<Self> {
        let r = moduli.len();
        let contains_relations = (0..r).all(|i| {
            let mut e = vec![0; r];
            e[i] = moduli[i] as i64;
            lattice_coordinates(&basis, &e).is_some()
        });
        contains_relations.then(|| Subgroup {
            moduli: moduli.to_vec(),
            basis,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Hermite basis of the preimage lattice (canonical echelon form).
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<u64> {
        (0..self.moduli.len())
            .map(|i| self.basis[i][i] as u64)
            .collect()
    }

    pub fn ambient_order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn order(&self) -> u64 {
        self.moduli
            .iter()
            .zip(self.pivots())
            .map(|(d, p)| d / p)
            .product()
    }

    pub fn index(&self) -> u64 {
        self.pivots().iter().product()
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(&v, &d)| v.rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let lifted: Vec<i64> = self.reduce(x).into_iter().map(|v| v as i64).collect();
        lattice_coordinates(&self.basis, &lifted).is_some()
    }

    pub fn contains_unsigned(&self, x: &[u64]) -> bool {
        let v: Vec<i64> = x.iter().map(|&a| a as i64).collect();
        self.contains(&v)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.moduli == other.moduli && self.generators().iter().all(|g| other.contains_unsigned(g))
    }

    /// Nonzero basis rows reduced into the coordinate group.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|row| self.reduce(row))
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect()
    }

    /// All elements, each once. Row `i` of the basis contributes
    /// coefficients `0 ≤ c_i < d_i / pivot_i`.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let r = self.moduli.len();
        let ranges: Vec<u64> = (0..r).map(|i| self.moduli[i] / self.basis[i][i] as u64).collect();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut coeff = vec![0u64; r];
        loop {
            let mut x = vec![0i64; r];
            for (c, row) in coeff.iter().zip(&self.basis) {
                for (a, &b) in x.iter_mut().zip(row) {
                    *a += *c as i64 * b;
                }
            }
            out.push(self.reduce(&x));
            let mut k = r;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                coeff[k] += 1;
                if coeff[k] < ranges[k] {
                    break;
                }
                coeff[k] = 0;
            }
        }
    }

    pub fn exponent(&self) -> u64 {
        self.generators()
            .iter()
            .map(|g| {
                g.iter()
                    .zip(&self.moduli)
                    .map(|(&a, &d)| d / super::gcd(a, d))
                    .fold(1, lcm)
            })
            .fold(1, lcm)
    }

    /// Isomorphism type, from the relations `d_i e_i` written in the basis.
    pub fn iso_type(&self) -> FiniteAbelianGroup {
        let r = self.moduli.len();
        let rows: Vec<Vec<Int>> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = self.moduli[i] as i64;
                lattice_coordinates(&self.basis, &e)
                    .expect("relations lie in the lattice")
                    .into_iter()
                    .map(Int::from)
                    .collect()
            })
            .collect();
        let presentation = IntegerMatrix::from_rows(r, &rows);
        super::cokernel(&presentation).torsion
    }

    /// Image under the coordinate projection onto `keep`.
    pub fn project(&self, keep: &[usize]) -> Subgroup {
        let moduli: Vec<u64> = keep.iter().map(|&i| self.moduli[i]).collect();
        let gens: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|row| keep.iter().map(|&i| row[i]).collect())
            .collect();
        Subgroup::generated_by(&moduli, &gens)
    }
}

/// All subgroups of `group` of the given order, sorted by canonical form.
pub fn enumerate_subgroups(group: &FiniteAbelianGroup, order: u64) -> Vec<Subgroup> {
    enumerate_subgroups_of(group.invariant_factors(), order)
}

/// All subgroups of `Z/d_1 ⊕ ... ⊕ Z/d_r` of the given order.
///
/// Runs over every upper triangular matrix with pivots `p_i | d_i`,
/// `Π d_i / p_i = order` and reduced entries above the pivots, keeping those
/// whose lattice contains the relations. Each subgroup appears exactly once.
pub fn enumerate_subgroups_of(moduli: &[u64], order: u64) -> Vec<Subgroup> {
    let total: u64 = moduli.iter().product();
    if order == 0 || !total.is_multiple_of(order) {
        return Vec::new();
    }
    let index = total / order;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(moduli.len());
    pivot_tuples(moduli, index, &mut pivots, &mut |pivots| {
        fill_entries(moduli, pivots, &mut out);
    });
    out.sort();
    out
}

/// Every subgroup, ordered by subgroup order and then canonical form.
pub fn all_subgroups(moduli: &[u64]) -> Vec<Subgroup> {
    let total: u64 = moduli.iter().product();
    (1..=total)
        .filter(|d| total.is_multiple_of(*d))
        .flat_map(|d| enumerate_subgroups_of(moduli, d))
        .collect()
}

fn pivot_tuples(moduli: &[u64], remaining: u64, acc: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
    let i = acc.len();
    if i == moduli.len() {
        if remaining == 1 {
            f(acc);
        }
        return;
    }
    let d = moduli[i];
    for p in (1..=d).filter(|p| d.is_multiple_of(*p) && remaining.is_multiple_of(*p)) {
        acc.push(p);
        pivot_tuples(moduli, remaining / p, acc, f);
        acc.pop();
    }
}

fn fill_entries(moduli: &[u64], pivots: &[u64], out: &mut Vec<Subgroup>) {
    let r = moduli.len();
    let slots: Vec<(usize, usize)> = (0..r)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut basis: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row = vec![0; r];
            row[i] = pivots[i] as i64;
            row
        })
        .collect();
    loop {
        if let Some(s) = Subgroup::from_hermite(moduli, basis.clone()) {
            out.push(s);
        }
        // Odometer over the entries above the pivots.
        let mut k = slots.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            let (i, j) = slots[k];
            basis[i][j] += 1;
            if (basis[i][j] as u64) < pivots[j] {
                break;
            }
            basis[i][j] = 0;
        }
    }
}
