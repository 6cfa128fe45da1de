use num_traits::{One, ToPrimitive, Zero};

use super::{FiniteAbelianGroup, QzSubgroup};
use crate::linalg::{smith_normal_form, IntegerMatrix};
use crate::{Error, Int, Result, ZMatrix};

/// A finitely presented abelian group `Z^generators / ⟨relations⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn free(rank: usize) -> Self {
        Presentation {
            generators: rank,
            relations: Vec::new(),
        }
    }

    /// `Z/d_1 ⊕ ...` on its invariant factor generators.
    pub fn of_group(group: &FiniteAbelianGroup) -> Self {
        let r = group.rank();
        let relations = group
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = vec![0; r];
                row[i] = d as i64;
                row
            })
            .collect();
        Presentation {
            generators: r,
            relations,
        }
    }

    pub fn relation_matrix(&self) -> ZMatrix {
        let rows: Vec<Vec<Int>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        IntegerMatrix::from_rows(self.generators, &rows)
    }

    pub fn cokernel(&self) -> Cokernel {
        cokernel(&self.relation_matrix())
    }
}

/// `Z^c / rowspace(M)` decomposed as torsion plus free part, with the
/// coordinate change that realizes the isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub torsion: FiniteAbelianGroup,
    pub free_rank: usize,
    /// `x ↦ x · projection`: the first `torsion.rank()` coordinates are read
    /// modulo the invariant factors, the rest are free coordinates.
    projection: ZMatrix,
}

impl Cokernel {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_trivial()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.order())
    }

    /// Image of a vector of `Z^c` as (torsion coordinates, free coordinates).
    pub fn image(&self, x: &[i64]) -> (Vec<u64>, Vec<Int>) {
        assert_eq!(x.len(), self.projection.rows(), "vector length mismatch");
        let t = self.torsion.rank();
        let mut torsion = Vec::with_capacity(t);
        let mut free = Vec::with_capacity(self.free_rank);
        for j in 0..self.projection.cols() {
            let v: Int = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| Int::from(xi) * &self.projection[(i, j)])
                .sum();
            if j < t {
                let d = Int::from(self.torsion.invariant_factors()[j]);
                let r = ((v % &d) + &d) % &d;
                torsion.push(r.to_u64().expect("reduced below modulus"));
            } else {
                free.push(v);
            }
        }
        (torsion, free)
    }

    /// Image of the `i`-th standard generator in torsion coordinates.
    pub fn generator_image(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0; self.projection.rows()];
        e[i] = 1;
        self.image(&e).0
    }
}

/// Cokernel of the relation matrix `m`: rows are relations on `Z^{cols}`.
pub fn cokernel(m: &ZMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    let mut torsion_cols: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).collect();
    torsion_cols.reverse();
    let free_cols: Vec<usize> = (rank..m.cols()).collect();
    let factors: Vec<u64> = torsion_cols
        .iter()
        .map(|&i| diag[i].to_u64().expect("invariant factor fits in u64"))
        .collect();
    let cols: Vec<usize> = torsion_cols.iter().chain(&free_cols).copied().collect();
    let projection = IntegerMatrix::from_fn(m.cols(), cols.len(), |i, j| snf.v[(i, cols[j])].clone());
    Cokernel {
        torsion: FiniteAbelianGroup::new(factors).expect("Smith diagonal is a divisibility chain"),
        free_rank: free_cols.len(),
        projection,
    }
}

/// Whether `e_i ↦ images[i]` maps `Z^h` onto `target`.
pub fn is_surjective(target: &FiniteAbelianGroup, images: &[Vec<i64>]) -> bool {
    let mut p = Presentation::of_group(target);
    p.relations.extend(images.iter().cloned());
    p.cokernel().is_trivial()
}

/// Pontryagin dual of a surjection `f: Z^h ↠ A`, as the subgroup
/// `f^*(A^*) ⊆ (Q/Z)^h`.
///
/// A character of `A` sends the `j`-th invariant generator to `c_j / d_j`;
/// pulled back along `f` it sends `e_i` to `Σ_j f_ij c_j / d_j`.
pub fn dual_of_surjection(target: &FiniteAbelianGroup, images: &[Vec<i64>]) -> Result<QzSubgroup> {
    for row in images {
        if row.len() != target.rank() {
            return Err(Error::InvalidInput(format!(
                "image {row:?} does not have {} coordinates",
                target.rank()
            )));
        }
    }
    if !is_surjective(target, images) {
        let mut p = Presentation::of_group(target);
        p.relations.extend(images.iter().cloned());
        return Err(Error::NotSurjective(p.cokernel().torsion.to_string()));
    }
    let e = target.exponent();
    let h = images.len();
    let gens: Vec<Vec<i64>> = target
        .invariant_factors()
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            (0..h)
                .map(|i| images[i][j] * (e / d) as i64)
                .collect()
        })
        .collect();
    Ok(QzSubgroup::from_numerators(e, h, &gens))
}

/// Pushout of `left ← Z^r → right`, each leg given by the images of the
/// `r` standard generators.
pub fn pushout_of_presentations(
    left: &Presentation,
    left_map: &[Vec<i64>],
    right: &Presentation,
    right_map: &[Vec<i64>],
) -> Result<Cokernel> {
    if left_map.len() != right_map.len() {
        return Err(Error::InvalidInput("pushout legs have different sources".into()));
    }
    let (a, b) = (left.generators, right.generators);
    let mut relations = Vec::new();
    for rel in &left.relations {
        let mut row = rel.clone();
        row.resize(a + b, 0);
        relations.push(row);
    }
    for rel in &right.relations {
        let mut row = vec![0; a];
        row.extend(rel);
        relations.push(row);
    }
    for (l, r) in left_map.iter().zip(right_map) {
        if l.len() != a || r.len() != b {
            return Err(Error::InvalidInput("pushout leg has wrong target rank".into()));
        }
        let mut row = l.clone();
        row.extend(r.iter().map(|x| -x));
        relations.push(row);
    }
    Ok(Presentation {
        generators: a + b,
        relations,
    }
    .cokernel())
}

/// `(Z^s ⊕ A) / ⟨(g(e_i), −a(e_i))⟩` for `a: Z^r → A` and `g: Z^r → Z^s`.
/// Coordinates of `Z^s` come first.
pub fn pushout(
    group: &FiniteAbelianGroup,
    a: &[Vec<i64>],
    g: &[Vec<i64>],
    s: usize,
) -> Result<Cokernel> {
    pushout_of_presentations(&Presentation::free(s), g, &Presentation::of_group(group), a)
}
