//! Hermite bases of lattices `L` with `diag(moduli) ⊆ L ⊆ Z^r`.
//!
//! Because `d_j e_j ∈ L`, any coordinate `j` may be reduced modulo `d_j`
//! without leaving the coset, which keeps every intermediate entry below the
//! moduli.

/// Upper triangular Hermite basis of the lattice spanned by `gens` together
/// with `moduli[i] · e_i`.
///
/// Row `i` has its pivot in column `i`; the pivot is positive and divides
/// `moduli[i]`, and the entries above each pivot lie in `[0, pivot)`. The
/// result is unique for the lattice.
pub fn hermite_basis(gens: &[Vec<i64>], moduli: &[u64]) -> Vec<Vec<i64>> {
    let r = moduli.len();
    assert!(moduli.iter().all(|&d| d > 0), "moduli must be positive");
    let mut pool: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), r, "generator length mismatch");
            g.iter()
                .zip(moduli)
                .map(|(&x, &d)| x.rem_euclid(d as i64))
                .collect()
        })
        .filter(|g: &Vec<i64>| g.iter().any(|&x| x != 0))
        .collect();
    for (i, &d) in moduli.iter().enumerate() {
        let mut e = vec![0; r];
        e[i] = d as i64;
        pool.push(e);
    }

    let mut basis: Vec<Vec<i64>> = Vec::with_capacity(r);
    for col in 0..r {
        // Euclid on column `col` across the pool.
        loop {
            let mut best: Option<usize> = None;
            for (k, v) in pool.iter().enumerate() {
                if v[col] != 0 && best.is_none_or(|b| v[col].abs() < pool[b][col].abs()) {
                    best = Some(k);
                }
            }
            let b = best.expect("d_col · e_col keeps the column nonzero");
            let pivot_row = pool[b].clone();
            let mut others_clear = true;
            for (k, v) in pool.iter_mut().enumerate() {
                if k == b || v[col] == 0 {
                    continue;
                }
                let q = v[col].div_euclid(pivot_row[col]);
                for (x, &y) in v.iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
                for (x, &d) in v.iter_mut().zip(moduli).skip(col + 1) {
                    *x = x.rem_euclid(d as i64);
                }
                others_clear &= v[col] == 0;
            }
            if others_clear {
                let mut row = pool.swap_remove(b);
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                for (x, &d) in row.iter_mut().zip(moduli).skip(col + 1) {
                    *x = x.rem_euclid(d as i64);
                }
                basis.push(row);
                pool.retain(|v| v.iter().any(|&x| x != 0));
                break;
            }
        }
    }

    for j in 1..r {
        let (upper, lower) = basis.split_at_mut(j);
        let pivot_row = &lower[0];
        for row in upper.iter_mut() {
            let q = row[j].div_euclid(pivot_row[j]);
            if q != 0 {
                for (x, &y) in row.iter_mut().zip(pivot_row) {
                    *x -= q * y;
                }
            }
        }
    }
    basis
}

/// Coordinates of `x` in an upper triangular basis, if `x` lies in the
/// lattice it spans.
pub fn lattice_coordinates(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let mut w = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for (i, row) in basis.iter().enumerate() {
        if w[i] % row[i] != 0 {
            return None;
        }
        let c = w[i] / row[i];
        if c != 0 {
            for (a, &b) in w.iter_mut().zip(row) {
                *a -= c * b;
            }
        }
        coords.push(c);
    }
    w.iter().all(|&a| a == 0).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_of_whole_and_trivial() {
        assert_eq!(hermite_basis(&[], &[4, 2]), vec![vec![4, 0], vec![0, 2]]);
        assert_eq!(
            hermite_basis(&[vec![1, 0], vec![0, 1]], &[4, 2]),
            vec![vec![1, 0], vec![0, 1]]
        );
    }

    #[test]
    fn basis_is_canonical() {
        let a = hermite_basis(&[vec![1, 2]], &[4, 4]);
        let b = hermite_basis(&[vec![3, 2]], &[4, 4]);
        let c = hermite_basis(&[vec![1, 2], vec![2, 0]], &[4, 4]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, vec![vec![1, 2], vec![0, 4]]);
    }

    #[test]
    fn coordinates() {
        let b = hermite_basis(&[vec![1, 2]], &[4, 4]);
        assert_eq!(lattice_coordinates(&b, &[3, 6]), Some(vec![3, 0]));
        assert_eq!(lattice_coordinates(&b, &[0, 2]), None);
        assert_eq!(lattice_coordinates(&b, &[4, 0]), Some(vec![4, -2]));
    }
}
