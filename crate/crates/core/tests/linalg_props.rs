//! Properties of the Smith normal form, Hermite bases and row reduction.

use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use strickland_lab::abelian::{hermite_basis, lattice_coordinates, Subgroup};
use strickland_lab::linalg::{rank, smith_normal_form, IntegerMatrix};
use strickland_lab::{Fp, Int, Rational, ZMatrix};

fn matrix() -> impl Strategy<Value = ZMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            IntegerMatrix::from_fn(r, c, |i, j| Int::from(v[i * c + j]))
        })
    })
}

/// Greatest common divisor of all `k × k` minors, by expansion.
fn minor_gcd(m: &ZMatrix, k: usize) -> Int {
    use itertools::Itertools;
    let mut g = Int::zero();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            let sub = IntegerMatrix::from_fn(k, k, |i, j| m[(rows[i], cols[j])].clone());
            g = g.gcd(&sub.determinant());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_verified(m in matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify(&m));
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
    }

    #[test]
    fn smith_diagonal_from_minors(m in matrix()) {
        prop_assume!(m.rows() <= 4 && m.cols() <= 4);
        let diag = smith_normal_form(&m).diagonal();
        let mut prefix = Int::from(1);
        for (k, d) in diag.iter().enumerate() {
            prefix *= d;
            prop_assert_eq!(minor_gcd(&m, k + 1), prefix.clone());
        }
    }

    #[test]
    fn smith_rank_is_rational_rank(m in matrix()) {
        let rows: Vec<Vec<Rational>> = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        prop_assert_eq!(smith_normal_form(&m).rank(), rank(m.cols(), &rows));
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(-5i64..=5, 9), b in prop::collection::vec(-5i64..=5, 9)) {
        let ma = IntegerMatrix::from_fn(3, 3, |i, j| Int::from(a[3 * i + j]));
        let mb = IntegerMatrix::from_fn(3, 3, |i, j| Int::from(b[3 * i + j]));
        prop_assert_eq!(ma.mul(&mb).determinant(), ma.determinant() * mb.determinant());
        prop_assert_eq!(ma.transpose().determinant(), ma.determinant());
    }

    #[test]
    fn hermite_basis_ignores_generating_set(
        gens in prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 0..=4),
        mix in prop::collection::vec(-3i64..=3, 4),
    ) {
        let moduli = [8u64, 4, 6];
        let basis = hermite_basis(&gens, &moduli);
        // Adding an integer combination of the generators and reversing the
        // order describes the same lattice.
        let mut other: Vec<Vec<i64>> = gens.iter().rev().cloned().collect();
        let combo: Vec<i64> = (0..3)
            .map(|j| gens.iter().zip(&mix).map(|(g, c)| g[j] * c).sum())
            .collect();
        other.push(combo);
        prop_assert_eq!(hermite_basis(&other, &moduli), basis.clone());
        for g in &gens {
            prop_assert!(lattice_coordinates(&basis, g).is_some());
        }
        for (i, &d) in moduli.iter().enumerate() {
            let mut e = vec![0; 3];
            e[i] = d as i64;
            prop_assert!(lattice_coordinates(&basis, &e).is_some());
        }
        let sub = Subgroup::generated_by(&moduli, &gens);
        prop_assert_eq!(sub.order() as usize, sub.elements().len());
        prop_assert!(basis.iter().enumerate().all(|(i, row)| row[i].is_positive() && row[..i].iter().all(Zero::is_zero)));
    }

    #[test]
    fn prime_field_rank_bounds(v in prop::collection::vec(prop::collection::vec(0i64..5, 4), 0..=6)) {
        let rows: Vec<Vec<Fp>> = v.iter().map(|r| r.iter().map(|&x| Fp::new(x, 5)).collect()).collect();
        let r = rank(4, &rows);
        prop_assert!(r <= v.len().min(4));
        let ints = IntegerMatrix::from_fn(v.len(), 4, |i, j| Int::from(v[i][j]));
        // Rank over F_5 never exceeds rank over Q.
        if !v.is_empty() {
            prop_assert!(r <= smith_normal_form(&ints).rank());
        }
    }
}
