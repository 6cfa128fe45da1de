//! Finitely generated and finite abelian groups.
//!
//! Finite groups are stored in invariant factor form. Subgroups of a product
//! of cyclic groups `Z/d_1 ⊕ ... ⊕ Z/d_r` are stored as the Hermite basis of
//! their preimage lattice in `Z^r`, which is unique per subgroup.
//!
//! Subgroups of `(Q/Z)^h` are realized inside the `e`-torsion `(Z/e)^h`,
//! where a coordinate `x` stands for the fraction `x/e`. A subgroup of order
//! `m` always lies in the `m`-torsion, so finite enumeration is complete.

mod group;
mod lattice;
mod presentation;
mod qz;
mod subgroup;

pub use group::FiniteAbelianGroup;
pub use lattice::{hermite_basis, lattice_coordinates};
pub use presentation::{
    cokernel, dual_of_surjection, is_surjective, pushout, pushout_of_presentations, Cokernel,
    Presentation,
};
pub use qz::{subgroups_with_projection, QzSubgroup};
pub use subgroup::{all_subgroups, enumerate_subgroups, enumerate_subgroups_of, Subgroup};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, primes ascending.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// The prime `p` with `n = p^k`, `k ≥ 1`.
pub fn prime_of_power(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    n == 1 || prime_of_power(n) == Some(p)
}
