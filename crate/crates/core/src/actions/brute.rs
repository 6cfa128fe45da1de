use std::collections::HashSet;

use crate::abelian::is_power_of;
use crate::error::bound;
use crate::perm::{all_perms, orbits, Perm};
use crate::Result;

pub const MAX_BRUTE_DEGREE: usize = 6;
pub const MAX_BRUTE_RANK: usize = 2;

/// Number of conjugacy classes of commuting `h`-tuples in `Σ_n`, optionally
/// restricted to tuples of `p`-power order elements, by orbit enumeration
/// under simultaneous conjugation.
pub fn brute_force_class_count(h: usize, n: usize, prime: Option<u64>) -> Result<u64> {
    count_classes(h, n, prime, false)
}

/// As [`brute_force_class_count`], counting only tuples that act
/// transitively on `[n]`.
pub fn brute_force_transitive_class_count(h: usize, n: usize, prime: Option<u64>) -> Result<u64> {
    count_classes(h, n, prime, true)
}

fn count_classes(h: usize, n: usize, prime: Option<u64>, transitive_only: bool) -> Result<u64> {
    bound("brute force degree n", n as u128, MAX_BRUTE_DEGREE as u128)?;
    bound("brute force rank h", h as u128, MAX_BRUTE_RANK as u128)?;
    let group = all_perms(n);
    let candidates: Vec<Perm> = group
        .iter()
        .filter(|p| prime.is_none_or(|q| is_power_of(p.order(), q)))
        .cloned()
        .collect();

    let mut tuples = Vec::new();
    commuting_tuples(&candidates, h, &mut Vec::new(), &mut tuples);

    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut count = 0;
    for t in tuples {
        if seen.contains(&t) {
            continue;
        }
        if !transitive_only || orbits(n, &t).len() == 1 {
            count += 1;
        }
        for g in &group {
            seen.insert(t.iter().map(|p| p.conjugate_by(g)).collect());
        }
    }
    Ok(count)
}

fn commuting_tuples(candidates: &[Perm], h: usize, acc: &mut Vec<Perm>, out: &mut Vec<Vec<Perm>>) {
    if acc.len() == h {
        out.push(acc.clone());
        return;
    }
    for p in candidates {
        if acc.iter().all(|q| q.commutes_with(p)) {
            acc.push(p.clone());
            commuting_tuples(candidates, h, acc, out);
            acc.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn single_permutations() {
        assert_eq!(brute_force_class_count(1, 3, None).unwrap(), 3);
        assert_eq!(brute_force_class_count(1, 4, None).unwrap(), 5);
        assert_eq!(brute_force_class_count(1, 4, Some(2)).unwrap(), 4);
    }

    #[test]
    fn pairs_in_s2() {
        assert_eq!(brute_force_class_count(2, 2, None).unwrap(), 4);
    }

    #[test]
    fn rejects_large_inputs() {
        assert!(matches!(
            brute_force_class_count(1, 7, None),
            Err(Error::ResourceBound { .. })
        ));
        assert!(matches!(
            brute_force_class_count(3, 3, None),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn transitive_pairs() {
        // Index-4 sublattices of Z^2.
        assert_eq!(brute_force_transitive_class_count(2, 4, None).unwrap(), 7);
    }
}
