//! Permutations of `{0, ..., n-1}` and the brute-force searches built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation stored as its image list: `x ↦ images[x]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Panics unless `images` is a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(x < images.len() && !seen[x], "not a permutation: {images:?}");
            seen[x] = true;
        }
        Perm(images)
    }

    /// Builds a permutation of `n` points from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            out[g.0[x]] = g.0[y];
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        (0..self.0.len()).all(|x| self.0[other.0[x]] == other.0[self.0[x]])
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation on the points `1..=n`; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// All `n!` permutations in lexicographic order of their image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(current.clone()));
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, ordered
/// by smallest point.
pub fn orbits(n: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Order of the centralizer in `Σ_n` of the permutations `gens`.
///
/// Exhaustive backtracking over candidate permutations `π`: each assignment
/// `π(x) = y` forces `π(g x) = g y` for every generator, and contradictions
/// prune the branch. Every commuting `π` is visited exactly once.
pub fn centralizer_order(n: usize, gens: &[Perm]) -> u128 {
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    count_extensions(gens, &mut assignment, &mut used)
}

fn count_extensions(gens: &[Perm], assignment: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> u128 {
    let Some(x) = assignment.iter().position(Option::is_none) else {
        return 1;
    };
    let n = assignment.len();
    let mut total = 0;
    for y in 0..n {
        if used[y] {
            continue;
        }
        let mut trail = Vec::new();
        if propagate(gens, assignment, used, x, y, &mut trail) {
            total += count_extensions(gens, assignment, used);
        }
        for p in trail {
            used[assignment[p].take().unwrap()] = false;
        }
    }
    total
}

fn propagate(
    gens: &[Perm],
    assignment: &mut [Option<usize>],
    used: &mut [bool],
    x: usize,
    y: usize,
    trail: &mut Vec<usize>,
) -> bool {
    let mut stack = vec![(x, y)];
    while let Some((a, b)) = stack.pop() {
        match assignment[a] {
            Some(existing) if existing == b => continue,
            Some(_) => return false,
            None => {
                if used[b] {
                    return false;
                }
                assignment[a] = Some(b);
                used[b] = true;
                trail.push(a);
                for g in gens {
                    stack.push((g.apply(a), g.apply(b)));
                }
            }
        }
    }
    true
}

/// Whether some subset `S` with `0 < |S| < n` is invariant under every
/// permutation, by trying all subsets.
pub fn has_invariant_proper_subset(n: usize, gens: &[Perm]) -> bool {
    assert!(n < 64, "subset search limited to fewer than 64 points");
    (1u64..(1u64 << n) - 1).any(|mask| {
        gens.iter().all(|g| {
            (0..n)
                .filter(|&x| mask >> x & 1 == 1)
                .all(|x| mask >> g.apply(x) & 1 == 1)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_factorial() {
        assert_eq!(all_perms(4).len(), 24);
        assert_eq!(all_perms(0).len(), 1);
    }

    #[test]
    fn centralizers_in_s4() {
        let double = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]);
        assert_eq!(centralizer_order(4, std::slice::from_ref(&double)), 8);
        let four = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]);
        assert_eq!(centralizer_order(4, &[four]), 4);
        assert_eq!(centralizer_order(4, &[]), 24);
        // Agrees with filtering all of Σ_4.
        let brute = all_perms(4).iter().filter(|p| p.commutes_with(&double)).count();
        assert_eq!(brute, 8);
    }

    #[test]
    fn cycle_notation() {
        let p = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(p.order(), 2);
        assert_eq!(p.conjugate_by(&Perm::from_cycles(4, &[vec![1, 2]])).to_string(), "(1 3)(2 4)");
    }

    #[test]
    fn invariant_subsets() {
        let four = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]);
        assert!(!has_invariant_proper_subset(4, &[four]));
        let double = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]);
        assert!(has_invariant_proper_subset(4, &[double]));
    }
}
