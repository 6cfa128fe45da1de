//! Truncated formal group arithmetic over `F_p` for the height `n` Honda
//! formal group, used only through its addition law modulo `x^{p^n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::abelian::is_prime;
use crate::error::bound;
use crate::linalg::EchelonBasis;
use crate::{Error, Fp, Result};

/// Largest truncation degree accepted by the univariate constructions.
pub const MAX_TRUNCATION: u64 = 1 << 20;
/// Largest ring dimension accepted by [`chern_subring_rank`].
pub const MAX_SUBRING_DIM: u64 = 1 << 16;

/// An element of `F_p[x]/(x^M)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl TruncPoly {
    pub fn zero(p: u64, truncation: usize) -> Self {
        TruncPoly {
            p,
            coeffs: vec![0; truncation],
        }
    }

    /// `c · x^d`, which is zero when `d ≥ M`.
    pub fn monomial(p: u64, truncation: usize, c: i64, d: usize) -> Self {
        let mut out = Self::zero(p, truncation);
        if d < truncation {
            out.coeffs[d] = c.rem_euclid(p as i64) as u64;
        }
        out
    }

    pub fn one(p: u64, truncation: usize) -> Self {
        Self::monomial(p, truncation, 1, 0)
    }

    pub fn x(p: u64, truncation: usize) -> Self {
        Self::monomial(p, truncation, 1, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&d| self.coeffs[d] != 0).collect()
    }

    /// Reduces further to `F_p[x]/(x^M)` for a smaller `M`.
    pub fn truncate(&self, truncation: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(truncation, 0);
        TruncPoly { p: self.p, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.p;
        TruncPoly {
            p,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let p = self.p;
        let c = c.rem_euclid(p as i64) as u64;
        TruncPoly {
            p,
            coeffs: self.coeffs.iter().map(|a| mulmod(*a, c, p)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let m = self.coeffs.len();
        let p = self.p;
        let mut out = vec![0u64; m];
        let right = other.support();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &j in &right {
                if i + j >= m {
                    break;
                }
                out[i + j] = (out[i + j] + mulmod(a, other.coeffs[j], p)) % p;
            }
        }
        TruncPoly { p, coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.truncation());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn to_fp(&self) -> Vec<Fp> {
        self.coeffs.iter().map(|&c| Fp::new(c as i64, self.p)).collect()
    }

    fn check(&self, other: &Self) {
        assert!(
            self.p == other.p && self.coeffs.len() == other.coeffs.len(),
            "mismatched truncated rings"
        );
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod (p={}, x^{})", self.p, self.coeffs.len())
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|d| match (self.coeffs[d], d) {
                (c, 0) => c.to_string(),
                (1, 1) => "x".into(),
                (c, 1) => format!("{c}x"),
                (1, d) => format!("x^{d}"),
                (c, d) => format!("{c}x^{d}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// An element of `F_p[x, y]/(x^{M_x}, y^{M_y})`, stored sparsely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncPoly2 {
    p: u64,
    truncation: (usize, usize),
    terms: BTreeMap<(usize, usize), u64>,
}

impl TruncPoly2 {
    pub fn zero(p: u64, truncation: (usize, usize)) -> Self {
        TruncPoly2 {
            p,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn truncation(&self) -> (usize, usize) {
        self.truncation
    }

    /// Adds `c · x^a y^b`, dropping it if it falls outside the truncation.
    pub fn add_term(&mut self, a: usize, b: usize, c: i64) {
        if a >= self.truncation.0 || b >= self.truncation.1 {
            return;
        }
        let p = self.p as i64;
        let entry = self.terms.entry((a, b)).or_insert(0);
        *entry = ((*entry as i64 + c.rem_euclid(p)) % p) as u64;
        if *entry == 0 {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: usize, b: usize) -> u64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Nonzero terms as `((deg_x, deg_y), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    /// Exchanges the two variables.
    pub fn swap(&self) -> Self {
        TruncPoly2 {
            p: self.p,
            truncation: (self.truncation.1, self.truncation.0),
            terms: self.terms.iter().map(|(&(a, b), &c)| ((b, a), c)).collect(),
        }
    }

    /// `F(u, v)` in `F_p[x]/(x^M)`.
    pub fn evaluate(&self, u: &TruncPoly, v: &TruncPoly) -> TruncPoly {
        let m = u.truncation();
        let mut u_pows: BTreeMap<usize, TruncPoly> = BTreeMap::new();
        let mut v_pows: BTreeMap<usize, TruncPoly> = BTreeMap::new();
        let mut out = TruncPoly::zero(self.p, m);
        for (&(a, b), &c) in &self.terms {
            let ua = u_pows.entry(a).or_insert_with(|| u.pow(a as u64)).clone();
            let vb = v_pows.entry(b).or_insert_with(|| v.pow(b as u64));
            out = out.add(&ua.mul(vb).scale(c as i64));
        }
        out
    }
}

impl fmt::Display for TruncPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = |v: &str, d: usize| match d {
            0 => String::new(),
            1 => v.to_string(),
            d => format!("{v}^{d}"),
        };
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), &c)| {
                let m = format!("{}{}", mono("x", a), mono("y", b));
                match (c, m.is_empty()) {
                    (c, true) => c.to_string(),
                    (1, false) => m,
                    (c, false) => format!("{c}{m}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn check_params(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("height must be at least 1".into()));
    }
    let m = p
        .checked_pow(n)
        .ok_or(Error::ResourceBound {
            what: "truncation p^n",
            requested: u128::MAX,
            limit: MAX_TRUNCATION as u128,
        })?;
    bound("truncation p^n", m as u128, MAX_TRUNCATION as u128)?;
    Ok(m)
}

/// `x + y − Σ_{0<j<p} (binom(p, j)/p) x^{j q} y^{(p−j) q}` with `q = p^{n−1}`,
/// truncated at `p^n` in each variable.
pub fn honda_sum(p: u64, n: u32) -> Result<TruncPoly2> {
    let m = check_params(p, n)? as usize;
    let q = (p as usize).pow(n - 1);
    let mut f = TruncPoly2::zero(p, (m, m));
    f.add_term(1, 0, 1);
    f.add_term(0, 1, 1);
    for j in 1..p {
        let c = binomial(BigInt::from(p), BigInt::from(j)) / BigInt::from(p);
        let c = (c % BigInt::from(p)).to_i64().expect("reduced mod p");
        f.add_term(j as usize * q, (p - j) as usize * q, -c);
    }
    Ok(f)
}

/// `[i](x)` in `F_p[x]/(x^{p^n})`, by `[i+1](x) = F([i](x), x)`.
pub fn i_series(i: u64, p: u64, n: u32) -> Result<TruncPoly> {
    let f = honda_sum(p, n)?;
    let m = f.truncation().0;
    let x = TruncPoly::x(p, m);
    let mut acc = TruncPoly::zero(p, m);
    for _ in 0..i {
        acc = f.evaluate(&acc, &x);
    }
    Ok(acc)
}

/// Chern classes `c_1, ..., c_{p−1}` of the regular representation of
/// `Z/p`, stored as the coefficients of `Π_{0<i<p} (1 + [i](x) t)`.
///
/// The unsigned convention is used throughout: `c_k = e_k([1](x), ..., [p−1](x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernVector {
    pub p: u64,
    pub n: u32,
    classes: Vec<TruncPoly>,
}

impl ChernVector {
    /// `c_k` for `1 ≤ k ≤ p − 1`.
    pub fn class(&self, k: usize) -> &TruncPoly {
        &self.classes[k - 1]
    }

    pub fn classes(&self) -> &[TruncPoly] {
        &self.classes
    }

    /// The scalar `s` with `c_k = s · x^k`, if `c_k` has that shape.
    pub fn scalar(&self, k: usize) -> Option<u64> {
        let c = self.class(k);
        match c.support().as_slice() {
            [] => Some(0),
            [d] if *d == k => Some(c.coeff(k)),
            _ => None,
        }
    }
}

pub fn regular_rep_chern(p: u64, n: u32) -> Result<ChernVector> {
    let f = honda_sum(p, n)?;
    let m = f.truncation().0;
    let x = TruncPoly::x(p, m);
    // elementary[k] = coefficient of t^k
    let mut elementary = vec![TruncPoly::one(p, m)];
    let mut series = TruncPoly::zero(p, m);
    for _ in 1..p {
        series = f.evaluate(&series, &x);
        elementary.push(TruncPoly::zero(p, m));
        for k in (1..elementary.len()).rev() {
            let term = elementary[k - 1].mul(&series);
            elementary[k] = elementary[k].add(&term);
        }
    }
    elementary.remove(0);
    Ok(ChernVector {
        p,
        n,
        classes: elementary,
    })
}

/// `e_k(1, ..., p−1)` over the integers, for `k = 0, ..., p − 1`.
pub fn elementary_symmetric_range(p: u64) -> Vec<BigInt> {
    let mut e = vec![BigInt::from(1)];
    for i in 1..p {
        e.push(BigInt::zero());
        for k in (1..e.len()).rev() {
            let term = &e[k - 1] * i;
            e[k] += term;
        }
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StirlingReport {
    pub p: u64,
    /// `e_1, ..., e_{p−1}` as decimal strings.
    pub values: Vec<String>,
    pub residues: Vec<u64>,
    pub holds: bool,
}

/// Whether `p | e_i(1, ..., p−1)` for `1 ≤ i ≤ p − 2` and
/// `e_{p−1} ≡ p − 1 (mod p)`.
pub fn stirling_divisibility(p: u64) -> Result<StirlingReport> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let e = elementary_symmetric_range(p);
    let residues: Vec<u64> = e[1..]
        .iter()
        .map(|v| (v % BigInt::from(p)).to_u64().expect("reduced mod p"))
        .collect();
    let k = residues.len();
    let holds = residues[..k - 1].iter().all(|&r| r == 0) && residues[k - 1] == p - 1;
    Ok(StirlingReport {
        p,
        values: e[1..].iter().map(BigInt::to_string).collect(),
        residues,
        holds,
    })
}

/// Dimension over `F_p` of the unital subalgebra of `F_p[x]/(x^{p^n−1})`
/// generated by the nonzero Chern classes of the regular representation.
pub fn chern_subring_rank(p: u64, n: u32) -> Result<usize> {
    let top = check_params(p, n)?;
    bound("ring dimension p^n - 1", (top - 1) as u128, MAX_SUBRING_DIM as u128)?;
    let m = (top - 1) as usize;
    let chern = regular_rep_chern(p, n)?;
    let gens: Vec<TruncPoly> = chern
        .classes()
        .iter()
        .map(|c| c.truncate(m))
        .filter(|c| !c.is_zero())
        .collect();
    let mut basis = EchelonBasis::new(m);
    let one = TruncPoly::one(p, m);
    basis.insert(&one.to_fp());
    let mut frontier = vec![one];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w = v.mul(g);
            if basis.insert(&w.to_fp()) {
                frontier.push(w);
            }
        }
    }
    Ok(basis.dim())
}

/// `(p^n − 1)/(p − 1)`.
pub fn expected_subring_rank(p: u64, n: u32) -> u64 {
    (p.pow(n) - 1) / (p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_formal_group_laws() {
        let f = honda_sum(2, 1).unwrap();
        assert_eq!(f.to_string(), "y + x + xy");
        let f = honda_sum(3, 1).unwrap();
        assert_eq!((f.coeff(2, 1), f.coeff(1, 2)), (2, 2));
        assert_eq!(f.terms().count(), 4);
        let f = honda_sum(3, 2).unwrap();
        assert_eq!(f.truncation(), (9, 9));
        assert_eq!((f.coeff(3, 6), f.coeff(6, 3)), (2, 2));
        assert_eq!(f.terms().count(), 4);
    }

    #[test]
    fn series_values() {
        assert!(i_series(0, 3, 2).unwrap().is_zero());
        assert_eq!(i_series(2, 3, 2).unwrap(), TruncPoly::monomial(3, 9, 2, 1));
        for (p, n) in [(2, 2), (3, 1), (3, 2), (5, 1)] {
            assert!(i_series(p, p, n).unwrap().is_zero(), "p={p} n={n}");
        }
        // Beyond p the series is no longer determined by i mod p in general,
        // but [p+1](x) = F(0, x) = x.
        assert_eq!(i_series(3, 2, 1).unwrap(), TruncPoly::x(2, 2));
    }

    #[test]
    fn chern_examples() {
        let c = regular_rep_chern(2, 2).unwrap();
        assert_eq!(c.classes().len(), 1);
        assert_eq!(c.scalar(1), Some(1));
        let c = regular_rep_chern(3, 1).unwrap();
        assert_eq!(c.scalar(2), Some(2));
        let c = regular_rep_chern(5, 1).unwrap();
        assert_eq!((1..=4).map(|k| c.scalar(k).unwrap()).collect::<Vec<_>>(), vec![0, 0, 0, 4]);
        let e: Vec<i64> = elementary_symmetric_range(5).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(e, vec![1, 10, 35, 50, 24]);
    }

    #[test]
    fn stirling_small_primes() {
        for p in [2, 3, 5, 7] {
            assert!(stirling_divisibility(p).unwrap().holds);
        }
        assert_eq!(stirling_divisibility(2).unwrap().residues, vec![1]);
        assert!(stirling_divisibility(6).is_err());
    }

    #[test]
    fn subring_ranks() {
        assert_eq!(chern_subring_rank(2, 2).unwrap(), 3);
        assert_eq!(chern_subring_rank(3, 2).unwrap(), 4);
        assert_eq!(chern_subring_rank(2, 3).unwrap(), 7);
        assert_eq!(chern_subring_rank(5, 1).unwrap(), 1);
    }

    #[test]
    fn truncated_arithmetic() {
        let x = TruncPoly::x(3, 4);
        let s = x.add(&TruncPoly::one(3, 4));
        // (1 + x)^3 = 1 + x^3 over F_3.
        assert_eq!(s.pow(3).support(), vec![0, 3]);
        assert!(x.pow(4).is_zero());
        assert_eq!(s.sub(&s), TruncPoly::zero(3, 4));
    }
}
