use num_traits::Zero;
use serde::Serialize;

use super::classfn::{induce, ClassFunction, YoungSubgroup};
use super::group::{ConjClassLabel, WreathProduct};
use crate::abelian::FiniteAbelianGroup;
use crate::linalg::{rank, EchelonBasis};
use crate::{Int, Rational, Result};

/// Basis (reduced echelon, in class-label order) of the span of everything
/// induced from `A ≀ (Σ_m × Σ_{n−m})`, `0 < m < n`.
pub fn transfer_ideal_span(base: &FiniteAbelianGroup, n: usize) -> Result<Vec<ClassFunction>> {
    let group = WreathProduct::new(base.clone(), n)?;
    let labels: Vec<ConjClassLabel> = group.conjugacy_classes().into_iter().map(|c| c.0).collect();
    let basis = span_basis(&group, &labels)?;
    Ok(basis
        .rows()
        .iter()
        .map(|row| {
            ClassFunction::from_values(labels.iter().cloned().zip(row.iter().cloned()).collect())
        })
        .collect())
}

fn span_basis(group: &WreathProduct, labels: &[ConjClassLabel]) -> Result<EchelonBasis<Rational>> {
    let mut basis = EchelonBasis::new(labels.len());
    for m in 1..group.n() {
        let young = YoungSubgroup::new(group, m)?;
        let classes = young.conjugacy_classes();
        for (label, _) in &classes {
            let f = ClassFunction::indicator(classes.iter().map(|c| &c.0), label);
            basis.insert(&induce(&young, &f).to_vector(labels));
        }
    }
    Ok(basis)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Height0Report {
    pub classes: usize,
    pub full_cycle_classes: usize,
    /// Dimension of the transfer span.
    pub span_dim: usize,
    /// Dimension of the functions vanishing on every `[a] ≀ (1 ... n)`.
    pub vanishing_dim: usize,
    pub intersection_dim: usize,
    pub holds: bool,
}

/// Whether the transfer span is exactly the space of class functions that
/// vanish on the classes projecting to an `n`-cycle.
pub fn verify_height0(base: &FiniteAbelianGroup, n: usize) -> Result<Height0Report> {
    let group = WreathProduct::new(base.clone(), n)?;
    let labels: Vec<ConjClassLabel> = group.conjugacy_classes().into_iter().map(|c| c.0).collect();
    let basis = span_basis(&group, &labels)?;
    let cycle_cols: Vec<usize> = (0..labels.len())
        .filter(|&i| labels[i].is_full_cycle())
        .collect();
    let projected: Vec<Vec<Rational>> = basis
        .rows()
        .iter()
        .map(|row| cycle_cols.iter().map(|&i| row[i].clone()).collect())
        .collect();
    let span_dim = basis.dim();
    let intersection_dim = span_dim - rank(cycle_cols.len(), &projected);
    let vanishing_dim = labels.len() - cycle_cols.len();
    Ok(Height0Report {
        classes: labels.len(),
        full_cycle_classes: cycle_cols.len(),
        span_dim,
        vanishing_dim,
        intersection_dim,
        holds: span_dim == vanishing_dim && intersection_dim == vanishing_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormReport {
    pub base_order: usize,
    pub full_cycle_classes: usize,
    pub rank: usize,
    pub holds: bool,
}

/// Pulls the indicator functions of `A` back along `N_A` and restricts them
/// to the classes `[a] ≀ (1 ... n)`; the composite is bijective iff the
/// resulting square matrix has full rank.
pub fn norm_pullback_bijectivity(base: &FiniteAbelianGroup, n: usize) -> Result<NormReport> {
    let group = WreathProduct::new(base.clone(), n)?;
    let survivors = group.full_cycle_labels();
    let size = group.base_order();
    let rows: Vec<Vec<Rational>> = (0..size as u32)
        .map(|b| {
            survivors
                .iter()
                .map(|label| {
                    let g = group
                        .canonical_representative(label)
                        .expect("full cycle labels are valid");
                    if group.norm(&g) == b {
                        Rational::from_integer(Int::from(1))
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let r = rank(survivors.len(), &rows);
    Ok(NormReport {
        base_order: size,
        full_cycle_classes: survivors.len(),
        rank: r,
        holds: r == size && survivors.len() == size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_dimensions() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        assert_eq!(transfer_ideal_span(&z2, 2).unwrap().len(), 3);
        let one = FiniteAbelianGroup::trivial();
        assert_eq!(transfer_ideal_span(&one, 2).unwrap().len(), 1);
        assert_eq!(transfer_ideal_span(&one, 3).unwrap().len(), 2);
    }

    #[test]
    fn height0_examples() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let r = verify_height0(&z2, 2).unwrap();
        assert!(r.holds);
        assert_eq!((r.span_dim, r.vanishing_dim), (3, 3));
        let r = verify_height0(&FiniteAbelianGroup::trivial(), 4).unwrap();
        assert!(r.holds);
        assert_eq!((r.span_dim, r.vanishing_dim), (4, 4));
        let r = verify_height0(&z2, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.classes - r.span_dim, 2);
    }

    #[test]
    fn norm_examples() {
        for a in [2, 4] {
            let r = norm_pullback_bijectivity(&FiniteAbelianGroup::cyclic(a), 2).unwrap();
            assert!(r.holds);
            assert_eq!(r.rank, a as usize);
        }
        for n in 1..5 {
            assert!(norm_pullback_bijectivity(&FiniteAbelianGroup::trivial(), n).unwrap().holds);
        }
    }
}
