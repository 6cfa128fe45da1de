use itertools::Itertools;
use serde::Serialize;

use crate::abelian::{dual_of_surjection, is_surjective, pushout, FiniteAbelianGroup, QzSubgroup};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEntry {
    /// The element `a ∈ A` (coordinates) labelling the class `[a] ≀ (1 ... l)`.
    pub a: Vec<u64>,
    /// `B = (Z ⊕ Z^h ⊕ A) / ⟨(l e_0 − a), (e_i − α(e_i))⟩`.
    pub pushout_group: FiniteAbelianGroup,
    /// `B^*` inside `Q/Z ⊕ (Q/Z)^h`.
    pub via_pushout: QzSubgroup,
    /// Preimage of `(a^*, α^*)(A^*)` under `×l ⊕ Id`.
    pub via_pullback: QzSubgroup,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub base: FiniteAbelianGroup,
    pub alpha: Vec<Vec<i64>>,
    pub l: u64,
    /// `m = l |A|`.
    pub m: u64,
    pub entries: Vec<DiagramEntry>,
    pub holds: bool,
}

impl Serialize for DiagramEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DiagramEntry", 5)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("pushout_group", &self.pushout_group.invariant_factors())?;
        st.serialize_field("via_pushout", &self.via_pushout.to_string())?;
        st.serialize_field("via_pullback", &self.via_pullback.to_string())?;
        st.serialize_field("agree", &self.agree)?;
        st.end()
    }
}

/// Compares, for every `a ∈ A`, the two subgroups of `Q/Z ⊕ (Q/Z)^h`
/// attached to the class `[a] ≀ (1 ... l)`: the dual of the pushout group
/// `B`, and the pullback of `A^*` embedded by `(a^*, α^*)` along
/// `×l ⊕ Id`.
pub fn diagram_check(base: &FiniteAbelianGroup, alpha: &[Vec<i64>], l: u64) -> Result<DiagramReport> {
    if l == 0 {
        return Err(Error::InvalidInput("l must be positive".into()));
    }
    if base.is_trivial() && alpha.iter().any(|r| !r.is_empty()) {
        return Err(Error::InvalidInput("images in the trivial group have no coordinates".into()));
    }
    let h = alpha.len();
    let a_star = dual_of_surjection(base, alpha)?;
    let e = base.exponent();
    let big_e = l * e;
    let m = l * base.order();

    let mut entries = Vec::new();
    for a in base.elements() {
        // Route one: pushout, then dualize.
        let a_map: Vec<Vec<i64>> = std::iter::once(a.iter().map(|&x| x as i64).collect())
            .chain(alpha.iter().cloned())
            .collect();
        let g_map: Vec<Vec<i64>> = (0..=h)
            .map(|i| {
                let mut row = vec![0; h + 1];
                row[i] = if i == 0 { l as i64 } else { 1 };
                row
            })
            .collect();
        let b = pushout(base, &a_map, &g_map, h + 1)?;
        if !b.is_finite() {
            return Err(Error::InvalidInput("pushout is not finite".into()));
        }
        let images: Vec<Vec<i64>> = (0..=h)
            .map(|i| b.generator_image(i).into_iter().map(|x| x as i64).collect())
            .collect();
        let via_pushout = dual_of_surjection(&b.torsion, &images)?;

        // Route two: embed A^* by (a^*, α^*) at exponent e, then pull back
        // along ×l ⊕ Id at exponent l e.
        let mut gens: Vec<Vec<i64>> = base
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let scale = (e / d) as i64;
                let mut v = vec![a[j] as i64 * scale];
                v.extend(alpha.iter().map(|row| row[j] * scale * l as i64));
                v
            })
            .collect();
        let mut kernel = vec![0i64; h + 1];
        kernel[0] = e as i64;
        gens.push(kernel);
        let via_pullback = QzSubgroup::from_numerators(big_e, h + 1, &gens);

        let agree = via_pushout == via_pullback
            && via_pushout.order() == m
            && via_pushout.project(&(1..=h).collect_vec()) == a_star;
        entries.push(DiagramEntry {
            a,
            pushout_group: b.torsion,
            via_pushout,
            via_pullback,
            agree,
        });
    }
    let holds = entries.iter().all(|e| e.agree);
    Ok(DiagramReport {
        base: base.clone(),
        alpha: alpha.to_vec(),
        l,
        m,
        entries,
        holds,
    })
}

/// Every surjection `Z^h ↠ A`, as lists of generator images.
pub fn surjections_onto(base: &FiniteAbelianGroup, h: usize) -> Vec<Vec<Vec<i64>>> {
    let elems: Vec<Vec<i64>> = base
        .elements()
        .map(|x| x.into_iter().map(|c| c as i64).collect())
        .collect();
    if h == 0 {
        return if base.is_trivial() { vec![Vec::new()] } else { Vec::new() };
    }
    (0..h)
        .map(|_| elems.iter().cloned())
        .multi_cartesian_product()
        .filter(|imgs| is_surjective(base, imgs))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_l2_element_one() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let r = diagram_check(&z2, &[vec![1]], 2).unwrap();
        assert!(r.holds);
        let one = &r.entries[1];
        assert_eq!(one.a, vec![1]);
        assert_eq!(one.pushout_group, FiniteAbelianGroup::cyclic(4));
        assert_eq!(one.via_pushout, QzSubgroup::from_numerators(4, 2, &[vec![1, 2]]));
    }

    #[test]
    fn zero_element_splits() {
        for (base, alpha, l) in [
            (FiniteAbelianGroup::cyclic(2), vec![vec![1]], 3),
            (FiniteAbelianGroup::cyclic(3), vec![vec![1], vec![2]], 2),
        ] {
            let r = diagram_check(&base, &alpha, l).unwrap();
            let zero = &r.entries[0];
            let a_star = dual_of_surjection(&base, &alpha).unwrap();
            let e = base.exponent() * l;
            let mut gens: Vec<Vec<i64>> = a_star
                .realize_at(e)
                .generators()
                .into_iter()
                .map(|g| std::iter::once(0).chain(g.into_iter().map(|x| x as i64)).collect())
                .collect();
            let mut first = vec![0; alpha.len() + 1];
            first[0] = (e / l) as i64;
            gens.push(first);
            assert_eq!(zero.via_pushout, QzSubgroup::from_numerators(e, alpha.len() + 1, &gens));
            assert!(zero.agree);
        }
    }

    #[test]
    fn z3_l3_cyclic_of_order_nine() {
        let z3 = FiniteAbelianGroup::cyclic(3);
        let r = diagram_check(&z3, &[vec![1]], 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.entries[1].via_pushout.order(), 9);
        assert_eq!(r.entries[1].via_pushout.iso_type(), FiniteAbelianGroup::cyclic(9));
    }

    #[test]
    fn rejects_non_surjection() {
        let z4 = FiniteAbelianGroup::cyclic(4);
        assert!(matches!(
            diagram_check(&z4, &[vec![2]], 2),
            Err(Error::NotSurjective(_))
        ));
    }

    #[test]
    fn counts_surjections() {
        let klein = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert!(surjections_onto(&klein, 1).is_empty());
        // Ordered bases of (Z/2)^2.
        assert_eq!(surjections_onto(&klein, 2).len(), 6);
        assert_eq!(surjections_onto(&FiniteAbelianGroup::cyclic(4), 1).len(), 2);
    }
}
