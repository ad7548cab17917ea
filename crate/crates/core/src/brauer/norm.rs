//! The norm criterion over finite fields.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{make_tower, Elem, Field, Tower};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormWitness {
    pub is_norm: bool,
    /// Least `x` (canonical order) with `N(x) = b`.
    pub witness: Option<Elem>,
    /// The norm maps the top field's units onto the base field's units (checked exhaustively).
    pub always_norm: bool,
}

/// Whether `b ∈ F_q` is a norm from the top field of `tower`.
pub fn is_norm_finite(tower: &Arc<Tower>, b: Elem) -> Result<NormWitness> {
    if b.is_zero() {
        return Err(Error::Zero("norm target".into()));
    }
    if !tower.base().contains(b) {
        return Err(Error::OutOfRange(format!("{b:?} is not in the base field")));
    }
    let target = tower.embed(b);
    let top = tower.top();
    let witness = top.elements().skip(1).find(|&x| tower.norm(x) == target);
    let image: BTreeSet<Elem> = top.elements().skip(1).map(|x| tower.norm(x)).collect();
    Ok(NormWitness {
        is_norm: witness.is_some(),
        witness,
        always_norm: image.len() as u64 == tower.base().order() - 1,
    })
}

/// Least `d` such that `a` is an `m`-th power in `F_{q^d}`: the degree of `F_q(a^{1/m})`.
pub fn kummer_degree(field: &Field, m: usize, a: Elem) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::Zero("Kummer generator".into()));
    }
    for d in 1..=m.max(1) as u32 {
        let tower = make_tower(field.characteristic(), field.degree(), d)?;
        let x = tower.embed(a);
        let top = tower.top();
        if top.elements().any(|y| top.pow(y, m as u128) == x) {
            return Ok(d);
        }
    }
    Err(Error::AlgebraCheck(format!("no {m}-th root of {a:?} in degree ≤ {m}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormCriterion {
    pub extension_degree: u32,
    #[serde(flatten)]
    pub norm: NormWitness,
}

/// The cyclic algebra `(a, b; ω, m)` splits iff `b` is a norm from `F_q(a^{1/m})`.
pub fn norm_criterion_finite(field: &Field, m: usize, a: Elem, b: Elem) -> Result<NormCriterion> {
    let d = kummer_degree(field, m, a)?;
    let tower = make_tower(field.characteristic(), field.degree(), d)?;
    Ok(NormCriterion { extension_degree: d, norm: is_norm_finite(&tower, b)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;

    #[test]
    fn norms_from_f4() {
        let tower = make_tower(2, 1, 2).unwrap();
        let w = is_norm_finite(&tower, Elem(1)).unwrap();
        assert_eq!(w.witness, Some(Elem(1)));
        assert!(w.always_norm);
        // N(x) = x³ on F_4: all three units map to 1
        for x in tower.top().elements().skip(1) {
            assert_eq!(tower.norm(x), Elem(1));
        }
        assert!(is_norm_finite(&tower, Elem(0)).is_err());
    }

    #[test]
    fn every_unit_is_a_norm() {
        for (p, k, d) in [(2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 2, 3), (3, 1, 3)] {
            let tower = make_tower(p, k, d).unwrap();
            for b in tower.base().elements().skip(1) {
                let w = is_norm_finite(&tower, b).unwrap();
                assert!(w.is_norm && w.always_norm);
                assert_eq!(tower.norm(w.witness.unwrap()), tower.embed(b));
            }
        }
    }

    #[test]
    fn kummer_degrees() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(kummer_degree(&f5, 2, Elem(1)).unwrap(), 1);
        assert_eq!(kummer_degree(&f5, 2, Elem(4)).unwrap(), 1);
        assert_eq!(kummer_degree(&f5, 2, Elem(2)).unwrap(), 2);
        let c = norm_criterion_finite(&f5, 2, Elem(2), Elem(3)).unwrap();
        assert_eq!(c.extension_degree, 2);
        assert!(c.norm.is_norm);
    }
}
