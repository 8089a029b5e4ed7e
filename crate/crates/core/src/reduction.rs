//! Pushing B_h[g] sets through homomorphisms.
//!
//! If A is B_h[g] in G and φ: G → G' has kernel of size k, then φ(A) is
//! B_h[g·k] in G' — with no injectivity requirement, though the image may
//! shrink when φ identifies elements of A. `reduce_set` implements the
//! general step; `bc_g`, `ruzsa_g` and `gt_g` apply the family-specific
//! divisor conditions under which the image provably keeps its size.

use crate::algebra::arith::{factorize, primitive_root_mod};
use crate::algebra::{find_primitive, FieldDescriptor, FieldElement};
use crate::constructions::{
    bose_chowla, bose_chowla_default, gt_modular, ruzsa_modular, BhSet, ChainEntry,
};
use crate::error::{Error, Result};
use crate::groups::{GroupValue, Homomorphism};

/// Applies φ to every element, multiplies the claimed bound by the kernel
/// size, and records the step in the provenance chain. Collisions under φ are
/// allowed; they shrink the image and are noted.
pub fn reduce_set(a: &BhSet, phi: &Homomorphism) -> Result<BhSet> {
    if a.group != phi.source {
        return Err(Error::WrongGroup);
    }
    let claimed_g = a
        .claimed_g
        .checked_mul(phi.kernel_size)
        .ok_or(Error::InvalidParameter("claimed bound exceeds u64".into()))?;
    let mut elements = a
        .elements
        .iter()
        .map(|v| phi.apply(v))
        .collect::<Result<Vec<_>>>()?;
    elements.sort_unstable();
    elements.dedup();
    let mut provenance = a.provenance.clone();
    provenance.chain.push(ChainEntry { hom: phi.clone(), claimed_g_factor: phi.kernel_size });
    if elements.len() < a.elements.len() {
        provenance.notes.push(format!(
            "image kept {} of {} elements; the homomorphism is not injective on the set",
            elements.len(),
            a.elements.len()
        ));
    }
    BhSet::new(phi.target.clone(), a.h, claimed_g, elements, provenance)
}

/// Whether φ is injective on the set, and if not, a colliding pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityCheck {
    pub preserved: bool,
    /// Two distinct elements with the same image, later element first.
    pub witness: Option<(GroupValue, GroupValue)>,
}

pub fn cardinality_preserved(a: &BhSet, phi: &Homomorphism) -> Result<CardinalityCheck> {
    if a.group != phi.source {
        return Err(Error::WrongGroup);
    }
    let mut seen: std::collections::HashMap<GroupValue, &GroupValue> = std::collections::HashMap::new();
    for v in &a.elements {
        let image = phi.apply(v)?;
        if let Some(prev) = seen.get(&image) {
            return Ok(CardinalityCheck {
                preserved: false,
                witness: Some((v.clone(), (*prev).clone())),
            });
        }
        seen.insert(image, v);
    }
    Ok(CardinalityCheck { preserved: true, witness: None })
}

fn reduce_preserving(a: &BhSet, phi: &Homomorphism) -> Result<BhSet> {
    let check = cardinality_preserved(a, phi)?;
    if !check.preserved {
        return Err(Error::CardinalityLost {
            expected: a.elements.len(),
            got: a.elements.len() - 1,
        });
    }
    reduce_set(a, phi)
}

/// Bose–Chowla reduced by a divisor g: requires g | q^k − 1 for some proper
/// divisor k of h, which guarantees the reduced set keeps its q elements and
/// is B_h[g] in Z_{(q^h − 1)/g}.
pub fn bc_g(ext: &FieldDescriptor, q: u64, h: u32, theta: &FieldElement, g: u64) -> Result<BhSet> {
    let modular = bose_chowla(ext, q, h, theta)?;
    bc_g_from(modular, q, h, g)
}

/// `bc_g` with automatic modulus and primitive element.
pub fn bc_g_default(q: u64, h: u32, g: u64) -> Result<BhSet> {
    let modular = bose_chowla_default(q, h)?;
    bc_g_from(modular, q, h, g)
}

fn bc_g_from(modular: BhSet, q: u64, h: u32, g: u64) -> Result<BhSet> {
    if g == 1 {
        return Ok(modular);
    }
    let k = factorize(h as u64)?
        .divisors()
        .into_iter()
        .filter(|&k| k != h as u64)
        .find(|&k| (q.pow(k as u32) - 1).is_multiple_of(g))
        .ok_or(Error::NoValidSubfieldCondition { q, h: h as u64, g })?;
    let n = modular.group.order()?;
    let phi = Homomorphism::mod_reduction(n, g)?;
    let mut reduced = reduce_preserving(&modular, &phi)?;
    reduced.provenance.notes.push(format!(
        "g = {g} divides q^k - 1 = {} for k = {k} dividing h = {h}",
        q.pow(k as u32) - 1
    ));
    Ok(reduced)
}

/// Ruzsa reduced by a divisor g | p − 1: the image keeps its p − 1 elements
/// and is B_2[g] in Z_{(p² − p)/g}.
pub fn ruzsa_g(p: u64, theta: u64, g: u64) -> Result<BhSet> {
    let modular = ruzsa_modular(p, theta)?;
    if g == 1 {
        return Ok(modular);
    }
    if g == 0 || !(p - 1).is_multiple_of(g) {
        return Err(Error::DivisibilityViolation { g, must_divide: p - 1 });
    }
    let n = modular.group.order()?;
    let phi = Homomorphism::mod_reduction(n, g)?;
    reduce_preserving(&modular, &phi)
}

/// `ruzsa_g` with the smallest primitive root.
pub fn ruzsa_g_default(p: u64, g: u64) -> Result<BhSet> {
    ruzsa_g(p, primitive_root_mod(p)?, g)
}

/// Gómez–Trujillo reduced by a divisor g | p^{h−1} − 1: the image keeps its
/// p elements and is B_h[g] in Z_{(p^h − p)/g}.
pub fn gt_g(ext: &FieldDescriptor, p: u64, h: u32, theta: &FieldElement, g: u64) -> Result<BhSet> {
    let modular = gt_modular(ext, p, h, theta)?;
    if g == 1 {
        return Ok(modular);
    }
    let subgroup_order = ext.unit_group_order()?;
    if g == 0 || subgroup_order % g != 0 {
        return Err(Error::DivisibilityViolation { g, must_divide: subgroup_order });
    }
    let n = modular.group.order()?;
    let phi = Homomorphism::mod_reduction(n, g)?;
    let mut reduced = reduce_preserving(&modular, &phi)?;
    reduced.provenance.notes.push(format!(
        "g = {g} divides p^(h-1) - 1 = {subgroup_order}; the reduction acts on the discrete-log coordinate"
    ));
    Ok(reduced)
}

/// `gt_g` with automatic modulus and primitive element.
pub fn gt_g_default(p: u64, h: u32, g: u64) -> Result<BhSet> {
    if h < 3 {
        return Err(Error::BadDegree { h: h as u64, min: 3 });
    }
    let ext = FieldDescriptor::with_default_modulus(p, (h - 1) as usize)?;
    let theta = find_primitive(&ext)?;
    gt_g(&ext, p, h, &theta, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Provenance;
    use crate::groups::GroupDescriptor;

    fn plain_set(n: u64, h: u32, elements: &[u64]) -> BhSet {
        BhSet::new(
            GroupDescriptor::cyclic(n),
            h,
            1,
            elements.iter().map(|&e| GroupValue::Residue(e)).collect(),
            Provenance::default(),
        )
        .unwrap()
    }

    #[test]
    fn reduce_tracks_chain_and_bound() {
        let a = plain_set(8, 2, &[1, 6, 7]);
        let phi = Homomorphism::mod_reduction(8, 2).unwrap();
        let b = reduce_set(&a, &phi).unwrap();
        assert_eq!(b.group, GroupDescriptor::cyclic(4));
        assert_eq!(b.residues().unwrap(), vec![1, 2, 3]);
        assert_eq!(b.claimed_g, 2);
        assert_eq!(b.h, 2);
        assert_eq!(b.provenance.chain.len(), 1);
        assert_eq!(b.provenance.chain[0].claimed_g_factor, 2);
        assert!(b.provenance.notes.is_empty());
    }

    #[test]
    fn reduce_notes_cardinality_drop() {
        let a = plain_set(10, 2, &[0, 5]);
        let phi = Homomorphism::mod_reduction(10, 2).unwrap();
        let b = reduce_set(&a, &phi).unwrap();
        assert_eq!(b.residues().unwrap(), vec![0]);
        assert_eq!(b.claimed_g, 2);
        assert_eq!(b.provenance.notes.len(), 1);
        assert!(b.provenance.notes[0].contains("1 of 2"));
    }

    #[test]
    fn cardinality_witness() {
        let a = plain_set(10, 2, &[0, 5]);
        let collapse = Homomorphism::mod_reduction(10, 2).unwrap();
        let check = cardinality_preserved(&a, &collapse).unwrap();
        assert!(!check.preserved);
        assert_eq!(check.witness, Some((GroupValue::Residue(5), GroupValue::Residue(0))));
        let keep = Homomorphism::mod_reduction(10, 5).unwrap();
        let check = cardinality_preserved(&a, &keep).unwrap();
        assert!(check.preserved);
        assert_eq!(check.witness, None);
    }

    #[test]
    fn reduce_rejects_wrong_group() {
        let a = plain_set(8, 2, &[1, 6, 7]);
        let phi = Homomorphism::mod_reduction(10, 2).unwrap();
        assert_eq!(reduce_set(&a, &phi), Err(Error::WrongGroup));
    }

    #[test]
    fn bc_g_small_example() {
        let b = bc_g_default(3, 2, 2).unwrap();
        assert_eq!(b.group, GroupDescriptor::cyclic(4));
        assert_eq!(b.residues().unwrap(), vec![1, 2, 3]);
        assert_eq!(b.claimed_g, 2);
        assert!(b.provenance.notes.iter().any(|n| n.contains("k = 1")));
    }

    #[test]
    fn bc_g_requires_subfield_condition() {
        // 4 divides the group order 8 but not q^1 − 1 = 2.
        assert_eq!(
            bc_g_default(3, 2, 4),
            Err(Error::NoValidSubfieldCondition { q: 3, h: 2, g: 4 })
        );
    }

    #[test]
    fn ruzsa_g_small_example() {
        let b = ruzsa_g(5, 2, 2).unwrap();
        assert_eq!(b.group, GroupDescriptor::cyclic(10));
        assert_eq!(b.residues().unwrap(), vec![3, 4, 6, 7]);
        assert_eq!(b.claimed_g, 2);
        assert_eq!(ruzsa_g(5, 2, 3), Err(Error::DivisibilityViolation { g: 3, must_divide: 4 }));
    }

    #[test]
    fn gt_g_small_examples() {
        let b = gt_g_default(3, 3, 2).unwrap();
        assert_eq!(b.group, GroupDescriptor::cyclic(12));
        assert_eq!(b.residues().unwrap(), vec![2, 7, 9]);
        assert_eq!(b.claimed_g, 2);
        let b = gt_g_default(3, 3, 4).unwrap();
        assert_eq!(b.group, GroupDescriptor::cyclic(6));
        assert_eq!(b.residues().unwrap(), vec![1, 2, 3]);
        // 3 divides the group order 24 but not p^(h−1) − 1 = 8.
        assert_eq!(
            gt_g_default(3, 3, 3),
            Err(Error::DivisibilityViolation { g: 3, must_divide: 8 })
        );
    }

    #[test]
    fn composed_reductions_multiply_bounds() {
        let a = plain_set(342, 3, &[1, 108, 123, 128, 149, 239, 267]);
        let b = reduce_set(&a, &Homomorphism::mod_reduction(342, 2).unwrap()).unwrap();
        assert_eq!(b.residues().unwrap(), vec![1, 68, 96, 108, 123, 128, 149]);
        let c = reduce_set(&b, &Homomorphism::mod_reduction(171, 3).unwrap()).unwrap();
        assert_eq!(c.group, GroupDescriptor::cyclic(57));
        assert_eq!(c.claimed_g, 6);
        assert_eq!(c.residues().unwrap(), vec![1, 9, 11, 14, 35, 39, 51]);
        assert_eq!(c.provenance.chain.len(), 2);
    }
}
