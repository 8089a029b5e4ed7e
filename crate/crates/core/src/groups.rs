//! Finite abelian groups — cyclic Z_N, products, unit groups of quotient
//! rings, and coset quotients F*_{q^m}/K — plus the homomorphisms between
//! them with computable kernels.
//!
//! The group operation is written additively for cyclic and product groups
//! and multiplicatively for unit groups and their quotients; `op`, `inv`,
//! `identity` abstract over both so the verifier never cares.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{crt_pair, factorize, gcd};
use crate::algebra::dlog::discrete_log;
use crate::algebra::{find_primitive, poly, FieldDescriptor, FieldElement, ENUM_CAP};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupDescriptor {
    Cyclic {
        #[serde(rename = "N")]
        n: u64,
    },
    Product {
        factors: Vec<GroupDescriptor>,
    },
    UnitGroup {
        field: FieldDescriptor,
    },
    /// F*_{p^n} modulo the subgroup generated by `subgroup_gen`. Elements are
    /// canonical coset representatives: the member with minimal discrete log
    /// to the deterministic primitive base of the field.
    CosetQuotient {
        field: FieldDescriptor,
        subgroup_gen: Vec<u64>,
    },
}

impl GroupDescriptor {
    pub fn cyclic(n: u64) -> Self {
        GroupDescriptor::Cyclic { n }
    }

    pub fn order(&self) -> Result<u64> {
        match self {
            GroupDescriptor::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("cyclic group order must be positive".into()));
                }
                Ok(*n)
            }
            GroupDescriptor::Product { factors } => {
                let mut acc = 1u64;
                for f in factors {
                    acc = acc
                        .checked_mul(f.order()?)
                        .ok_or(Error::InvalidParameter("product order exceeds u64".into()))?;
                }
                Ok(acc)
            }
            GroupDescriptor::UnitGroup { field } => field.unit_group_order(),
            GroupDescriptor::CosetQuotient { field, subgroup_gen } => {
                let (_, m, k) = coset_params(field, subgroup_gen)?;
                Ok(m / k)
            }
        }
    }

    pub fn identity(&self) -> GroupValue {
        match self {
            GroupDescriptor::Cyclic { .. } => GroupValue::Residue(0),
            GroupDescriptor::Product { factors } => {
                GroupValue::Tuple(factors.iter().map(|f| f.identity()).collect())
            }
            GroupDescriptor::UnitGroup { field } | GroupDescriptor::CosetQuotient { field, .. } => {
                GroupValue::Unit(field.one().coeffs)
            }
        }
    }

    /// The group operation.
    pub fn op(&self, a: &GroupValue, b: &GroupValue) -> Result<GroupValue> {
        match (self, a, b) {
            (GroupDescriptor::Cyclic { n }, GroupValue::Residue(x), GroupValue::Residue(y)) => {
                Ok(GroupValue::Residue(((*x as u128 + *y as u128) % *n as u128) as u64))
            }
            (GroupDescriptor::Product { factors }, GroupValue::Tuple(xs), GroupValue::Tuple(ys))
                if xs.len() == factors.len() && ys.len() == factors.len() =>
            {
                let parts = factors
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.op(x, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupValue::Tuple(parts))
            }
            (GroupDescriptor::UnitGroup { field }, GroupValue::Unit(x), GroupValue::Unit(y)) => {
                let prod = as_element(field, x).mul(&as_element(field, y))?;
                Ok(GroupValue::Unit(prod.coeffs))
            }
            (GroupDescriptor::CosetQuotient { field, subgroup_gen }, GroupValue::Unit(x), GroupValue::Unit(y)) => {
                let prod = as_element(field, x).mul(&as_element(field, y))?;
                Ok(GroupValue::Unit(coset_canonical(field, subgroup_gen, &prod)?))
            }
            _ => Err(Error::WrongGroup),
        }
    }

    /// The group inverse.
    pub fn inv(&self, a: &GroupValue) -> Result<GroupValue> {
        match (self, a) {
            (GroupDescriptor::Cyclic { n }, GroupValue::Residue(x)) => {
                Ok(GroupValue::Residue((n - x % n) % n))
            }
            (GroupDescriptor::Product { factors }, GroupValue::Tuple(xs)) if xs.len() == factors.len() => {
                let parts = factors
                    .iter()
                    .zip(xs)
                    .map(|(f, x)| f.inv(x))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupValue::Tuple(parts))
            }
            (GroupDescriptor::UnitGroup { field }, GroupValue::Unit(x)) => {
                Ok(GroupValue::Unit(as_element(field, x).inv()?.coeffs))
            }
            (GroupDescriptor::CosetQuotient { field, subgroup_gen }, GroupValue::Unit(x)) => {
                let inv = as_element(field, x).inv()?;
                Ok(GroupValue::Unit(coset_canonical(field, subgroup_gen, &inv)?))
            }
            _ => Err(Error::WrongGroup),
        }
    }

    /// a − b (or a·b⁻¹ multiplicatively).
    pub fn sub(&self, a: &GroupValue, b: &GroupValue) -> Result<GroupValue> {
        self.op(a, &self.inv(b)?)
    }

    /// Checks that the value is a canonical member of this group.
    pub fn validate(&self, v: &GroupValue) -> Result<()> {
        match (self, v) {
            (GroupDescriptor::Cyclic { n }, GroupValue::Residue(x)) => {
                if x < n {
                    Ok(())
                } else {
                    Err(Error::WrongGroup)
                }
            }
            (GroupDescriptor::Product { factors }, GroupValue::Tuple(xs)) if xs.len() == factors.len() => {
                factors.iter().zip(xs).try_for_each(|(f, x)| f.validate(x))
            }
            (GroupDescriptor::UnitGroup { field }, GroupValue::Unit(c)) => {
                check_unit_coeffs(field, c)?;
                let g = poly::gcd(c, &field.modulus, field.p);
                if poly::deg(&g) == Some(0) {
                    Ok(())
                } else {
                    Err(Error::WrongGroup)
                }
            }
            (GroupDescriptor::CosetQuotient { field, subgroup_gen }, GroupValue::Unit(c)) => {
                check_unit_coeffs(field, c)?;
                let canon = coset_canonical(field, subgroup_gen, &as_element(field, c))?;
                if &canon == c {
                    Ok(())
                } else {
                    Err(Error::WrongGroup)
                }
            }
            _ => Err(Error::WrongGroup),
        }
    }

    /// All group elements, sorted; errors above the cap.
    pub fn elements(&self, cap: u64) -> Result<Vec<GroupValue>> {
        let order = self.order()?;
        if order > cap {
            return Err(Error::TooLarge { size: order as u128, cap: cap as u128 });
        }
        let mut out = match self {
            GroupDescriptor::Cyclic { n } => (0..*n).map(GroupValue::Residue).collect(),
            GroupDescriptor::Product { factors } => {
                let mut acc = vec![Vec::new()];
                for f in factors {
                    let fe = f.elements(cap)?;
                    let mut next = Vec::with_capacity(acc.len() * fe.len());
                    for prefix in &acc {
                        for v in &fe {
                            let mut row = prefix.clone();
                            row.push(v.clone());
                            next.push(row);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(GroupValue::Tuple).collect()
            }
            GroupDescriptor::UnitGroup { field } => {
                let mut units = Vec::with_capacity(order as usize);
                for t in 1..field.order() {
                    let f = poly::from_index(t as u128, field.p, field.n);
                    if poly::deg(&poly::gcd(&f, &field.modulus, field.p)) == Some(0) {
                        units.push(GroupValue::Unit(f));
                    }
                }
                units
            }
            GroupDescriptor::CosetQuotient { field, subgroup_gen } => {
                let (theta, m, k) = coset_params(field, subgroup_gen)?;
                let theta = as_element(field, &theta);
                (0..m / k).map(|e| GroupValue::Unit(theta.pow(e).coeffs)).collect()
            }
        };
        out.sort_unstable();
        Ok(out)
    }
}

fn check_unit_coeffs(field: &FieldDescriptor, c: &[u64]) -> Result<()> {
    if c.len() != field.n || c.iter().any(|&x| x >= field.p) || c.iter().all(|&x| x == 0) {
        return Err(Error::WrongGroup);
    }
    Ok(())
}

fn as_element(field: &FieldDescriptor, coeffs: &[u64]) -> FieldElement {
    FieldElement { field: field.clone(), coeffs: coeffs.to_vec() }
}

type CosetKey = (u64, Vec<u64>, Vec<u64>);
type CosetCache = Mutex<HashMap<CosetKey, (Vec<u64>, u64, u64)>>;
static COSET_PARAMS: OnceLock<CosetCache> = OnceLock::new();

/// (primitive base θ, unit-group order M, subgroup order k) for a coset quotient.
fn coset_params(field: &FieldDescriptor, subgroup_gen: &[u64]) -> Result<(Vec<u64>, u64, u64)> {
    let cache = COSET_PARAMS.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (field.p, field.modulus.clone(), subgroup_gen.to_vec());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    if !field.is_field() {
        return Err(Error::InvalidParameter("coset quotients require an irreducible modulus".into()));
    }
    let m = field.order() - 1;
    let gen = as_element(field, subgroup_gen);
    if gen.is_zero() {
        return Err(Error::ZeroElement);
    }
    let theta = find_primitive(field)?;
    let k = gen.multiplicative_order(&factorize(m)?)?;
    let entry = (theta.coeffs, m, k);
    cache.lock().unwrap().insert(key, entry.clone());
    Ok(entry)
}

/// Canonical representative of u·⟨subgroup_gen⟩: the coset member with minimal
/// discrete log, i.e. θ^(log u mod M/k).
fn coset_canonical(field: &FieldDescriptor, subgroup_gen: &[u64], u: &FieldElement) -> Result<Vec<u64>> {
    let (theta, m, k) = coset_params(field, subgroup_gen)?;
    let theta = as_element(field, &theta);
    let log = discrete_log(&theta, u)?;
    Ok(theta.pow(log % (m / k)).coeffs)
}

/// A single group element value: a residue, a tuple, or unit-group coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupValue {
    Residue(u64),
    Tuple(Vec<GroupValue>),
    Unit(Vec<u64>),
}

impl GroupValue {
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            GroupValue::Residue(r) => Some(*r),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            GroupValue::Residue(_) => 0,
            GroupValue::Tuple(_) => 1,
            GroupValue::Unit(_) => 2,
        }
    }

    /// Parse a JSON value against a group descriptor (residue → number,
    /// product → array of member values, unit coefficients → array of numbers).
    pub fn from_json(group: &GroupDescriptor, v: &serde_json::Value) -> Result<GroupValue> {
        let parsed = match group {
            GroupDescriptor::Cyclic { .. } => GroupValue::Residue(
                v.as_u64().ok_or_else(|| Error::InvalidParameter("expected a residue".into()))?,
            ),
            GroupDescriptor::Product { factors } => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| Error::InvalidParameter("expected a tuple".into()))?;
                if arr.len() != factors.len() {
                    return Err(Error::WrongGroup);
                }
                GroupValue::Tuple(
                    factors
                        .iter()
                        .zip(arr)
                        .map(|(f, x)| GroupValue::from_json(f, x))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            GroupDescriptor::UnitGroup { .. } | GroupDescriptor::CosetQuotient { .. } => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| Error::InvalidParameter("expected unit coefficients".into()))?;
                let coeffs = arr
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(|| Error::InvalidParameter("expected an integer coefficient".into())))
                    .collect::<Result<Vec<_>>>()?;
                GroupValue::Unit(coeffs)
            }
        };
        group.validate(&parsed)?;
        Ok(parsed)
    }
}

impl Ord for GroupValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupValue::Residue(a), GroupValue::Residue(b)) => a.cmp(b),
            (GroupValue::Tuple(a), GroupValue::Tuple(b)) => a.cmp(b),
            (GroupValue::Unit(a), GroupValue::Unit(b)) => {
                // Numeric order of the base-p encoding: highest coefficient first.
                a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for GroupValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for GroupValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupValue::Residue(r) => s.serialize_u64(*r),
            GroupValue::Tuple(xs) => {
                let mut seq = s.serialize_seq(Some(xs.len()))?;
                for x in xs {
                    seq.serialize_element(x)?;
                }
                seq.end()
            }
            GroupValue::Unit(cs) => {
                let mut seq = s.serialize_seq(Some(cs.len()))?;
                for c in cs {
                    seq.serialize_element(c)?;
                }
                seq.end()
            }
        }
    }
}

/// An element paired with its group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub group: GroupDescriptor,
    pub value: GroupValue,
}

/// A surjective homomorphism (or isomorphism) with a computable kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub source: GroupDescriptor,
    pub target: GroupDescriptor,
    #[serde(flatten)]
    pub kind: HomKind,
    pub kernel_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HomKind {
    /// Z_N → Z_{N/divisor}, x ↦ x mod N/divisor.
    ModReduction { divisor: u64 },
    /// Z_m × Z_n → Z_{mn} for coprime m, n.
    CrtCombine,
    /// Z_{mn} → Z_m × Z_n for coprime m, n.
    CrtSplit,
    /// F*_{p^n} → Z_{p^n−1} via the discrete log to `base`.
    DlogIso { base: Vec<u64> },
    /// F*_{p^n} → F*_{p^n}/⟨subgroup_gen⟩.
    CosetProjection { subgroup_gen: Vec<u64> },
    /// Componentwise action on a product group.
    Componentwise { parts: Vec<Homomorphism> },
    /// Left-to-right composition.
    Composition { steps: Vec<Homomorphism> },
}

impl Homomorphism {
    /// Z_n → Z_{n/divisor}; requires divisor | n. Kernel size = divisor.
    pub fn mod_reduction(n: u64, divisor: u64) -> Result<Self> {
        if divisor == 0 || !n.is_multiple_of(divisor) {
            return Err(Error::DivisibilityViolation { g: divisor, must_divide: n });
        }
        Ok(Homomorphism {
            source: GroupDescriptor::cyclic(n),
            target: GroupDescriptor::cyclic(n / divisor),
            kind: HomKind::ModReduction { divisor },
            kernel_size: divisor,
        })
    }

    /// Z_m × Z_n → Z_{mn} (gcd(m, n) = 1). An isomorphism.
    pub fn crt_combine(m: u64, n: u64) -> Result<Self> {
        if gcd(m, n) != 1 {
            return Err(Error::NotCoprime { m, n });
        }
        let mn = m
            .checked_mul(n)
            .ok_or(Error::InvalidParameter("product modulus exceeds u64".into()))?;
        Ok(Homomorphism {
            source: GroupDescriptor::Product {
                factors: vec![GroupDescriptor::cyclic(m), GroupDescriptor::cyclic(n)],
            },
            target: GroupDescriptor::cyclic(mn),
            kind: HomKind::CrtCombine,
            kernel_size: 1,
        })
    }

    /// Z_{mn} → Z_m × Z_n (gcd(m, n) = 1). Inverse of `crt_combine`.
    pub fn crt_split(m: u64, n: u64) -> Result<Self> {
        let combine = Self::crt_combine(m, n)?;
        Ok(Homomorphism {
            source: combine.target,
            target: combine.source,
            kind: HomKind::CrtSplit,
            kernel_size: 1,
        })
    }

    /// F*_{p^n} → Z_{p^n−1} via log to a primitive base. An isomorphism.
    pub fn dlog_iso(field: &FieldDescriptor, base: &FieldElement) -> Result<Self> {
        if base.field != *field {
            return Err(Error::MixedFields);
        }
        let m = field.unit_group_order()?;
        if base.is_zero() || base.multiplicative_order(&factorize(m)?)? != m {
            return Err(Error::NonPrimitiveBase);
        }
        Ok(Homomorphism {
            source: GroupDescriptor::UnitGroup { field: field.clone() },
            target: GroupDescriptor::cyclic(m),
            kind: HomKind::DlogIso { base: base.coeffs.clone() },
            kernel_size: 1,
        })
    }

    /// F*_{p^n} → F*_{p^n}/⟨subgroup_gen⟩; kernel size = order of the generator.
    pub fn coset_projection(field: &FieldDescriptor, subgroup_gen: &FieldElement) -> Result<Self> {
        if subgroup_gen.field != *field {
            return Err(Error::MixedFields);
        }
        let (_, _, k) = coset_params(field, &subgroup_gen.coeffs)?;
        Ok(Homomorphism {
            source: GroupDescriptor::UnitGroup { field: field.clone() },
            target: GroupDescriptor::CosetQuotient {
                field: field.clone(),
                subgroup_gen: subgroup_gen.coeffs.clone(),
            },
            kind: HomKind::CosetProjection { subgroup_gen: subgroup_gen.coeffs.clone() },
            kernel_size: k,
        })
    }

    /// Componentwise action on the product of the parts' sources.
    pub fn componentwise(parts: Vec<Homomorphism>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("componentwise needs at least one part".into()));
        }
        let mut kernel_size = 1u64;
        for p in &parts {
            kernel_size = kernel_size
                .checked_mul(p.kernel_size)
                .ok_or(Error::InvalidParameter("kernel size exceeds u64".into()))?;
        }
        Ok(Homomorphism {
            source: GroupDescriptor::Product { factors: parts.iter().map(|p| p.source.clone()).collect() },
            target: GroupDescriptor::Product { factors: parts.iter().map(|p| p.target.clone()).collect() },
            kind: HomKind::Componentwise { parts },
            kernel_size,
        })
    }

    /// Composition, applied left to right. Kernel sizes multiply because every
    /// supported kind is surjective.
    pub fn composition(steps: Vec<Homomorphism>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidParameter("composition needs at least one step".into()));
        }
        for pair in steps.windows(2) {
            if pair[0].target != pair[1].source {
                return Err(Error::WrongGroup);
            }
        }
        let mut kernel_size = 1u64;
        for s in &steps {
            kernel_size = kernel_size
                .checked_mul(s.kernel_size)
                .ok_or(Error::InvalidParameter("kernel size exceeds u64".into()))?;
        }
        Ok(Homomorphism {
            source: steps.first().unwrap().source.clone(),
            target: steps.last().unwrap().target.clone(),
            kind: HomKind::Composition { steps },
            kernel_size,
        })
    }

    /// Apply to a bare value (validated against the source group).
    pub fn apply(&self, v: &GroupValue) -> Result<GroupValue> {
        self.source.validate(v)?;
        match (&self.kind, v) {
            (HomKind::ModReduction { .. }, GroupValue::Residue(x)) => {
                let m = match &self.target {
                    GroupDescriptor::Cyclic { n } => *n,
                    _ => return Err(Error::WrongGroup),
                };
                Ok(GroupValue::Residue(x % m))
            }
            (HomKind::CrtCombine, GroupValue::Tuple(xs)) => {
                let (m, n) = product_pair(&self.source)?;
                match (&xs[0], &xs[1]) {
                    (GroupValue::Residue(a), GroupValue::Residue(b)) => {
                        Ok(GroupValue::Residue(crt_pair(*a, m, *b, n)?))
                    }
                    _ => Err(Error::WrongGroup),
                }
            }
            (HomKind::CrtSplit, GroupValue::Residue(t)) => {
                let (m, n) = product_pair(&self.target)?;
                Ok(GroupValue::Tuple(vec![GroupValue::Residue(t % m), GroupValue::Residue(t % n)]))
            }
            (HomKind::DlogIso { base }, GroupValue::Unit(c)) => {
                let field = unit_field(&self.source)?;
                let log = discrete_log(&as_element(field, base), &as_element(field, c))?;
                Ok(GroupValue::Residue(log))
            }
            (HomKind::CosetProjection { subgroup_gen }, GroupValue::Unit(c)) => {
                let field = unit_field(&self.source)?;
                Ok(GroupValue::Unit(coset_canonical(field, subgroup_gen, &as_element(field, c))?))
            }
            (HomKind::Componentwise { parts }, GroupValue::Tuple(xs)) if xs.len() == parts.len() => {
                Ok(GroupValue::Tuple(
                    parts.iter().zip(xs).map(|(p, x)| p.apply(x)).collect::<Result<Vec<_>>>()?,
                ))
            }
            (HomKind::Composition { steps }, v) => {
                let mut acc = v.clone();
                for s in steps {
                    acc = s.apply(&acc)?;
                }
                Ok(acc)
            }
            _ => Err(Error::WrongGroup),
        }
    }
}

fn product_pair(g: &GroupDescriptor) -> Result<(u64, u64)> {
    match g {
        GroupDescriptor::Product { factors } if factors.len() == 2 => {
            match (&factors[0], &factors[1]) {
                (GroupDescriptor::Cyclic { n: m }, GroupDescriptor::Cyclic { n }) => Ok((*m, *n)),
                _ => Err(Error::WrongGroup),
            }
        }
        _ => Err(Error::WrongGroup),
    }
}

fn unit_field(g: &GroupDescriptor) -> Result<&FieldDescriptor> {
    match g {
        GroupDescriptor::UnitGroup { field } => Ok(field),
        GroupDescriptor::CosetQuotient { field, .. } => Ok(field),
        _ => Err(Error::WrongGroup),
    }
}

/// Apply a homomorphism to an element, checking group membership.
pub fn apply_hom(phi: &Homomorphism, x: &GroupElement) -> Result<GroupElement> {
    if x.group != phi.source {
        return Err(Error::WrongGroup);
    }
    Ok(GroupElement { group: phi.target.clone(), value: phi.apply(&x.value)? })
}

/// The full kernel, by enumerating the source; contains the identity and has
/// exactly `kernel_size` members.
pub fn kernel_elements(phi: &Homomorphism) -> Result<Vec<GroupElement>> {
    let id = phi.target.identity();
    let mut out = Vec::with_capacity(phi.kernel_size as usize);
    for v in phi.source.elements(ENUM_CAP)? {
        if phi.apply(&v)? == id {
            out.push(GroupElement { group: phi.source.clone(), value: v });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldDescriptor {
        FieldDescriptor::new(3, 2, vec![2, 1, 1]).unwrap()
    }

    #[test]
    fn descriptor_serde() {
        let g = GroupDescriptor::cyclic(171);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"kind":"cyclic","N":171}"#);
        let p = GroupDescriptor::Product {
            factors: vec![GroupDescriptor::cyclic(10), GroupDescriptor::cyclic(11)],
        };
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<GroupDescriptor>(&json).unwrap(), p);
        let u = GroupDescriptor::UnitGroup { field: f9() };
        let json = serde_json::to_string(&u).unwrap();
        assert!(json.contains(r#""kind":"unit-group""#));
        assert_eq!(serde_json::from_str::<GroupDescriptor>(&json).unwrap(), u);
    }

    #[test]
    fn orders() {
        assert_eq!(GroupDescriptor::cyclic(342).order().unwrap(), 342);
        let p = GroupDescriptor::Product {
            factors: vec![GroupDescriptor::cyclic(10), GroupDescriptor::cyclic(11)],
        };
        assert_eq!(p.order().unwrap(), 110);
        assert_eq!(GroupDescriptor::UnitGroup { field: f9() }.order().unwrap(), 8);
    }

    #[test]
    fn cyclic_and_product_ops() {
        let z10 = GroupDescriptor::cyclic(10);
        let a = GroupValue::Residue(7);
        let b = GroupValue::Residue(8);
        assert_eq!(z10.op(&a, &b).unwrap(), GroupValue::Residue(5));
        assert_eq!(z10.inv(&a).unwrap(), GroupValue::Residue(3));
        assert_eq!(z10.sub(&a, &b).unwrap(), GroupValue::Residue(9));

        let prod = GroupDescriptor::Product {
            factors: vec![GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(3)],
        };
        let x = GroupValue::Tuple(vec![GroupValue::Residue(1), GroupValue::Residue(2)]);
        let y = GroupValue::Tuple(vec![GroupValue::Residue(1), GroupValue::Residue(2)]);
        assert_eq!(
            prod.op(&x, &y).unwrap(),
            GroupValue::Tuple(vec![GroupValue::Residue(0), GroupValue::Residue(1)])
        );
        assert_eq!(prod.op(&x, &prod.inv(&x).unwrap()).unwrap(), prod.identity());
    }

    #[test]
    fn unit_group_ops() {
        let g = GroupDescriptor::UnitGroup { field: f9() };
        let x = GroupValue::Unit(vec![0, 1]);
        // x · x = 2x + 1.
        assert_eq!(g.op(&x, &x).unwrap(), GroupValue::Unit(vec![1, 2]));
        for v in g.elements(1000).unwrap() {
            assert_eq!(g.op(&v, &g.inv(&v).unwrap()).unwrap(), g.identity());
        }
    }

    #[test]
    fn mod_reduction_examples() {
        let phi = Homomorphism::mod_reduction(342, 2).unwrap();
        assert_eq!(phi.apply(&GroupValue::Residue(239)).unwrap(), GroupValue::Residue(68));
        assert_eq!(phi.apply(&phi.source.identity()).unwrap(), GroupValue::Residue(0));
        let phi = Homomorphism::mod_reduction(3120, 8).unwrap();
        assert_eq!(phi.apply(&GroupValue::Residue(1384)).unwrap(), GroupValue::Residue(214));
        assert!(Homomorphism::mod_reduction(10, 3).is_err());
    }

    #[test]
    fn crt_round_trips() {
        let combine = Homomorphism::crt_combine(10, 11).unwrap();
        let split = Homomorphism::crt_split(10, 11).unwrap();
        let pair = |a, b| GroupValue::Tuple(vec![GroupValue::Residue(a), GroupValue::Residue(b)]);
        assert_eq!(combine.apply(&pair(0, 0)).unwrap(), GroupValue::Residue(0));
        assert_eq!(combine.apply(&pair(1, 2)).unwrap(), GroupValue::Residue(101));
        assert_eq!(combine.apply(&pair(7, 7)).unwrap(), GroupValue::Residue(7));
        for t in 0..110u64 {
            let split_t = split.apply(&GroupValue::Residue(t)).unwrap();
            assert_eq!(combine.apply(&split_t).unwrap(), GroupValue::Residue(t));
        }
        assert!(Homomorphism::crt_combine(4, 6).is_err());
    }

    #[test]
    fn kernels() {
        let phi = Homomorphism::mod_reduction(10, 2).unwrap();
        let kernel: Vec<_> = kernel_elements(&phi).unwrap().into_iter().map(|e| e.value).collect();
        assert_eq!(kernel, vec![GroupValue::Residue(0), GroupValue::Residue(5)]);

        let phi = Homomorphism::mod_reduction(342, 2).unwrap();
        let kernel: Vec<_> = kernel_elements(&phi).unwrap().into_iter().map(|e| e.value).collect();
        assert_eq!(kernel, vec![GroupValue::Residue(0), GroupValue::Residue(171)]);

        let iso = Homomorphism::crt_combine(10, 11).unwrap();
        let kernel = kernel_elements(&iso).unwrap();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].value, iso.source.identity());
    }

    #[test]
    fn dlog_iso_hom() {
        let f = f9();
        let theta = f.element(&[0, 1]);
        let phi = Homomorphism::dlog_iso(&f, &theta).unwrap();
        assert_eq!(phi.kernel_size, 1);
        assert_eq!(phi.apply(&GroupValue::Unit(vec![1, 1])).unwrap(), GroupValue::Residue(7));
        assert_eq!(phi.apply(&GroupValue::Unit(vec![2, 1])).unwrap(), GroupValue::Residue(6));
        // log(θ·θ) = 2.
        let sq = f.element(&[0, 1]).mul(&f.element(&[0, 1])).unwrap();
        assert_eq!(phi.apply(&GroupValue::Unit(sq.coeffs)).unwrap(), GroupValue::Residue(2));
        // Non-primitive base is rejected.
        assert!(Homomorphism::dlog_iso(&f, &f.constant(2)).is_err());
    }

    #[test]
    fn coset_projection_hom() {
        // F_27 modulo F_3*: kernel size 2, quotient order 13.
        let f27 = FieldDescriptor::with_default_modulus(3, 3).unwrap();
        let theta = find_primitive(&f27).unwrap();
        let gen = theta.pow(13); // order-2 subgroup = F_3* = {1, 2}
        let phi = Homomorphism::coset_projection(&f27, &gen).unwrap();
        assert_eq!(phi.kernel_size, 2);
        assert_eq!(phi.target.order().unwrap(), 13);
        let kernel = kernel_elements(&phi).unwrap();
        assert_eq!(kernel.len(), 2);
        // Trivial subgroup: an isomorphism.
        let phi1 = Homomorphism::coset_projection(&f27, &f27.one()).unwrap();
        assert_eq!(phi1.kernel_size, 1);
        // F_8 over the trivial unit group F_2*.
        let f8 = FieldDescriptor::with_default_modulus(2, 3).unwrap();
        let phi8 = Homomorphism::coset_projection(&f8, &f8.one()).unwrap();
        assert_eq!(phi8.kernel_size, 1);
    }

    #[test]
    fn homomorphism_additivity_exhaustive() {
        let f = f9();
        let theta = f.element(&[0, 1]);
        let homs = vec![
            Homomorphism::mod_reduction(24, 4).unwrap(),
            Homomorphism::crt_combine(3, 8).unwrap(),
            Homomorphism::dlog_iso(&f, &theta).unwrap(),
            {
                let f27 = FieldDescriptor::with_default_modulus(3, 3).unwrap();
                let gen = find_primitive(&f27).unwrap().pow(13);
                Homomorphism::coset_projection(&f27, &gen).unwrap()
            },
        ];
        for phi in homs {
            let elems = phi.source.elements(10_000).unwrap();
            for x in &elems {
                for y in &elems {
                    let lhs = phi.apply(&phi.source.op(x, y).unwrap()).unwrap();
                    let rhs = phi.target.op(&phi.apply(x).unwrap(), &phi.apply(y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn composition_matches_direct() {
        let first = Homomorphism::mod_reduction(342, 2).unwrap();
        let second = Homomorphism::mod_reduction(171, 3).unwrap();
        let comp = Homomorphism::composition(vec![first, second]).unwrap();
        assert_eq!(comp.kernel_size, 6);
        let direct = Homomorphism::mod_reduction(342, 6).unwrap();
        for t in 0..342u64 {
            let v = GroupValue::Residue(t);
            assert_eq!(comp.apply(&v).unwrap(), direct.apply(&v).unwrap());
        }
        // Kernel size equals |source| / |image|, checked by enumeration.
        let image: std::collections::BTreeSet<_> =
            (0..342).map(|t| comp.apply(&GroupValue::Residue(t)).unwrap()).collect();
        assert_eq!(comp.kernel_size, 342 / image.len() as u64);
        assert_eq!(kernel_elements(&comp).unwrap().len() as u64, comp.kernel_size);
    }

    #[test]
    fn componentwise_on_product() {
        let parts = vec![
            Homomorphism::mod_reduction(10, 2).unwrap(),
            Homomorphism::mod_reduction(11, 1).unwrap(),
        ];
        let phi = Homomorphism::componentwise(parts).unwrap();
        assert_eq!(phi.kernel_size, 2);
        let x = GroupValue::Tuple(vec![GroupValue::Residue(7), GroupValue::Residue(9)]);
        assert_eq!(
            phi.apply(&x).unwrap(),
            GroupValue::Tuple(vec![GroupValue::Residue(2), GroupValue::Residue(9)])
        );
        assert_eq!(kernel_elements(&phi).unwrap().len(), 2);
    }

    #[test]
    fn wrong_group_rejected() {
        let phi = Homomorphism::mod_reduction(10, 2).unwrap();
        let x = GroupElement { group: GroupDescriptor::cyclic(5), value: GroupValue::Residue(3) };
        assert_eq!(apply_hom(&phi, &x), Err(Error::WrongGroup));
        assert!(phi.apply(&GroupValue::Residue(99)).is_err());
    }

    #[test]
    fn hom_serde_round_trip() {
        let phi = Homomorphism::mod_reduction(342, 2).unwrap();
        let json = serde_json::to_string(&phi).unwrap();
        assert!(json.contains(r#""kind":"mod-reduction""#));
        assert!(json.contains(r#""kernel_size":2"#));
        assert_eq!(serde_json::from_str::<Homomorphism>(&json).unwrap(), phi);
    }

    #[test]
    fn value_ordering() {
        // Units compare as base-p numbers, highest coefficient most significant.
        let a = GroupValue::Unit(vec![2, 0, 1]);
        let b = GroupValue::Unit(vec![0, 1, 1]);
        assert!(a < b); // 102 < 110 when read degree-major
        let mut v = [GroupValue::Residue(5), GroupValue::Residue(2)];
        v.sort();
        assert_eq!(v[0], GroupValue::Residue(2));
    }

    #[test]
    fn coset_quotient_elements_are_canonical() {
        let f27 = FieldDescriptor::with_default_modulus(3, 3).unwrap();
        let theta = find_primitive(&f27).unwrap();
        let gen = theta.pow(13);
        let h = GroupDescriptor::CosetQuotient { field: f27.clone(), subgroup_gen: gen.coeffs.clone() };
        let elems = h.elements(1000).unwrap();
        assert_eq!(elems.len(), 13);
        for v in &elems {
            h.validate(v).unwrap();
        }
        // Multiplying a representative by a kernel member leaves the coset fixed.
        let sample = &elems[3];
        let moved = match (sample, &gen.coeffs) {
            (GroupValue::Unit(c), g) => {
                let prod = as_element(&f27, c).mul(&as_element(&f27, g)).unwrap();
                GroupValue::Unit(coset_canonical(&f27, &gen.coeffs, &prod).unwrap())
            }
            _ => unreachable!(),
        };
        assert_eq!(&moved, sample);
    }
}
