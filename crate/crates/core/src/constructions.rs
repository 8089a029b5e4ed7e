//! Dense B_h[1] set constructions from finite fields: Bose–Chowla, Ruzsa,
//! Gómez–Trujillo, generalized Singer, and Derksen's x − S family.
//!
//! Every constructor returns a [`BhSet`] carrying its group, the additive
//! parameter h, the claimed multiplicity bound, and enough provenance to
//! rebuild or audit the set.

use serde::{Deserialize, Serialize};

use crate::algebra::arith::{factorize, is_prime, mod_pow, prime_power_parts, primitive_root_mod};
use crate::algebra::dlog::discrete_log;
use crate::algebra::{find_primitive, poly, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupValue, Homomorphism};

/// One reduction step applied to a set: the homomorphism and the factor by
/// which the claimed multiplicity bound was multiplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub hom: Homomorphism,
    pub claimed_g_factor: u64,
}

/// Where a set came from: construction name, parameters, any reduction chain,
/// and free-form notes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<ChainEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A finite subset of an abelian group claimed to be B_h[claimed_g]:
/// every group element has at most claimed_g representations as a
/// nondecreasing sum of h members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBhSet")]
pub struct BhSet {
    pub group: GroupDescriptor,
    pub h: u32,
    pub claimed_g: u64,
    pub elements: Vec<GroupValue>,
    pub provenance: Provenance,
}

#[derive(Deserialize)]
struct RawBhSet {
    group: GroupDescriptor,
    h: u32,
    claimed_g: u64,
    elements: Vec<serde_json::Value>,
    #[serde(default)]
    provenance: Provenance,
}

impl TryFrom<RawBhSet> for BhSet {
    type Error = Error;

    fn try_from(raw: RawBhSet) -> Result<Self> {
        let elements = raw
            .elements
            .iter()
            .map(|v| GroupValue::from_json(&raw.group, v))
            .collect::<Result<Vec<_>>>()?;
        BhSet::new(raw.group, raw.h, raw.claimed_g, elements, raw.provenance)
    }
}

impl BhSet {
    /// Validates, sorts and dedup-checks the elements.
    pub fn new(
        group: GroupDescriptor,
        h: u32,
        claimed_g: u64,
        mut elements: Vec<GroupValue>,
        provenance: Provenance,
    ) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidParameter("h must be at least 1".into()));
        }
        if claimed_g == 0 {
            return Err(Error::InvalidParameter("claimed_g must be at least 1".into()));
        }
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        for v in &elements {
            group.validate(v)?;
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("elements must be distinct".into()));
        }
        Ok(BhSet { group, h, claimed_g, elements, provenance })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The elements as plain residues, when the group is cyclic.
    pub fn residues(&self) -> Option<Vec<u64>> {
        self.elements.iter().map(GroupValue::as_residue).collect()
    }
}

/// Derksen's construction: for a monic polynomial f over F_p of degree h ≥ 2
/// and S ⊆ F_p with f(s) ≠ 0 for every s ∈ S, the set {x − s : s ∈ S} is
/// B_h[1] in the unit group of F_p[x]/⟨f⟩. The modulus may be reducible.
pub fn derksen_set(p: u64, modulus: &[u64], s: &[u64]) -> Result<BhSet> {
    let f = poly::trim(modulus.to_vec());
    let h = match poly::deg(&f) {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::BadDegree { h: poly::deg(&f).unwrap_or(0) as u64, min: 2 }),
    };
    let field = FieldDescriptor::quotient_ring(p, h, f.clone())?;
    let mut svals: Vec<u64> = s.iter().map(|&x| x % p).collect();
    svals.sort_unstable();
    svals.dedup();
    if svals.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut elements = Vec::with_capacity(svals.len());
    for &sv in &svals {
        if poly::eval(&f, sv, p) == 0 {
            return Err(Error::RootInS { s: sv });
        }
        // x − s as a length-h coefficient vector.
        let mut coeffs = vec![0u64; h];
        coeffs[0] = (p - sv) % p;
        coeffs[1] = 1;
        elements.push(GroupValue::Unit(coeffs));
    }
    let provenance = Provenance {
        construction: "derksen".into(),
        p: Some(p),
        h: Some(h as u64),
        modulus: Some(f),
        s: Some(svals),
        ..Provenance::default()
    };
    BhSet::new(GroupDescriptor::UnitGroup { field }, h as u32, 1, elements, provenance)
}

/// Bose–Chowla: with θ primitive in F_{q^h}, the logs {log_θ(θ + c) : c ∈ F_q}
/// form a B_h[1] set of size q in Z_{q^h − 1}. The extension field must have
/// order q^h.
pub fn bose_chowla(ext: &FieldDescriptor, q: u64, h: u32, theta: &FieldElement) -> Result<BhSet> {
    if h < 2 {
        return Err(Error::BadDegree { h: h as u64, min: 2 });
    }
    let (p, k) = prime_power_parts(q)?;
    if ext.p != p || ext.n != k as usize * h as usize {
        return Err(Error::InvalidParameter(format!(
            "extension of order {} cannot contain F_{q} with index {h}",
            ext.order()
        )));
    }
    if theta.field != *ext {
        return Err(Error::MixedFields);
    }
    let n = ext.unit_group_order()?;
    if theta.is_zero() || theta.multiplicative_order(&factorize(n)?)? != n {
        return Err(Error::NonPrimitive);
    }
    let mut elements = Vec::with_capacity(q as usize);
    for c in ext.subfield_elements(q)? {
        let a = discrete_log(theta, &theta.add(&c)?)?;
        elements.push(GroupValue::Residue(a));
    }
    let provenance = Provenance {
        construction: "bose-chowla".into(),
        q: Some(q),
        h: Some(h as u64),
        modulus: Some(ext.modulus.clone()),
        theta: Some(theta.coeffs.clone()),
        ..Provenance::default()
    };
    let set = BhSet::new(GroupDescriptor::cyclic(n), h, 1, elements, provenance)?;
    debug_assert!(set.elements.contains(&GroupValue::Residue(1)));
    Ok(set)
}

/// Bose–Chowla with an automatically chosen modulus and primitive element.
pub fn bose_chowla_default(q: u64, h: u32) -> Result<BhSet> {
    let (p, k) = prime_power_parts(q)?;
    if h < 2 {
        return Err(Error::BadDegree { h: h as u64, min: 2 });
    }
    let ext = FieldDescriptor::with_default_modulus(p, k as usize * h as usize)?;
    let theta = find_primitive(&ext)?;
    bose_chowla(&ext, q, h, &theta)
}

/// The scan form of Bose–Chowla: {a ∈ [1, q^h − 1] : θ^a − θ ∈ F_q}, computed
/// by walking successive powers of θ. Equal to the log form as a set.
pub fn bose_chowla_scan(ext: &FieldDescriptor, q: u64, h: u32, theta: &FieldElement) -> Result<Vec<u64>> {
    if h < 2 {
        return Err(Error::BadDegree { h: h as u64, min: 2 });
    }
    if theta.field != *ext {
        return Err(Error::MixedFields);
    }
    let subfield: std::collections::HashSet<Vec<u64>> =
        ext.subfield_elements(q)?.into_iter().map(|e| e.coeffs).collect();
    let n = ext.unit_group_order()?;
    let mut out = Vec::with_capacity(q as usize);
    let mut power = theta.clone();
    for a in 1..=n {
        let diff = power.sub(theta)?;
        if subfield.contains(&diff.coeffs) {
            out.push(a);
        }
        power = power.mul(theta)?;
    }
    Ok(out)
}

/// Ruzsa: with θ a primitive root mod the prime p, the pairs
/// {(a mod p−1, θ^a mod p) : 1 ≤ a ≤ p−1} form a B_2[1] set of size p−1 in
/// Z_{p−1} × Z_p.
pub fn ruzsa_base(p: u64, theta: u64) -> Result<BhSet> {
    if !is_prime(p) || p < 3 {
        return Err(Error::NotPrime { value: p });
    }
    let theta = theta % p;
    if theta == 0 || crate::algebra::arith::order_mod(theta, p)? != p - 1 {
        return Err(Error::NonPrimitiveRoot { theta, p });
    }
    let mut elements = Vec::with_capacity((p - 1) as usize);
    for a in 1..p {
        let pair = GroupValue::Tuple(vec![
            GroupValue::Residue(a % (p - 1)),
            GroupValue::Residue(mod_pow(theta, a, p)),
        ]);
        elements.push(pair);
    }
    let group = GroupDescriptor::Product {
        factors: vec![GroupDescriptor::cyclic(p - 1), GroupDescriptor::cyclic(p)],
    };
    let provenance = Provenance {
        construction: "ruzsa".into(),
        p: Some(p),
        h: Some(2),
        theta: Some(vec![theta]),
        ..Provenance::default()
    };
    BhSet::new(group, 2, 1, elements, provenance)
}

/// Ruzsa transported to the cyclic group Z_{p² − p} along the CRT isomorphism.
pub fn ruzsa_modular(p: u64, theta: u64) -> Result<BhSet> {
    let base = ruzsa_base(p, theta)?;
    let iso = Homomorphism::crt_combine(p - 1, p)?;
    crate::reduction::reduce_set(&base, &iso)
}

/// Ruzsa with the smallest primitive root.
pub fn ruzsa_default(p: u64) -> Result<BhSet> {
    ruzsa_modular(p, primitive_root_mod(p)?)
}

/// Gómez–Trujillo: with θ primitive in F_{p^{h−1}}, the pairs
/// {(a, log_θ(θ + a)) : a ∈ F_p} form a B_h[1] set of size p in
/// Z_p × Z_{p^{h−1} − 1}. Requires h ≥ 3.
pub fn gt_base(ext: &FieldDescriptor, p: u64, h: u32, theta: &FieldElement) -> Result<BhSet> {
    if h < 3 {
        return Err(Error::BadDegree { h: h as u64, min: 3 });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    if ext.p != p || ext.n != (h - 1) as usize {
        return Err(Error::InvalidParameter(format!(
            "expected an extension of degree {} over F_{p}",
            h - 1
        )));
    }
    if theta.field != *ext {
        return Err(Error::MixedFields);
    }
    let n = ext.unit_group_order()?;
    if theta.is_zero() || theta.multiplicative_order(&factorize(n)?)? != n {
        return Err(Error::NonPrimitive);
    }
    let mut elements = Vec::with_capacity(p as usize);
    for a in 0..p {
        let log = discrete_log(theta, &theta.add(&ext.constant(a))?)?;
        elements.push(GroupValue::Tuple(vec![GroupValue::Residue(a), GroupValue::Residue(log)]));
    }
    let group = GroupDescriptor::Product {
        factors: vec![GroupDescriptor::cyclic(p), GroupDescriptor::cyclic(n)],
    };
    let provenance = Provenance {
        construction: "gomez-trujillo".into(),
        p: Some(p),
        h: Some(h as u64),
        modulus: Some(ext.modulus.clone()),
        theta: Some(theta.coeffs.clone()),
        ..Provenance::default()
    };
    BhSet::new(group, h, 1, elements, provenance)
}

/// Gómez–Trujillo transported to Z_{p^h − p} along the CRT isomorphism.
pub fn gt_modular(ext: &FieldDescriptor, p: u64, h: u32, theta: &FieldElement) -> Result<BhSet> {
    let base = gt_base(ext, p, h, theta)?;
    let n = ext.unit_group_order()?;
    let iso = Homomorphism::crt_combine(p, n)?;
    crate::reduction::reduce_set(&base, &iso)
}

/// Gómez–Trujillo with an automatically chosen modulus and primitive element.
pub fn gt_default(p: u64, h: u32) -> Result<BhSet> {
    if h < 3 {
        return Err(Error::BadDegree { h: h as u64, min: 3 });
    }
    let ext = FieldDescriptor::with_default_modulus(p, (h - 1) as usize)?;
    let theta = find_primitive(&ext)?;
    gt_modular(&ext, p, h, &theta)
}

/// A generalized Singer set in both of its natural presentations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingerSet {
    /// Inside the coset group F*_{q^m}/F*_q, elements as canonical unit reps.
    pub quotient: BhSet,
    /// Transported to Z_N, N = (q^m − 1)/(q − 1), via discrete logs mod N.
    pub modular: BhSet,
}

/// Generalized Singer: for β ∈ F_{q^m} of degree e ≥ 2 over F_q, the classes
/// {1̄} ∪ {β + c : c ∈ F_q} form a B_{e−1}[1] set of size q + 1 in
/// F*_{q^m}/F*_q ≅ Z_{(q^m − 1)/(q − 1)}.
pub fn singer_generalized(ext: &FieldDescriptor, q: u64, beta: &FieldElement) -> Result<SingerSet> {
    let (p, k) = prime_power_parts(q)?;
    if ext.p != p || !ext.n.is_multiple_of(k as usize) {
        return Err(Error::InvalidParameter(format!(
            "extension of order {} does not contain F_{q}",
            ext.order()
        )));
    }
    if beta.field != *ext {
        return Err(Error::MixedFields);
    }
    if beta.is_zero() {
        return Err(Error::ZeroElement);
    }
    let m = ext.n / k as usize; // degree of the extension over F_q
    if m < 2 {
        return Err(Error::InvalidParameter("the extension must be proper over F_q".into()));
    }
    // Degree of β over F_q: least e with β^(q^e) = β.
    let mut e = 0usize;
    let mut frob = beta.clone();
    loop {
        frob = frob.pow(q);
        e += 1;
        if frob == *beta {
            break;
        }
        if e > m {
            return Err(Error::InvalidParameter("degree computation did not terminate".into()));
        }
    }
    if e < 2 {
        return Err(Error::DegreeOne);
    }
    let h = (e - 1) as u32;

    let big = ext.unit_group_order()?; // q^m − 1
    let n = big / (q - 1).max(1);
    let theta = find_primitive(ext)?;
    let subgroup_gen = theta.pow(n); // generates F*_q, order q − 1
    let quotient_group = GroupDescriptor::CosetQuotient {
        field: ext.clone(),
        subgroup_gen: subgroup_gen.coeffs.clone(),
    };

    let mut members = vec![ext.one()];
    for c in ext.subfield_elements(q)? {
        members.push(beta.add(&c)?);
    }
    let mut quotient_elements = Vec::with_capacity(members.len());
    let mut modular_elements = Vec::with_capacity(members.len());
    for u in &members {
        let log = discrete_log(&theta, u)?;
        let rep = theta.pow(log % n);
        quotient_elements.push(GroupValue::Unit(rep.coeffs));
        modular_elements.push(GroupValue::Residue(log % n));
    }
    let provenance = |notes: Vec<String>| Provenance {
        construction: "singer".into(),
        q: Some(q),
        h: Some(h as u64),
        modulus: Some(ext.modulus.clone()),
        theta: Some(theta.coeffs.clone()),
        beta: Some(beta.coeffs.clone()),
        notes,
        ..Provenance::default()
    };
    let quotient = BhSet::new(quotient_group, h, 1, quotient_elements, provenance(Vec::new()))?;
    let modular = BhSet::new(
        GroupDescriptor::cyclic(n),
        h,
        1,
        modular_elements,
        provenance(vec![format!(
            "elements are discrete logs to the automatic primitive base, reduced mod {n}"
        )]),
    )?;
    Ok(SingerSet { quotient, modular })
}

/// Generalized Singer over F_{q^m} with automatic modulus and β equal to the
/// automatic primitive element (which always has full degree m).
pub fn singer_default(q: u64, m: u32) -> Result<SingerSet> {
    let (p, k) = prime_power_parts(q)?;
    let ext = FieldDescriptor::with_default_modulus(p, k as usize * m as usize)?;
    let beta = find_primitive(&ext)?;
    singer_generalized(&ext, q, &beta)
}
