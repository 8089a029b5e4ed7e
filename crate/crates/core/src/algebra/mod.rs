//! Finite fields F_{p^n} — and the quotient rings F_p[x]/⟨m(x)⟩ behind the
//! Derksen construction — with primitivity, order, and discrete-log services.

pub mod arith;
pub mod dlog;
pub mod poly;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use arith::{factorize, is_prime, Factorization};

/// Elements of rings larger than this are never enumerated exhaustively.
pub const ENUM_CAP: u64 = 1 << 20;

/// A quotient ring F_p[x]/⟨modulus⟩. With an irreducible modulus this is the
/// field F_{p^n}; `quotient_ring` also admits reducible moduli, whose unit
/// groups host Derksen sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldDescriptor")]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: usize,
    /// Monic, length n + 1, coefficients in [0, p), constant term first.
    pub modulus: Vec<u64>,
}

#[derive(Deserialize)]
struct RawFieldDescriptor {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

impl TryFrom<RawFieldDescriptor> for FieldDescriptor {
    type Error = Error;
    fn try_from(raw: RawFieldDescriptor) -> Result<Self> {
        FieldDescriptor::quotient_ring(raw.p, raw.n, raw.modulus)
    }
}

impl FieldDescriptor {
    /// The prime field F_p, with modulus x.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, vec![0, 1])
    }

    /// A field F_{p^n}; the modulus must be irreducible.
    pub fn new(p: u64, n: usize, modulus: Vec<u64>) -> Result<Self> {
        let field = Self::quotient_ring(p, n, modulus)?;
        if !poly::is_irreducible(&field.modulus, p) {
            return Err(Error::NotIrreducible { p, modulus: field.modulus });
        }
        Ok(field)
    }

    /// A quotient ring F_p[x]/⟨modulus⟩; the modulus may be reducible.
    pub fn quotient_ring(p: u64, n: usize, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        if n == 0 {
            return Err(Error::InvalidParameter("degree must be at least 1".into()));
        }
        if modulus.len() != n + 1 || modulus.last() != Some(&1) {
            return Err(Error::InvalidParameter(format!(
                "modulus must be monic of degree {n} with {} coefficients",
                n + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("modulus coefficients must lie in [0, p)".into()));
        }
        if n == 1 && modulus != [0, 1] {
            return Err(Error::InvalidParameter("degree-1 modulus must be x".into()));
        }
        if (p as u128).checked_pow(n as u32).is_none_or(|o| o > u64::MAX as u128) {
            return Err(Error::InvalidParameter("ring order p^n exceeds u64".into()));
        }
        Ok(FieldDescriptor { p, n, modulus })
    }

    /// F_{p^n} under the deterministic default modulus (`find_irreducible`).
    pub fn with_default_modulus(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        Self::new(p, n, poly::find_irreducible(p, n))
    }

    /// Ring order p^n.
    pub fn order(&self) -> u64 {
        (self.p as u128).pow(self.n as u32) as u64
    }

    pub fn is_field(&self) -> bool {
        poly::is_irreducible(&self.modulus, self.p)
    }

    /// Order of the unit group: p^n − 1 for a field, otherwise counted directly.
    pub fn unit_group_order(&self) -> Result<u64> {
        if self.is_field() {
            return Ok(self.order() - 1);
        }
        let size = self.order();
        if size > ENUM_CAP {
            return Err(Error::TooLarge { size: size as u128, cap: ENUM_CAP as u128 });
        }
        let mut count = 0u64;
        for t in 1..size {
            let f = poly::from_index(t as u128, self.p, self.n);
            if poly::deg(&poly::gcd(&f, &self.modulus, self.p)) == Some(0) {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// The constant c, reduced mod p.
    pub fn constant(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.p;
        FieldElement { field: self.clone(), coeffs }
    }

    /// Canonical element from arbitrary coefficients (reduced mod p and modulus).
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        let r = poly::rem(&reduced, &self.modulus, self.p);
        FieldElement { field: self.clone(), coeffs: pad(r, self.n) }
    }

    /// Element with scan index t (base-p digits, constant term first).
    pub fn from_index(&self, t: u64) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: poly::from_index(t as u128, self.p, self.n) }
    }

    pub fn index_of(&self, e: &FieldElement) -> u64 {
        poly::to_index(&e.coeffs, self.p)
    }

    /// All p^n ring elements in scan order.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        let size = self.order();
        if size > ENUM_CAP {
            return Err(Error::TooLarge { size: size as u128, cap: ENUM_CAP as u128 });
        }
        Ok((0..size).map(|t| self.from_index(t)).collect())
    }

    /// The subfield F_q inside F_{p^n}, where q = p^k and k | n: the fixed
    /// field of the q-power Frobenius. For q = p these are the constants.
    pub fn subfield_elements(&self, q: u64) -> Result<Vec<FieldElement>> {
        let k = prime_power_exponent(self.p, q).ok_or_else(|| {
            Error::InvalidParameter(format!("q = {q} is not a power of the characteristic {}", self.p))
        })?;
        if !self.n.is_multiple_of(k) {
            return Err(Error::InvalidParameter(format!(
                "F_{q} is not a subfield of F_{}^{} (k does not divide n)",
                self.p, self.n
            )));
        }
        if k == 1 {
            return Ok((0..self.p).map(|c| self.constant(c)).collect());
        }
        let mut out = Vec::with_capacity(q as usize);
        for z in self.elements()? {
            if z.pow(q) == z {
                out.push(z);
            }
        }
        debug_assert_eq!(out.len() as u64, q);
        Ok(out)
    }
}

fn pad(mut v: Vec<u64>, n: usize) -> Vec<u64> {
    v.resize(n, 0);
    v
}

/// Writes q = p^k and returns k, if q is a power of p.
pub fn prime_power_exponent(p: u64, q: u64) -> Option<usize> {
    let mut k = 0usize;
    let mut v = 1u64;
    while v < q {
        v = v.checked_mul(p)?;
        k += 1;
    }
    (v == q && k >= 1).then_some(k)
}

/// An element of a FieldDescriptor, stored as coefficients of length n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub field: FieldDescriptor,
    pub coeffs: Vec<u64>,
}

impl FieldElement {
    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let s = poly::add(&self.coeffs, &other.coeffs, self.field.p);
        Ok(FieldElement { field: self.field.clone(), coeffs: pad(s, self.field.n) })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let s = poly::sub(&self.coeffs, &other.coeffs, self.field.p);
        Ok(FieldElement { field: self.field.clone(), coeffs: pad(s, self.field.n) })
    }

    pub fn neg(&self) -> FieldElement {
        let s = poly::sub(&[], &self.coeffs, self.field.p);
        FieldElement { field: self.field.clone(), coeffs: pad(s, self.field.n) }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let prod = poly::rem(&poly::mul(&self.coeffs, &other.coeffs, self.field.p), &self.field.modulus, self.field.p);
        Ok(FieldElement { field: self.field.clone(), coeffs: pad(prod, self.field.n) })
    }

    /// Multiplicative inverse; errors on zero and on non-units of quotient rings.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match poly::inverse_mod(&self.coeffs, &self.field.modulus, self.field.p) {
            Some(inv) => Ok(FieldElement { field: self.field.clone(), coeffs: pad(inv, self.field.n) }),
            None => Err(Error::InvalidParameter("element is not a unit of the quotient ring".into())),
        }
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let r = poly::pow_mod(&self.coeffs, e, &self.field.modulus, self.field.p);
        FieldElement { field: self.field.clone(), coeffs: pad(r, self.field.n) }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first() == Some(&1) && self.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// Least e ≥ 1 with self^e = 1, computed by dividing prime factors out of
    /// the unit-group order carried by `fact`.
    pub fn multiplicative_order(&self, fact: &Factorization) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut e = fact.value;
        for &(q, k) in &fact.factors {
            for _ in 0..k {
                if e.is_multiple_of(q) && self.pow(e / q).is_one() {
                    e /= q;
                } else {
                    break;
                }
            }
        }
        Ok(e)
    }
}

type PrimitiveCache = Mutex<HashMap<(u64, Vec<u64>), Vec<u64>>>;

static PRIMITIVE_CACHE: OnceLock<PrimitiveCache> = OnceLock::new();

/// The first element of multiplicative order p^n − 1 in ascending scan order.
pub fn find_primitive(field: &FieldDescriptor) -> Result<FieldElement> {
    if !field.is_field() {
        return Err(Error::InvalidParameter("primitive elements require an irreducible modulus".into()));
    }
    let cache = PRIMITIVE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (field.p, field.modulus.clone());
    if let Some(coeffs) = cache.lock().unwrap().get(&key) {
        return Ok(FieldElement { field: field.clone(), coeffs: coeffs.clone() });
    }
    let m = field.order() - 1;
    let fact = factorize(m)?;
    for t in 1..field.order() {
        let cand = field.from_index(t);
        if cand.multiplicative_order(&fact)? == m {
            cache.lock().unwrap().insert(key, cand.coeffs.clone());
            return Ok(cand);
        }
    }
    unreachable!("finite fields have primitive elements")
}
