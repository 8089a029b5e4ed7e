//! Recovery of field presentations: given a set of residues and a claimed
//! primitive element, scan the monic irreducible moduli of the right degree
//! for a presentation under which the construction reproduces the set.
//!
//! Published sets often omit the modulus they were computed under; this
//! module answers "which modulus makes these numbers come out".

use serde::Serialize;

use crate::algebra::arith::{crt_pair, factorize, is_prime, prime_power_parts};
use crate::algebra::{poly, FieldDescriptor, FieldElement};
use crate::constructions::bose_chowla_scan;
use crate::error::{Error, Result};

/// Largest ring size p^n the presentation scan will attempt.
pub const MATCH_CAP: u64 = 1 << 13;

#[derive(Debug, Clone, Serialize)]
pub struct MatchResult {
    /// First presentation, in scan-index order, that reproduces the target.
    pub found: Option<FieldDescriptor>,
    /// Irreducible moduli examined.
    pub tried: u64,
    /// Moduli under which the candidate element was primitive.
    pub with_primitive_theta: u64,
}

/// Scans presentations of F_{q^h} for one under which `theta` is primitive
/// and its Bose–Chowla set in Z_{q^h − 1} equals `target`.
pub fn match_representation(q: u64, h: u32, target: &[u64], theta: &[u64]) -> Result<MatchResult> {
    let (p, k) = prime_power_parts(q)?;
    if h < 2 {
        return Err(Error::BadDegree { h: h as u64, min: 2 });
    }
    let n = k as usize * h as usize;
    scan_presentations(p, n, target, theta, q as usize, |field, th| {
        bose_chowla_scan(field, q, h, th)
    })
}

/// Scans presentations of F_{p^(h−1)} for one under which `theta` is
/// primitive and its Gómez–Trujillo set in Z_{p^h − p} equals `target`.
pub fn match_representation_gt(p: u64, h: u32, target: &[u64], theta: &[u64]) -> Result<MatchResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    if h < 3 {
        return Err(Error::BadDegree { h: h as u64, min: 3 });
    }
    scan_presentations(p, h as usize - 1, target, theta, p as usize, |field, th| {
        gt_scan(p, field, th)
    })
}

fn scan_presentations<F>(
    p: u64,
    n: usize,
    target: &[u64],
    theta: &[u64],
    expected_len: usize,
    build: F,
) -> Result<MatchResult>
where
    F: Fn(&FieldDescriptor, &FieldElement) -> Result<Vec<u64>>,
{
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > MATCH_CAP as u128 {
        return Err(Error::TooLarge { size, cap: MATCH_CAP as u128 });
    }
    let size = size as u64;
    let mut result = MatchResult { found: None, tried: 0, with_primitive_theta: 0 };
    let mut want = target.to_vec();
    want.sort_unstable();
    want.dedup();
    if want.len() != expected_len {
        return Ok(result);
    }
    let group_order = size - 1;
    let fact = factorize(group_order)?;
    for t in 0..size {
        let mut f = poly::from_index(t as u128, p, n);
        f.push(1);
        if !poly::is_irreducible(&f, p) {
            continue;
        }
        result.tried += 1;
        let field = FieldDescriptor::quotient_ring(p, n, f)?;
        let th = field.element(theta);
        if th.is_zero() || th.multiplicative_order(&fact)? != group_order {
            continue;
        }
        result.with_primitive_theta += 1;
        if build(&field, &th)? == want {
            result.found = Some(field);
            break;
        }
    }
    Ok(result)
}

/// Walks successive powers of theta, collecting the CRT image of (a, e)
/// whenever theta^e − theta is the constant a; this recovers the pairs
/// (a, log(theta + a)) without building a discrete-log table.
fn gt_scan(p: u64, field: &FieldDescriptor, theta: &FieldElement) -> Result<Vec<u64>> {
    let go = field.unit_group_order()?;
    let mut out = Vec::with_capacity(p as usize);
    let mut power = theta.clone();
    for e in 1..=go {
        let diff = power.sub(theta)?;
        if diff.coeffs[1..].iter().all(|&c| c == 0) {
            out.push(crt_pair(diff.coeffs[0], p, e % go, go)?);
        }
        if e < go {
            power = power.mul(theta)?;
        }
    }
    out.sort_unstable();
    Ok(out)
}
