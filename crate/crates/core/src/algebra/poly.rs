//! Dense polynomial arithmetic over the prime field F_p.
//!
//! Coefficient vectors are little-endian: index i holds the coefficient of x^i,
//! so x² + x + 2 over F_3 is [2, 1, 1]. The zero polynomial is the empty vector.

use crate::algebra::arith::{mod_inverse, mul_mod};

/// Drop trailing zero coefficients.
pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Degree, or None for the zero polynomial.
pub fn deg(f: &[u64]) -> Option<usize> {
    let f = strip(f);
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

fn strip(f: &[u64]) -> &[u64] {
    let mut n = f.len();
    while n > 0 && f[n - 1] == 0 {
        n -= 1;
    }
    &f[..n]
}

pub fn is_monic(f: &[u64]) -> bool {
    strip(f).last() == Some(&1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, c) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *c = (x + y) % p;
    }
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, c) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *c = (x + p - y % p) % p;
    }
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let a = strip(a);
    let b = strip(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    trim(acc.into_iter().map(|c| c as u64).collect())
}

pub fn scalar_mul(f: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(f.iter().map(|&x| mul_mod(x, c % p, p)).collect())
}

/// Quotient and remainder of a by m (m nonzero).
pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let m = strip(m);
    assert!(!m.is_empty(), "division by the zero polynomial");
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm], p).expect("leading coefficient is a unit mod prime p");
    let mut r: Vec<u64> = strip(a).to_vec();
    if r.len() <= dm && !(dm == 0) {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len().saturating_sub(dm)];
    while r.len() > dm || (dm == 0 && !r.is_empty()) {
        let dr = r.len() - 1;
        let c = mul_mod(r[dr], lead_inv, p);
        q[dr - dm] = c;
        for i in 0..=dm {
            let t = mul_mod(c, m[i], p);
            r[dr - dm + i] = (r[dr - dm + i] + p - t) % p;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem(a, m, p).1
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = strip(a).to_vec();
    let mut b = strip(b).to_vec();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(a, p)
}

fn make_monic(f: Vec<u64>, p: u64) -> Vec<u64> {
    match f.last() {
        None | Some(&1) => f,
        Some(&c) => {
            let inv = mod_inverse(c, p).expect("unit leading coefficient");
            scalar_mul(&f, inv, p)
        }
    }
}

/// Inverse of f modulo m, if gcd(f, m) = 1.
pub fn inverse_mod(f: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // Extended Euclid on (m, f), tracking only the f-side coefficient.
    let (mut r0, mut r1) = (strip(m).to_vec(), rem(f, m, p));
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if deg(&r0) != Some(0) {
        return None;
    }
    let lead_inv = mod_inverse(r0[0], p).expect("unit gcd");
    Some(rem(&scalar_mul(&t0, lead_inv, p), m, p))
}

/// f^e modulo m.
pub fn pow_mod(f: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = rem(f, m, p);
    let mut acc = rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
        base = rem(&mul(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

/// Evaluate f at x (Horner).
pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mul_mod(acc, x % p, p) + c % p) % p;
    }
    acc
}

/// Irreducibility over F_p: f of degree n is irreducible iff it shares no factor
/// with x^(p^k) − x for any k ≤ n/2 (that product covers every irreducible of
/// degree dividing k, and a proper factor of f would have degree ≤ n/2).
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match deg(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut z = x.clone(); // z = x^(p^k) mod f, built incrementally
    for _ in 1..=n / 2 {
        z = pow_mod(&z, p, f, p);
        let g = gcd(f, &sub(&z, &x, p), p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Coefficient vector of the polynomial with scan index t: base-p digits of t,
/// constant term first (so the constant term varies fastest as t increases).
pub fn from_index(mut t: u128, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for c in out.iter_mut() {
        *c = (t % p as u128) as u64;
        t /= p as u128;
    }
    out
}

/// Scan index of a coefficient vector (inverse of `from_index`).
pub fn to_index(f: &[u64], p: u64) -> u64 {
    let mut t = 0u64;
    for &c in f.iter().rev() {
        t = t * p + c;
    }
    t
}

/// The lexicographically smallest monic irreducible of degree n over F_p,
/// scanning coefficient vectors in ascending numeric order with the constant
/// term varying fastest. Deterministic across runs.
pub fn find_irreducible(p: u64, n: usize) -> Vec<u64> {
    assert!(n >= 1, "degree must be positive");
    let mut t = 0u128;
    loop {
        let mut f = from_index(t, p, n);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        t += 1;
    }
}

/// Human-readable rendering, highest-degree term first: [2,1,1] → "x^2 + x + 2".
pub fn format_poly(f: &[u64]) -> String {
    let f = strip(f);
    if f.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        parts.push(part);
    }
    parts.join(" + ")
}
