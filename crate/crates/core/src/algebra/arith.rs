//! Integer arithmetic helpers: primality, factorization, modular arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest input `factorize` accepts; trial division to √m stays tractable below this.
pub const FACTOR_CAP: u64 = (1u64 << 63) - 1;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % m) as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some((x.rem_euclid(m as i128)) as u64)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the fixed witness set covers all of u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A positive integer together with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    /// (prime, exponent) pairs with primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// All divisors of the value, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for &d in &out {
                let mut pk = 1u64;
                for _ in 0..=e {
                    next.push(d * pk);
                    if pk <= u64::MAX / p {
                        pk *= p;
                    }
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Complete factorization by trial division, capped at 2^63 − 1.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::InvalidParameter("cannot factorize 0".into()));
    }
    if m > FACTOR_CAP {
        return Err(Error::TooLarge { size: m as u128, cap: FACTOR_CAP as u128 });
    }
    let value = m;
    let mut m = m;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d as u128 * d as u128 <= m as u128 {
        if m.is_multiple_of(d) {
            let mut e = 0u32;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { value, factors })
}

/// Writes q = p^k with p prime, or errors if q is not a prime power.
pub fn prime_power_parts(q: u64) -> Result<(u64, u32)> {
    let fact = factorize(q)?;
    match fact.factors.as_slice() {
        [(p, k)] => Ok((*p, *k)),
        _ => Err(Error::InvalidParameter(format!("{q} is not a prime power"))),
    }
}

/// Smallest primitive root modulo the prime p.
pub fn primitive_root_mod(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    if p == 2 {
        return Ok(1);
    }
    let fact = factorize(p - 1)?;
    'cand: for theta in 2..p {
        for q in fact.primes() {
            if mod_pow(theta, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        return Ok(theta);
    }
    unreachable!("every prime has a primitive root")
}

/// Multiplicative order of a modulo m (gcd(a, m) must be 1).
pub fn order_mod(a: u64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::InvalidParameter(format!("{a} is not a unit modulo {m}")));
    }
    // Group order is φ(m); for prime m this is m − 1.
    let phi = factorize(m)?
        .factors
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1));
    let fact = factorize(phi)?;
    let mut e = phi;
    for &(p, k) in &fact.factors {
        for _ in 0..k {
            if e % p == 0 && mod_pow(a, e / p, m) == 1 {
                e /= p;
            } else {
                break;
            }
        }
    }
    Ok(e)
}

/// The unique t in [0, mn) with t ≡ a (mod m) and t ≡ b (mod n), for coprime m, n.
pub fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> Result<u64> {
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    let a = a % m;
    let b = b % n;
    let inv = mod_inverse(m % n, n).expect("coprime moduli have inverses");
    let k = mul_mod((b + n - a % n) % n, inv, n);
    Ok(a + m * k)
}

/// Floor of the h-th root of x.
pub fn nth_root_floor(x: u128, h: u32) -> u128 {
    if h == 0 {
        panic!("zeroth root");
    }
    if h == 1 || x < 2 {
        return x;
    }
    let mut lo = 1u128;
    let mut hi = 1u128 << (128 / h + 1).min(127);
    while hi.checked_pow(h).is_some_and(|v| v <= x) {
        hi <<= 1;
    }
    // Invariant: lo^h ≤ x < hi^h.
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(h) {
            Some(v) if v <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

/// C(n, k), saturating at u128::MAX on overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u128;
    for i in 0..k {
        let Some(next) = num.checked_mul((n - i) as u128) else {
            return u128::MAX;
        };
        num = next / (i + 1) as u128;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_carmichael() {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 7919, 2_147_483_647];
        for p in primes {
            assert!(is_prime(p), "{p} is prime");
        }
        let composites = [0u64, 1, 4, 9, 561, 41041, 825_265, 6_601];
        for c in composites {
            assert!(!is_prime(c), "{c} is composite");
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(342).unwrap().factors, vec![(2, 1), (3, 2), (19, 1)]);
        assert_eq!(factorize(2400).unwrap().factors, vec![(2, 5), (3, 1), (5, 2)]);
        assert_eq!(factorize(3120).unwrap().factors, vec![(2, 4), (3, 1), (5, 1), (13, 1)]);
    }

    #[test]
    fn factorize_product_reconstructs() {
        for m in 1..500u64 {
            let f = factorize(m).unwrap();
            let back = f
                .factors
                .iter()
                .fold(1u64, |acc, &(p, e)| acc * p.pow(e));
            assert_eq!(back, m);
            for (p, _) in f.factors {
                assert!(is_prime(p));
            }
        }
    }

    #[test]
    fn divisors_of_342() {
        let d = factorize(342).unwrap().divisors();
        assert_eq!(d, vec![1, 2, 3, 6, 9, 18, 19, 38, 57, 114, 171, 342]);
    }

    #[test]
    fn prime_power_parts_examples() {
        assert_eq!(prime_power_parts(7).unwrap(), (7, 1));
        assert_eq!(prime_power_parts(9).unwrap(), (3, 2));
        assert_eq!(prime_power_parts(32).unwrap(), (2, 5));
        assert!(prime_power_parts(12).is_err());
        assert!(prime_power_parts(1).is_err());
    }

    #[test]
    fn mod_inverse_round_trip() {
        for m in 2..60u64 {
            for a in 1..m {
                match mod_inverse(a, m) {
                    Some(inv) => assert_eq!(mul_mod(a, inv, m), 1),
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_mod(2).unwrap(), 1);
        assert_eq!(primitive_root_mod(11).unwrap(), 2);
        assert_eq!(primitive_root_mod(7).unwrap(), 3);
        assert!(primitive_root_mod(8).is_err());
    }

    #[test]
    fn order_mod_examples() {
        assert_eq!(order_mod(2, 11).unwrap(), 10);
        assert_eq!(order_mod(1, 11).unwrap(), 1);
        assert_eq!(order_mod(10, 11).unwrap(), 2);
        // Exhaustive cross-check against naive powering.
        for p in [5u64, 11, 13] {
            for a in 1..p {
                let mut e = 1;
                let mut x = a % p;
                while x != 1 {
                    x = mul_mod(x, a, p);
                    e += 1;
                }
                assert_eq!(order_mod(a, p).unwrap(), e);
            }
        }
    }

    #[test]
    fn crt_pair_examples() {
        assert_eq!(crt_pair(0, 10, 0, 11).unwrap(), 0);
        assert_eq!(crt_pair(1, 10, 2, 11).unwrap(), 101);
        assert_eq!(crt_pair(7, 10, 7, 11).unwrap(), 7);
        assert!(crt_pair(1, 4, 1, 6).is_err());
        // Round-trip over the full range.
        for t in 0..110u64 {
            assert_eq!(crt_pair(t % 10, 10, t % 11, 11).unwrap(), t);
        }
    }

    #[test]
    fn nth_root_and_binomial() {
        assert_eq!(nth_root_floor(81, 2), 9);
        assert_eq!(nth_root_floor(80, 2), 8);
        assert_eq!(nth_root_floor(169, 2), 13);
        assert_eq!(nth_root_floor(3125, 5), 5);
        assert_eq!(nth_root_floor(3124, 5), 4);
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(9, 5), 126);
        assert_eq!(binomial(13, 4), 715);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
