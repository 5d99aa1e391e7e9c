//! Cyclotomic polynomials and reduction modulo them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of Φ_n, lowest degree first. Monic with integer coefficients.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n > 0, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_monic_div(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, which is also deg Φ_n.
pub fn totient(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Reduces an integer polynomial modulo Φ_n in place; returns the φ(n) low coefficients.
pub fn reduce_mod_phi(mut poly: Vec<BigInt>, n: u32) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if poly.len() <= deg {
        poly.resize(deg, BigInt::zero());
        return poly;
    }
    for k in (deg..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[k]);
        let base = k - deg;
        for (i, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                poly[base + i] -= &c * p;
            }
        }
    }
    poly.truncate(deg);
    poly
}

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
pub(crate) type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub_scaled(a: &RatPoly, b: &RatPoly, c: &BigRational, shift: usize) -> RatPoly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        out[i + shift] -= c * bi;
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = a.clone();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        rem = poly_sub_scaled(&rem, b, &c, shift);
        quot[shift] = c;
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, if gcd(a, m) = 1.
pub(crate) fn poly_inverse_mod(a: &RatPoly, m: &RatPoly) -> Option<RatPoly> {
    let mut a = a.clone();
    trim(&mut a);
    if a.is_empty() {
        return None;
    }
    // invariant: s_i * a ≡ r_i (mod m)
    let (mut r0, mut r1) = (m.clone(), poly_divrem(&a, m).1);
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let mut s2 = s0.clone();
        if s2.len() < qs.len() {
            s2.resize(qs.len(), BigRational::zero());
        }
        for (i, c) in qs.iter().enumerate() {
            s2[i] -= c;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: RatPoly = s0.into_iter().map(|x| x / &c).collect();
    inv = poly_divrem(&inv, m).1;
    Some(inv)
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}
