use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::phi::{self, RatPoly};
use super::CycloError;

/// An exact element of Q(ζ_N).
///
/// Stored as the residue of a rational polynomial in ζ_N modulo Φ_N, i.e. a
/// vector of φ(N) rationals. Internally the rationals share one positive
/// denominator coprime to the numerators, which makes the representation
/// unique for a fixed conductor.
///
/// `E(n)` denotes the residue class of `x` at conductor `n`; embedding into a
/// multiple `M` of `n` sends it to `ζ_M^(M/n)`, so these roots are compatible
/// across conductors.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self {
            conductor: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let (n, d) = q.into_raw();
        Self::from_parts(1, vec![n], d)
    }

    /// ζ_order^exponent under the global root convention.
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        assert!(order > 0, "root of unity of order 0");
        let k = exponent.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        Self {
            conductor: order,
            num: phi::reduce_mod_phi(poly, order),
            den: BigInt::one(),
        }
    }

    /// Builds a value from coefficients in the power basis 1, ζ_N, ζ_N², …
    /// Any number of coefficients is accepted; the result is reduced modulo Φ_N.
    pub fn from_coeffs(conductor: u32, coeffs: &[BigRational]) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let num = phi::reduce_mod_phi(num, conductor);
        Self::from_parts(conductor, num, den)
    }

    fn from_parts(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = Self {
            conductor,
            num,
            den,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "zero denominator");
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the basis 1, ζ_N, …, ζ_N^(φ(N)-1).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        // the rationals are exactly the constant residues
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Same value represented at conductor `m`, which must be a multiple of the current one.
    pub fn embed(&self, m: u32) -> Result<Self, CycloError> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return Err(CycloError::NotAMultiple {
                from: self.conductor,
                to: m,
            });
        }
        Ok(self.lift(m))
    }

    pub(crate) fn lift(&self, m: u32) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self {
            conductor: m,
            num: phi::reduce_mod_phi(poly, m),
            den: self.den.clone(),
        }
    }

    fn common<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.conductor == b.conductor {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let n = phi::lcm(a.conductor, b.conductor);
        let at = |x: &'a Self| {
            if x.conductor == n {
                Cow::Borrowed(x)
            } else {
                Cow::Owned(x.lift(n))
            }
        };
        (at(a), at(b))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = Self::common(self, other);
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + sign(y)).collect();
            return Self::from_parts(a.conductor, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + sign(y) * &a.den)
            .collect();
        Self::from_parts(a.conductor, num, &a.den * &b.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        if a.is_zero() || b.is_zero() {
            return Self::zero().lift(a.conductor);
        }
        let mut prod = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = phi::reduce_mod_phi(prod, a.conductor);
        Self::from_parts(a.conductor, num, &a.den * &b.den)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()).lift(self.conductor));
        }
        let a: RatPoly = self.coeffs();
        let m: RatPoly = phi::cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let inv = phi::poly_inverse_mod(&a, &m).ok_or(CycloError::DivisionByZero)?;
        Ok(Self::from_coeffs(self.conductor, &inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self, CycloError> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one().lift(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Image under the Galois automorphism ζ_N ↦ ζ_N^t, gcd(t, N) = 1.
    pub fn galois(&self, t: i64) -> Self {
        let n = self.conductor as i64;
        let mut poly = vec![BigInt::zero(); self.conductor as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = ((i as i64) * t).rem_euclid(n) as usize;
            poly[e] += c;
        }
        Self::from_parts(
            self.conductor,
            phi::reduce_mod_phi(poly, self.conductor),
            self.den.clone(),
        )
    }

    /// Complex conjugate (the automorphism ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// If the value is ζ_r^k for the canonical primitive r-th root, returns
    /// `(r, k)` with r the multiplicative order and 0 ≤ k < r.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        if let Some(q) = self.as_rational() {
            return if q.is_one() {
                Some((1, 0))
            } else if q == -BigRational::one() {
                Some((2, 1))
            } else {
                None
            };
        }
        // roots of unity in Q(ζ_N) are exactly the lcm(2, N)-th roots
        // roots of unity are algebraic integers and the power basis is integral
        if !self.den.is_one() {
            return None;
        }
        let m = phi::lcm(2, self.conductor);
        let lifted = self.lift(m);
        (0..m)
            .find(|&k| Self::root_of_unity(m, k as i64) == lifted)
            .map(|k| {
                let g = k.gcd(&m);
                let r = m / g;
                (r, k / g)
            })
    }

    /// Reduces to the smallest conductor dividing the current one that still
    /// holds the value. Nothing depends on this.
    pub fn minimize(&self) -> Self {
        let n = self.conductor;
        let mut best = self.clone();
        for d in 1..n {
            if !n.is_multiple_of(d) || d >= best.conductor || !best.conductor.is_multiple_of(d) {
                continue;
            }
            // the value lies in Q(ζ_d) iff it is fixed by every t ≡ 1 (mod d)
            let fixed = (0..n as i64)
                .filter(|t| t.gcd(&(n as i64)) == 1 && t % d as i64 == 1 % d as i64)
                .all(|t| self.galois(t) == *self);
            if fixed {
                if let Some(v) = descend(self, d) {
                    best = v;
                }
            }
        }
        best
    }

    pub(crate) fn key(&self) -> (u32, &[BigInt], &BigInt) {
        (self.conductor, &self.num, &self.den)
    }

    /// Renders the value in the expression grammar, e.g. `1/2*E(5)^2-E(5)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let abs = q.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let root = match i {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{}", self.conductor, i),
            };
            if root.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&root);
            } else {
                out.push_str(&format!("{abs}*{root}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Expresses `x` at conductor `d | N` by solving against the power basis of ζ_d.
fn descend(x: &CyclotomicNumber, d: u32) -> Option<CyclotomicNumber> {
    let phi_d = phi::totient(d);
    // columns: images of ζ_d^j (j < φ(d)) at conductor N
    let cols: Vec<Vec<BigRational>> = (0..phi_d)
        .map(|j| {
            CyclotomicNumber::root_of_unity(d, j as i64)
                .lift(x.conductor)
                .coeffs()
        })
        .collect();
    let rows = phi::totient(x.conductor);
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(x.coeffs()[r].clone());
            row
        })
        .collect();
    let sol = crate::matgrp::linalg::solve_augmented(&mut aug, phi_d)?;
    let v = CyclotomicNumber::from_coeffs(d, &sol);
    (v.lift(x.conductor) == *x).then_some(v)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for CyclotomicNumber {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                $body(self, rhs)
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, rhs)
            }
        }
        impl<'a> $trait<CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CyclotomicNumber, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CyclotomicNumber, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CyclotomicNumber, b| a.mul_impl(b));
forward_binop!(Div, div, |a: &CyclotomicNumber, b| a
    .checked_div(b)
    .expect("division by zero in cyclotomic field"));

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
