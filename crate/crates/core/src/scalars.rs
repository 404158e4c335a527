//! Exact coefficient fields: the rationals and the cyclotomic fields `Q(ζ_r)`.
//!
//! An element of `Q(ζ_r)` is stored as the unique polynomial in `ζ` of degree
//! below `φ(r)` that represents it modulo the cyclotomic polynomial `Φ_r`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer polynomial, coefficients listed from the constant term upward.
pub type IntPoly = Vec<BigInt>;

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `r`-th cyclotomic polynomial, obtained by dividing `x^r - 1` by `Φ_d`
/// for every proper divisor `d` of `r`.
pub fn cyclotomic_polynomial(r: u32) -> IntPoly {
    assert!(r >= 1, "cyclotomic order must be positive");
    (*cyclotomic_shared(r)).clone()
}

fn cyclotomic_shared(r: u32) -> Arc<IntPoly> {
    if let Some(p) = phi_cache().read().expect("poisoned").get(&r) {
        return p.clone();
    }
    let mut num: IntPoly = vec![BigInt::zero(); r as usize + 1];
    num[0] = BigInt::from(-1);
    num[r as usize] = BigInt::one();
    for d in 1..r {
        if r % d == 0 {
            let div = cyclotomic_shared(d);
            num = int_poly_div_exact(&num, &div);
        }
    }
    let out = Arc::new(num);
    phi_cache()
        .write()
        .expect("poisoned")
        .insert(r, out.clone());
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn int_poly_div_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.clone();
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient, i.e. `deg Φ_r`.
pub fn totient(r: u32) -> usize {
    cyclotomic_shared(r).len() - 1
}

/// Element of `Q(ζ_r)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero(order: u32) -> Self {
        CycScalar {
            order,
            coeffs: vec![Rational::zero(); totient(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(order: u32, num: i64, den: i64) -> Self {
        Self::from_rational(order, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = q;
        s
    }

    /// `ζ_r^k`, any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(order, poly)
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Reduces an arbitrary polynomial in `ζ` modulo `Φ_r`.
    pub fn from_poly(order: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_shared(order);
        let d = phi.len() - 1;
        // Φ_r is monic: eliminate leading terms from the top.
        while poly.len() > d {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = poly.len() - d;
            for j in 0..d {
                if !phi[j].is_zero() {
                    poly[base + j] -= &top * Rational::from_integer(phi[j].clone());
                }
            }
        }
        poly.resize(d, Rational::zero());
        CycScalar {
            order,
            coeffs: poly,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Re-expresses a rational element over a different cyclotomic order.
    pub fn embed(&self, order: u32) -> Result<Self> {
        if order == self.order {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) => Ok(Self::from_rational(order, q.clone())),
            None => Err(Error::OrderMismatch(self.order, order)),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.coeffs.len() == 1 {
            return CycScalar {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.order, prod)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_r`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let phi: Vec<Rational> = cyclotomic_shared(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, s, _) = qpoly_ext_gcd(&trim(self.coeffs.clone()), &phi);
        // Φ_r is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let c = g[0].recip();
        Ok(Self::from_poly(
            self.order,
            s.into_iter().map(|x| x * &c).collect(),
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            sq = sq.mul_unchecked(&sq);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn parse(order: u32, s: &str) -> Result<Self> {
        parse_scalar(order, s)
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn qpoly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = a.to_vec();
    let need = q.len() + b.len() - 1;
    if out.len() < need {
        out.resize(need, Rational::zero());
    }
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(out)
}

fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = trim(a.to_vec());
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db && !(rem.len() == 1 && rem[0].is_zero()) {
        let k = rem.len() - 1 - db;
        let c = rem.last().expect("nonempty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem.pop();
        rem = trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (trim(quot), rem)
}

/// Returns `(g, s, t)` with `s·a + t·b = g`.
fn qpoly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    let (mut t0, mut t1) = (vec![Rational::zero()], vec![Rational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub_mul(&s0, &q, &s1);
        let t2 = qpoly_sub_mul(&t0, &q, &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

// Operator impls panic on order mismatch; fallible variants are `try_*`.
impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", fmt_rational(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [Q(z_{})]", self, self.order)
    }
}

/// Parses `3/2`, `z`, `z^2`, `1 - 2*z^3`, `-1/2*z` as an element of `Q(ζ_r)`.
fn parse_scalar(order: u32, s: &str) -> Result<CycScalar> {
    let bad = || Error::Parse(format!("invalid scalar `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut acc = CycScalar::zero(order);
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1i64;
        if let Some(t) = rest.strip_prefix('+') {
            rest = t;
        } else if let Some(t) = rest.strip_prefix('-') {
            sign = -1;
            rest = t;
        } else if !first {
            return Err(bad());
        }
        first = false;
        if rest.is_empty() {
            return Err(bad());
        }
        let bytes = rest.as_bytes();
        let end = (1..bytes.len())
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^')
            .unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef_str, power) = match term.find('z') {
            Some(i) => {
                let coef = term[..i].trim_end_matches('*');
                let exp = &term[i + 1..];
                let k = if exp.is_empty() {
                    1
                } else {
                    exp.strip_prefix('^')
                        .and_then(|e| e.parse::<i64>().ok())
                        .ok_or_else(bad)?
                };
                (coef, Some(k))
            }
            None => (term, None),
        };
        let coef = if coef_str.is_empty() {
            if power.is_none() {
                return Err(bad());
            }
            Rational::one()
        } else {
            Rational::from_str(coef_str).map_err(|_| bad())?
        };
        let coef = coef * Rational::from_integer(BigInt::from(sign));
        let base = match power {
            Some(k) => CycScalar::zeta_pow(order, k),
            None => CycScalar::one(order),
        };
        acc += &base.scale(&coef);
    }
    Ok(acc)
}

/// Integer helper used by index arithmetic throughout the crate.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn z(r: u32, s: &str) -> CycScalar {
        CycScalar::parse(r, s).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ip(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ip(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ip(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi6_divides_x6_minus_1_with_phi1_phi2_phi3() {
        // Multiply back instead of dividing: Φ1·Φ2·Φ3·Φ6 = x^6 - 1.
        let mul = |a: &IntPoly, b: &IntPoly| {
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let prod = [1, 2, 3, 6]
            .iter()
            .map(|&d| cyclotomic_polynomial(d))
            .fold(ip(&[1]), |acc, p| mul(&acc, &p));
        assert_eq!(prod, ip(&[-1, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(z(4, "z") * z(4, "z"), z(4, "-1"));
        assert_eq!(z(3, "z") * z(3, "z^2"), z(3, "1"));
        // (1+ζ)(1+ζ⁴) = 1 + ζ + ζ⁴ + ζ⁵ = 2 + ζ + ζ⁴ in Q(ζ_5).
        assert_eq!(z(5, "1 + z") * z(5, "1 + z^4"), z(5, "2 + z + z^4"));
        assert!(z(4, "z").try_mul(&z(3, "z")).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(z(4, "z").inverse().unwrap(), z(4, "-z"));
        assert_eq!(z(3, "z").inverse().unwrap(), z(3, "z^2"));
        for r in 1..=8 {
            assert_eq!(
                CycScalar::from_int(r, 2).inverse().unwrap(),
                CycScalar::from_ratio(r, 1, 2)
            );
        }
        assert_eq!(CycScalar::zero(5).inverse(), Err(Error::DivisionByZero));
        let a = z(7, "3 - z^2 + 5/2*z^5");
        assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn root_of_unity_sums() {
        for r in 1..=12u32 {
            assert!(CycScalar::zeta_pow(r, r as i64).is_one());
            for m in 0..=(2 * r as i64) {
                let mut s = CycScalar::zero(r);
                for k in 0..r as i64 {
                    s += &CycScalar::zeta_pow(r, k * m);
                }
                let expect = if m % r as i64 == 0 { r as i64 } else { 0 };
                assert_eq!(s, CycScalar::from_int(r, expect), "r={r} m={m}");
            }
        }
    }

    #[test]
    fn rational_canonical_form() {
        let q = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(z(1, "6/4"), CycScalar::from_ratio(1, 3, 2));
    }

    #[test]
    fn parse_and_display() {
        let a = z(8, "1 - 2*z^3 + 3/2*z");
        assert_eq!(a.to_string(), "1 + 3/2*z - 2*z^3");
        assert_eq!(z(8, &a.to_string()), a);
        assert_eq!(z(5, "-z").to_string(), "-z");
        assert_eq!(CycScalar::zero(5).to_string(), "0");
        assert!(CycScalar::parse(5, "2 +").is_err());
        assert!(CycScalar::parse(5, "y").is_err());
        assert!(CycScalar::parse(5, "").is_err());
    }

    #[test]
    fn negative_powers() {
        let x = z(5, "z");
        assert_eq!(x.pow(-1).unwrap(), z(5, "z^4"));
        assert_eq!(x.pow(5).unwrap(), CycScalar::one(5));
    }
}
