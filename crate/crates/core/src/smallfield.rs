//! Table-backed arithmetic in a small base field F_q, q = p^e <= 256.
//!
//! Elements are named by an index in `[0, q)` whose base-p digits are the
//! coefficients (least significant first) of the element as a polynomial
//! over F_p modulo the defining polynomial. Index 0 is zero, index 1 is one.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly;

pub const MAX_FIELD_ORDER: usize = 256;

/// Construction parameters for a [`SmallField`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Monic degree-e polynomial over F_p, least significant first.
    /// Ignored when `e == 1`.
    pub base_poly: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            e: 1,
            base_poly: vec![0, 1],
        }
    }

    pub fn new(p: u32, e: u32, base_poly: Vec<u32>) -> Self {
        FieldSpec { p, e, base_poly }
    }

    /// p^e, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.e)
    }
}

/// An element of F_q by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub const fn new(index: u8) -> Self {
        Fq(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub struct SmallField {
    p: u32,
    e: u32,
    q: usize,
    base_poly: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for SmallField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmallField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("base_poly", &self.base_poly)
            .finish()
    }
}

impl PartialEq for SmallField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.base_poly == other.base_poly
    }
}

impl Eq for SmallField {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl SmallField {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p as usize > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge {
                p,
                e: 1,
                max: MAX_FIELD_ORDER as u64,
            });
        }
        let q = p as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as u8;
                mul[a * q + b] = ((a * b) % q) as u8;
            }
        }
        Ok(Self::from_tables(p, 1, vec![0, 1], add, mul))
    }

    pub fn new(spec: &FieldSpec) -> Result<Self> {
        if !is_prime(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        if spec.e == 0 {
            return Err(Error::MalformedPolynomial(
                "extension degree e must be at least 1".into(),
            ));
        }
        let too_large = Error::FieldTooLarge {
            p: spec.p,
            e: spec.e,
            max: MAX_FIELD_ORDER as u64,
        };
        let q = match spec.order() {
            Some(q) if q <= MAX_FIELD_ORDER as u64 => q as usize,
            _ => return Err(too_large),
        };
        if spec.e == 1 {
            return Self::prime(spec.p);
        }

        let prime = Self::prime(spec.p)?;
        let e = spec.e as usize;
        if spec.base_poly.len() != e + 1 {
            return Err(Error::MalformedPolynomial(format!(
                "base_poly must have {} coefficients for e = {}, got {}",
                e + 1,
                e,
                spec.base_poly.len()
            )));
        }
        if let Some(&c) = spec.base_poly.iter().find(|&&c| c >= spec.p) {
            return Err(Error::MalformedPolynomial(format!(
                "coefficient {c} is not an element of F_{}",
                spec.p
            )));
        }
        if spec.base_poly[e] != 1 {
            return Err(Error::MalformedPolynomial("base_poly must be monic".into()));
        }
        let modulus: Vec<Fq> = spec.base_poly.iter().map(|&c| Fq(c as u8)).collect();
        if let Some(factor) = poly::find_factor(&prime, &modulus) {
            return Err(Error::Reducible {
                factor: factor.iter().map(|c| c.index() as u32).collect(),
            });
        }

        let p = spec.p as usize;
        let digits = |mut x: usize| -> Vec<Fq> {
            let mut d = Vec::with_capacity(e);
            for _ in 0..e {
                d.push(Fq((x % p) as u8));
                x /= p;
            }
            d
        };
        let undigits = |d: &[Fq]| -> usize { d.iter().rev().fold(0, |acc, c| acc * p + c.index()) };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<Fq> = da.iter().zip(&db).map(|(&x, &y)| prime.add(x, y)).collect();
                add[a * q + b] = undigits(&sum) as u8;
                let prod = poly::rem_monic(&prime, &poly::mul(&prime, &da, &db), &modulus);
                mul[a * q + b] = undigits(&prod) as u8;
            }
        }
        Ok(Self::from_tables(
            spec.p,
            spec.e,
            spec.base_poly.clone(),
            add,
            mul,
        ))
    }

    fn from_tables(p: u32, e: u32, base_poly: Vec<u32>, add: Vec<u8>, mul: Vec<u8>) -> Self {
        let q = (p as usize).pow(e);
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        SmallField {
            p,
            e,
            q,
            base_poly,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn base_poly(&self) -> &[u32] {
        &self.base_poly
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::new(self.p, self.e, self.base_poly.clone())
    }

    /// Element with the given index, if it is in range.
    pub fn element(&self, index: usize) -> Option<Fq> {
        (index < self.q).then_some(Fq(index as u8))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.q).map(|i| Fq(i as u8))
    }

    /// Base-p digits of `a`, least significant first.
    pub fn digits(&self, a: Fq) -> Vec<u32> {
        let mut x = a.index() as u32;
        (0..self.e)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.index() * self.q + b.index()])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fq(self.inv[a.index()]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^n by square-and-multiply; `pow(0, 0) == 1`.
    pub fn pow(&self, a: Fq, mut n: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> SmallField {
        SmallField::new(&FieldSpec::new(3, 2, vec![1, 0, 1])).unwrap()
    }

    #[test]
    fn binary_field_identities() {
        let f2 = SmallField::new(&FieldSpec::prime(2)).unwrap();
        assert_eq!(f2.mul(Fq::ONE, Fq::ONE), Fq::ONE);
        assert_eq!(f2.add(Fq::ONE, Fq::ONE), Fq::ZERO);
        assert_eq!(f2.pow(Fq::ONE, 17), Fq::ONE);
    }

    #[test]
    fn f9_y_squared_is_minus_one() {
        let f = f9();
        // y has digits (0, 1) -> index 3
        let y = Fq::new(3);
        assert_eq!(f.mul(y, y), Fq::new(2));
        assert_eq!(f.pow(y, 4), Fq::ONE);
        assert_ne!(f.pow(y, 2), Fq::ONE);
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        let f = f9();
        assert_eq!(f.pow(Fq::ZERO, 0), Fq::ONE);
        assert_eq!(f.pow(Fq::ZERO, 3), Fq::ZERO);
    }

    #[test]
    fn negation_is_digitwise() {
        let f = f9();
        for a in f.elements() {
            let expect: Vec<u32> = f.digits(a).iter().map(|&d| (2 * d) % 3).collect();
            assert_eq!(f.digits(f.neg(a)), expect);
        }
    }

    #[test]
    fn reducible_base_poly_reports_factor() {
        // y^2 + 1 = (y + 1)^2 over F_2
        let err = SmallField::new(&FieldSpec::new(2, 2, vec![1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::Reducible { factor: vec![1, 1] });
        // y^2 + 2 over F_3 has root 1
        let err = SmallField::new(&FieldSpec::new(3, 2, vec![2, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::Reducible { .. }));
    }

    #[test]
    fn rejects_composite_and_oversized() {
        assert_eq!(
            SmallField::new(&FieldSpec::prime(4)).unwrap_err(),
            Error::NotPrime(4)
        );
        assert_eq!(
            SmallField::new(&FieldSpec::prime(1)).unwrap_err(),
            Error::NotPrime(1)
        );
        assert!(matches!(
            SmallField::new(&FieldSpec::new(2, 9, vec![1; 10])),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            SmallField::new(&FieldSpec::prime(257)),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_malformed_base_poly() {
        assert!(matches!(
            SmallField::new(&FieldSpec::new(2, 2, vec![1, 1])),
            Err(Error::MalformedPolynomial(_))
        ));
        assert!(matches!(
            SmallField::new(&FieldSpec::new(2, 2, vec![1, 1, 0])),
            Err(Error::MalformedPolynomial(_))
        ));
        assert!(matches!(
            SmallField::new(&FieldSpec::new(3, 2, vec![1, 5, 1])),
            Err(Error::MalformedPolynomial(_))
        ));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(f9().inv(Fq::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf256_builds() {
        // x^8 + x^4 + x^3 + x + 1
        let f = SmallField::new(&FieldSpec::new(2, 8, vec![1, 1, 0, 1, 1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.order(), 256);
        assert_eq!(f.mul(Fq::new(0x53), Fq::new(0xca)), Fq::ONE);
    }
}
