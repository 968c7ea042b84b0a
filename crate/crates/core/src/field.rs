//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// A prime field with Barrett reduction for products of two residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    // floor(2^64 / p)
    mu: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(AlgebraError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let mu = (u128::from(u64::MAX) + 1) / u128::from(p);
        Ok(Self { p: p as u32, mu: mu as u64 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces `x < p^2` modulo `p`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        let q = ((u128::from(x) * u128::from(self.mu)) >> 64) as u64;
        let mut r = x - q * u64::from(self.p);
        // q underestimates floor(x/p) by at most one
        if r >= u64::from(self.p) {
            r -= u64::from(self.p);
        }
        r as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) * u64::from(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(a));
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(i64::from(self.p)) as u32)
    }

    pub fn from_bigint(&self, n: &BigInt) -> u32 {
        n.mod_floor(&BigInt::from(self.p)).to_u32().expect("residue fits in u32")
    }
}

/// Deterministic trial division; moduli are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(PrimeField),
}

/// A field element. The variant always matches the field it was produced by.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u32),
    Q(Box<BigRational>),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(Field::Prime)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(f) => f.modulus(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Box::new(BigRational::zero())),
            Field::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(n.into()))),
            Field::Prime(f) => {
                Scalar::Fp(n.rem_euclid(i64::from(f.modulus())) as u32)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(n.clone()))),
            Field::Prime(f) => Scalar::Fp(f.from_bigint(n)),
        }
    }

    /// `num / den`, failing when the denominator vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        let inv = self.inv(&d).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.mul(&self.from_bigint(num), &inv))
    }

    /// Maps a rational into this field (reduction mod p).
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_fraction(q.numer(), q.denom())
    }

    /// Moves a scalar into this field. Rationals reduce mod p; prime-field elements only
    /// move into the same field.
    pub fn coerce(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (Field::Rationals, Scalar::Q(_)) => Ok(a.clone()),
            (Field::Prime(_), Scalar::Q(q)) => self.from_rational(q),
            (Field::Prime(f), Scalar::Fp(x)) if *x < f.modulus() => Ok(a.clone()),
            _ => Err(AlgebraError::RingMismatch(format!("cannot move {a:?} into {self}"))),
        }
    }

    #[inline]
    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    #[inline]
    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(f), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(f.add(*x, *y)),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x + &**y)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(f), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(f.sub(*x, *y)),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x - &**y)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(f), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(f.mul(*x, *y)),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(Box::new(&**x * &**y)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(f), Scalar::Fp(x)) => Scalar::Fp(f.neg(*x)),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(Box::new(-&**x)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Field::Prime(f), Scalar::Fp(x)) => f.inv(*x).map(Scalar::Fp),
            (Field::Rationals, Scalar::Q(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(Box::new(x.recip())))
                }
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    /// Canonical text: reduced fraction over Q, least nonnegative residue over F_p.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }

    /// Whether the canonical print of `a` starts with a minus sign.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(_) => false,
            Scalar::Q(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p.modulus()),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = s.strip_prefix('F').ok_or_else(|| AlgebraError::Syntax {
            line: 1,
            column: 1,
            message: format!("expected field `Q` or `F<p>`, found `{s}`"),
        })?;
        let p: u64 = digits.parse().map_err(|_| AlgebraError::Syntax {
            line: 1,
            column: 2,
            message: format!("bad modulus `{digits}`"),
        })?;
        Field::prime(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(31));
        assert!(is_prime(2147483647));
        assert!(!is_prime(4));
        assert!(!is_prime(1));
        assert!(matches!(Field::prime(4), Err(AlgebraError::NotPrime(4))));
    }

    #[test]
    fn barrett_matches_remainder() {
        for p in [2u64, 3, 31, 65521, 2147483647] {
            let f = PrimeField::new(p).unwrap();
            for a in [0u64, 1, p - 1, p / 2, 12345 % p] {
                for b in [0u64, 1, p - 1, 777 % p] {
                    assert_eq!(u64::from(f.mul(a as u32, b as u32)), a * b % p);
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(31).unwrap();
        for a in 1..31 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn rational_formatting() {
        let q = Field::Rationals;
        let half = q.from_fraction(&BigInt::from(-2), &BigInt::from(4)).unwrap();
        assert_eq!(q.format(&half), "-1/2");
        let f = Field::prime(7).unwrap();
        assert_eq!(f.format(&f.from_i64(-1)), "6");
        assert_eq!(
            f.from_fraction(&BigInt::from(1), &BigInt::from(7)),
            Err(AlgebraError::DivisionByZero)
        );
    }
}
