//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::fmt;

use crate::{Error, Result};

/// An exact field with deterministic arithmetic.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
}

/// Exact rational scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_i64(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Renders as "p" or "p/q".
    pub fn to_string_frac(&self) -> String {
        if self.0.denom().is_one() {
            format!("{}", self.0.numer())
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    pub fn parse_frac(s: &str) -> Result<Self> {
        let mut it = s.splitn(2, '/');
        let num: BigInt = it
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("bad rational: {s}")))?;
        let den: BigInt = match it.next() {
            Some(d) => d
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("bad rational: {s}")))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Field for Rat {
    fn zero(&self) -> Self {
        Rat(BigRational::zero())
    }
    fn one(&self) -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }
}

/// Element of the prime field `F_p`. Each value carries its modulus so that
/// representations over different primes cannot be mixed silently.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    pub p: u64,
    pub v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        let m = v.rem_euclid(p as i64) as u64;
        Fp { p, v: m }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(format!("p={} vs p={}", self.p, other.p)));
        }
        Ok(())
    }

    fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc: u128 = 1;
        let mut b = base as u128 % p as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            exp >>= 1;
        }
        base = acc as u64;
        base
    }
}

impl Field for Fp {
    fn zero(&self) -> Self {
        Fp { p: self.p, v: 0 }
    }
    fn one(&self) -> Self {
        Fp { p: self.p, v: 1 % self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.check(other).expect("prime field mismatch");
        Fp { p: self.p, v: ((self.v as u128 + other.v as u128) % self.p as u128) as u64 }
    }
    fn sub(&self, other: &Self) -> Self {
        self.check(other).expect("prime field mismatch");
        Fp { p: self.p, v: ((self.p as u128 + self.v as u128 - other.v as u128) % self.p as u128) as u64 }
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(other).expect("prime field mismatch");
        Fp { p: self.p, v: ((self.v as u128 * other.v as u128) % self.p as u128) as u64 }
    }
    fn neg(&self) -> Self {
        Fp { p: self.p, v: if self.v == 0 { 0 } else { self.p - self.v } }
    }
    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp { p: self.p, v: Fp::pow(self.v, self.p - 2, self.p) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let x = Rat::ratio(-7, 3);
        assert_eq!(x.to_string_frac(), "-7/3");
        assert_eq!(Rat::parse_frac("-7/3").unwrap(), x);
        assert_eq!(Rat::parse_frac("5").unwrap(), Rat::from_i64(5));
    }

    #[test]
    fn fp_axioms() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 0..p.min(12) {
                let x = Fp::new(p, a as i64);
                if !x.is_zero() {
                    let y = x.inv().unwrap();
                    assert_eq!(x.mul(&y), x.one());
                }
                assert_eq!(x.add(&x.neg()), x.zero());
            }
        }
        assert!(Fp::new(5, 0).inv().is_err());
    }
}
