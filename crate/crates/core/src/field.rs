//! The coefficient-field abstraction shared by every linear-algebra routine.
//!
//! A [`Field`] value is a *context*: it knows how to build and combine its
//! elements. Matrices, subspaces and wedge vectors carry the context next to
//! their entries, so the same elimination code runs over a number-field tower
//! ([`crate::FieldTower`]) and over a prime field ([`PrimeField`]).

use std::fmt;

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Fails on zero, and on zero divisors when the
    /// defining polynomials were not irreducible.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Number of elements, or `None` for an infinite field.
    fn order(&self) -> Option<u64>;

    /// Every element, for finite fields small enough to enumerate.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Human-readable rendering; must re-parse to the same element where the
    /// field supports literals.
    fn format(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a value already known to be a usable pivot.
    ///
    /// # Panics
    ///
    /// Panics when `a` is a zero divisor, which only happens if a user-supplied
    /// minimal polynomial was reducible.
    fn pivot_inv(&self, a: &Self::Elem) -> Self::Elem {
        match self.inv(a) {
            Ok(x) => x,
            Err(e) => panic!("pivot {} is not invertible: {e}", self.format(a)),
        }
    }
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.elem(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(3).is_ok());
    }

    #[test]
    fn negative_literals_wrap() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.from_i64(-1), 2);
        assert_eq!(f.neg(&0), 0);
    }
}
