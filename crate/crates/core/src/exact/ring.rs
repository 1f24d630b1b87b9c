//! Coefficient traits shared by the polynomial code.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Commutative ring with identity, closed under the owned std operators.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A field of characteristic zero that contains Q.
pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }
}

impl Ring for Rat {
    fn from_i64(n: i64) -> Self {
        rat(n)
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

/// Squarefree part of a nonzero integer, keeping its sign. Trial division, so only
/// meant for the small discriminants met here.
pub fn squarefree_int(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m * sign
}

/// Squarefree integer d with r = d * (rational square). Zero maps to zero.
pub fn squarefree_class(r: &Rat) -> BigInt {
    if r.is_zero() {
        return BigInt::zero();
    }
    squarefree_int(&(r.numer() * r.denom()))
}

/// Exact rational square root, if there is one.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Trial-division factorization of |n| into (prime, exponent) pairs.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    if !m.is_one() {
        out.push((m, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lowest common multiple of the denominators.
pub fn common_denom<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
