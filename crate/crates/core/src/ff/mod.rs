//! Exact arithmetic in prime fields and their extensions, plus the univariate
//! polynomial algorithms the rest of the crate relies on.

mod ext;
mod factor;
mod poly;
mod tables;

pub use ext::{FieldCtx, FqElem};
pub use factor::{factor_univariate, find_irreducible, is_irreducible};
pub use poly::UniPoly;
pub use tables::LogTables;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime")]
    BadCharacteristic(u32),
    #[error("characteristic {0} does not fit in 16 bits")]
    CharacteristicTooLarge(u32),
    #[error("modulus must be monic of degree >= 1")]
    ModulusNotMonic,
    #[error("modulus is reducible over F_{0}")]
    ModulusReducible(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field (expected {expected} coefficients, got {got})")]
    ContextMismatch { expected: usize, got: usize },
    #[error("coefficient {value} not reduced modulo {p}")]
    Unreduced { value: u32, p: u32 },
    #[error("base degree {base} does not divide extension degree {n}")]
    BaseDegree { base: u32, n: u32 },
}

/// A finite field of odd characteristic whose elements are plain values.
///
/// Everything in the crate that does linear algebra or polynomial arithmetic
/// is written against this trait, so the same code runs over `F_p` (with
/// `u32` elements) and over `F_{p^n}` (with coefficient vectors).
pub trait Field {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Image of an integer under `Z -> F`.
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn characteristic(&self) -> u32;
    /// Number of elements.
    fn size(&self) -> u64;
    /// Enumeration of the field: `element(i)` for `i < size()` lists every element once.
    fn element(&self, index: u64) -> Self::Elem;
    /// Inverse of [`Field::element`].
    fn index_of(&self, a: &Self::Elem) -> u64;

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

    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.size() / self.characteristic() as u64)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        if p >= 1 << 16 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, (self.p - 2) as u64))
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn size(&self) -> u64 {
        self.p as u64
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
    fn pth_root(&self, a: &u32) -> u32 {
        *a
    }
}

/// Legendre-style character of any [`Field`]: `a^((q-1)/2)` mapped to `{-1, 0, 1}`.
pub fn quadratic_character<F: Field>(field: &F, a: &F::Elem) -> i8 {
    if field.is_zero(a) {
        return 0;
    }
    let e = field.pow(a, (field.size() - 1) / 2);
    if field.is_one(&e) {
        1
    } else {
        -1
    }
}
