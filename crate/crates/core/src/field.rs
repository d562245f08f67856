//! Exact scalar fields.
//!
//! Every algebraic object in the crate is generic over a [`Field`], a small
//! context value that knows how to build constants and combine elements.
//! Two fields are provided: prime fields `F_p` ([`PrimeField`]) and the
//! rationals ([`Rationals`]). Both are exact; nothing here touches floating
//! point.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("infinite field")]
    Infinite,
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("unknown field tag {0:?} (expected Q, F2, F3, F5 or Fp:<p>)")]
    UnknownTag(String),
}

/// Runtime identity of a field, as written in reports and matrix files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldTag::Rational);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| FieldError::UnknownTag(s.to_string()))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| FieldError::UnknownTag(s.to_string()))?;
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Ok(FieldTag::Prime(p))
    }
}

impl Serialize for FieldTag {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A field context. Elements are plain values; all arithmetic goes through
/// the context so that prime fields can carry their modulus at runtime.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn tag(&self) -> FieldTag;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// All elements in canonical order `0, 1, ..., p-1`.
    fn elements(&self) -> Result<Vec<Self::Elem>, FieldError>;

    /// Scalar text format: `"k mod p"` or `"num/den"` (den omitted when 1).
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a * b + c`, the inner-loop shape of most linear algebra here.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(&self.mul(a, b), c)
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Nonzero elements in canonical order.
    fn units(&self) -> Result<Vec<Self::Elem>, FieldError> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| !self.is_zero(x))
            .collect())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class modulo a prime. Carries its modulus so that values from
/// different prime fields are caught at the first operation that mixes them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, value: u32) -> Fp {
        Fp {
            value: value % self.p,
            modulus: self.p,
        }
    }

    #[inline]
    fn check(&self, a: &Fp) {
        assert_eq!(
            a.modulus, self.p,
            "field mismatch: element of F_{} used in F_{}",
            a.modulus, self.p
        );
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }

    fn zero(&self) -> Fp {
        self.elem(0)
    }

    fn one(&self) -> Fp {
        self.elem(1)
    }

    fn from_i64(&self, n: i64) -> Fp {
        self.elem(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        self.check(a);
        self.check(b);
        let s = a.value as u64 + b.value as u64;
        self.elem((s % self.p as u64) as u32)
    }

    #[inline]
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        self.check(a);
        self.check(b);
        let s = a.value as u64 + (self.p - b.value) as u64;
        self.elem((s % self.p as u64) as u32)
    }

    #[inline]
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        self.check(a);
        self.check(b);
        let s = a.value as u64 * b.value as u64;
        self.elem((s % self.p as u64) as u32)
    }

    #[inline]
    fn neg(&self, a: &Fp) -> Fp {
        self.check(a);
        self.elem((self.p - a.value) % self.p)
    }

    fn inv(&self, a: &Fp) -> Result<Fp, FieldError> {
        self.check(a);
        if a.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    #[inline]
    fn is_zero(&self, a: &Fp) -> bool {
        self.check(a);
        a.value == 0
    }

    fn elements(&self) -> Result<Vec<Fp>, FieldError> {
        Ok((0..self.p).map(|v| self.elem(v)).collect())
    }

    fn format(&self, a: &Fp) -> String {
        self.check(a);
        a.to_string()
    }

    fn parse(&self, text: &str) -> Result<Fp, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        if let Some((k, p)) = t.split_once("mod") {
            let p: u32 = p.trim().parse().map_err(|_| err("bad modulus"))?;
            if p != self.p {
                return Err(err(&format!("modulus {p} does not match F_{}", self.p)));
            }
            let k: u32 = k.trim().parse().map_err(|_| err("bad residue"))?;
            if k >= p {
                return Err(err("residue out of range"));
            }
            Ok(self.elem(k))
        } else {
            // Bare integers are accepted as input and reduced.
            let n: i64 = t.parse().map_err(|_| err("expected \"k mod p\" or an integer"))?;
            Ok(self.from_i64(n))
        }
    }
}

/// The field of rational numbers over arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn elements(&self) -> Result<Vec<BigRational>, FieldError> {
        Err(FieldError::Infinite)
    }

    fn format(&self, a: &BigRational) -> String {
        // Ratio keeps itself reduced with a positive denominator.
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, text: &str) -> Result<BigRational, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        if den.is_negative() {
            return Ok(BigRational::new(-num, -den));
        }
        Ok(BigRational::new(num, den))
    }
}
