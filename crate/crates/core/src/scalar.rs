//! Exact scalar types used by the linear-algebra oracle.
//!
//! Everything downstream of [`Scalar`] is written once and instantiated for
//! arbitrary-precision integers (fraction-free elimination), rationals, and
//! prime fields. There is deliberately no floating-point implementation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An exact integral-domain element.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self / rhs`, where the caller guarantees `rhs` divides `self` exactly.
    fn exact_div(&self, rhs: &Self) -> Self;
}

/// A [`Scalar`] in which every nonzero element is invertible.
pub trait FieldScalar: Scalar {
    fn inv(&self) -> Option<Self>;
}

impl Scalar for BigInt {
    fn exact_div(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero(), "inexact division {self} / {rhs}");
        self / rhs
    }
}

impl Scalar for BigRational {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl FieldScalar for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// An element of the prime field `Z/pZ`, carrying its modulus.
///
/// `Fp::zero()` and `Fp::one()` cannot know the modulus, so they produce an
/// unbound constant (modulus 0) that adopts the modulus of whatever bound
/// element it is combined with. Elements built with [`Fp::new`] are always
/// bound and reduced to `0..p`.
#[derive(Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 2, "prime field modulus must be at least 2");
        Fp {
            value: value.rem_euclid(modulus as i64),
            modulus,
        }
    }

    /// Reduces a rational `a/b` into `Z/pZ`; `None` when `p` divides `b`.
    pub fn from_rational(x: &BigRational, modulus: u32) -> Option<Self> {
        let p = BigInt::from(modulus);
        let num = x.numer().mod_floor(&p).to_i64()?;
        let den = x.denom().mod_floor(&p).to_i64()?;
        let den = Fp::new(den, modulus).inv()?;
        Some(Fp::new(num, modulus) * den)
    }

    pub fn from_bigint(x: &BigInt, modulus: u32) -> Self {
        let r = x.mod_floor(&BigInt::from(modulus));
        Fp::new(r.to_i64().expect("residue fits in i64"), modulus)
    }

    /// Canonical representative in `0..p` (or the raw value when unbound).
    pub fn value(&self) -> i64 {
        self.value
    }

    /// The modulus, or 0 for an unbound constant.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    fn combine(a: Self, b: Self, op: impl Fn(i128, i128) -> i128) -> Self {
        let modulus = match (a.modulus, b.modulus) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                assert_eq!(m, n, "mixing elements of different prime fields");
                m
            }
        };
        let raw = op(a.value as i128, b.value as i128);
        if modulus == 0 {
            Fp {
                value: raw as i64,
                modulus,
            }
        } else {
            Fp {
                value: raw.rem_euclid(modulus as i128) as i64,
                modulus,
            }
        }
    }

    fn canonical_under(&self, modulus: u32) -> i64 {
        if modulus == 0 {
            self.value
        } else {
            self.value.rem_euclid(modulus as i64)
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let m = self.modulus.max(other.modulus);
        self.canonical_under(m) == other.canonical_under(m)
    }
}

impl Eq for Fp {}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp::combine(self, rhs, |a, b| a + b)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp::combine(self, rhs, |a, b| a - b)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp::combine(self, rhs, |a, b| a * b)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            Fp {
                value: -self.value,
                modulus: 0,
            }
        } else {
            Fp::new(-self.value, self.modulus)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.canonical_under(self.modulus) == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Scalar for Fp {
    fn exact_div(&self, rhs: &Self) -> Self {
        *self * rhs.inv().expect("division by zero in Z/pZ")
    }
}

impl FieldScalar for Fp {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus == 0 {
            // only the units 1 and -1 are invertible without a modulus
            return match self.value {
                1 | -1 => Some(*self),
                _ => None,
            };
        }
        // extended Euclid; p fits in u32 so nothing overflows i64
        let (mut r0, mut r1) = (self.modulus as i64, self.value);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return None;
        }
        Some(Fp::new(s0, self.modulus))
    }
}

/// Deterministic trial-division primality test; fine for `u32` moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns `(p, k)` with `q = p^k` for a prime `p`, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}
