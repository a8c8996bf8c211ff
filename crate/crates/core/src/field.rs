//! Exact coefficient arithmetic over prime fields GF(p) and the rationals.
//!
//! A [`FieldSpec`] is nothing but a characteristic: `0` selects the rationals,
//! anything else must be a prime below 2^62. Elements carry enough of their
//! field to detect mixing, so the `checked_*` methods can report a mismatch
//! instead of producing garbage. The operator impls (`&a + &b`, ...) are for
//! code that already knows both operands live in one field; they panic on a
//! mismatch.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

const MAX_MODULUS_BITS: u32 = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("characteristic {0} is neither 0 nor a prime below 2^62")]
    InvalidCharacteristic(u64),
    #[error("operands belong to different fields (characteristic {left} vs {right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// The coefficient field, identified by its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, ArithError> {
        if characteristic == 0
            || (characteristic < (1u64 << MAX_MODULUS_BITS) && is_prime(characteristic))
        {
            Ok(Self { characteristic })
        } else {
            Err(ArithError::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Self { characteristic: 0 }
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, value: i64) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rational(BigRational::from_integer(BigInt::from(value))),
            p => FieldElement::Mod {
                value: reduce_i128(value as i128, p),
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, value: &BigInt) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rational(BigRational::from_integer(value.clone())),
            p => {
                let r = value.mod_floor(&BigInt::from(p));
                FieldElement::Mod {
                    value: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// `numerator / denominator` as a field element; fails when the
    /// denominator vanishes in this field.
    pub fn from_ratio(self, numerator: &BigInt, denominator: &BigInt) -> Result<FieldElement, ArithError> {
        if denominator.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match self.characteristic {
            0 => Ok(FieldElement::Rational(BigRational::new(
                numerator.clone(),
                denominator.clone(),
            ))),
            _ => self
                .from_bigint(numerator)
                .checked_div(&self.from_bigint(denominator)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

/// An element of GF(p) or Q, always in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    /// Residue in `[0, modulus)`.
    Mod { value: u64, modulus: u64 },
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Mod { modulus, .. } => FieldSpec {
                characteristic: *modulus,
            },
            FieldElement::Rational(_) => FieldSpec::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Mod { value, .. } => *value == 0,
            FieldElement::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Mod { value, .. } => *value == 1,
            FieldElement::Rational(r) => r.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Mod { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Mod { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    fn same_field(&self, rhs: &Self) -> Result<(), ArithError> {
        let (l, r) = (self.field(), rhs.field());
        if l == r {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch {
                left: l.characteristic,
                right: r.characteristic,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (FieldElement::Mod { value: a, modulus }, FieldElement::Mod { value: b, .. }) => {
                FieldElement::Mod {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.checked_add(&rhs.negate())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (FieldElement::Mod { value: a, modulus }, FieldElement::Mod { value: b, .. }) => {
                FieldElement::Mod {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            _ => unreachable!(),
        })
    }

    pub fn negate(&self) -> Self {
        match self {
            FieldElement::Mod { value, modulus } => FieldElement::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(-r),
        }
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Mod { value, modulus } => FieldElement::Mod {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Mod { value, .. } => write!(f, "{value}"),
            FieldElement::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            FieldElement::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negate()
    }
}

/// Least common multiple of denominators, gcd of numerators: scaling a
/// rational vector by `lcm / gcd` makes it an integer vector of content 1.
pub(crate) fn primitive_scale<'a>(coeffs: impl Iterator<Item = &'a BigRational>) -> BigRational {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    if gcd.is_zero() {
        return BigRational::one();
    }
    BigRational::new(lcm, gcd.abs())
}

fn reduce_i128(value: i128, p: u64) -> u64 {
    value.rem_euclid(p as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime and a != 0 so the gcd is 1
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    reduce_i128(t0, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
