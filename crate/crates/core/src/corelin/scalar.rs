//! Exact scalars over ℤ, ℚ and prime fields 𝔽_p.
//!
//! Every [`Scalar`] carries its ring. Arithmetic operators panic when the two
//! operands live in different rings; the higher-level constructors in this
//! crate check ring homogeneity up front and report [`Error::MixedRings`]
//! instead, so a panic here indicates a bug in the caller.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The scalar ring a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarRing {
    Integer,
    Rational,
    /// Residues modulo the given prime.
    PrimeField(u64),
}

impl ScalarRing {
    /// Builds a prime-field tag, rejecting composite or tiny moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Parse(format!(
                "prime {p} too large for residue arithmetic"
            )));
        }
        Ok(ScalarRing::PrimeField(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, ScalarRing::Integer)
    }

    /// Characteristic of the ring (0 for ℤ and ℚ).
    pub fn characteristic(self) -> u64 {
        match self {
            ScalarRing::PrimeField(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Integer => write!(f, "Z"),
            ScalarRing::Rational => write!(f, "Q"),
            ScalarRing::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact scalar. Rationals are kept reduced with positive denominator and
/// residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    PrimeField { value: u64, modulus: u64 },
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn residue(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    Some(residue(&e.x, p))
}

impl Scalar {
    pub fn zero(ring: ScalarRing) -> Self {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: ScalarRing) -> Self {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: ScalarRing, v: i64) -> Self {
        Scalar::from_bigint(ring, &BigInt::from(v))
    }

    pub fn from_bigint(ring: ScalarRing, v: &BigInt) -> Self {
        match ring {
            ScalarRing::Integer => Scalar::Integer(v.clone()),
            ScalarRing::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            ScalarRing::PrimeField(p) => Scalar::PrimeField {
                value: residue(v, p),
                modulus: p,
            },
        }
    }

    /// Embeds a rational number into a field. Fails for ℤ unless the value is
    /// integral, and for 𝔽_p when p divides the denominator.
    pub fn from_rational(ring: ScalarRing, v: &BigRational) -> Result<Self> {
        match ring {
            ScalarRing::Rational => Ok(Scalar::Rational(v.clone())),
            ScalarRing::Integer => {
                if v.is_integer() {
                    Ok(Scalar::Integer(v.to_integer()))
                } else {
                    Err(Error::NotIntegral(v.to_string()))
                }
            }
            ScalarRing::PrimeField(p) => {
                let num = residue(v.numer(), p);
                let den = inv_mod(residue(v.denom(), p), p)
                    .ok_or_else(|| Error::NotIntegral(format!("{v} at p = {p}")))?;
                Ok(Scalar::PrimeField {
                    value: mul_mod(num, den, p),
                    modulus: p,
                })
            }
        }
    }

    pub fn ring(&self) -> ScalarRing {
        match self {
            Scalar::Integer(_) => ScalarRing::Integer,
            Scalar::Rational(_) => ScalarRing::Rational,
            Scalar::PrimeField { modulus, .. } => ScalarRing::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_zero(),
            Scalar::Rational(v) => v.is_zero(),
            Scalar::PrimeField { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_one(),
            Scalar::Rational(v) => v.is_one(),
            Scalar::PrimeField { value, .. } => *value == 1,
        }
    }

    /// True when the value is invertible in its own ring.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Integer(v) if v.abs().is_one() => Some(self.clone()),
            Scalar::Integer(_) => None,
            Scalar::Rational(v) if v.is_zero() => None,
            Scalar::Rational(v) => Some(Scalar::Rational(v.recip())),
            Scalar::PrimeField { value, modulus } => {
                inv_mod(*value, *modulus).map(|v| Scalar::PrimeField {
                    value: v,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Exact division. Over ℤ this succeeds only when the quotient is integral.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        same_ring(self, rhs);
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Scalar::Integer(q))
            }
            _ => rhs.inverse().map(|inv| self * &inv),
        }
    }

    /// The value as a rational number (residues are not liftable).
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Integer(v) => Some(BigRational::from_integer(v.clone())),
            Scalar::Rational(v) => Some(v.clone()),
            Scalar::PrimeField { .. } => None,
        }
    }

    /// The value as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Integer(v) => Some(v.clone()),
            Scalar::Rational(v) if v.is_integer() => Some(v.to_integer()),
            _ => None,
        }
    }

    /// Moves the value into another ring (ℤ → ℚ, ℤ/ℚ → 𝔽_p, ℚ → ℤ when integral).
    pub fn change_ring(&self, target: ScalarRing) -> Result<Scalar> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        match self {
            Scalar::Integer(v) => Ok(Scalar::from_bigint(target, v)),
            Scalar::Rational(v) => Scalar::from_rational(target, v),
            Scalar::PrimeField { .. } => Err(Error::MixedRings {
                left: self.ring(),
                right: target,
            }),
        }
    }

    /// Parses the decimal-string serialization used by the JSON schemas.
    pub fn parse(ring: ScalarRing, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a scalar: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Scalar::from_rational(ring, &BigRational::new(n, d))
        } else {
            let v: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Scalar::from_bigint(ring, &v))
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.ring());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(v) => write!(f, "{v}"),
            Scalar::Rational(v) => write!(f, "{v}"),
            Scalar::PrimeField { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[track_caller]
fn same_ring(a: &Scalar, b: &Scalar) {
    assert_eq!(a.ring(), b.ring(), "mixed scalar rings in arithmetic");
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[track_caller]
    fn add(self, rhs: &Scalar) -> Scalar {
        same_ring(self, rhs);
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::PrimeField { value: a, modulus }, Scalar::PrimeField { value: b, .. }) => {
                Scalar::PrimeField {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[track_caller]
    fn sub(self, rhs: &Scalar) -> Scalar {
        same_ring(self, rhs);
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a - b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::PrimeField { value: a, modulus }, Scalar::PrimeField { value: b, .. }) => {
                Scalar::PrimeField {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[track_caller]
    fn mul(self, rhs: &Scalar) -> Scalar {
        same_ring(self, rhs);
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::PrimeField { value: a, modulus }, Scalar::PrimeField { value: b, .. }) => {
                Scalar::PrimeField {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::PrimeField { value, modulus } => Scalar::PrimeField {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            #[track_caller]
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            #[track_caller]
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            #[track_caller]
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
        impl $tra<&Scalar> for Scalar {
            #[track_caller]
            fn $ma(&mut self, rhs: &Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra<Scalar> for Scalar {
            #[track_caller]
            fn $ma(&mut self, rhs: Scalar) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

owned_binop!(Add, add, AddAssign, add_assign);
owned_binop!(Sub, sub, SubAssign, sub_assign);
owned_binop!(Mul, mul, MulAssign, mul_assign);

/// Sum of an iterator of scalars in `ring` (zero for an empty iterator).
pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(ring: ScalarRing, items: I) -> Scalar {
    items.into_iter().fold(Scalar::zero(ring), |acc, x| acc + x)
}

/// Checks that all values share `ring`.
pub fn check_ring<'a, I: IntoIterator<Item = &'a Scalar>>(
    ring: ScalarRing,
    items: I,
) -> Result<()> {
    for s in items {
        if s.ring() != ring {
            return Err(Error::MixedRings {
                left: ring,
                right: s.ring(),
            });
        }
    }
    Ok(())
}
