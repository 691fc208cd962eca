//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Coefficient field descriptor.
///
/// Serializes as `"Q"` or `{"Fp": p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Builds `F_p`, rejecting non-primes and moduli that do not fit 32 bits.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Fp(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }

    /// Re-checks the primality invariant; used after deserialization.
    pub fn validate(self) -> Result<Self, AlgebraError> {
        match self {
            Field::Q => Ok(self),
            Field::Fp(p) => Field::prime(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Q);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| AlgebraError::BadField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(AlgebraError::BadField(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed by
/// `BigRational`); residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        match field {
            Field::Q => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Self {
        match field {
            Field::Q => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Fp(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in `field`; fails when the denominator vanishes in the field.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self, AlgebraError> {
        let n = Scalar::from_bigint(field, num);
        let d = Scalar::from_bigint(field, den);
        if d.is_zero() {
            return Err(AlgebraError::CoefficientNotInField(format!("{num}/{den}"), field));
        }
        n.div(&d)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Q,
            Scalar::Modular { modulus, .. } => Field::Fp(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), AlgebraError> {
        if self.field() != other.field() {
            return Err(AlgebraError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { value, modulus } => {
                let g = (*value as i64).extended_gcd(&(*modulus as i64));
                Scalar::Modular {
                    value: g.x.rem_euclid(*modulus as i64) as u64,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Scalar, AlgebraError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.field());
        for _ in 0..n.unsigned_abs() {
            acc = acc * &base;
        }
        Ok(acc)
    }

    /// Numerator and denominator for rationals; `(value, 1)` for residues.
    pub fn as_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Modular { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    /// Signed representative used for printing: residues above `p/2` print negative.
    pub(crate) fn is_negative_repr(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { value, modulus } => *modulus > 2 && *value > modulus / 2,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, modulus } => {
                if self.is_negative_repr() {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}

// Operator forms panic on mixed characteristics; use `try_*` to get an error instead.
impl std::ops::Add<&Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl std::ops::Sub<&Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_add(&rhs.neg()).expect("scalar field mismatch")
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, modulus: m }) => {
                assert_eq!(modulus, m, "scalar field mismatch");
                *a = ((*a as u128 + *b as u128) % *modulus as u128) as u64;
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl std::ops::Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl std::ops::Mul<&Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        let q = Scalar::from_ratio(Field::Q, &BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(q.as_ratio(), (BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn modular_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        let a = Scalar::from_i64(f7, -1);
        assert_eq!(a, Scalar::Modular { value: 6, modulus: 7 });
        assert_eq!(a.to_string(), "-1");
        let inv3 = Scalar::from_i64(f7, 3).inv().unwrap();
        assert_eq!(inv3, Scalar::from_i64(f7, 5));
        assert_eq!(Scalar::from_i64(f7, 3) * &inv3, Scalar::one(f7));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(matches!(Scalar::zero(Field::Q).inv(), Err(AlgebraError::DivisionByZero)));
        let f5 = Field::Fp(5);
        assert!(Scalar::from_ratio(f5, &BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Scalar::one(Field::Q);
        let b = Scalar::one(Field::Fp(3));
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch(..))));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Q);
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Fp(7));
        assert!("Fp:8".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
        assert_eq!(serde_json::to_string(&Field::Fp(7)).unwrap(), r#"{"Fp":7}"#);
        assert_eq!(serde_json::to_string(&Field::Q).unwrap(), r#""Q""#);
    }
}
