use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient values. Over a prime field they are kept as integers in `0..p`.
pub type Scalar = BigRational;

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

pub const DEFAULT_PRIME: u64 = 32003;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Brings an arbitrary rational into the canonical form for this field.
    pub fn normalize(&self, q: Scalar) -> Scalar {
        match self {
            Field::Rational => q,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = q.numer().mod_floor(&p);
                if q.denom().is_one() {
                    return Scalar::from_integer(num);
                }
                let den = q.denom().mod_floor(&p);
                assert!(
                    !den.is_zero(),
                    "denominator divisible by the characteristic"
                );
                let inv = den.modpow(&(&p - 2), &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.normalize(a.recip()))
    }

    /// Residue of a canonical element as a machine word; only for prime fields.
    pub fn to_residue(&self, a: &Scalar) -> u64 {
        match self {
            Field::Prime(p) => {
                let v = self.normalize(a.clone());
                v.numer().to_u64().expect("canonical residue fits in u64") % p
            }
            Field::Rational => panic!("to_residue on the rationals"),
        }
    }

    /// Signed representative used for printing: residues above p/2 print as negatives.
    pub fn display_value(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => a.clone(),
            Field::Prime(p) => {
                let half = BigInt::from(*p / 2);
                if a.numer() > &half {
                    a - Scalar::from_integer(BigInt::from(*p))
                } else {
                    a.clone()
                }
            }
        }
    }

    pub fn is_unit_scalar(&self, a: &Scalar) -> bool {
        !a.is_zero()
    }

    pub fn is_negative_display(&self, a: &Scalar) -> bool {
        self.display_value(a).is_negative()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rational" | "QQ" | "Q" => Ok(Field::Rational),
            _ => {
                let p = s
                    .strip_prefix("gf:")
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad characteristic `{p}`")))?;
                Field::prime(p)
            }
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_arithmetic() {
        let f = Field::prime(5).unwrap();
        let three = f.from_i64(3);
        let two = f.from_i64(2);
        assert_eq!(f.mul(&three, &two), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.inv(&two).unwrap(), f.from_i64(3));
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(Field::prime(32004), Err(Error::NotPrime(32004)));
        assert!(Field::prime(32003).is_ok());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["rational", "gf:101", "gf:32003"] {
            let f: Field = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("gf:100".parse::<Field>().is_err());
    }

    #[test]
    fn rational_fractions_reduce_mod_p() {
        let f = Field::prime(7).unwrap();
        let half = f.normalize(Scalar::new(1.into(), 2.into()));
        assert_eq!(f.mul(&half, &f.from_i64(2)), f.one());
    }
}
