//! Exact scalars over Q (arbitrary-precision rationals) and prime fields F_p.
//!
//! All arithmetic is dispatched through a [`FieldSpec`] so matrices stay
//! monomorphic; a scalar never floats.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The coefficient field: Q or F_p with p prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
}

/// A field element. `Mod` values are always reduced to `[0, p)`; the modulus
/// lives in the governing [`FieldSpec`], not in the scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn fp(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField { p })
        } else {
            Err(Error::InvalidParameters(format!("{p} is not prime")))
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { p } if is_prime(*p) => Ok(()),
            FieldSpec::PrimeField { p } => {
                Err(Error::InvalidParameters(format!("{p} is not prime")))
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField { .. } => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField { .. } => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField { p } => {
                Scalar::Mod((v.rem_euclid(*p as i64)) as u64)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::PrimeField { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::PrimeField { p }, Scalar::Mod(x)) => {
                Scalar::Mod(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::PrimeField { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    /// Multiplicative inverse. Panics on zero: callers test first.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            (FieldSpec::PrimeField { p }, Scalar::Mod(x)) => {
                assert!(*x != 0, "inverse of zero");
                // Fermat: x^(p-2) mod p.
                let mut base = *x as u128;
                let m = *p as u128;
                let mut e = *p - 2;
                let mut acc: u128 = 1;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Mod(acc as u64)
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parse the canonical string form: `"a/b"` with `b > 0`, `gcd(|a|,b)=1`,
    /// written `"a"` when `b = 1`, for Q; a plain decimal in `[0, p)` for F_p.
    /// Non-normalized spellings are rejected.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::BadScalar(s.to_string());
        match self {
            FieldSpec::Rationals => {
                let (num_str, den_str) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let num: BigInt = num_str.parse().map_err(|_| bad())?;
                // Reject non-canonical integer spellings like "-0" or "007".
                if num.to_string() != num_str {
                    return Err(bad());
                }
                match den_str {
                    None => Ok(Scalar::Rat(BigRational::from_integer(num))),
                    Some(d) => {
                        let den: BigInt = d.parse().map_err(|_| bad())?;
                        if den.to_string() != d || !den.is_positive() || den.is_one() {
                            return Err(bad());
                        }
                        if num.gcd(&den) != BigInt::one() {
                            return Err(bad());
                        }
                        Ok(Scalar::Rat(BigRational::new(num, den)))
                    }
                }
            }
            FieldSpec::PrimeField { p } => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v.to_string() != s || v >= *p {
                    return Err(bad());
                }
                Ok(Scalar::Mod(v))
            }
        }
    }

    /// Render the canonical string form (inverse of [`FieldSpec::parse_scalar`]).
    pub fn render_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
        }
    }

    /// Build a rational directly; normalization (sign, gcd) is handled by the
    /// rational type itself.
    pub fn rat(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

trait GcdExt {
    fn gcd(&self, other: &BigInt) -> BigInt;
}

impl GcdExt for BigInt {
    fn gcd(&self, other: &BigInt) -> BigInt {
        num::Integer::gcd(self, other)
    }
}
