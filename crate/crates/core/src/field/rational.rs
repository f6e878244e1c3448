use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{json_str, Field, FieldKind};
use crate::error::{Error, Result};

/// The field of rational numbers, backed by `num_rational::BigRational`
/// (always in lowest terms with a positive denominator).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

/// `num/den`, with the denominator omitted when it is 1.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }

    /// Only the powers of a primitive root that are rational: `1` and,
    /// for even `n`, `z^(n/2) = -1`.
    fn root_of_unity(&self, n: u32, a: i64) -> Result<BigRational> {
        if n == 0 {
            return Err(Error::InvalidConfig("root of unity of order 0".into()));
        }
        let a = a.rem_euclid(i64::from(n));
        if a == 0 {
            Ok(self.one())
        } else if 2 * a == i64::from(n) {
            Ok(self.from_i64(-1))
        } else {
            Err(Error::ContextMismatch(format!("z^{a} for a primitive {n}-th root of unity z is not rational")))
        }
    }

    fn from_rational(&self, v: &BigRational) -> Result<BigRational> {
        Ok(v.clone())
    }

    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn format_signed(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), format_rational(&a.abs()))
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }

    fn elem_to_json(&self, a: &BigRational) -> serde_json::Value {
        serde_json::Value::String(format_rational(a))
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<BigRational> {
        parse_rational(json_str(v)?)
    }
}
