//! Exact coefficient domains: the rationals, prime fields and cyclotomic
//! fields. All three implement [`Field`], which works in the "context"
//! style: the context value carries the modulus or the cyclotomic
//! polynomial, and elements are plain data.

mod cyclotomic;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycElem, CyclotomicField};
pub use prime::{is_prime, PrimeField};
pub use rational::{format_rational, parse_rational, Rationals};

/// Runtime descriptor of a coefficient domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Prime { p: u64 },
    Cyclotomic { n: u32 },
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Prime { p } => write!(f, "prime:{p}"),
            FieldKind::Cyclotomic { n } => write!(f, "cyclotomic:{n}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" || s == "QQ" {
            return Ok(FieldKind::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p = p.parse().map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
            return Ok(FieldKind::Prime { p });
        }
        if let Some(n) = s.strip_prefix("cyclotomic:") {
            let n = n.parse().map_err(|_| Error::Parse(format!("bad order in {s:?}")))?;
            return Ok(FieldKind::Cyclotomic { n });
        }
        Err(Error::Parse(format!("unknown field {s:?}")))
    }
}

/// An exact field, in context style.
///
/// Implementations must be cheap to clone (contexts are shared by every
/// polynomial ring built over them) and immutable after construction.
// conversions need the field instance (modulus, root order)
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn kind(&self) -> FieldKind;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

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

    /// `zeta^a` for the context's fixed primitive `n`-th root of unity.
    fn root_of_unity(&self, n: u32, a: i64) -> Result<Self::Elem>;

    /// Rational constants; fails when the denominator is not invertible.
    fn from_rational(&self, v: &BigRational) -> Result<Self::Elem> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        self.div(&num, &den)
    }

    /// The element as a rational number, when it is one.
    fn to_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }

    /// Textual coefficient, split into a sign and a magnitude so that
    /// polynomials can be printed as signed sums. Domains without an
    /// ordering always report a non-negative sign.
    fn format_signed(&self, a: &Self::Elem) -> (bool, String);

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn elem_to_json(&self, a: &Self::Elem) -> serde_json::Value;
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;

    /// Coefficient in a syntax accepted by common computer algebra systems,
    /// with the root of unity written as `z`.
    fn cas_coefficient(&self, a: &Self::Elem) -> String {
        let (neg, mag) = self.format_signed(a);
        if neg {
            format!("-{mag}")
        } else {
            mag
        }
    }
}

fn json_str(v: &serde_json::Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("expected a string coefficient, got {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_kind_round_trips_through_text() {
        for kind in [
            FieldKind::Rational,
            FieldKind::Prime { p: 13 },
            FieldKind::Cyclotomic { n: 3 },
        ] {
            assert_eq!(kind.to_string().parse::<FieldKind>().unwrap(), kind);
        }
        assert!("prime:x".parse::<FieldKind>().is_err());
        assert!("reals".parse::<FieldKind>().is_err());
    }
}
