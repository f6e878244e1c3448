use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational};
use super::{Field, FieldKind};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u32
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term
/// first. Built as `(t^n - 1) / prod_{d | n, d < n} Phi_d(t)` by exact
/// division.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division is not exact");
    quot
}

/// An element of Q(zeta_n): a polynomial in zeta of degree < phi(n),
/// constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElem(pub Vec<BigRational>);

#[derive(Debug, PartialEq, Eq)]
struct CycInner {
    n: u32,
    /// Phi_n with rational coefficients, monic.
    modulus: Vec<BigRational>,
}

/// The cyclotomic field Q(zeta_n) = Q[t] / Phi_n(t), with zeta the class of t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    inner: Arc<CycInner>,
}

impl CyclotomicField {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("cyclotomic order must be positive".into()));
        }
        let modulus = cyclotomic_polynomial(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Ok(CyclotomicField { inner: Arc::new(CycInner { n, modulus }) })
    }

    pub fn order(&self) -> u32 {
        self.inner.n
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    /// The generator zeta (the class of t).
    pub fn zeta(&self) -> CycElem {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycElem {
        self.reduce(coeffs)
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> CycElem {
        let d = self.degree();
        let m = &self.inner.modulus;
        while c.len() > d {
            let top = c.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (i, mi) in m.iter().take(d).enumerate() {
                c[shift + i] -= &top * mi;
            }
        }
        c.resize(d, BigRational::zero());
        CycElem(c)
    }
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let c = rem.last().expect("non-empty") / lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
        rem.pop();
        poly_trim(&mut rem);
    }
    (quot, rem)
}

impl Field for CyclotomicField {
    type Elem = CycElem;

    fn kind(&self) -> FieldKind {
        FieldKind::Cyclotomic { n: self.inner.n }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> CycElem {
        CycElem(vec![BigRational::zero(); self.degree()])
    }

    fn one(&self) -> CycElem {
        self.from_i64(1)
    }

    fn from_i64(&self, v: i64) -> CycElem {
        self.from_bigint(&BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> CycElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = BigRational::from_integer(v.clone());
        CycElem(c)
    }

    fn from_rational(&self, v: &BigRational) -> Result<CycElem> {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = v.clone();
        Ok(CycElem(c))
    }

    fn is_zero(&self, a: &CycElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    fn neg(&self, a: &CycElem) -> CycElem {
        CycElem(a.0.iter().map(|x| -x).collect())
    }

    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        if self.degree() == 1 {
            return CycElem(vec![&a.0[0] * &b.0[0]]);
        }
        self.reduce(poly_mul(&a.0, &b.0))
    }

    fn add_assign(&self, a: &mut CycElem, b: &CycElem) {
        for (x, y) in a.0.iter_mut().zip(&b.0) {
            *x += y;
        }
    }

    fn inv(&self, a: &CycElem) -> Result<CycElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (Phi_n, a): track s with s * a ≡ r (mod Phi_n).
        let mut r0 = self.inner.modulus.clone();
        let mut r1 = a.0.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Phi_n is irreducible, so the last non-zero remainder is a constant.
        let c = r1[0].clone();
        let scaled = s1.into_iter().map(|x| x / &c).collect();
        Ok(self.reduce(scaled))
    }

    fn root_of_unity(&self, n: u32, a: i64) -> Result<CycElem> {
        if n != self.inner.n {
            return Err(Error::ContextMismatch(format!(
                "context is Q(zeta_{}), asked for order {n}",
                self.inner.n
            )));
        }
        let e = a.rem_euclid(i64::from(n)) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Ok(self.reduce(c))
    }

    fn to_rational(&self, a: &CycElem) -> Option<BigRational> {
        if a.0[1..].iter().all(Zero::is_zero) {
            Some(a.0[0].clone())
        } else {
            None
        }
    }

    fn format_signed(&self, a: &CycElem) -> (bool, String) {
        if self.degree() == 1 {
            let v = &a.0[0];
            return (v.is_negative(), format_rational(&v.abs()));
        }
        let parts: Vec<String> = a.0.iter().map(format_rational).collect();
        (false, format!("[{}]", parts.join(",")))
    }

    fn parse_elem(&self, s: &str) -> Result<CycElem> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let v = if let Some(inner) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let coeffs = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            if coeffs.len() != self.degree() {
                return Err(Error::DimensionMismatch { expected: self.degree(), got: coeffs.len() });
            }
            CycElem(coeffs)
        } else {
            self.from_rational(&parse_rational(body)?)?
        };
        Ok(if neg { self.neg(&v) } else { v })
    }

    fn elem_to_json(&self, a: &CycElem) -> serde_json::Value {
        serde_json::Value::Array(
            a.0.iter().map(|c| serde_json::Value::String(format_rational(c))).collect(),
        )
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<CycElem> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected a coefficient array, got {v}")))?;
        if arr.len() != self.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), got: arr.len() });
        }
        arr.iter()
            .map(|c| parse_rational(super::json_str(c)?))
            .collect::<Result<Vec<_>>>()
            .map(CycElem)
    }

    fn cas_coefficient(&self, a: &CycElem) -> String {
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", format_rational(c)),
                1 => format!("({})*z", format_rational(c)),
                _ => format!("({})*z^{i}", format_rational(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            format!("({})", terms.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
    }

    #[test]
    fn product_over_divisors_is_t_n_minus_one() {
        for n in 1..=12u32 {
            let mut prod = vec![BigInt::one()];
            for d in (1..=n).filter(|d| n % d == 0) {
                let phi = cyclotomic_polynomial(d);
                let mut out = vec![BigInt::zero(); prod.len() + phi.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in phi.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                prod = out;
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn zeta_squared_in_q_zeta3() {
        let k = CyclotomicField::new(3).unwrap();
        let z2 = k.root_of_unity(3, 2).unwrap();
        assert_eq!(z2, k.parse_elem("[-1,-1]").unwrap());
        assert_eq!(k.root_of_unity(3, 0).unwrap(), k.one());
        assert!(k.root_of_unity(4, 1).is_err());
    }

    #[test]
    fn one_plus_zeta_times_one_plus_zeta_squared() {
        let k = CyclotomicField::new(3).unwrap();
        let z = k.zeta();
        let a = k.add(&k.one(), &z);
        let b = k.add(&k.one(), &k.mul(&z, &z));
        assert_eq!(k.mul(&a, &b), k.one());
    }

    #[test]
    fn zeta_has_exact_order_n() {
        for n in 1..=12u32 {
            let k = CyclotomicField::new(n).unwrap();
            let z = k.zeta();
            assert_eq!(k.pow(&z, u64::from(n)), k.one());
            for e in 1..n {
                assert_ne!(k.pow(&z, u64::from(e)), k.one(), "n={n} e={e}");
            }
        }
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        let k = CyclotomicField::new(5).unwrap();
        let a = k.sub(&k.one(), &k.zeta());
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }
}
