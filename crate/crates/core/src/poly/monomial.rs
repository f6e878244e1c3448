use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest exponent a monomial may carry.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

/// An exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 10]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.iter().any(|&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentOverflow);
        }
        Ok(Monomial(SmallVec::from_slice(exps)))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u64 {
        vars.iter().map(|&v| u64::from(self.0[v])).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = self.0.clone();
        for (a, &b) in out.iter_mut().zip(&other.0) {
            *a = a
                .checked_add(b)
                .filter(|&s| s <= MAX_EXPONENT)
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut out = self.clone();
        out.0[i] = e;
        out
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All exponent vectors in `nvars` variables of total degree `d`, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, nvars: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial(SmallVec::from_slice(prefix)));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, nvars, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(SmallVec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, d, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_an_error() {
        let a = Monomial::from_exponents(&[MAX_EXPONENT, 0]).unwrap();
        let b = Monomial::from_exponents(&[1, 0]).unwrap();
        assert_eq!(a.checked_mul(&b), Err(Error::ExponentOverflow));
        assert!(Monomial::from_exponents(&[MAX_EXPONENT + 1]).is_err());
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[2, 1, 0]).unwrap();
        let b = Monomial::from_exponents(&[3, 1, 4]).unwrap();
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap().exponents(), &[1, 0, 4]);
        assert_eq!(a.lcm(&b), b);
    }

    #[test]
    fn counts_monomials_of_degree() {
        assert_eq!(monomials_of_degree(3, 9).len(), 55);
        assert_eq!(monomials_of_degree(4, 18).len(), 1330);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }
}
