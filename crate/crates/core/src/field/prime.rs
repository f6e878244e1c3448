use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Field, FieldKind};
use crate::error::{Error, Result};

const MODULUS_LIMIT: u64 = 1 << 31;

/// Deterministic primality test by trial division; moduli are below 2^31
/// so this needs at most ~46k divisions.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The prime field F_p for a word-size prime `p < 2^31`.
///
/// Elements are canonical residues in `[0, p)`. When the field is built
/// for an arrangement of order `n`, `p ≡ 1 (mod n)` is checked up front and
/// the chosen primitive root of unity is cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    roots: Option<(u32, u64)>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p, roots: None })
    }

    /// A prime field that must contain the `n`-th roots of unity.
    pub fn for_order(p: u64, n: u32) -> Result<Self> {
        let mut field = Self::new(p)?;
        let zeta = field.primitive_root_of_unity(n)?;
        field.roots = Some((n, zeta));
        Ok(field)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The smallest positive residue of multiplicative order exactly `n`.
    pub fn primitive_root_of_unity(&self, n: u32) -> Result<u64> {
        if let Some((m, z)) = self.roots {
            if m == n {
                return Ok(z);
            }
        }
        let n = u64::from(n);
        if n == 0 || !(self.p - 1).is_multiple_of(n) {
            return Err(Error::ContextMismatch(format!(
                "F_{} has no primitive {n}-th root of unity (need p ≡ 1 mod {n})",
                self.p
            )));
        }
        let group_order = self.p - 1;
        let factors = prime_factors(group_order);
        let generator = (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow_u64(g, group_order / q) != 1))
            .unwrap_or(1);
        // Elements of order n are generator^(k (p-1)/n) with gcd(k, n) = 1.
        let step = self.pow_u64(generator, group_order / n);
        let mut best = u64::MAX;
        let mut cur = 1;
        for k in 1..=n {
            cur = self.mul_u64(cur, step);
            if num_integer::gcd(k, n) == 1 {
                best = best.min(cur);
            }
        }
        Ok(best)
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn mul_u64(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow_u64(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_u64(acc, base);
            }
            base = self.mul_u64(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = r.to_i64().expect("residue fits");
        self.reduce_i64(r)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_u64(*a, *b)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(*a, self.p - 2))
    }

    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a = self.add(a, b);
    }

    fn pow(&self, a: &u64, e: u64) -> u64 {
        self.pow_u64(*a, e)
    }

    fn root_of_unity(&self, n: u32, a: i64) -> Result<u64> {
        if let Some((m, _)) = self.roots {
            if m != n {
                return Err(Error::ContextMismatch(format!(
                    "context was built for order {m}, asked for order {n}"
                )));
            }
        }
        let zeta = self.primitive_root_of_unity(n)?;
        Ok(self.pow_u64(zeta, a.rem_euclid(i64::from(n)) as u64))
    }

    fn format_signed(&self, a: &u64) -> (bool, String) {
        (false, a.to_string())
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let v: u64 = match body.split_once('/') {
            Some((num, den)) => {
                let num = self.parse_elem(num)?;
                let den = self.parse_elem(den)?;
                self.div(&num, &den)?
            }
            None => {
                let v: BigInt = body
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid residue {s:?}")))?;
                self.from_bigint(&v)
            }
        };
        Ok(if neg { self.neg(&v) } else { v })
    }

    fn elem_to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::String(a.to_string())
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<u64> {
        self.parse_elem(super::json_str(v)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large_moduli() {
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(matches!(PrimeField::new(1 << 31), Err(Error::ModulusOutOfRange(_))));
        assert!(PrimeField::new(2_147_483_647 - 1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn inverse_of_three_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3).unwrap(), 5);
        assert_eq!(f.inv(&0), Err(Error::DivisionByZero));
    }

    #[test]
    fn cube_root_of_unity_mod_seven_is_two() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.root_of_unity(3, 1).unwrap(), 2);
        assert_eq!(f.root_of_unity(3, 2).unwrap(), 4);
        assert_eq!(f.root_of_unity(3, 3).unwrap(), 1);
    }

    #[test]
    fn missing_roots_are_a_context_error() {
        let f = PrimeField::new(5).unwrap();
        assert!(matches!(f.root_of_unity(3, 1), Err(Error::ContextMismatch(_))));
        assert!(PrimeField::for_order(11, 3).is_err());
        let g = PrimeField::for_order(13, 3).unwrap();
        assert!(g.root_of_unity(4, 1).is_err());
    }

    #[test]
    fn smallest_root_matches_brute_force() {
        for p in [7u64, 13, 31, 37, 41, 61, 101] {
            let f = PrimeField::new(p).unwrap();
            for n in 1..=12u32 {
                if (p - 1) % u64::from(n) != 0 {
                    continue;
                }
                let brute = (1..p)
                    .find(|&x| {
                        f.pow_u64(x, u64::from(n)) == 1
                            && (1..n).all(|k| f.pow_u64(x, u64::from(k)) != 1)
                    })
                    .unwrap();
                assert_eq!(f.primitive_root_of_unity(n).unwrap(), brute, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn parses_signed_and_fractional_residues() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse_elem("-1").unwrap(), 6);
        assert_eq!(f.parse_elem("1/3").unwrap(), 5);
        assert_eq!(f.parse_elem("15").unwrap(), 1);
    }
}
