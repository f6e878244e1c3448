//! Text, JSON and CAS-input formats for polynomials.
//!
//! Text: a signed sum of terms `c*x0^e0*x1^e1*...`, zero exponents and unit
//! exponents' `^1` omitted, coefficient always written. JSON:
//! `{"vars": [...], "terms": [{"c": ..., "e": [...]}]}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::monomial::Monomial;
use super::polynomial::{Polynomial, RingRef};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};

fn write_monomial(out: &mut String, m: &Monomial, names: &[String]) {
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => {
                out.push('*');
                out.push_str(&names[i]);
            }
            _ => {
                out.push('*');
                out.push_str(&names[i]);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

/// `x1^6*x2^3` with the default variable names; `1` for the unit.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        let mut out = String::new();
        write_monomial(&mut out, self, &names);
        f.write_str(&out[1..])
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = self.field();
        let names = self.ring().names();
        let mut out = String::new();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let (neg, mag) = field.format_signed(c);
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&mag);
            write_monomial(&mut out, m, names);
        }
        f.write_str(&out)
    }
}

/// Splits a signed sum at top-level `+`/`-` (outside brackets, and not the
/// sign of an exponent or a fraction denominator).
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut neg = false;
    let mut cur = String::new();
    let mut prev_significant: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        let is_sign = (ch == '+' || ch == '-')
            && depth == 0
            && !matches!(prev_significant, Some('^' | '/' | '*'));
        if is_sign {
            if !cur.trim().is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else {
                cur.clear();
                if ch == '-' {
                    neg = !neg;
                }
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev_significant = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur));
    }
    out
}

impl<K: Field> Polynomial<K> {
    /// Parses the text format. Variable names are resolved against the
    /// ring; a term may omit its coefficient (implicit 1).
    pub fn parse(ring: &RingRef<K>, s: &str) -> Result<Self> {
        let field = ring.field();
        let names = ring.names();
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero(ring));
        }
        let mut terms = Vec::new();
        for (neg, body) in split_terms(s) {
            let mut coeff = field.one();
            let mut mono = Monomial::one(ring.nvars());
            let factors = split_factors(&body);
            for (idx, factor) in factors.iter().enumerate() {
                let factor = factor.trim();
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                if let Some(v) = names.iter().position(|n| n == base) {
                    let exps = mono.exps_mut();
                    exps[v] = exps[v].checked_add(exp).ok_or(Error::ExponentOverflow)?;
                } else if idx == 0 && exp == 1 {
                    coeff = field.parse_elem(base)?;
                } else {
                    return Err(Error::Parse(format!("unknown factor {factor:?}")));
                }
            }
            if neg {
                coeff = field.neg(&coeff);
            }
            terms.push((Monomial::from_exponents(mono.exponents())?, coeff));
        }
        Ok(Self::from_terms(ring, terms))
    }

    pub fn to_json(&self) -> Value {
        let field = self.field();
        let terms: Vec<Value> = self
            .terms()
            .iter()
            .map(|(m, c)| serde_json::json!({ "c": field.elem_to_json(c), "e": m.exponents() }))
            .collect();
        serde_json::json!({ "vars": self.ring().names(), "terms": terms })
    }

    pub fn from_json(ring: &RingRef<K>, v: &Value) -> Result<Self> {
        let doc: JsonPoly = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.vars != ring.names() {
            return Err(Error::Parse(format!("variables {:?} do not match the ring", doc.vars)));
        }
        let field = ring.field();
        let terms = doc
            .terms
            .into_iter()
            .map(|t| {
                if t.e.len() != ring.nvars() {
                    return Err(Error::DimensionMismatch { expected: ring.nvars(), got: t.e.len() });
                }
                Ok((Monomial::from_exponents(&t.e)?, field.elem_from_json(&t.c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(ring, terms))
    }

    /// The polynomial in CAS input syntax (explicit `*` and `^`, root of
    /// unity written `z`).
    pub fn to_cas_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let field = self.field();
        let names = self.ring().names();
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({})", field.cas_coefficient(c));
                write_monomial(&mut s, m, names);
                s
            })
            .collect();
        parts.join("+")
    }
}

fn split_factors(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in body.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if ch == '*' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<String>,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    c: Value,
    e: Vec<u32>,
}

/// Target systems for generator-list export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasDialect {
    Macaulay2,
    Singular,
}

fn cas_ring_header<K: Field>(ring: &RingRef<K>, dialect: CasDialect) -> String {
    let vars = ring.names().join(",");
    match dialect {
        CasDialect::Macaulay2 => {
            let coeffs = match ring.field().kind() {
                FieldKind::Rational => "QQ".to_string(),
                FieldKind::Prime { p } => format!("ZZ/{p}"),
                FieldKind::Cyclotomic { n } => format!("toField(QQ[z]/cyclotomic({n}))"),
            };
            let prelude = match ring.field().kind() {
                FieldKind::Cyclotomic { .. } => "loadPackage \"Cyclotomic\";\n",
                _ => "",
            };
            format!("{prelude}R = {coeffs}[{vars}, MonomialOrder => GRevLex];\n")
        }
        CasDialect::Singular => {
            let (chr, minpoly) = match ring.field().kind() {
                FieldKind::Rational => ("0".to_string(), String::new()),
                FieldKind::Prime { p } => (p.to_string(), String::new()),
                FieldKind::Cyclotomic { n } => {
                    let phi = crate::field::cyclotomic_polynomial(n);
                    let terms: Vec<String> = phi
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0.into())
                        .map(|(i, c)| format!("({c})*z^{i}"))
                        .collect();
                    ("(0,z)".to_string(), format!("minpoly = {};\n", terms.join("+")))
                }
            };
            format!("ring R = {chr},({vars}),dp;\n{minpoly}")
        }
    }
}

fn cas_ideal<K: Field>(name: &str, gens: &[Polynomial<K>], dialect: CasDialect) -> String {
    let list: Vec<String> = gens.iter().map(Polynomial::to_cas_string).collect();
    let body = list.join(",\n  ");
    match dialect {
        CasDialect::Macaulay2 => format!("{name} = ideal(\n  {body}\n);\n"),
        CasDialect::Singular => format!("ideal {name} =\n  {body};\n"),
    }
}

/// A self-contained script that defines the ring and an ideal named `I`
/// from `gens`.
pub fn cas_export<K: Field>(ring: &RingRef<K>, gens: &[Polynomial<K>], dialect: CasDialect) -> String {
    cas_ring_header(ring, dialect) + &cas_ideal("I", gens, dialect)
}

/// One ring definition followed by several named ideals.
pub fn cas_export_ideals<K: Field>(
    ring: &RingRef<K>,
    ideals: &[(String, Vec<Polynomial<K>>)],
    dialect: CasDialect,
) -> String {
    let mut out = cas_ring_header(ring, dialect);
    for (name, gens) in ideals {
        out.push_str(&cas_ideal(name, gens, dialect));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CyclotomicField, PrimeField, Rationals};
    use crate::poly::PolyRing;

    #[test]
    fn text_round_trip_rational() {
        let r = PolyRing::new(Rationals, 3);
        let p = Polynomial::parse(&r, "3*x0^2*x1 - 1/2*x2 + 5").unwrap();
        assert_eq!(p.to_string(), "3*x0^2*x1 - 1/2*x2 + 5");
        assert_eq!(Polynomial::parse(&r, &p.to_string()).unwrap(), p);
        let q = Polynomial::parse(&r, "-x0 + x0").unwrap();
        assert!(q.is_zero());
        assert_eq!(q.to_string(), "0");
        let neg = Polynomial::parse(&r, "-2/3*x1^3").unwrap();
        assert_eq!(neg.to_string(), "-2/3*x1^3");
    }

    #[test]
    fn text_round_trip_cyclotomic_and_prime() {
        let k = CyclotomicField::new(3).unwrap();
        let r = PolyRing::new(k, 2);
        let p = Polynomial::parse(&r, "[1,-1/2]*x0 + [0,1]*x1^2").unwrap();
        assert_eq!(Polynomial::parse(&r, &p.to_string()).unwrap(), p);

        let r = PolyRing::new(PrimeField::new(7).unwrap(), 2);
        let p = Polynomial::parse(&r, "x0 - x1").unwrap();
        assert_eq!(p.to_string(), "1*x0 + 6*x1");
        assert_eq!(Polynomial::parse(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let k = CyclotomicField::new(4).unwrap();
        let r = PolyRing::new(k, 2);
        let p = Polynomial::parse(&r, "[1,2]*x0^3 - [0,1]*x1").unwrap();
        let v = p.to_json();
        assert_eq!(Polynomial::from_json(&r, &v).unwrap(), p);
        assert_eq!(v["vars"], serde_json::json!(["x0", "x1"]));
    }

    #[test]
    fn rejects_unknown_variables() {
        let r = PolyRing::new(Rationals, 2);
        assert!(Polynomial::parse(&r, "x3^2").is_err());
        assert!(Polynomial::parse(&r, "x0^q").is_err());
    }

    #[test]
    fn cas_scripts_mention_every_generator() {
        let r = PolyRing::new(Rationals, 2);
        let g = vec![Polynomial::parse(&r, "x0^2 - x1").unwrap(), Polynomial::parse(&r, "x1").unwrap()];
        let m2 = cas_export(&r, &g, CasDialect::Macaulay2);
        assert!(m2.starts_with("R = QQ[x0,x1"));
        assert!(m2.contains("(1)*x0^2+(-1)*x1"));
        let sing = cas_export(&r, &g, CasDialect::Singular);
        assert!(sing.starts_with("ring R = 0,(x0,x1),dp;"));
    }
}
