//! Membership of a homogeneous polynomial in a homogeneous ideal, decided in
//! its own degree by exact linear algebra.
//!
//! Columns are the products `m * g` with `m` running over the monomials of
//! degree `deg f - deg g`; rows are monomials of degree `deg f`. Only rows
//! in the support of some column (or of `f`) are materialised. Columns are
//! reduced to a semi-echelon form keyed by their leading row, each pivot
//! carrying its expression in the original columns, so a successful
//! reduction of `f` yields a certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::par;
use crate::poly::{monomials_of_degree, Monomial, Polynomial, RingRef};

/// Cap on the logical size `rows * columns` of the linear system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBudget {
    pub max_cells: u64,
}

impl Default for GradedBudget {
    fn default() -> Self {
        GradedBudget { max_cells: 20_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    /// Integer elimination without fractions; used when every coefficient
    /// is rational.
    FractionFree,
    /// Elimination with normalised pivots over the coefficient field.
    FieldElimination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateTerm<K: Field> {
    pub generator: usize,
    pub multiplier: Monomial,
    pub coeff: K::Elem,
}

/// `f = sum coeff * multiplier * gens[generator]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<K: Field> {
    pub degree: u64,
    pub terms: Vec<CertificateTerm<K>>,
}

impl<K: Field> Certificate<K> {
    pub fn expand(&self, ring: &RingRef<K>, gens: &[Polynomial<K>]) -> Result<Polynomial<K>> {
        let mut acc = Polynomial::zero(ring);
        for t in &self.terms {
            let g = gens.get(t.generator).ok_or(Error::IndexOutOfRange { index: t.generator, nvars: gens.len() })?;
            acc = acc.checked_add(&g.to_ring(ring)?.checked_mul_term(&t.multiplier, &t.coeff)?)?;
        }
        Ok(acc)
    }

    /// Whether expanding the certificate gives back `f` exactly.
    pub fn reproduces(&self, f: &Polynomial<K>, gens: &[Polynomial<K>]) -> Result<bool> {
        Ok(self.expand(f.ring(), gens)? == *f)
    }

    pub fn to_json(&self, field: &K) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "generator": t.generator,
                    "monomial": t.multiplier.exponents(),
                    "coeff": field.elem_to_json(&t.coeff),
                })
            })
            .collect();
        serde_json::json!({ "degree": self.degree, "terms": terms })
    }

    pub fn from_json(field: &K, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("certificate: {what}"));
        let degree = v["degree"].as_u64().ok_or_else(|| bad("missing degree"))?;
        let terms = v["terms"]
            .as_array()
            .ok_or_else(|| bad("missing terms"))?
            .iter()
            .map(|t| {
                let generator = t["generator"].as_u64().ok_or_else(|| bad("generator"))? as usize;
                let exps: Vec<u32> = serde_json::from_value(t["monomial"].clone()).map_err(|e| bad(&e.to_string()))?;
                Ok(CertificateTerm {
                    generator,
                    multiplier: Monomial::from_exponents(&exps)?,
                    coeff: field.elem_from_json(&t["coeff"])?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate { degree, terms })
    }
}

#[derive(Debug, Clone)]
pub struct GradedMembership<K: Field> {
    pub degree: u64,
    /// Number of monomials of the target degree.
    pub rows: u64,
    /// Rows actually touched by the system.
    pub support_rows: usize,
    pub columns: usize,
    pub rank: usize,
    pub method: SolveMethod,
    /// `Some` when `f` lies in the ideal.
    pub certificate: Option<Certificate<K>>,
}

impl<K: Field> GradedMembership<K> {
    pub fn is_present(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn summary_json(&self) -> Value {
        serde_json::json!({
            "degree": self.degree,
            "rows": self.rows,
            "support_rows": self.support_rows,
            "columns": self.columns,
            "rank": self.rank,
            "method": self.method,
            "present": self.is_present(),
        })
    }
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, t| acc * u128::from(n - t) / u128::from(t + 1))
}

type SparseVec<C> = Vec<(u32, C)>;

/// Decides `f in (gens)` in degree `deg f`. Generators of higher degree
/// are ignored (they cannot contribute).
pub fn graded_membership<K: Field>(
    f: &Polynomial<K>,
    gens: &[Polynomial<K>],
    budget: GradedBudget,
) -> Result<GradedMembership<K>> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let gens = gens.iter().map(|g| g.to_ring(&ring)).collect::<Result<Vec<_>>>()?;
    if !f.is_homogeneous() || gens.iter().any(|g| g.is_zero() || !g.is_homogeneous()) {
        return Err(Error::Inhomogeneous);
    }
    let degree = f.total_degree().unwrap_or(0);
    let nv = ring.nvars() as u64;
    let rows = binomial_u128(degree + nv - 1, nv - 1);

    let mut specs: Vec<(usize, Monomial)> = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let dg = g.total_degree().expect("nonzero");
        if dg <= degree {
            for m in monomials_of_degree(ring.nvars(), (degree - dg) as u32) {
                specs.push((gi, m));
            }
        }
    }
    let cells = rows * specs.len() as u128;
    if cells > u128::from(budget.max_cells) {
        return Err(Error::ResourceLimit(format!(
            "graded system of {rows} x {} = {cells} cells exceeds the budget of {}",
            specs.len(),
            budget.max_cells
        )));
    }
    let mut result = GradedMembership {
        degree,
        rows: rows as u64,
        support_rows: 0,
        columns: specs.len(),
        rank: 0,
        method: SolveMethod::FieldElimination,
        certificate: None,
    };
    if f.is_zero() {
        result.certificate = Some(Certificate { degree, terms: Vec::new() });
        return Ok(result);
    }

    let rational = field.characteristic() == 0
        && f.terms().iter().chain(gens.iter().flat_map(|g| g.terms())).all(|(_, c)| field.to_rational(c).is_some());

    if rational {
        result.method = SolveMethod::FractionFree;
        let (f_int, f_den) = integer_terms(&field, f.terms());
        let gen_int: Vec<(Vec<(Monomial, BigInt)>, BigInt)> = gens.iter().map(|g| integer_terms(&field, g.terms())).collect();
        let gen_terms: Vec<Vec<(Monomial, BigInt)>> = gen_int.iter().map(|(t, _)| t.clone()).collect();
        let system = build_system(&ring, &gen_terms, &specs, &f_int);
        result.support_rows = system.support_rows;
        let (rank, relation) = eliminate_integer(system.columns, system.target);
        result.rank = rank;
        if let Some((t, w)) = relation {
            // t * f_int = -sum w_c * col_c, col_c = den_g * m_c * g, f = f_int / f_den
            let terms = w
                .into_iter()
                .map(|(c, wc)| {
                    let (gi, m) = &specs[c as usize];
                    let q = BigRational::new(-wc * &gen_int[*gi].1, &t * &f_den);
                    Ok(CertificateTerm { generator: *gi, multiplier: m.clone(), coeff: field.from_rational(&q)? })
                })
                .collect::<Result<Vec<_>>>()?;
            result.certificate = Some(Certificate { degree, terms });
        }
    } else {
        let gen_terms: Vec<Vec<(Monomial, K::Elem)>> = gens.iter().map(|g| g.terms().to_vec()).collect();
        let system = build_system(&ring, &gen_terms, &specs, f.terms());
        result.support_rows = system.support_rows;
        let (rank, relation) = eliminate_field(&field, system.columns, system.target);
        result.rank = rank;
        if let Some(w) = relation {
            let terms = w
                .into_iter()
                .map(|(c, wc)| {
                    let (gi, m) = &specs[c as usize];
                    CertificateTerm { generator: *gi, multiplier: m.clone(), coeff: field.neg(&wc) }
                })
                .collect();
            result.certificate = Some(Certificate { degree, terms });
        }
    }
    Ok(result)
}

/// Integer coefficients `c * den` with `den` the lcm of the denominators.
fn integer_terms<K: Field>(field: &K, terms: &[(Monomial, K::Elem)]) -> (Vec<(Monomial, BigInt)>, BigInt) {
    let rats: Vec<BigRational> = terms.iter().map(|(_, c)| field.to_rational(c).expect("rational")).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = terms
        .iter()
        .zip(&rats)
        .map(|((m, _), r)| (m.clone(), r.numer() * (&den / r.denom())))
        .collect();
    (ints, den)
}

struct System<C> {
    columns: Vec<SparseVec<C>>,
    target: SparseVec<C>,
    support_rows: usize,
}

/// Rows are numbered by decreasing monomial, so a column's leading row is
/// its leading monomial.
fn build_system<K: Field, C: Clone + Send + Sync>(
    ring: &RingRef<K>,
    gen_terms: &[Vec<(Monomial, C)>],
    specs: &[(usize, Monomial)],
    target: &[(Monomial, C)],
) -> System<C> {
    let products: Vec<Vec<(Monomial, C)>> = par::map(specs, |(gi, m)| {
        gen_terms[*gi].iter().map(|(gm, c)| (gm.mul(m), c.clone())).collect()
    });
    let mut monos: Vec<Monomial> =
        products.iter().flatten().map(|(m, _)| m.clone()).chain(target.iter().map(|(m, _)| m.clone())).collect();
    monos.sort_unstable_by(|a, b| ring.cmp(b, a));
    monos.dedup();
    let index: FxHashMap<&Monomial, u32> = monos.iter().enumerate().map(|(k, m)| (m, k as u32)).collect();
    let to_sparse = |terms: &[(Monomial, C)]| -> SparseVec<C> {
        let mut v: SparseVec<C> = terms.iter().map(|(m, c)| (index[m], c.clone())).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    };
    let columns = par::map(&products, |p| to_sparse(p));
    System { target: to_sparse(target), columns, support_rows: monos.len() }
}

/// `alpha * a - beta * b` on sparse integer vectors.
fn int_comb(a: &[(u32, BigInt)], alpha: &BigInt, b: &[(u32, BigInt)], beta: &BigInt) -> SparseVec<BigInt> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(u32::MAX, |e| e.0);
        let kb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ka < kb {
            out.push((ka, alpha * &a[i].1));
            i += 1;
        } else if kb < ka {
            out.push((kb, -(beta * &b[j].1)));
            j += 1;
        } else {
            let v = alpha * &a[i].1 - beta * &b[j].1;
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn remove_content(v: &mut SparseVec<BigInt>, w: &mut SparseVec<BigInt>, t: Option<&mut BigInt>) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter().chain(w.iter()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if let Some(t) = &t {
        g = g.gcd(t);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in v.iter_mut().chain(w.iter_mut()) {
        *x = &*x / &g;
    }
    if let Some(t) = t {
        *t = &*t / &g;
    }
}

/// Fraction-free semi-echelon reduction. Returns the rank and, when the
/// target lies in the column span, `(t, w)` with `t * target = -sum w_c col_c`.
fn eliminate_integer(
    columns: Vec<SparseVec<BigInt>>,
    target: SparseVec<BigInt>,
) -> (usize, Option<(BigInt, SparseVec<BigInt>)>) {
    let mut pivots: Vec<(SparseVec<BigInt>, SparseVec<BigInt>)> = Vec::new();
    let mut pivot_at: FxHashMap<u32, usize> = FxHashMap::default();
    let reduce = |v: &mut SparseVec<BigInt>,
                  w: &mut SparseVec<BigInt>,
                  mut t: Option<&mut BigInt>,
                  pivots: &[(SparseVec<BigInt>, SparseVec<BigInt>)],
                  pivot_at: &FxHashMap<u32, usize>| {
        let mut steps = 0u32;
        while let Some((r, a)) = v.first() {
            let Some(&k) = pivot_at.get(r) else { break };
            let (p, cp) = &pivots[k];
            let b = &p[0].1;
            let g = a.gcd(b);
            let alpha = b / &g;
            let beta = a / &g;
            *v = int_comb(v, &alpha, p, &beta);
            *w = int_comb(w, &alpha, cp, &beta);
            if let Some(t) = t.as_deref_mut() {
                *t = &*t * &alpha;
            }
            steps += 1;
            if steps.is_multiple_of(8) {
                remove_content(v, w, t.as_deref_mut());
            }
        }
        remove_content(v, w, t);
    };
    for (c, mut v) in columns.into_iter().enumerate() {
        let mut w = vec![(c as u32, BigInt::one())];
        reduce(&mut v, &mut w, None, &pivots, &pivot_at);
        if let Some((r, lead)) = v.first() {
            let (r, negative) = (*r, lead.is_negative());
            if negative {
                for (_, x) in v.iter_mut().chain(w.iter_mut()) {
                    *x = -&*x;
                }
            }
            pivot_at.insert(r, pivots.len());
            pivots.push((v, w));
        }
    }
    let rank = pivots.len();
    let mut v = target;
    let mut w = Vec::new();
    let mut t = BigInt::one();
    reduce(&mut v, &mut w, Some(&mut t), &pivots, &pivot_at);
    (rank, if v.is_empty() { Some((t, w)) } else { None })
}

/// `a - beta * b` over a field.
fn field_comb<K: Field>(field: &K, a: &[(u32, K::Elem)], beta: &K::Elem, b: &[(u32, K::Elem)]) -> SparseVec<K::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(u32::MAX, |e| e.0);
        let kb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, field.neg(&field.mul(beta, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(beta, &b[j].1));
            if !field.is_zero(&v) {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Semi-echelon reduction with monic pivots. Returns the rank and, when
/// the target lies in the span, `w` with `target = -sum w_c col_c`.
#[allow(clippy::type_complexity)]
fn eliminate_field<K: Field>(
    field: &K,
    columns: Vec<SparseVec<K::Elem>>,
    target: SparseVec<K::Elem>,
) -> (usize, Option<SparseVec<K::Elem>>) {
    let mut pivots: Vec<(SparseVec<K::Elem>, SparseVec<K::Elem>)> = Vec::new();
    let mut pivot_at: FxHashMap<u32, usize> = FxHashMap::default();
    let reduce = |v: &mut SparseVec<K::Elem>,
                  w: &mut SparseVec<K::Elem>,
                  pivots: &[(SparseVec<K::Elem>, SparseVec<K::Elem>)],
                  pivot_at: &FxHashMap<u32, usize>| {
        while let Some((r, a)) = v.first() {
            let Some(&k) = pivot_at.get(r) else { break };
            let a = a.clone();
            let (p, cp) = &pivots[k];
            *v = field_comb(field, v, &a, p);
            *w = field_comb(field, w, &a, cp);
        }
    };
    for (c, mut v) in columns.into_iter().enumerate() {
        let mut w = vec![(c as u32, field.one())];
        reduce(&mut v, &mut w, &pivots, &pivot_at);
        if let Some((r, lead)) = v.first() {
            let r = *r;
            let inv = field.inv(lead).expect("nonzero pivot");
            for (_, x) in v.iter_mut().chain(w.iter_mut()) {
                *x = field.mul(x, &inv);
            }
            pivot_at.insert(r, pivots.len());
            pivots.push((v, w));
        }
    }
    let rank = pivots.len();
    let mut v = target;
    let mut w = Vec::new();
    reduce(&mut v, &mut w, &pivots, &pivot_at);
    // v = target + sum w_c col_c
    (rank, if v.is_empty() { Some(w) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CyclotomicField, PrimeField, Rationals};
    use crate::poly::PolyRing;

    fn parse<K: Field>(r: &RingRef<K>, s: &[&str]) -> Vec<Polynomial<K>> {
        s.iter().map(|t| Polynomial::parse(r, t).unwrap()).collect()
    }

    #[test]
    fn single_multiple_gives_unit_certificate() {
        let r = PolyRing::new(Rationals, 3);
        let gens = parse(&r, &["x1^2 - x2^2", "x0*x2"]);
        let f = Polynomial::parse(&r, "x0*x1^2 - x0*x2^2").unwrap();
        let res = graded_membership(&f, &gens, GradedBudget::default()).unwrap();
        let cert = res.certificate.clone().unwrap();
        assert!(cert.reproduces(&f, &gens).unwrap());
        assert_eq!(res.method, SolveMethod::FractionFree);
        let nonzero: Vec<_> = cert.terms.iter().filter(|t| !t.coeff.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].generator, 0);
        assert_eq!(nonzero[0].multiplier.exponents(), &[1, 0, 0]);
        assert!(Rationals.is_one(&nonzero[0].coeff));
    }

    #[test]
    fn absent_example() {
        let r = PolyRing::new(Rationals, 2);
        let gens = parse(&r, &["x0^2", "x1^2"]);
        let res = graded_membership(&Polynomial::parse(&r, "x0*x1").unwrap(), &gens, GradedBudget::default()).unwrap();
        assert!(!res.is_present());
        assert_eq!((res.rows, res.columns, res.rank), (3, 2, 2));
        let f = Polynomial::parse(&r, "x0^2 + 1/2*x0*x1").unwrap();
        assert!(!graded_membership(&f, &gens, GradedBudget::default()).unwrap().is_present());
        let f = Polynomial::parse(&r, "x0^2*x1 + 1/2*x0*x1^2").unwrap();
        assert!(graded_membership(&f, &gens, GradedBudget::default()).unwrap().is_present());
    }

    #[test]
    fn rational_coefficients_and_json() {
        let r = PolyRing::new(Rationals, 3);
        let gens = parse(&r, &["1/2*x0 - 3*x1", "2/3*x1 + x2"]);
        let f = Polynomial::parse(&r, "5*x0^2 - 7/4*x1*x2 + x0*x2 - 4*x1^2").unwrap();
        // the common zero is (6 : 1 : -2/3); f does not vanish there
        assert!(!graded_membership(&f, &gens, GradedBudget::default()).unwrap().is_present());
        let g = &(&gens[0] * &Polynomial::parse(&r, "x0 + x2").unwrap()) + &(&gens[1] * &Polynomial::parse(&r, "3*x1").unwrap());
        let res2 = graded_membership(&g, &gens, GradedBudget::default()).unwrap();
        let cert = res2.certificate.unwrap();
        assert!(cert.reproduces(&g, &gens).unwrap());
        let back = Certificate::from_json(&Rationals, &cert.to_json(&Rationals)).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn field_path_over_primes_and_cyclotomics() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), 2);
        let gens = parse(&r, &["x0 - 2*x1"]);
        let f = Polynomial::parse(&r, "x0^2 - 4*x1^2").unwrap();
        let res = graded_membership(&f, &gens, GradedBudget::default()).unwrap();
        assert_eq!(res.method, SolveMethod::FieldElimination);
        assert!(res.certificate.unwrap().reproduces(&f, &gens).unwrap());

        let k = CyclotomicField::new(3).unwrap();
        let r = PolyRing::new(k, 2);
        let gens = parse(&r, &["x0 - [0,1]*x1"]);
        let f = Polynomial::parse(&r, "x0^3 - x1^3").unwrap();
        let res = graded_membership(&f, &gens, GradedBudget::default()).unwrap();
        assert_eq!(res.method, SolveMethod::FieldElimination);
        assert!(res.certificate.unwrap().reproduces(&f, &gens).unwrap());
        let f = Polynomial::parse(&r, "x0^3 + x1^3").unwrap();
        assert!(!graded_membership(&f, &gens, GradedBudget::default()).unwrap().is_present());
    }

    #[test]
    fn rejects_inhomogeneous_and_respects_budget() {
        let r = PolyRing::new(Rationals, 2);
        let gens = parse(&r, &["x0"]);
        assert_eq!(
            graded_membership(&Polynomial::parse(&r, "x0 + 1").unwrap(), &gens, GradedBudget::default()).unwrap_err(),
            Error::Inhomogeneous
        );
        let f = Polynomial::parse(&r, "x0^10").unwrap();
        let err = graded_membership(&f, &gens, GradedBudget { max_cells: 10 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
