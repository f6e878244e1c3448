//! Shared oracles and random-instance generators for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use fermat_core::arrangement::{enumerate_flats, flat_linear_forms, FermatConfig};
use fermat_core::field::{CycElem, CyclotomicField, Field, PrimeField, Rationals};
use fermat_core::ideal::{graded_membership, GradedBudget, GroebnerBudget, Ideal};
use fermat_core::poly::{Monomial, PolyRing, Polynomial, RingRef};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

/// Row echelon form with unit pivots, every pivot column cleared above and
/// below. Written independently of the crate's own elimination.
pub fn reduced_rows<K: Field>(k: &K, mut rows: Vec<Vec<K::Elem>>) -> Vec<Vec<K::Elem>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut done = 0;
    for col in 0..width {
        let Some(p) = (done..rows.len()).find(|&r| !k.is_zero(&rows[r][col])) else { continue };
        rows.swap(done, p);
        let inv = k.inv(&rows[done][col]).unwrap();
        rows[done] = rows[done].iter().map(|x| k.mul(x, &inv)).collect();
        for r in 0..rows.len() {
            if r != done && !k.is_zero(&rows[r][col]) {
                let f = rows[r][col].clone();
                let pivot = rows[done].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        done += 1;
    }
    rows.truncate(done);
    rows
}

fn hyperplane_row(k: &CyclotomicField, nv: usize, i: usize, j: usize, a: u32, n: u32) -> Vec<CycElem> {
    let mut row = vec![k.zero(); nv];
    row[i] = k.one();
    row[j] = k.neg(&k.root_of_unity(n, i64::from(a)).unwrap());
    row
}

/// Flats found by intersecting every pair of arrangement hyperplanes and
/// keeping the codimension-two spaces lying on at least three of them.
/// Keys are reduced row echelon forms of the defining equations; values
/// count the hyperplanes through the flat.
pub fn brute_force_flats(cfg: &FermatConfig) -> HashMap<Vec<Vec<CycElem>>, usize> {
    let n = cfg.degree();
    let nv = cfg.nvars();
    let k = CyclotomicField::new(n).unwrap();
    let mut planes = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            for a in 0..n {
                planes.push(hyperplane_row(&k, nv, i, j, a, n));
            }
        }
    }
    let mut out = HashMap::new();
    let mut seen = std::collections::HashSet::new();
    for (s, h1) in planes.iter().enumerate() {
        for h2 in &planes[s + 1..] {
            let key = reduced_rows(&k, vec![h1.clone(), h2.clone()]);
            if key.len() != 2 || !seen.insert(key.clone()) {
                continue;
            }
            let through = planes.iter().filter(|h| in_span(&k, &key, h)).count();
            if through >= 3 {
                out.insert(key, through);
            }
        }
    }
    out
}

/// Whether `row` is a combination of the rows of a reduced echelon form.
fn in_span<K: Field>(k: &K, reduced: &[Vec<K::Elem>], row: &[K::Elem]) -> bool {
    let mut rest = row.to_vec();
    for r in reduced {
        let pivot = r.iter().position(|x| !k.is_zero(x)).unwrap();
        let f = rest[pivot].clone();
        if !k.is_zero(&f) {
            for (x, y) in rest.iter_mut().zip(r) {
                *x = k.sub(x, &k.mul(&f, y));
            }
        }
    }
    rest.iter().all(|x| k.is_zero(x))
}

fn linear_row(p: &Polynomial<CyclotomicField>) -> Vec<CycElem> {
    let k = p.field();
    let mut row = vec![k.zero(); p.ring().nvars()];
    for (m, c) in p.terms() {
        let var = m.exponents().iter().position(|&e| e == 1).unwrap();
        row[var] = c.clone();
    }
    row
}

/// The crate's flats in the oracle's key format.
pub fn enumerated_flat_keys(cfg: &FermatConfig) -> Vec<Vec<Vec<CycElem>>> {
    let k = CyclotomicField::new(cfg.degree()).unwrap();
    let ring = cfg.ring(k.clone());
    enumerate_flats(cfg)
        .iter()
        .map(|f| {
            let (u, v) = flat_linear_forms(f, &ring, cfg.degree()).unwrap();
            reduced_rows(&k, vec![linear_row(&u), linear_row(&v)])
        })
        .collect()
}

/// A homogeneous polynomial as `(exponents, coefficient)` pairs of one degree.
pub type TermSpec = Vec<(Vec<u32>, i64)>;

fn split_degree(nv: usize, d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=d, nv - 1).prop_map(move |mut cuts| {
        cuts.push(0);
        cuts.push(d);
        cuts.sort_unstable();
        cuts.windows(2).map(|w| w[1] - w[0]).collect()
    })
}

pub fn homogeneous(nv: usize, d: u32, max_terms: usize) -> impl Strategy<Value = TermSpec> {
    prop::collection::vec((split_degree(nv, d), -3i64..=3), 1..=max_terms)
}

pub fn build<K: Field>(ring: &RingRef<K>, spec: &TermSpec) -> Polynomial<K> {
    let k = ring.field();
    Polynomial::from_terms(ring, spec.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), k.from_i64(*c))))
}

/// Up to three homogeneous generators in up to three variables, degree at
/// most three, with a target that is either random or a combination of the
/// generators.
#[derive(Debug, Clone)]
pub struct MembershipInstance {
    pub nvars: usize,
    pub gens: Vec<TermSpec>,
    pub target: TermSpec,
    /// Multipliers used when `combine` is set, one per generator.
    pub multipliers: Vec<TermSpec>,
    pub combine: bool,
}

pub fn membership_instance() -> impl Strategy<Value = MembershipInstance> {
    (1usize..=3, 1u32..=3, 0u32..=2).prop_flat_map(|(nv, gdeg, extra)| {
        let d = gdeg + extra;
        (
            prop::collection::vec(homogeneous(nv, gdeg, 3), 1..=3),
            homogeneous(nv, d, 4),
            prop::collection::vec(homogeneous(nv, extra, 2), 3),
            any::<bool>(),
        )
            .prop_map(move |(gens, target, multipliers, combine)| MembershipInstance {
                nvars: nv,
                gens,
                target,
                multipliers,
                combine,
            })
    })
}

impl MembershipInstance {
    pub fn realize<K: Field>(&self, field: K) -> (RingRef<K>, Vec<Polynomial<K>>, Polynomial<K>) {
        let ring = PolyRing::new(field, self.nvars);
        let gens: Vec<_> = self.gens.iter().map(|g| build(&ring, g)).collect();
        let target = if self.combine {
            gens.iter().zip(&self.multipliers).fold(Polynomial::zero(&ring), |acc, (g, m)| &acc + &(g * &build(&ring, m)))
        } else {
            build(&ring, &self.target)
        };
        (ring, gens, target)
    }
}

/// Graded membership and Groebner membership agree, and any certificate
/// expands back to the target. Returns whether the target was a member.
pub fn check_graded_against_groebner<K: Field>(inst: &MembershipInstance, field: K) -> Result<bool, TestCaseError> {
    let (ring, gens, f) = inst.realize(field);
    let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    prop_assume!(!gens.is_empty());
    let f = if f.is_zero() { build(&ring, &inst.target) } else { f };
    prop_assume!(!f.is_zero());
    let gb = Ideal::new(&ring, gens.clone()).unwrap().groebner(GroebnerBudget::default()).unwrap();
    let by_gb = gb.contains(&f).unwrap();
    let graded = graded_membership(&f, &gens, GradedBudget::default()).unwrap();
    prop_assert_eq!(graded.is_present(), by_gb, "f = {}, gens = {:?}", f, gens);
    if let Some(cert) = &graded.certificate {
        prop_assert_eq!(cert.expand(&ring, &gens).unwrap(), f.clone());
    }
    Ok(by_gb)
}

/// Normal forms are fixed points of reduction and differ from the input
/// by an ideal member.
pub fn check_normal_form_idempotent<K: Field>(inst: &MembershipInstance, field: K) -> Result<(), TestCaseError> {
    let (ring, gens, _) = inst.realize(field);
    let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    prop_assume!(!gens.is_empty());
    let f = build(&ring, &inst.target);
    let gb = Ideal::new(&ring, gens).unwrap().groebner(GroebnerBudget::default()).unwrap();
    let once = gb.normal_form(&f).unwrap();
    prop_assert_eq!(gb.normal_form(&once).unwrap(), once.clone());
    prop_assert!(gb.contains(&(&f - &once)).unwrap());
    Ok(())
}

/// Small field elements: integers, fractions, or integer combinations of
/// powers of the root of unity, depending on the field.
pub fn field_elem<K: Field>(k: &K, spec: &[(i64, i64)]) -> K::Elem {
    let (num, den) = spec[0];
    let base = k.from_rational(&BigRational::new(num.into(), den.max(1).into())).unwrap_or_else(|_| k.from_i64(num));
    match k.kind() {
        fermat_core::field::FieldKind::Cyclotomic { n } => spec.iter().enumerate().fold(k.zero(), |acc, (e, &(c, _))| {
            k.add(&acc, &k.mul(&k.from_i64(c), &k.root_of_unity(n, e as i64).unwrap()))
        }),
        _ => base,
    }
}

/// Field axioms on three elements.
pub fn check_field_axioms<K: Field>(k: &K, a: &K::Elem, b: &K::Elem, c: &K::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
    prop_assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
    prop_assert_eq!(k.add(a, b), k.add(b, a));
    prop_assert_eq!(k.mul(a, b), k.mul(b, a));
    prop_assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
    prop_assert!(k.is_zero(&k.add(a, &k.neg(a))));
    prop_assert_eq!(k.mul(a, &k.one()), a.clone());
    if k.is_zero(a) {
        prop_assert!(k.inv(a).is_err());
    } else {
        prop_assert!(k.is_one(&k.mul(a, &k.inv(a).unwrap())));
    }
    Ok(())
}

pub fn elem_spec() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=9), 1..=4)
}

/// Runs `test` on `cases` deterministic random inputs.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn fields_for_properties() -> (Rationals, PrimeField, CyclotomicField) {
    (Rationals, PrimeField::new(32003).unwrap(), CyclotomicField::new(5).unwrap())
}
