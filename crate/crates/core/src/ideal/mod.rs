//! Ideals in a polynomial ring: Groebner bases, normal forms, powers,
//! intersections, equality, and graded linear-algebra membership.

mod graded;
mod groebner;

pub use graded::{graded_membership, Certificate, CertificateTerm, GradedBudget, GradedMembership, SolveMethod};
pub use groebner::{buchberger, normal_form, GroebnerBasis, GroebnerBudget, GroebnerStats};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingRef};

/// A generator list in a fixed ring. Zero generators are dropped.
#[derive(Debug, Clone)]
pub struct Ideal<K: Field> {
    ring: RingRef<K>,
    gens: Vec<Polynomial<K>>,
}

impl<K: Field> Ideal<K> {
    pub fn new(ring: &RingRef<K>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal { ring: ring.clone(), gens })
    }

    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Groebner basis under the ring's own order.
    pub fn groebner(&self, budget: GroebnerBudget) -> Result<GroebnerBasis<K>> {
        buchberger(self, self.ring.order(), budget)
    }
}

fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(n, r, k, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

/// Products over all size-`r` multisets of generators, in lexicographic
/// order of the index multiset; repeated products are kept once.
pub fn ideal_power<K: Field>(ideal: &Ideal<K>, r: u32) -> Result<Ideal<K>> {
    if r < 1 {
        return Err(Error::InvalidConfig("ideal power needs r >= 1".into()));
    }
    let ring = ideal.ring();
    let mut out: Vec<Polynomial<K>> = Vec::new();
    for set in multisets(ideal.gens.len(), r as usize) {
        let p = set.iter().fold(Polynomial::one(ring), |acc, &k| &acc * &ideal.gens[k]);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ideal::new(ring, out)
}

pub fn ideal_product<K: Field>(a: &Ideal<K>, b: &Ideal<K>) -> Result<Ideal<K>> {
    let mut out: Vec<Polynomial<K>> = Vec::new();
    for f in &a.gens {
        for g in &b.gens {
            let p = f.checked_mul(&g.to_ring(&a.ring)?)?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ideal::new(&a.ring, out)
}

/// `a ∩ b` by elimination: in `K[t, x]` with `t` eliminated first, the
/// `t`-free part of a basis of `t a + (1 - t) b` generates the intersection.
/// The result's generators form a Groebner basis of `a ∩ b`.
pub fn ideal_intersection<K: Field>(a: &Ideal<K>, b: &Ideal<K>, budget: GroebnerBudget) -> Result<Ideal<K>> {
    let ring = a.ring();
    if !ring.compatible(b.ring()) {
        return Err(Error::RingMismatch);
    }
    let nv = ring.nvars();
    let mut names = vec![fresh_name(ring.names())];
    names.extend(ring.names().iter().cloned());
    let big = PolyRing::with_names(ring.field().clone(), names, MonomialOrder::block_elimination(1));
    let shift: Vec<usize> = (1..=nv).collect();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::new();
    for g in &a.gens {
        gens.push(&t * &g.embed(&big, &shift)?);
    }
    for g in &b.gens {
        gens.push(&one_minus_t * &g.to_ring(ring)?.embed(&big, &shift)?);
    }
    let gb = Ideal::new(&big, gens)?.groebner(budget)?;
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.degree_in_var(0) == 0)
        .map(|g| {
            Polynomial::from_terms(
                ring,
                g.terms().iter().map(|(m, c)| (Monomial::from_exponents(&m.exponents()[1..]).expect("fits"), c.clone())),
            )
        })
        .collect();
    Ideal::new(ring, kept)
}

fn fresh_name(names: &[String]) -> String {
    let mut name = "t".to_string();
    while names.contains(&name) {
        name.push('_');
    }
    name
}

/// Iterated intersection of a nonempty list.
pub fn intersect_all<K: Field>(ideals: &[Ideal<K>], budget: GroebnerBudget) -> Result<Ideal<K>> {
    let (first, rest) = ideals.split_first().ok_or_else(|| Error::InvalidConfig("nothing to intersect".into()))?;
    let mut acc = first.clone();
    for next in rest {
        acc = ideal_intersection(&acc, next, budget)?;
    }
    Ok(acc)
}

/// Whether every generator of `small` lies in `big`.
pub fn ideal_contains<K: Field>(big: &Ideal<K>, small: &Ideal<K>, budget: GroebnerBudget) -> Result<bool> {
    let gb = big.groebner(budget)?;
    for g in &small.gens {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality by inclusion both ways.
pub fn ideal_equality<K: Field>(a: &Ideal<K>, b: &Ideal<K>, budget: GroebnerBudget) -> Result<bool> {
    Ok(ideal_contains(a, b, budget)? && ideal_contains(b, a, budget)?)
}
