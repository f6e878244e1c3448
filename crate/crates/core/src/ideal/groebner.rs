use std::cmp::Ordering;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::Ideal;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, RingRef};

/// Upper bound on the number of S-polynomials Buchberger may reduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBudget {
    pub max_pairs: usize,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget { max_pairs: 50_000 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub coprime_skips: usize,
    pub chain_skips: usize,
    pub zero_reductions: usize,
}

/// A reduced Groebner basis: monic, no leading monomial divides another,
/// tails fully reduced, sorted by increasing leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<K: Field> {
    ring: RingRef<K>,
    basis: Vec<Polynomial<K>>,
    stats: GroebnerStats,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<K>] {
        &self.basis
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(Polynomial::is_constant)
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Result<Polynomial<K>> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial<K>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn to_ideal(&self) -> Ideal<K> {
        Ideal::new(&self.ring, self.basis.clone()).expect("basis lives in its ring")
    }
}

/// `p - c * q * tail` where `p` is ascending and `tail` is the descending
/// tail of a basis element; returns an ascending vector.
fn sub_scaled_ascending<K: Field>(
    ring: &PolyRing<K>,
    p: Vec<(Monomial, K::Elem)>,
    c: &K::Elem,
    q: &Monomial,
    tail: &[(Monomial, K::Elem)],
) -> Vec<(Monomial, K::Elem)> {
    let field = ring.field();
    let mut out = Vec::with_capacity(p.len() + tail.len());
    let mut a = p.into_iter().peekable();
    let mut b = tail.iter().rev().map(|(m, cm)| (m.mul(q), field.neg(&field.mul(c, cm)))).peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().expect("peeked")),
            Ordering::Greater => out.push(b.next().expect("peeked")),
            Ordering::Equal => {
                let (m, x) = a.next().expect("peeked");
                let (_, y) = b.next().expect("peeked");
                let s = field.add(&x, &y);
                if !field.is_zero(&s) {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

/// Full multivariate division of `f` by `divisors` (any leading
/// coefficients); returns the remainder.
pub(crate) fn reduce<K: Field>(f: &Polynomial<K>, divisors: &[Polynomial<K>]) -> Polynomial<K> {
    let ring = f.ring().clone();
    let field = ring.field();
    let inv_lc: Vec<K::Elem> = divisors
        .iter()
        .map(|g| field.inv(g.leading_coefficient().expect("nonzero divisor")).expect("nonzero"))
        .collect();
    let mut p: Vec<(Monomial, K::Elem)> = f.terms().iter().rev().cloned().collect();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.pop() {
        let hit = divisors.iter().position(|g| g.leading_monomial().expect("nonzero").divides(&m));
        match hit {
            Some(k) => {
                let g = &divisors[k];
                let q = g.leading_monomial().expect("nonzero").quotient_of(&m).expect("divides");
                let coeff = field.mul(&c, &inv_lc[k]);
                p = sub_scaled_ascending(&ring, p, &coeff, &q, &g.terms()[1..]);
            }
            None => rem.push((m, c)),
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

pub fn normal_form<K: Field>(f: &Polynomial<K>, gb: &GroebnerBasis<K>) -> Result<Polynomial<K>> {
    let f = f.to_ring(&gb.ring)?;
    Ok(reduce(&f, &gb.basis))
}

fn s_polynomial<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>) -> Polynomial<K> {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let field = f.field();
    let a = f.mul_term(&mf.quotient_of(&l).expect("lcm"), &field.inv(cf).expect("nonzero"));
    let b = g.mul_term(&mg.quotient_of(&l).expect("lcm"), &field.inv(cg).expect("nonzero"));
    &a - &b
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first, ties by pair index), the coprime criterion and the chain
/// criterion. The ideal's generators are taken in the ring of `order`.
pub fn buchberger<K: Field>(ideal: &Ideal<K>, order: &MonomialOrder, budget: GroebnerBudget) -> Result<GroebnerBasis<K>> {
    let ring = if ideal.ring().order() == order { ideal.ring().clone() } else { ideal.ring().reordered(order.clone()) };
    let gens = ideal.generators().iter().map(|g| g.to_ring(&ring)).collect::<Result<Vec<_>>>()?;
    groebner_in(&ring, gens, budget)
}

fn groebner_in<K: Field>(ring: &RingRef<K>, gens: Vec<Polynomial<K>>, budget: GroebnerBudget) -> Result<GroebnerBasis<K>> {
    let mut stats = GroebnerStats::default();
    let mut basis: Vec<Polynomial<K>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: FxHashSet<(usize, usize)> = FxHashSet::default();

    let add = |basis: &mut Vec<Polynomial<K>>, pairs: &mut Vec<Pair>, pending: &mut FxHashSet<(usize, usize)>, h: Polynomial<K>| {
        let h = h.make_monic();
        let t = basis.len();
        let lt = h.leading_monomial().expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading_monomial().expect("nonzero").lcm(&lt);
            pairs.push(Pair { i, j: t, lcm });
            pending.insert((i, t));
        }
        basis.push(h);
    };

    for g in gens {
        let r = reduce(&g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, &mut pending, r);
        }
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = ring.cmp(&pairs[k].lcm, &pairs[best].lcm).then((pairs[k].j, pairs[k].i).cmp(&(pairs[best].j, pairs[best].i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let lm_i = basis[i].leading_monomial().expect("nonzero");
        let lm_j = basis[j].leading_monomial().expect("nonzero");
        if lm_i.gcd_is_one(lm_j) {
            stats.coprime_skips += 1;
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lm_k = basis[k].leading_monomial().expect("nonzero");
            lm_k.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
                && lm_k.lcm(lm_i) != lcm
                && lm_k.lcm(lm_j) != lcm
        });
        if chain {
            stats.chain_skips += 1;
            continue;
        }

        stats.pairs_reduced += 1;
        if stats.pairs_reduced > budget.max_pairs {
            return Err(Error::ResourceLimit(format!("more than {} S-pairs", budget.max_pairs)));
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            stats.zero_reductions += 1;
        } else {
            add(&mut basis, &mut pairs, &mut pending, r);
        }
    }

    Ok(GroebnerBasis { ring: ring.clone(), basis: auto_reduce(ring, basis), stats })
}

fn auto_reduce<K: Field>(ring: &RingRef<K>, basis: Vec<Polynomial<K>>) -> Vec<Polynomial<K>> {
    // minimal basis: no leading monomial divisible by another (ties keep the first)
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect();
    let minimal: Vec<Polynomial<K>> = basis
        .iter()
        .enumerate()
        .filter(|&(k, _)| !lms.iter().enumerate().any(|(l, m)| l != k && m.divides(&lms[k]) && (m != &lms[k] || l < k)))
        .map(|(_, g)| g.clone())
        .collect();
    let mut out: Vec<Polynomial<K>> = (0..minimal.len())
        .map(|k| {
            let g = &minimal[k];
            let (m, c) = g.leading_term().expect("nonzero");
            let others: Vec<Polynomial<K>> =
                minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, h)| h.clone()).collect();
            let tail = Polynomial::from_sorted(ring, g.terms()[1..].to_vec());
            let head = Polynomial::monomial(ring, m.clone(), c.clone());
            (&head + &reduce(&tail, &others)).make_monic()
        })
        .collect();
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().expect("nonzero"), b.leading_monomial().expect("nonzero")));
    out
}
