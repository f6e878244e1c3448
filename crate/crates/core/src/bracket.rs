//! The bracket symbol `[x_{i_0} ... x_{i_k}] = prod_{p<q} (x_{i_p}^n - x_{i_q}^n)`
//! and exact checks of the identities it satisfies.
//!
//! Every identity check expands both sides completely and tests that the
//! difference is the zero polynomial.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::par;
use crate::poly::{PolyRing, Polynomial, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bracket {
    indices: Vec<usize>,
    n: u32,
}

/// Sorts distinct indices and returns the sign of the sorting permutation.
pub fn normalize(indices: &[usize]) -> Result<(Vec<usize>, i8)> {
    check_distinct(indices)?;
    let mut inversions = 0usize;
    for (p, a) in indices.iter().enumerate() {
        inversions += indices[p + 1..].iter().filter(|b| *b < a).count();
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    Ok((sorted, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

fn check_distinct(indices: &[usize]) -> Result<()> {
    for (p, a) in indices.iter().enumerate() {
        if indices[p + 1..].contains(a) {
            return Err(Error::DuplicateIndex(*a));
        }
    }
    Ok(())
}

/// `x_i^n - x_j^n`.
pub fn pair_factor<K: Field>(ring: &RingRef<K>, i: usize, j: usize, n: u32) -> Polynomial<K> {
    &Polynomial::var_pow(ring, i, n) - &Polynomial::var_pow(ring, j, n)
}

/// Expands the product for an arbitrary index list. A repeated index
/// contributes a factor `x_i^n - x_i^n`, so the result is zero.
pub fn expand_indices<K: Field>(ring: &RingRef<K>, indices: &[usize], n: u32) -> Result<Polynomial<K>> {
    for &i in indices {
        ring.check_index(i)?;
    }
    let mut acc = Polynomial::one(ring);
    for (q, &iq) in indices.iter().enumerate() {
        for &ip in &indices[..q] {
            if ip == iq {
                return Ok(Polynomial::zero(ring));
            }
            acc = &acc * &pair_factor(ring, ip, iq, n);
        }
    }
    Ok(acc)
}

impl Bracket {
    pub fn new(indices: Vec<usize>, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("bracket degree n must be at least 1".into()));
        }
        if indices.is_empty() {
            return Err(Error::InvalidConfig("a bracket needs at least one index".into()));
        }
        check_distinct(&indices)?;
        Ok(Bracket { indices, n })
    }

    /// Parses the literal syntax `[0 1 2]`.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bracket literal must look like [0 1 2], got {s:?}")))?;
        let indices = inner
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(indices, n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The bracket on sorted indices, with the sign relating it to `self`.
    pub fn normalize(&self) -> (Bracket, i8) {
        let (sorted, sign) = normalize(&self.indices).expect("indices are distinct");
        (Bracket { indices: sorted, n: self.n }, sign)
    }

    pub fn expand<K: Field>(&self, ring: &RingRef<K>) -> Result<Polynomial<K>> {
        expand_indices(ring, &self.indices, self.n)
    }

    pub fn degree(&self) -> u64 {
        let k = self.indices.len() as u64 - 1;
        u64::from(self.n) * k * (k + 1) / 2
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn without(indices: &[usize], j: usize) -> Vec<usize> {
    indices.iter().enumerate().filter(|&(p, _)| p != j).map(|(_, &i)| i).collect()
}

fn sign<K: Field>(ring: &RingRef<K>, odd: bool) -> K::Elem {
    ring.field().from_i64(if odd { -1 } else { 1 })
}

/// `[x_{i_0}..x_{i_k}] = [x_{i_0}..x_{i_{k-1}}] * prod_j (x_{i_j}^n - x_{i_k}^n)`.
pub fn verify_expansion_rule<K: Field>(ring: &RingRef<K>, indices: &[usize], n: u32) -> Result<bool> {
    check_distinct(indices)?;
    let k = indices.len() - 1;
    let lhs = expand_indices(ring, indices, n)?;
    let mut rhs = expand_indices(ring, &indices[..k], n)?;
    for &ij in &indices[..k] {
        rhs = &rhs * &pair_factor(ring, ij, indices[k], n);
    }
    Ok((&lhs - &rhs).is_zero())
}

/// `[x_{i_0}..x_{i_k}] = sum_j (-1)^(j+k) prod_{t != j} x_{i_t}^n * [.. x_{i_j} omitted ..]`.
pub fn verify_laplace<K: Field>(ring: &RingRef<K>, indices: &[usize], n: u32) -> Result<bool> {
    check_distinct(indices)?;
    let k = indices.len() - 1;
    let lhs = expand_indices(ring, indices, n)?;
    let mut rhs = Polynomial::zero(ring);
    for j in 0..=k {
        let rest = without(indices, j);
        let mut term = expand_indices(ring, &rest, n)?;
        for &t in &rest {
            term = &term * &Polynomial::var_pow(ring, t, n);
        }
        rhs = &rhs + &term.scale(&sign(ring, (j + k) % 2 == 1));
    }
    Ok((&lhs - &rhs).is_zero())
}

/// `[x_{i_0}..x_{i_k}] = sum_j [.. x_u in position j ..]`. When `u`
/// coincides with some `i_j`, brackets with a repeated entry count as 0.
pub fn verify_substitution<K: Field>(ring: &RingRef<K>, indices: &[usize], u: usize, n: u32) -> Result<bool> {
    check_distinct(indices)?;
    ring.check_index(u)?;
    let lhs = expand_indices(ring, indices, n)?;
    let mut rhs = Polynomial::zero(ring);
    for j in 0..indices.len() {
        let mut replaced = indices.to_vec();
        replaced[j] = u;
        rhs = &rhs + &expand_indices(ring, &replaced, n)?;
    }
    Ok((&lhs - &rhs).is_zero())
}

fn useful_rule_rhs<K: Field>(ring: &RingRef<K>, indices: &[usize], aux: &[usize], n: u32) -> Result<Polynomial<K>> {
    let mut rhs = Polynomial::zero(ring);
    for (j, &ij) in indices.iter().enumerate() {
        let mut term = expand_indices(ring, &without(indices, j), n)?;
        for &y in aux {
            term = &term * &pair_factor(ring, ij, y, n);
        }
        rhs = &rhs + &term.scale(&sign(ring, j % 2 == 1));
    }
    Ok(rhs)
}

/// `[x_0..x_k] = sum_j (-1)^j [.. x_j omitted ..] prod_t (x_j^n - y_t^n)`
/// with `aux` holding the `k` auxiliary variables `y_1..y_k`.
pub fn verify_useful_rule<K: Field>(ring: &RingRef<K>, indices: &[usize], aux: &[usize], n: u32) -> Result<bool> {
    check_distinct(indices)?;
    if aux.len() + 1 != indices.len() {
        return Err(Error::DimensionMismatch { expected: indices.len() - 1, got: aux.len() });
    }
    let mut all = indices.to_vec();
    all.extend_from_slice(aux);
    check_distinct(&all)?;
    let lhs = expand_indices(ring, indices, n)?;
    let rhs = useful_rule_rhs(ring, indices, aux, n)?;
    Ok((&lhs - &rhs).is_zero())
}

/// The useful rule after specializing `y_t := x_{i_t}`; every summand with
/// `j >= 1` then vanishes and the `j = 0` summand is the expansion rule.
pub fn verify_useful_rule_specialized<K: Field>(
    ring: &RingRef<K>,
    indices: &[usize],
    aux: &[usize],
    n: u32,
) -> Result<bool> {
    let lhs = expand_indices(ring, indices, n)?;
    let mut rhs = useful_rule_rhs(ring, indices, aux, n)?;
    for (t, &y) in aux.iter().enumerate() {
        rhs = rhs.substitute_var(y, &Polynomial::var(ring, indices[t + 1]))?;
    }
    Ok((&lhs - &rhs).is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Expansion,
    Laplace,
    /// Substitution with a fresh index `u`.
    SubstitutionFresh,
    /// Substitution with `u` equal to one of the bracket's indices.
    SubstitutionCollision,
    UsefulRule,
    UsefulRuleSpecialized,
}

impl Lemma {
    pub const ALL: [Lemma; 6] = [
        Lemma::Expansion,
        Lemma::Laplace,
        Lemma::SubstitutionFresh,
        Lemma::SubstitutionCollision,
        Lemma::UsefulRule,
        Lemma::UsefulRuleSpecialized,
    ];

    pub fn min_k(self) -> usize {
        match self {
            Lemma::Expansion | Lemma::UsefulRule | Lemma::UsefulRuleSpecialized => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Expansion => "expansion",
            Lemma::Laplace => "laplace",
            Lemma::SubstitutionFresh => "substitution (fresh u)",
            Lemma::SubstitutionCollision => "substitution (u collides)",
            Lemma::UsefulRule => "useful rule",
            Lemma::UsefulRuleSpecialized => "useful rule (y_t = x_t)",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCase {
    pub lemma: Lemma,
    pub k: usize,
    pub n: u32,
    pub holds: bool,
}

/// Runs one identity check over Q with indices `0..=k`; auxiliary and
/// fresh variables sit after them.
pub fn check_lemma(lemma: Lemma, k: usize, n: u32) -> Result<bool> {
    let indices: Vec<usize> = (0..=k).collect();
    match lemma {
        Lemma::Expansion => verify_expansion_rule(&PolyRing::new(Rationals, k + 1), &indices, n),
        Lemma::Laplace => verify_laplace(&PolyRing::new(Rationals, k + 1), &indices, n),
        Lemma::SubstitutionFresh => verify_substitution(&PolyRing::new(Rationals, k + 2), &indices, k + 1, n),
        Lemma::SubstitutionCollision => {
            let ring = PolyRing::new(Rationals, k + 1);
            for &u in &indices {
                if !verify_substitution(&ring, &indices, u, n)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Lemma::UsefulRule | Lemma::UsefulRuleSpecialized => {
            let mut names: Vec<String> = (0..=k).map(|i| format!("x{i}")).collect();
            names.extend((1..=k).map(|t| format!("y{t}")));
            let ring = PolyRing::with_names(Rationals, names, Default::default());
            let aux: Vec<usize> = (k + 1..=2 * k).collect();
            if lemma == Lemma::UsefulRule {
                verify_useful_rule(&ring, &indices, &aux, n)
            } else {
                verify_useful_rule_specialized(&ring, &indices, &aux, n)
            }
        }
    }
}

/// Every lemma for `k` up to `k_max` (respecting each lemma's minimum `k`)
/// and every `n` in `ns`, evaluated concurrently.
pub fn lemma_sweep(k_max: usize, ns: &[u32]) -> Result<Vec<LemmaCase>> {
    let mut cases = Vec::new();
    for lemma in Lemma::ALL {
        for &n in ns {
            for k in lemma.min_k()..=k_max {
                cases.push((lemma, k, n));
            }
        }
    }
    par::map(&cases, |&(lemma, k, n)| check_lemma(lemma, k, n).map(|holds| LemmaCase { lemma, k, n, holds }))
        .into_iter()
        .collect()
}
