use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial ring `K[x_0, ..., x_{n-1}]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<K: Field> {
    field: K,
    nvars: usize,
    order: MonomialOrder,
    names: Vec<String>,
}

pub type RingRef<K> = Arc<PolyRing<K>>;

impl<K: Field> PolyRing<K> {
    /// Variables `x0..x{nvars-1}` under grevlex.
    pub fn new(field: K, nvars: usize) -> RingRef<K> {
        Self::with_order(field, nvars, MonomialOrder::grevlex())
    }

    pub fn with_order(field: K, nvars: usize, order: MonomialOrder) -> RingRef<K> {
        let names = (0..nvars).map(|i| format!("x{i}")).collect();
        Arc::new(PolyRing { field, nvars, order, names })
    }

    pub fn with_names(field: K, names: Vec<String>, order: MonomialOrder) -> RingRef<K> {
        Arc::new(PolyRing { field, nvars: names.len(), order, names })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Same field and variables; the order may differ.
    pub fn compatible(&self, other: &PolyRing<K>) -> bool {
        self.nvars == other.nvars && self.field == other.field
    }

    pub fn reordered(&self, order: MonomialOrder) -> RingRef<K> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a.exponents(), b.exponents())
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.nvars {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, nvars: self.nvars })
        }
    }
}

fn same_ring<K: Field>(a: &RingRef<K>, b: &RingRef<K>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A sparse polynomial. Terms are kept sorted by decreasing monomial under
/// the ring's order, with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone)]
pub struct Polynomial<K: Field> {
    ring: RingRef<K>,
    terms: Vec<(Monomial, K::Elem)>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &RingRef<K>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef<K>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef<K>, c: K::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn from_i64(ring: &RingRef<K>, c: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(c))
    }

    /// The variable `x_i`; panics when `i` is out of range.
    pub fn var(ring: &RingRef<K>, i: usize) -> Self {
        ring.check_index(i).expect("variable index");
        Self::monomial(ring, Monomial::var(ring.nvars, i), ring.field.one())
    }

    /// `x_i^e`.
    pub fn var_pow(ring: &RingRef<K>, i: usize, e: u32) -> Self {
        ring.check_index(i).expect("variable index");
        Self::monomial(ring, Monomial::one(ring.nvars).with_exponent(i, e), ring.field.one())
    }

    pub fn monomial(ring: &RingRef<K>, m: Monomial, c: K::Elem) -> Self {
        assert_eq!(m.nvars(), ring.nvars, "monomial length must match the ring");
        let terms = if ring.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(ring: &RingRef<K>, terms: impl IntoIterator<Item = (Monomial, K::Elem)>) -> Self {
        let field = &ring.field;
        let mut acc: FxHashMap<Monomial, K::Elem> = FxHashMap::default();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars, "monomial length must match the ring");
            match acc.get_mut(&m) {
                Some(v) => field.add_assign(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    /// Terms already sorted by decreasing monomial with no zeros.
    pub(crate) fn from_sorted(ring: &RingRef<K>, terms: Vec<(Monomial, K::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field.is_zero(c)));
        Polynomial { ring: ring.clone(), terms }
    }

    fn from_map(ring: &RingRef<K>, acc: FxHashMap<Monomial, K::Elem>) -> Self {
        let field = &ring.field;
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    pub fn field(&self) -> &K {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&K::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree in variable `i` (0 for the zero polynomial).
    pub fn degree_in_var(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[i]).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Re-expresses the polynomial in a compatible ring (same field and
    /// variable count), re-sorting for that ring's order.
    pub fn to_ring(&self, ring: &RingRef<K>) -> Result<Self> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        if !self.ring.compatible(ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    /// Renames variables: `x_i` becomes `target x_{map[i]}`. The target
    /// ring must share the field.
    pub fn embed(&self, target: &RingRef<K>, map: &[usize]) -> Result<Self> {
        if map.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch { expected: self.ring.nvars, got: map.len() });
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        for &t in map {
            target.check_index(t)?;
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(target.nvars);
            for (i, &e) in m.exponents().iter().enumerate() {
                out.exps_mut()[map[i]] += e;
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = &self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &K::Elem| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), take_b(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        self.mul_impl(other, None)
    }

    fn mul_impl(&self, other: &Self, trunc: Option<(&[usize], u64)>) -> Result<Self> {
        let field = &self.ring.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if trunc.is_none() {
            if self.terms.len() == 1 {
                let (m, c) = &self.terms[0];
                return other.checked_mul_term(m, c);
            }
            if other.terms.len() == 1 {
                let (m, c) = &other.terms[0];
                return self.checked_mul_term(m, c);
            }
        }
        let mut acc: FxHashMap<Monomial, K::Elem> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default());
        for (ma, ca) in &self.terms {
            let da = trunc.map(|(vars, _)| ma.degree_in(vars));
            for (mb, cb) in &other.terms {
                if let (Some((vars, cap)), Some(da)) = (trunc, da) {
                    if da + mb.degree_in(vars) >= cap {
                        continue;
                    }
                }
                let m = ma.checked_mul(mb)?;
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => field.add_assign(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// `c * m * self`; the order is multiplicative, so no re-sort is needed.
    pub fn checked_mul_term(&self, m: &Monomial, c: &K::Elem) -> Result<Self> {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Ok(Self::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| Ok((mm.checked_mul(m)?, field.mul(cc, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul_term(&self, m: &Monomial, c: &K::Elem) -> Self {
        self.checked_mul_term(m, c).expect("monomial exponent overflow")
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars), c)
    }

    /// `self - c * m * g` in place, used by reduction.
    #[allow(dead_code)]
    pub(crate) fn sub_scaled(&mut self, c: &K::Elem, m: &Monomial, g: &Self) {
        let shifted = g.mul_term(m, c);
        *self = self.merge(&shifted, true);
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if self.ring.field.is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.ring.field.inv(lc).expect("leading coefficient is non-zero");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_impl(e, None).expect("monomial exponent overflow")
    }

    fn pow_impl(&self, mut e: u32, trunc: Option<(&[usize], u64)>) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base, trunc)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base, trunc)?;
            }
        }
        Ok(acc)
    }

    /// Replaces every occurrence of `x_i` by `r`.
    pub fn substitute_var(&self, i: usize, r: &Self) -> Result<Self> {
        self.ring.check_index(i)?;
        self.check_ring(r)?;
        let field = &self.ring.field;
        let mut powers: Vec<Self> = vec![Self::one(&self.ring)];
        let mut acc: FxHashMap<Monomial, K::Elem> = FxHashMap::default();
        for (m, c) in &self.terms {
            let e = m.exponents()[i] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("non-empty").checked_mul(r)?;
                powers.push(next);
            }
            let rest = m.with_exponent(i, 0);
            for (pm, pc) in &powers[e].terms {
                let mm = pm.checked_mul(&rest)?;
                let cc = field.mul(pc, c);
                match acc.get_mut(&mm) {
                    Some(v) => field.add_assign(v, &cc),
                    None => {
                        acc.insert(mm, cc);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        self.ring.check_index(i)?;
        let field = &self.ring.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            (e > 0).then(|| (m.with_exponent(i, e - 1), field.mul(c, &field.from_i64(i64::from(e)))))
        });
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coefficient_of(&self, m: &Monomial) -> K::Elem {
        match self.terms.binary_search_by(|(t, _)| self.ring.cmp(m, t)) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => self.ring.field.zero(),
        }
    }

    /// Simultaneous substitution `x_i -> images[i]`; the images live in a
    /// common target ring over the same field.
    pub fn linear_substitution(&self, images: &[Self]) -> Result<Self> {
        self.substitute_images(images, None)
    }

    /// As [`linear_substitution`](Self::linear_substitution), keeping only
    /// terms whose degree in `vars` is below `cap`.
    pub fn linear_substitution_truncated(&self, images: &[Self], vars: &[usize], cap: u64) -> Result<Self> {
        self.substitute_images(images, Some((vars, cap)))
    }

    fn substitute_images(&self, images: &[Self], trunc: Option<(&[usize], u64)>) -> Result<Self> {
        if images.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch { expected: self.ring.nvars, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if target.field != self.ring.field || images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        if let Some((vars, _)) = trunc {
            for &v in vars {
                target.check_index(v)?;
            }
        }
        let field = &self.ring.field;
        let mut cache: FxHashMap<(usize, u32), Self> = FxHashMap::default();
        let mut acc = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(&target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry((v, e)) {
                    slot.insert(images[v].pow_impl(e, trunc)?);
                }
                prod = prod.mul_impl(&cache[&(v, e)], trunc)?;
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.merge(&prod, false);
        }
        debug_assert!(acc.terms.iter().all(|(_, c)| !field.is_zero(c)));
        Ok(acc)
    }

    /// Minimum over terms of the summed exponents of `vars`.
    pub fn min_degree_in(&self, vars: &[usize]) -> Result<u64> {
        for &v in vars {
            self.ring.check_index(v)?;
        }
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(vars))
            .min()
            .ok_or(Error::ZeroPolynomial)
    }
}

impl<K: Field> Add for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn add(self, rhs: Self) -> Polynomial<K> {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<K: Field> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn sub(self, rhs: Self) -> Polynomial<K> {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<K: Field> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn mul(self, rhs: Self) -> Polynomial<K> {
        self.checked_mul(rhs).expect("ring mismatch or exponent overflow")
    }
}

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;

    fn neg(self) -> Polynomial<K> {
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }
}

impl<K: Field> Add for Polynomial<K> {
    type Output = Polynomial<K>;

    fn add(self, rhs: Self) -> Polynomial<K> {
        &self + &rhs
    }
}

impl<K: Field> Sub for Polynomial<K> {
    type Output = Polynomial<K>;

    fn sub(self, rhs: Self) -> Polynomial<K> {
        &self - &rhs
    }
}

impl<K: Field> Mul for Polynomial<K> {
    type Output = Polynomial<K>;

    fn mul(self, rhs: Self) -> Polynomial<K> {
        &self * &rhs
    }
}

impl<K: Field> Neg for Polynomial<K> {
    type Output = Polynomial<K>;

    fn neg(self) -> Polynomial<K> {
        -&self
    }
}

/// Product of a sequence of polynomials; the empty product is 1.
pub fn product<K: Field>(ring: &RingRef<K>, factors: impl IntoIterator<Item = Polynomial<K>>) -> Polynomial<K> {
    factors.into_iter().fold(Polynomial::one(ring), |acc, f| &acc * &f)
}
