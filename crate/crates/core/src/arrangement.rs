//! The Fermat arrangement of degree `n` in projective `N`-space: its defining
//! polynomial, the codimension-two flats on at least three hyperplanes, and
//! the explicit generators of the ideal of their union.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bracket::expand_indices;
use crate::error::{Error, Result};
use crate::field::{CyclotomicField, Field, Rationals};
use crate::linalg::rank;
use crate::par;
use crate::poly::{PolyRing, Polynomial, RingRef};

/// Ambient dimension `N` (so `N + 1` variables) and arrangement degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FermatConfig {
    #[serde(rename = "N")]
    dim: usize,
    #[serde(rename = "n")]
    degree: u32,
}

impl FermatConfig {
    /// The standing hypotheses `N >= 2`, `n >= 3`.
    pub fn new(dim: usize, degree: u32) -> Result<Self> {
        if dim < 2 || degree < 3 {
            return Err(Error::InvalidConfig(format!("need N >= 2 and n >= 3, got N = {dim}, n = {degree}")));
        }
        Ok(FermatConfig { dim, degree })
    }

    /// Accepts `N >= 1`, `n >= 1`; enough to build the defining polynomial.
    pub fn relaxed(dim: usize, degree: u32) -> Result<Self> {
        if dim < 1 || degree < 1 {
            return Err(Error::InvalidConfig(format!("need N >= 1 and n >= 1, got N = {dim}, n = {degree}")));
        }
        Ok(FermatConfig { dim, degree })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.dim + 1
    }

    pub fn is_even(&self) -> bool {
        self.dim.is_multiple_of(2)
    }

    /// `M` with `N = 2M` or `N = 2M + 1`.
    pub fn half(&self) -> usize {
        self.dim / 2
    }

    /// The polynomial ring in `x0..xN` over `field`, grevlex.
    pub fn ring<K: Field>(&self, field: K) -> RingRef<K> {
        PolyRing::new(field, self.nvars())
    }

    fn check_ring<K: Field>(&self, ring: &RingRef<K>) -> Result<()> {
        if ring.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: ring.nvars() });
        }
        Ok(())
    }
}

impl fmt::Display for FermatConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, n={}", self.dim, self.degree)
    }
}

/// `prod_{i<j} (x_i^n - x_j^n)`.
pub fn fermat_polynomial<K: Field>(cfg: &FermatConfig, ring: &RingRef<K>) -> Result<Polynomial<K>> {
    cfg.check_ring(ring)?;
    let all: Vec<usize> = (0..cfg.nvars()).collect();
    expand_indices(ring, &all, cfg.degree)
}

/// A codimension-two flat of the arrangement. `Coordinate(i, j)` is
/// `{x_i = x_j = 0}`; `Triple(i, j, k, a, b)` is
/// `{x_i = z^a x_j, x_j = z^b x_k}` for the context's root of unity `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Flat {
    #[serde(rename = "coord")]
    Coordinate { i: usize, j: usize },
    #[serde(rename = "triple")]
    Triple { i: usize, j: usize, k: usize, a: u32, b: u32 },
}

impl Flat {
    pub fn coordinate(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::DuplicateIndex(i));
        }
        Ok(Flat::Coordinate { i: i.min(j), j: i.max(j) })
    }

    /// Indices must be increasing; exponents are reduced mod `n`.
    pub fn triple(i: usize, j: usize, k: usize, a: i64, b: i64, n: u32) -> Result<Self> {
        if !(i < j && j < k) {
            return Err(Error::InvalidConfig(format!("triple flat needs i < j < k, got ({i}, {j}, {k})")));
        }
        let m = i64::from(n);
        Ok(Flat::Triple { i, j, k, a: a.rem_euclid(m) as u32, b: b.rem_euclid(m) as u32 })
    }

    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Flat::Coordinate { i, j } => vec![i, j],
            Flat::Triple { i, j, k, .. } => vec![i, j, k],
        }
    }

    /// Restricts `f` to the flat by eliminating the dependent coordinates:
    /// `x_i = x_j = 0`, or `x_j = z^b x_k, x_i = z^(a+b) x_k`.
    pub fn restrict<K: Field>(&self, f: &Polynomial<K>, n: u32) -> Result<Polynomial<K>> {
        let ring = f.ring();
        match *self {
            Flat::Coordinate { i, j } => {
                let zero = Polynomial::zero(ring);
                f.substitute_var(i, &zero)?.substitute_var(j, &zero)
            }
            Flat::Triple { i, j, k, a, b } => {
                let field = ring.field();
                let xk = Polynomial::var(ring, k);
                let xj = xk.scale(&field.root_of_unity(n, i64::from(b))?);
                let xi = xk.scale(&field.root_of_unity(n, i64::from(a) + i64::from(b))?);
                f.substitute_var(i, &xi)?.substitute_var(j, &xj)
            }
        }
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flat::Coordinate { i, j } => write!(f, "coord({i},{j})"),
            Flat::Triple { i, j, k, a, b } => write!(f, "triple({i},{j},{k};a={a},b={b})"),
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// `C(N+1, 2) + n^2 C(N+1, 3)`.
pub fn expected_flat_count(cfg: &FermatConfig) -> usize {
    let v = cfg.nvars();
    binomial(v, 2) + (cfg.degree as usize).pow(2) * binomial(v, 3)
}

/// Coordinate flats in lexicographic `(i, j)` order, then triple flats in
/// lexicographic `(i, j, k, a, b)` order.
pub fn enumerate_flats(cfg: &FermatConfig) -> Vec<Flat> {
    let v = cfg.nvars();
    let n = cfg.degree;
    let mut out = Vec::with_capacity(expected_flat_count(cfg));
    for i in 0..v {
        for j in i + 1..v {
            out.push(Flat::Coordinate { i, j });
        }
    }
    for i in 0..v {
        for j in i + 1..v {
            for k in j + 1..v {
                for a in 0..n {
                    for b in 0..n {
                        out.push(Flat::Triple { i, j, k, a, b });
                    }
                }
            }
        }
    }
    out
}

/// The two linear forms cutting out the flat.
pub fn flat_linear_forms<K: Field>(flat: &Flat, ring: &RingRef<K>, n: u32) -> Result<(Polynomial<K>, Polynomial<K>)> {
    for idx in flat.indices() {
        ring.check_index(idx)?;
    }
    let x = |t| Polynomial::var(ring, t);
    match *flat {
        Flat::Coordinate { i, j } => Ok((x(i), x(j))),
        Flat::Triple { i, j, k, a, b } => {
            let field = ring.field();
            let za = field.root_of_unity(n, i64::from(a))?;
            let zb = field.root_of_unity(n, i64::from(b))?;
            Ok((&x(i) - &x(j).scale(&za), &x(j) - &x(k).scale(&zb)))
        }
    }
}

/// A hyperplane `x_i - z^a x_j` (`i < j`) of the arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub a: u32,
}

pub fn hyperplanes(cfg: &FermatConfig) -> Vec<Hyperplane> {
    let v = cfg.nvars();
    let mut out = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            for a in 0..cfg.degree {
                out.push(Hyperplane { i, j, a });
            }
        }
    }
    out
}

pub fn hyperplane_form<K: Field>(h: &Hyperplane, ring: &RingRef<K>, n: u32) -> Result<Polynomial<K>> {
    let z = ring.field().root_of_unity(n, i64::from(h.a))?;
    Ok(&Polynomial::var(ring, h.i) - &Polynomial::var(ring, h.j).scale(&z))
}

fn coefficient_row<K: Field>(p: &Polynomial<K>) -> Vec<K::Elem> {
    let field = p.field();
    let mut row = vec![field.zero(); p.ring().nvars()];
    for (m, c) in p.terms() {
        let var = m.exponents().iter().position(|&e| e == 1).expect("linear form");
        row[var] = c.clone();
    }
    row
}

/// Counts the arrangement hyperplanes containing `flat` by testing every
/// hyperplane form for membership in the span of the flat's two forms.
pub fn hyperplanes_through_in<K: Field>(flat: &Flat, cfg: &FermatConfig, field: &K) -> Result<usize> {
    let ring = cfg.ring(field.clone());
    let n = cfg.degree;
    let (u, v) = flat_linear_forms(flat, &ring, n)?;
    let base = [coefficient_row(&u), coefficient_row(&v)];
    let mut count = 0;
    for h in hyperplanes(cfg) {
        let mut rows = base.to_vec();
        rows.push(coefficient_row(&hyperplane_form(&h, &ring, n)?));
        if rank(field, &rows) == 2 {
            count += 1;
        }
    }
    Ok(count)
}

/// [`hyperplanes_through_in`] over the cyclotomic field of order `n`.
pub fn hyperplanes_through(flat: &Flat, cfg: &FermatConfig) -> Result<usize> {
    hyperplanes_through_in(flat, cfg, &CyclotomicField::new(cfg.degree)?)
}

/// An index set `A` of the generator construction together with its
/// complement `B`, both sorted, inside an ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorSpec {
    chosen: Vec<usize>,
    rest: Vec<usize>,
}

/// `|A|` for an arrangement on `nvars` variables: `M` when `N = 2M`,
/// `M + 1` when `N = 2M + 1`.
pub fn chosen_size(nvars: usize) -> usize {
    nvars / 2
}

impl GeneratorSpec {
    pub fn new(cfg: &FermatConfig, chosen: Vec<usize>) -> Result<Self> {
        let vars: Vec<usize> = (0..cfg.nvars()).collect();
        Self::on_vars(&vars, chosen)
    }

    /// A spec relative to the variable list `vars` (used for cone ideals).
    pub fn on_vars(vars: &[usize], mut chosen: Vec<usize>) -> Result<Self> {
        chosen.sort_unstable();
        if let Some(w) = chosen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(w[0]));
        }
        if let Some(&bad) = chosen.iter().find(|c| !vars.contains(c)) {
            return Err(Error::IndexOutOfRange { index: bad, nvars: vars.len() });
        }
        let want = chosen_size(vars.len());
        if chosen.len() != want {
            return Err(Error::WrongSubsetSize { expected: want, got: chosen.len() });
        }
        let mut rest: Vec<usize> = vars.iter().copied().filter(|v| !chosen.contains(v)).collect();
        rest.sort_unstable();
        Ok(GeneratorSpec { chosen, rest })
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn rest(&self) -> &[usize] {
        &self.rest
    }

    /// `(prod_{i in A} x_i) [A] [B]`.
    pub fn build<K: Field>(&self, ring: &RingRef<K>, n: u32) -> Result<Polynomial<K>> {
        let mut g = expand_indices(ring, &self.chosen, n)?;
        g = &g * &expand_indices(ring, &self.rest, n)?;
        for &i in &self.chosen {
            g = &g * &Polynomial::var(ring, i);
        }
        Ok(g)
    }
}

/// `M + n M^2` for `N = 2M`, `(M + 1) + n M (M + 1)` for `N = 2M + 1`.
pub fn generator_degree(cfg: &FermatConfig) -> u64 {
    let m = cfg.half() as u64;
    let n = u64::from(cfg.degree);
    if cfg.is_even() {
        m + n * m * m
    } else {
        (m + 1) + n * m * (m + 1)
    }
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for t in start..items.len() {
            cur.push(items[t]);
            rec(items, size, t + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut cur, &mut out);
    out
}

/// All specs on `vars`, lexicographic in `A`.
pub fn generator_specs_on(vars: &[usize]) -> Vec<GeneratorSpec> {
    subsets(vars, chosen_size(vars.len()))
        .into_iter()
        .map(|a| GeneratorSpec::on_vars(vars, a).expect("subset has the right size"))
        .collect()
}

pub fn generator_specs(cfg: &FermatConfig) -> Vec<GeneratorSpec> {
    generator_specs_on(&(0..cfg.nvars()).collect::<Vec<_>>())
}

pub fn generator<K: Field>(spec: &GeneratorSpec, cfg: &FermatConfig, ring: &RingRef<K>) -> Result<Polynomial<K>> {
    cfg.check_ring(ring)?;
    let all: Vec<usize> = (0..cfg.nvars()).collect();
    if spec.chosen.len() != chosen_size(all.len()) || spec.chosen.len() + spec.rest.len() != all.len() {
        return Err(Error::WrongSubsetSize { expected: chosen_size(all.len()), got: spec.chosen.len() });
    }
    spec.build(ring, cfg.degree)
}

pub fn ideal_generators<K: Field>(cfg: &FermatConfig, ring: &RingRef<K>) -> Result<Vec<Polynomial<K>>> {
    cfg.check_ring(ring)?;
    generator_specs(cfg).iter().map(|s| s.build(ring, cfg.degree)).collect()
}

/// The generators of the dimension `N - 1` arrangement on the variables
/// other than `x_vertex`, inside the full ring.
pub fn cone_ideal_generators<K: Field>(
    cfg: &FermatConfig,
    vertex: usize,
    ring: &RingRef<K>,
) -> Result<Vec<Polynomial<K>>> {
    cfg.check_ring(ring)?;
    if cfg.dim < 3 {
        return Err(Error::InvalidConfig(format!("cone ideals need N >= 3, got N = {}", cfg.dim)));
    }
    ring.check_index(vertex)?;
    let vars: Vec<usize> = (0..cfg.nvars()).filter(|&v| v != vertex).collect();
    generator_specs_on(&vars).iter().map(|s| s.build(ring, cfg.degree)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// `lhs - rhs` (or `lhs + rhs`, whichever is shorter) when it fails.
    pub difference: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorIdentityReport {
    pub config: FermatConfig,
    /// The index set `A` the identities are stated for.
    pub chosen: Vec<usize>,
    pub identities: Vec<IdentityCheck>,
}

impl GeneratorIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

fn equal_up_to_sign<K: Field>(lhs: &Polynomial<K>, rhs: &Polynomial<K>) -> std::result::Result<(), String> {
    let minus = lhs - rhs;
    if minus.is_zero() {
        return Ok(());
    }
    let plus = lhs + rhs;
    if plus.is_zero() {
        return Ok(());
    }
    Err(if plus.len() < minus.len() { plus } else { minus }.to_string())
}

fn collect(name: &'static str, results: Vec<std::result::Result<(), String>>) -> IdentityCheck {
    let first_err = results.into_iter().find_map(|r| r.err());
    IdentityCheck { name, holds: first_err.is_none(), difference: first_err }
}

fn is_listed<K: Field>(p: &Polynomial<K>, list: &[Polynomial<K>]) -> std::result::Result<(), String> {
    if list.iter().any(|g| equal_up_to_sign(p, g).is_ok()) {
        Ok(())
    } else {
        Err(format!("not a cone generator: {p}"))
    }
}

/// Checks, over Q, the four identities behind the inductive generation
/// argument for `A = {0..M-1}` (even `N = 2M`) or `A = {0..M}`
/// (odd `N = 2M + 1`): `g_A` is divisible by a cone-ideal generator, that
/// divisor really is a cone generator, `g_A` is a signed sum of multiples of
/// cone generators, and those summands' generators are cone generators.
/// Both sides are compared up to an overall sign.
pub fn verify_generator_identities(cfg: &FermatConfig) -> Result<GeneratorIdentityReport> {
    if cfg.dim < 3 {
        return Err(Error::InvalidConfig(format!("the identities need N >= 3, got N = {}", cfg.dim)));
    }
    let ring = cfg.ring(Rationals);
    let n = cfg.degree;
    let m = cfg.half();
    let x = |t: usize| Polynomial::var(&ring, t);
    let br = |ix: &[usize]| expand_indices(&ring, ix, n);
    let pair = |a: usize, b: usize| expand_indices(&ring, &[a, b], n);
    let vars: Vec<usize> = (0..cfg.nvars()).collect();

    let chosen: Vec<usize> = if cfg.is_even() { (0..m).collect() } else { (0..=m).collect() };
    let g = GeneratorSpec::new(cfg, chosen.clone())?.build(&ring, n)?;

    let mut divisibility = Vec::new();
    let mut divisor_cone = Vec::new();
    let mut summand_cone = Vec::new();
    let signed_sum;

    if cfg.is_even() {
        let rest: Vec<usize> = (m..=2 * m).collect();
        for &i in &rest {
            let spec = GeneratorSpec::on_vars(&without(&vars, i), chosen.clone())?;
            let h = spec.build(&ring, n)?;
            let mut rhs = h.clone();
            for &j in rest.iter().filter(|&&j| j != i) {
                rhs = &rhs * &pair(j, i)?;
            }
            divisibility.push(equal_up_to_sign(&g, &rhs));
            divisor_cone.push(is_listed(&h, &cone_ideal_generators(cfg, i, &ring)?));
        }
        let cone0 = cone_ideal_generators(cfg, 0, &ring)?;
        let mut sum = Polynomial::zero(&ring);
        for j in 0..=m {
            let pivot = m + j;
            let mut a_j: Vec<usize> = (1..m).collect();
            a_j.push(pivot);
            let h = GeneratorSpec::on_vars(&without(&vars, 0), a_j)?.build(&ring, n)?;
            summand_cone.push(is_listed(&h, &cone0));
            let mut term = &(&x(0) * &Polynomial::var_pow(&ring, pivot, n - 1)) * &h;
            for t in 1..m {
                term = &term * &pair(0, t)?;
            }
            let s = if (j + m - 1).is_multiple_of(2) { 1 } else { -1 };
            sum = &sum + &term.scale(&Rationals.from_i64(s));
        }
        signed_sum = equal_up_to_sign(&g, &sum);
    } else {
        let rest: Vec<usize> = (m + 1..=2 * m + 1).collect();
        for &i in &chosen {
            let reduced = without(&chosen, i);
            let cone_vars = without(&vars, i);
            let h = GeneratorSpec::on_vars(&cone_vars, reduced.clone())?.build(&ring, n)?;
            debug_assert_eq!(GeneratorSpec::on_vars(&cone_vars, reduced)?.rest(), &rest[..]);
            let mut rhs = &x(i) * &h;
            for &j in chosen.iter().filter(|&&j| j != i) {
                rhs = &rhs * &pair(j, i)?;
            }
            divisibility.push(equal_up_to_sign(&g, &rhs));
            divisor_cone.push(is_listed(&h, &cone_ideal_generators(cfg, i, &ring)?));
        }
        let last = 2 * m + 1;
        let cone_last = cone_ideal_generators(cfg, last, &ring)?;
        let mut common = Polynomial::one(&ring);
        for t in m + 1..last {
            common = &common * &pair(t, last)?;
        }
        let mut sum = Polynomial::zero(&ring);
        for j in 0..=m {
            let spec = GeneratorSpec::on_vars(&without(&vars, last), without(&chosen, j))?;
            let h = spec.build(&ring, n)?;
            debug_assert_eq!(br(spec.rest())?, br(&[&[j][..], &(m + 1..last).collect::<Vec<_>>()].concat())?);
            summand_cone.push(is_listed(&h, &cone_last));
            let term = &(&x(j) * &common) * &h;
            let s = if j % 2 == 0 { 1 } else { -1 };
            sum = &sum + &term.scale(&Rationals.from_i64(s));
        }
        signed_sum = equal_up_to_sign(&g, &sum);
    }

    Ok(GeneratorIdentityReport {
        config: *cfg,
        chosen,
        identities: vec![
            collect("divisibility", divisibility),
            collect("signed_sum", vec![signed_sum]),
            collect("divisor_is_cone_generator", divisor_cone),
            collect("summands_are_cone_generators", summand_cone),
        ],
    })
}

fn without(items: &[usize], drop: usize) -> Vec<usize> {
    items.iter().copied().filter(|&v| v != drop).collect()
}

/// Checks that every generator restricts to zero on every flat, over the
/// cyclotomic field. Returns the offending `(generator index, flat)` pairs.
pub fn generators_vanishing_failures(cfg: &FermatConfig) -> Result<Vec<(usize, Flat)>> {
    let ring = cfg.ring(CyclotomicField::new(cfg.degree)?);
    let gens = ideal_generators(cfg, &ring)?;
    let flats = enumerate_flats(cfg);
    let per_flat = par::map(&flats, |flat| -> Result<Vec<(usize, Flat)>> {
        let mut bad = Vec::new();
        for (idx, g) in gens.iter().enumerate() {
            if !flat.restrict(g, cfg.degree)?.is_zero() {
                bad.push((idx, *flat));
            }
        }
        Ok(bad)
    });
    let mut out = Vec::new();
    for r in per_flat {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn cfg(dim: usize, n: u32) -> FermatConfig {
        FermatConfig::new(dim, n).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(FermatConfig::new(2, 2).is_err());
        assert!(FermatConfig::new(1, 3).is_err());
        assert!(FermatConfig::relaxed(1, 3).is_ok());
        assert!(FermatConfig::relaxed(0, 3).is_err());
        let v = serde_json::to_value(cfg(3, 4)).unwrap();
        assert_eq!(v, serde_json::json!({"N": 3, "n": 4}));
    }

    #[test]
    fn fermat_polynomial_examples() {
        let c = FermatConfig::relaxed(1, 3).unwrap();
        let r = c.ring(Rationals);
        assert_eq!(fermat_polynomial(&c, &r).unwrap(), Polynomial::parse(&r, "x0^3 - x1^3").unwrap());
        let c = cfg(2, 3);
        let r = c.ring(Rationals);
        let f = fermat_polynomial(&c, &r).unwrap();
        assert_eq!(f.total_degree(), Some(9));
        assert_eq!(f.len(), 6);
        let c = cfg(4, 3);
        assert_eq!(fermat_polynomial(&c, &c.ring(Rationals)).unwrap().total_degree(), Some(30));
        assert!(fermat_polynomial(&c, &PolyRing::new(Rationals, 3)).is_err());
    }

    #[test]
    fn fermat_polynomial_degree_formula() {
        for dim in 1..=5 {
            for n in 1..=5 {
                let c = FermatConfig::relaxed(dim, n).unwrap();
                let f = fermat_polynomial(&c, &c.ring(Rationals)).unwrap();
                assert_eq!(f.total_degree(), Some(u64::from(n) * (dim * (dim + 1) / 2) as u64));
            }
        }
    }

    #[test]
    fn flat_counts() {
        assert_eq!(enumerate_flats(&cfg(2, 3)).len(), 12);
        assert_eq!(enumerate_flats(&cfg(3, 3)).len(), 42);
        assert_eq!(enumerate_flats(&cfg(2, 4)).len(), 19);
        for dim in 2..=5 {
            for n in 3..=5 {
                let c = cfg(dim, n);
                assert_eq!(enumerate_flats(&c).len(), expected_flat_count(&c));
            }
        }
    }

    #[test]
    fn flat_serialization() {
        let f = Flat::coordinate(2, 0).unwrap();
        assert_eq!(serde_json::to_value(f).unwrap(), serde_json::json!({"kind": "coord", "i": 0, "j": 2}));
        let t = Flat::triple(0, 1, 2, -1, 5, 3).unwrap();
        assert_eq!(t, Flat::Triple { i: 0, j: 1, k: 2, a: 2, b: 2 });
        let v = serde_json::to_value(t).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "triple", "i": 0, "j": 1, "k": 2, "a": 2, "b": 2}));
        assert_eq!(serde_json::from_value::<Flat>(v).unwrap(), t);
        assert!(Flat::triple(1, 0, 2, 0, 0, 3).is_err());
    }

    #[test]
    fn linear_forms_examples() {
        let r = PolyRing::new(Rationals, 3);
        let (u, v) = flat_linear_forms(&Flat::coordinate(1, 2).unwrap(), &r, 3).unwrap();
        assert_eq!((u.to_string(), v.to_string()), ("1*x1".into(), "1*x2".into()));
        let (u, v) = flat_linear_forms(&Flat::triple(0, 1, 2, 0, 0, 3).unwrap(), &r, 3).unwrap();
        assert_eq!(u, Polynomial::parse(&r, "x0 - x1").unwrap());
        assert_eq!(v, Polynomial::parse(&r, "x1 - x2").unwrap());
        let r7 = PolyRing::new(PrimeField::new(7).unwrap(), 3);
        let (u, v) = flat_linear_forms(&Flat::triple(0, 1, 2, 1, 2, 3).unwrap(), &r7, 3).unwrap();
        assert_eq!(u, Polynomial::parse(&r7, "x0 - 2*x1").unwrap());
        assert_eq!(v, Polynomial::parse(&r7, "x1 - 4*x2").unwrap());
        // no cube root of unity in F_5 or Q
        assert!(flat_linear_forms(&Flat::triple(0, 1, 2, 1, 0, 3).unwrap(), &r, 3).is_err());
        let r5 = PolyRing::new(PrimeField::new(5).unwrap(), 3);
        assert!(flat_linear_forms(&Flat::triple(0, 1, 2, 1, 0, 3).unwrap(), &r5, 3).is_err());
    }

    #[test]
    fn hyperplane_counts() {
        let c3 = cfg(2, 3);
        assert_eq!(hyperplanes_through(&Flat::coordinate(0, 1).unwrap(), &c3).unwrap(), 3);
        let c5 = cfg(2, 5);
        assert_eq!(hyperplanes_through(&Flat::coordinate(0, 1).unwrap(), &c5).unwrap(), 5);
        for (a, b) in [(0, 0), (1, 2), (2, 1)] {
            assert_eq!(hyperplanes_through(&Flat::triple(0, 1, 2, a, b, 3).unwrap(), &c3).unwrap(), 3);
        }
        let c = cfg(3, 4);
        for flat in enumerate_flats(&c) {
            let want = if matches!(flat, Flat::Coordinate { .. }) { 4 } else { 3 };
            assert_eq!(hyperplanes_through(&flat, &c).unwrap(), want, "{flat}");
        }
    }

    #[test]
    fn generator_examples() {
        let c = cfg(2, 5);
        let r = c.ring(Rationals);
        let g = generator(&GeneratorSpec::new(&c, vec![0]).unwrap(), &c, &r).unwrap();
        assert_eq!(g, Polynomial::parse(&r, "x0*x1^5 - x0*x2^5").unwrap());
        let gens = ideal_generators(&c, &r).unwrap();
        let want = ["x0*x1^5 - x0*x2^5", "x1*x0^5 - x1*x2^5", "x2*x0^5 - x2*x1^5"];
        for (g, w) in gens.iter().zip(want) {
            assert_eq!(*g, Polynomial::parse(&r, w).unwrap());
        }

        let c = cfg(3, 3);
        let r = c.ring(Rationals);
        let g = generator(&GeneratorSpec::new(&c, vec![1, 0]).unwrap(), &c, &r).unwrap();
        let want = Polynomial::parse(&r, "x0*x1").unwrap()
            * Polynomial::parse(&r, "x0^3 - x1^3").unwrap()
            * Polynomial::parse(&r, "x2^3 - x3^3").unwrap();
        assert_eq!(g, want);
        assert_eq!(g.total_degree(), Some(8));
        assert_eq!(ideal_generators(&c, &r).unwrap().len(), 6);

        let c = cfg(4, 3);
        let r = c.ring(Rationals);
        let g = generator(&GeneratorSpec::new(&c, vec![0, 1]).unwrap(), &c, &r).unwrap();
        let want = Polynomial::parse(&r, "x0*x1*x0^3 - x0*x1*x1^3").unwrap() * expand_indices(&r, &[2, 3, 4], 3).unwrap();
        assert_eq!(g, want);
        assert_eq!(g.total_degree(), Some(14));
        assert_eq!(ideal_generators(&c, &r).unwrap().len(), 10);

        assert_eq!(GeneratorSpec::new(&c, vec![0]), Err(Error::WrongSubsetSize { expected: 2, got: 1 }));
        assert_eq!(GeneratorSpec::new(&c, vec![0, 0]), Err(Error::DuplicateIndex(0)));
    }

    #[test]
    fn generator_degrees_match_formula() {
        for dim in 2..=6 {
            let c = cfg(dim, 3);
            let r = c.ring(Rationals);
            for g in ideal_generators(&c, &r).unwrap() {
                assert_eq!(g.total_degree(), Some(generator_degree(&c)));
                assert!(g.is_homogeneous());
            }
        }
    }

    #[test]
    fn cone_generators() {
        let c = cfg(3, 3);
        let r = c.ring(Rationals);
        let cone = cone_ideal_generators(&c, 0, &r).unwrap();
        let want = ["x1*x2^3 - x1*x3^3", "x2*x1^3 - x2*x3^3", "x3*x1^3 - x3*x2^3"];
        assert_eq!(cone.len(), 3);
        for (g, w) in cone.iter().zip(want) {
            assert_eq!(*g, Polynomial::parse(&r, w).unwrap());
        }
        let base = cfg(2, 3);
        let small = ideal_generators(&base, &base.ring(Rationals)).unwrap();
        let cone3 = cone_ideal_generators(&c, 3, &r).unwrap();
        for (g, s) in cone3.iter().zip(&small) {
            assert_eq!(*g, s.embed(&r, &[0, 1, 2]).unwrap());
        }
        let c4 = cfg(4, 3);
        assert_eq!(cone_ideal_generators(&c4, 4, &c4.ring(Rationals)).unwrap().len(), 6);
        assert!(cone_ideal_generators(&base, 0, &base.ring(Rationals)).is_err());
    }

    #[test]
    fn generators_vanish_on_flats() {
        for dim in 2..=3 {
            for n in 3..=4 {
                assert!(generators_vanishing_failures(&cfg(dim, n)).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn fermat_is_product_of_hyperplane_forms() {
        for (dim, n) in [(2, 3), (2, 4), (3, 3)] {
            let c = cfg(dim, n);
            let r = c.ring(CyclotomicField::new(n).unwrap());
            let mut prod = Polynomial::one(&r);
            for h in hyperplanes(&c) {
                prod = &prod * &hyperplane_form(&h, &r, n).unwrap();
            }
            // each x_i^n - x_j^n is exactly the product of its n factors
            assert_eq!(prod, fermat_polynomial(&c, &r).unwrap());
        }
    }

    #[test]
    fn generator_identities_hold() {
        for dim in 3..=4 {
            let rep = verify_generator_identities(&cfg(dim, 3)).unwrap();
            assert_eq!(rep.identities.len(), 4);
            assert!(rep.all_hold(), "{rep:?}");
        }
    }
}
