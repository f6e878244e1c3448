use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{fermat_polynomial, generator_specs, FermatConfig, GeneratorSpec};
use crate::error::{Error, Result};
use crate::field::{format_rational, Rationals};
use crate::par;
use crate::poly::{Monomial, Polynomial, RingRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// One exactly computed coefficient, with the value the argument needs.
#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub name: &'static str,
    /// Variable set to zero before extracting the coefficient.
    pub zeroed: usize,
    pub monomial: String,
    pub exponents: Vec<u32>,
    pub expected: i64,
    pub computed: String,
    pub matches: bool,
}

/// Every generator pair whose reduced product has a monomial dividing the
/// target, i.e. every pair that could feed the target coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessScan {
    pub target: &'static str,
    pub zeroed: usize,
    pub pairs_scanned: usize,
    /// `(first, second, number of dividing monomials)`, by generator index.
    pub contributing: Vec<(usize, usize, usize)>,
    /// Only the distinguished square contributes, through one monomial.
    pub unique: bool,
}

/// The second target as literally printed for even `N`: `x_1` raised to
/// `2Nn`. Informational; its coefficient is expected to be zero.
#[derive(Debug, Clone, Serialize)]
pub struct LiteralPattern {
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofTrace {
    pub config: FermatConfig,
    pub parity: Parity,
    /// Index of the distinguished generator in the generator list.
    pub generator_index: usize,
    pub chosen: Vec<usize>,
    pub cofactor: String,
    pub cofactor_exponents: Vec<u32>,
    pub steps: Vec<TraceStep>,
    /// The two cofactor coefficients the argument compares.
    pub contradiction: bool,
    pub literal_pattern: Option<LiteralPattern>,
    pub uniqueness: Vec<UniquenessScan>,
}

impl ProofTrace {
    pub fn all_match(&self) -> bool {
        self.steps.iter().all(|s| s.matches) && self.contradiction && self.uniqueness.iter().all(|u| u.unique)
    }
}

struct Plan {
    parity: Parity,
    chosen: Vec<usize>,
    first: Vec<u32>,
    first_sign: i64,
    second_zeroed: usize,
    second: Vec<u32>,
    second_sign: i64,
}

#[allow(clippy::needless_range_loop)]
fn plan(cfg: &FermatConfig) -> Plan {
    let nv = cfg.nvars();
    let n = cfg.degree();
    let m = cfg.half();
    let mut first = vec![0u32; nv];
    let mut second = vec![0u32; nv];
    if cfg.is_even() {
        // N = 2M
        for i in 1..=2 * m {
            first[i] = (2 * m + 1 - i) as u32 * n;
        }
        for i in 1..=(2 * m - 2) {
            second[i] = (2 * m + 1 - i) as u32 * n;
        }
        second[0] = 2 * n;
        second[2 * m] = n;
        Plan {
            parity: Parity::Even,
            chosen: (1..=m).map(|k| 2 * k).collect(),
            first,
            first_sign: 1,
            second_zeroed: 2 * m - 1,
            second,
            second_sign: -1,
        }
    } else {
        // N = 2M + 1
        for i in 1..=2 * m + 1 {
            first[i] = (2 * m + 2 - i) as u32 * n;
        }
        for i in 1..=(2 * m - 1) {
            second[i] = (2 * m + 2 - i) as u32 * n;
        }
        second[0] = 2 * n;
        second[2 * m + 1] = n;
        Plan {
            parity: Parity::Odd,
            chosen: (0..=m).map(|k| 2 * k + 1).collect(),
            first,
            first_sign: -1,
            second_zeroed: 2 * m,
            second,
            second_sign: 1,
        }
    }
}

fn zeroed(p: &Polynomial<Rationals>, var: usize) -> Result<Polynomial<Rationals>> {
    p.substitute_var(var, &Polynomial::zero(p.ring()))
}

fn step(
    name: &'static str,
    zeroed: usize,
    m: &Monomial,
    expected: i64,
    computed: &BigRational,
) -> TraceStep {
    TraceStep {
        name,
        zeroed,
        monomial: m.to_string(),
        exponents: m.exponents().to_vec(),
        expected,
        computed: format_rational(computed),
        matches: *computed == BigRational::from_integer(BigInt::from(expected)),
    }
}

fn ratio(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_zero() {
        BigRational::zero()
    } else {
        a / b
    }
}

fn scan(
    target: &'static str,
    gens: &[Polynomial<Rationals>],
    var: usize,
    mono: &Monomial,
    distinguished: usize,
) -> Result<UniquenessScan> {
    let reduced = gens.iter().map(|g| zeroed(g, var)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..gens.len()).flat_map(|a| (a..gens.len()).map(move |b| (a, b))).collect();
    let counts = par::map(&pairs, |&(a, b)| {
        let prod = &reduced[a] * &reduced[b];
        prod.terms().iter().filter(|(t, _)| t.divides(mono)).count()
    });
    let contributing: Vec<(usize, usize, usize)> =
        pairs.iter().zip(counts).filter(|(_, c)| *c > 0).map(|(&(a, b), c)| (a, b, c)).collect();
    let unique = contributing == [(distinguished, distinguished, 1)];
    Ok(UniquenessScan { target, zeroed: var, pairs_scanned: pairs.len(), contributing, unique })
}

/// Recomputes the coefficients the non-membership argument rests on: the
/// target monomial in `F` with `x_0 = 0`, the matching monomial in the
/// square of the distinguished generator, and the same pair after setting
/// a second variable to zero. The two implied cofactor coefficients must
/// disagree. With `scan_pairs`, every generator pair is checked for a way
/// to reach either target.
pub fn proof_trace(cfg: &FermatConfig, scan_pairs: bool) -> Result<ProofTrace> {
    if cfg.dim() < 2 || cfg.degree() < 3 {
        return Err(Error::InvalidConfig(format!("proof trace needs N >= 2 and n >= 3, got {cfg}")));
    }
    let n = cfg.degree();
    let ring: RingRef<Rationals> = cfg.ring(Rationals);
    let nv = cfg.nvars();
    let p = plan(cfg);
    let spec = GeneratorSpec::new(cfg, p.chosen.clone())?;
    let specs = generator_specs(cfg);
    let index = specs.iter().position(|s| *s == spec).expect("distinguished generator is listed");
    let g = spec.build(&ring, n)?;
    let f = fermat_polynomial(cfg, &ring)?;

    let mut cof = vec![0u32; nv];
    for &i in &p.chosen {
        cof[i] = n - 2;
    }
    let cofactor = Monomial::from_exponents(&cof)?;
    let first = Monomial::from_exponents(&p.first)?;
    let second = Monomial::from_exponents(&p.second)?;
    let quotient = |m: &Monomial| {
        cofactor.quotient_of(m).ok_or_else(|| Error::InvalidConfig(format!("{cofactor} does not divide {m}")))
    };
    let first_rest = quotient(&first)?;
    let second_rest = quotient(&second)?;

    let f_first = zeroed(&f, 0)?;
    let g_first = zeroed(&g, 0)?;
    let g_first_sq = &g_first * &g_first;
    let c1 = f_first.coefficient_of(&first);
    let s1 = g_first_sq.coefficient_of(&first_rest);
    let h1 = ratio(&c1, &s1);

    let z = p.second_zeroed;
    let f_second = zeroed(&f, z)?;
    let g_second = zeroed(&g, z)?;
    let g_second_sq = &g_second * &g_second;
    let c2 = f_second.coefficient_of(&second);
    let s2 = g_second_sq.coefficient_of(&second_rest);
    let h2 = ratio(&c2, &s2);

    let steps = vec![
        step("target-in-fermat", 0, &first, p.first_sign, &c1),
        step("target-over-cofactor-in-square", 0, &first_rest, 1, &s1),
        step("cofactor-coefficient", 0, &cofactor, p.first_sign, &h1),
        step("second-target-in-fermat", z, &second, p.second_sign, &c2),
        step("second-target-over-cofactor-in-square", z, &second_rest, 1, &s2),
        step("second-cofactor-coefficient", z, &cofactor, p.second_sign, &h2),
    ];
    let contradiction = !s1.is_zero() && !s2.is_zero() && h1 != h2;

    let literal_pattern = if p.parity == Parity::Even {
        let mut lit = p.second.clone();
        lit[1] = 2 * cfg.dim() as u32 * n;
        let lit = Monomial::from_exponents(&lit)?;
        Some(LiteralPattern { monomial: lit.to_string(), coefficient: format_rational(&f_second.coefficient_of(&lit)) })
    } else {
        None
    };

    let mut uniqueness = Vec::new();
    if scan_pairs {
        let gens = specs.iter().map(|s| s.build(&ring, n)).collect::<Result<Vec<_>>>()?;
        uniqueness.push(scan("target", &gens, 0, &first, index)?);
        uniqueness.push(scan("second-target", &gens, z, &second, index)?);
    }

    Ok(ProofTrace {
        config: *cfg,
        parity: p.parity,
        generator_index: index,
        chosen: p.chosen,
        cofactor: cofactor.to_string(),
        cofactor_exponents: cof,
        steps,
        contradiction,
        literal_pattern,
        uniqueness,
    })
}
