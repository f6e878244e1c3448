use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::vanishing::{symbolic_membership, SymbolicMembership};
use crate::arrangement::{fermat_polynomial, ideal_generators, FermatConfig};
use crate::error::{Error, Result};
use crate::field::{is_prime, CyclotomicField, Field, FieldKind, PrimeField, Rationals};
use crate::ideal::{graded_membership, ideal_power, GradedBudget, GroebnerBudget, Ideal};

/// `m`, `r` and the big height `h` of a containment question
/// `I^(m) ⊆ I^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentQuery {
    pub m: u64,
    pub r: u64,
    pub h: u64,
}

impl ContainmentQuery {
    /// `h = 2`: every component is a codimension-two flat.
    pub fn for_flats(m: u64, r: u64) -> Result<Self> {
        if m < 1 || r < 1 {
            return Err(Error::InvalidConfig("m and r must be at least 1".into()));
        }
        Ok(ContainmentQuery { m, r, h: 2 })
    }
}

/// `m >= h r`, the range where containment is guaranteed.
pub fn els_hh_bound(q: &ContainmentQuery) -> bool {
    q.m >= q.h * q.r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub max_spairs: usize,
    /// Largest graded system attempted over a field of characteristic 0.
    pub max_rational_cells: u64,
    /// Largest graded system attempted modulo a prime.
    pub max_modular_cells: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_spairs: 50_000, max_rational_cells: 20_000_000, max_modular_cells: 100_000_000 }
    }
}

impl Budgets {
    pub fn groebner(&self) -> GroebnerBudget {
        GroebnerBudget { max_pairs: self.max_spairs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentOptions {
    /// Field for the ordinary-power part. The symbolic part always runs
    /// over the cyclotomic field of the arrangement's order.
    pub field: FieldKind,
    pub budgets: Budgets,
    /// Primes tried when the characteristic-0 system is over budget;
    /// empty means the first two primes `p ≡ 1 (mod n)` above 32003.
    pub fallback_primes: Vec<u64>,
    /// Also compute the normal form of `F` modulo a Groebner basis of `I^2`.
    pub groebner_check: bool,
}

impl Default for ContainmentOptions {
    fn default() -> Self {
        ContainmentOptions {
            field: FieldKind::Rational,
            budgets: Budgets::default(),
            fallback_primes: Vec::new(),
            groebner_check: false,
        }
    }
}

/// The first `count` primes `p ≡ 1 (mod n)` greater than `above`.
pub fn primes_congruent_one(n: u32, above: u64, count: usize) -> Vec<u64> {
    let n = u64::from(n.max(1));
    let mut p = above + 1;
    let mut out = Vec::new();
    while out.len() < count {
        if p % n == 1 && is_prime(p) {
            out.push(p);
        }
        p += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Both parts settled exactly in characteristic 0.
    Confirmed,
    /// Non-membership in `I^2` verified only modulo primes.
    Evidence,
    /// A budget was exhausted before the question was settled.
    Undecided,
    /// The computation contradicts the expected non-containment.
    Mismatch,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Confirmed => 0,
            Verdict::Evidence | Verdict::Mismatch => 1,
            Verdict::Undecided => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrdinaryVerdict {
    Absent,
    Present,
    Undecided,
}

/// One graded solve of `F` against `I^2`.
#[derive(Debug, Clone, Serialize)]
pub struct OrdinaryAttempt {
    pub field: String,
    pub verdict: OrdinaryVerdict,
    /// Whether an `absent` here is a proof (characteristic 0).
    pub proof_grade: bool,
    pub system: Option<Value>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroebnerCheck {
    pub field: String,
    /// `None` when the budget ran out.
    pub normal_form_zero: Option<bool>,
    pub basis_size: Option<usize>,
    pub agrees_with_graded: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrdinaryPart {
    pub r: u64,
    pub method: &'static str,
    pub field: String,
    pub verdict: OrdinaryVerdict,
    pub attempts: Vec<OrdinaryAttempt>,
    pub groebner: Option<GroebnerCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicPart {
    pub m: u64,
    pub verdict: &'static str,
    pub min_order: Option<u64>,
    pub per_flat_orders: Vec<super::vanishing::FlatOrder>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub symbolic_ms: u128,
    pub ordinary_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct NoncontainmentReport {
    pub config: FermatConfig,
    /// Symbolic membership is decided by orders of vanishing along the
    /// flats, which is valid for radical ideals of unions of linear spaces.
    pub symbolic_method: &'static str,
    pub symbolic: SymbolicPart,
    pub ordinary: OrdinaryPart,
    /// `m >= h r` for the pair asked about; must be false for a
    /// non-containment to be possible.
    pub bound_guarantees_containment: bool,
    pub overall: Verdict,
    pub timings: Option<Timings>,
}

impl NoncontainmentReport {
    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }
}

fn attempt<K: Field>(cfg: &FermatConfig, field: K, cells: u64, proof_grade: bool) -> Result<OrdinaryAttempt> {
    let label = field.kind().to_string();
    let ring = cfg.ring(field);
    let f = fermat_polynomial(cfg, &ring)?;
    let square = ideal_power(&Ideal::new(&ring, ideal_generators(cfg, &ring)?)?, 2)?;
    match graded_membership(&f, square.generators(), GradedBudget { max_cells: cells }) {
        Ok(res) => {
            let present = res.is_present();
            if let Some(cert) = &res.certificate {
                // a certificate is only trusted after it has been expanded
                if !cert.reproduces(&f, square.generators())? {
                    return Err(Error::InvalidConfig("membership certificate failed to reproduce F".into()));
                }
            }
            Ok(OrdinaryAttempt {
                field: label,
                verdict: if present { OrdinaryVerdict::Present } else { OrdinaryVerdict::Absent },
                proof_grade,
                system: Some(res.summary_json()),
                note: None,
            })
        }
        Err(Error::ResourceLimit(msg)) => Ok(OrdinaryAttempt {
            field: label,
            verdict: OrdinaryVerdict::Undecided,
            proof_grade,
            system: None,
            note: Some(msg),
        }),
        Err(e) => Err(e),
    }
}

fn groebner_check<K: Field>(cfg: &FermatConfig, field: K, budget: GroebnerBudget) -> Result<GroebnerCheck> {
    let label = field.kind().to_string();
    let ring = cfg.ring(field);
    let f = fermat_polynomial(cfg, &ring)?;
    let square = ideal_power(&Ideal::new(&ring, ideal_generators(cfg, &ring)?)?, 2)?;
    match square.groebner(budget) {
        Ok(gb) => Ok(GroebnerCheck {
            field: label,
            normal_form_zero: Some(gb.normal_form(&f)?.is_zero()),
            basis_size: Some(gb.basis().len()),
            agrees_with_graded: None,
        }),
        Err(Error::ResourceLimit(_)) => {
            Ok(GroebnerCheck { field: label, normal_form_zero: None, basis_size: None, agrees_with_graded: None })
        }
        Err(e) => Err(e),
    }
}

/// Checks that `F = prod (x_i^n - x_j^n)` lies in the third symbolic power
/// of the ideal of the flats but not in the square of that ideal.
pub fn check_noncontainment(cfg: &FermatConfig, opts: &ContainmentOptions) -> Result<NoncontainmentReport> {
    let n = cfg.degree();
    let query = ContainmentQuery::for_flats(3, 2)?;

    let started = Instant::now();
    let cyc = CyclotomicField::new(n)?;
    let ring = cfg.ring(cyc.clone());
    let f = fermat_polynomial(cfg, &ring)?;
    let sym: SymbolicMembership = symbolic_membership(&f, cfg, query.m)?;
    let symbolic_ms = started.elapsed().as_millis();

    let started = Instant::now();
    let b = opts.budgets;
    let mut attempts = Vec::new();
    let mut gb_check = None;
    let primary_grade = match opts.field {
        FieldKind::Rational => {
            attempts.push(attempt(cfg, Rationals, b.max_rational_cells, true)?);
            if opts.groebner_check {
                gb_check = Some(groebner_check(cfg, Rationals, b.groebner())?);
            }
            true
        }
        FieldKind::Cyclotomic { n: order } => {
            if order != n {
                return Err(Error::ContextMismatch(format!("cyclotomic:{order} does not match n = {n}")));
            }
            attempts.push(attempt(cfg, cyc.clone(), b.max_rational_cells, true)?);
            if opts.groebner_check {
                gb_check = Some(groebner_check(cfg, cyc, b.groebner())?);
            }
            true
        }
        FieldKind::Prime { p } => {
            let k = PrimeField::new(p)?;
            attempts.push(attempt(cfg, k.clone(), b.max_modular_cells, false)?);
            if opts.groebner_check {
                gb_check = Some(groebner_check(cfg, k, b.groebner())?);
            }
            false
        }
    };
    if primary_grade && attempts[0].verdict == OrdinaryVerdict::Undecided {
        let primes = if opts.fallback_primes.is_empty() {
            primes_congruent_one(n, 32003, 2)
        } else {
            opts.fallback_primes.clone()
        };
        for p in primes {
            attempts.push(attempt(cfg, PrimeField::new(p)?, b.max_modular_cells, false)?);
        }
    }
    let ordinary_ms = started.elapsed().as_millis();

    let decided: Vec<&OrdinaryAttempt> = attempts.iter().filter(|a| a.verdict != OrdinaryVerdict::Undecided).collect();
    let verdict = if decided.iter().any(|a| a.verdict == OrdinaryVerdict::Present && a.proof_grade) {
        OrdinaryVerdict::Present
    } else if !decided.is_empty() && decided.iter().all(|a| a.verdict == OrdinaryVerdict::Absent) {
        OrdinaryVerdict::Absent
    } else {
        // includes "present modulo a prime only", which says nothing over Q
        OrdinaryVerdict::Undecided
    };
    let proved_absent = attempts.iter().any(|a| a.proof_grade && a.verdict == OrdinaryVerdict::Absent);

    if let Some(check) = gb_check.as_mut() {
        let graded = &attempts[0];
        check.agrees_with_graded = match (check.normal_form_zero, graded.verdict) {
            (Some(zero), OrdinaryVerdict::Absent) => Some(!zero),
            (Some(zero), OrdinaryVerdict::Present) => Some(zero),
            _ => None,
        };
    }

    let bound = els_hh_bound(&query);
    let groebner_disagrees = gb_check.as_ref().is_some_and(|c| c.agrees_with_graded == Some(false));
    let present_mod_p = decided.iter().any(|a| a.verdict == OrdinaryVerdict::Present && !a.proof_grade);
    let overall = if !sym.holds
        || verdict == OrdinaryVerdict::Present
        || bound
        || groebner_disagrees
        || (present_mod_p && !proved_absent)
    {
        Verdict::Mismatch
    } else if verdict == OrdinaryVerdict::Absent && proved_absent {
        Verdict::Confirmed
    } else if verdict == OrdinaryVerdict::Absent {
        Verdict::Evidence
    } else {
        Verdict::Undecided
    };

    let field_label = attempts.iter().find(|a| a.verdict != OrdinaryVerdict::Undecided).unwrap_or(&attempts[0]).field.clone();
    Ok(NoncontainmentReport {
        config: *cfg,
        symbolic_method: "order of vanishing along each flat",
        symbolic: SymbolicPart {
            m: query.m,
            verdict: if sym.holds { "member" } else { "not-member" },
            min_order: sym.min_order(),
            per_flat_orders: sym.per_flat_orders,
        },
        ordinary: OrdinaryPart {
            r: query.r,
            method: "graded-linear",
            field: field_label,
            verdict,
            attempts,
            groebner: gb_check,
        },
        bound_guarantees_containment: bound,
        overall,
        timings: Some(Timings { symbolic_ms, ordinary_ms }),
    })
}
