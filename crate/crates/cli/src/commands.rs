use std::fmt::Write as _;

use fermat_core::arrangement::{
    enumerate_flats, flat_linear_forms, generator_degree, generator_specs, hyperplanes_through, ideal_generators,
    verify_generator_identities, FermatConfig,
};
use fermat_core::bracket::lemma_sweep;
use fermat_core::field::{CyclotomicField, FieldKind, PrimeField, Rationals};
use fermat_core::lab::{
    check_noncontainment, primes_congruent_one, proof_trace, run_structure_check, ContainmentOptions, StructureCheck,
};
use fermat_core::poly::{cas_export, cas_export_ideals};
use fermat_core::Error;
use serde_json::{json, Value};

use crate::{Arrangement, Common, Format, Output, EXIT_BUDGET, EXIT_DEVIATION, EXIT_OK, EXIT_USAGE};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceLimit(_)) { EXIT_BUDGET } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

type Run = Result<Output, Failure>;

fn config(arr: &Arrangement) -> Result<FermatConfig, Failure> {
    Ok(FermatConfig::new(arr.dim, arr.degree)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Renders `doc` in the requested format. `cas` is only offered by commands
/// that export generator lists.
fn emit(c: &Common, doc: Value, plain: fn(&Value) -> String, cas: Option<String>, code: u8) -> Run {
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("json") + "\n",
        Format::Plain => plain(&doc),
        Format::CasExport => cas.ok_or_else(|| Failure::usage("--format cas-export is only available for flats and gens"))?,
    };
    Ok(Output { text, code })
}

pub fn lemmas(c: &Common, k_max: usize, degrees: &[u32]) -> Run {
    if k_max < 1 {
        return Err(Failure::usage("--k-max must be at least 1"));
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Failure::usage("--n needs positive degrees"));
    }
    let cases = lemma_sweep(k_max, degrees)?;
    let all_hold = cases.iter().all(|c| c.holds);
    let doc = json!({ "k_max": k_max, "n": degrees, "cases": to_value(&cases), "all_hold": all_hold });
    emit(c, doc, plain_lemmas, None, if all_hold { EXIT_OK } else { EXIT_DEVIATION })
}

fn plain_lemmas(doc: &Value) -> String {
    let degrees: Vec<u64> = doc["n"].as_array().unwrap().iter().filter_map(Value::as_u64).collect();
    let mut out = format!("{:<26}{:>3}", "lemma", "k");
    for n in &degrees {
        let _ = write!(out, "{:>6}", format!("n={n}"));
    }
    out.push('\n');
    let cases = doc["cases"].as_array().unwrap();
    let mut rows: Vec<(String, u64)> = Vec::new();
    for case in cases {
        let key = (case["lemma"].as_str().unwrap().to_string(), case["k"].as_u64().unwrap());
        if !rows.contains(&key) {
            rows.push(key);
        }
    }
    for (lemma, k) in rows {
        let _ = write!(out, "{lemma:<26}{k:>3}");
        for n in &degrees {
            let cell = cases
                .iter()
                .find(|c| c["lemma"] == lemma.as_str() && c["k"] == k && c["n"] == *n)
                .map_or("-", |c| if c["holds"] == true { "ok" } else { "FAIL" });
            let _ = write!(out, "{cell:>6}");
        }
        out.push('\n');
    }
    let verdict = if doc["all_hold"] == true { "all cases hold" } else { "SOME CASES FAIL" };
    let _ = writeln!(out, "{} cases: {verdict}", cases.len());
    out
}

pub fn flats(c: &Common, arr: &Arrangement) -> Run {
    let cfg = config(arr)?;
    let n = cfg.degree();
    let list = enumerate_flats(&cfg);
    let mut records = Vec::new();
    for (index, flat) in list.iter().enumerate() {
        let mut rec = to_value(flat);
        rec["index"] = json!(index);
        rec["label"] = json!(flat.to_string());
        rec["hyperplanes"] = json!(hyperplanes_through(flat, &cfg)?);
        records.push(rec);
    }
    let doc = json!({ "config": to_value(&cfg), "count": list.len(), "flats": records });
    let cas = if c.format == Format::CasExport {
        let ring = cfg.ring(CyclotomicField::new(n)?);
        let ideals = list
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let (u, v) = flat_linear_forms(f, &ring, n)?;
                Ok((format!("P{k}"), vec![u, v]))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Some(cas_export_ideals(&ring, &ideals, c.cas_dialect.into()))
    } else {
        None
    };
    emit(c, doc, plain_flats, cas, EXIT_OK)
}

fn plain_flats(doc: &Value) -> String {
    let cfg = &doc["config"];
    let mut out = format!("N={}, n={}: {} flats\n", cfg["N"], cfg["n"], doc["count"]);
    for rec in doc["flats"].as_array().unwrap() {
        let _ = writeln!(
            out,
            "{:>5}  {:<28}{} hyperplanes",
            rec["index"].to_string(),
            rec["label"].as_str().unwrap(),
            rec["hyperplanes"]
        );
    }
    out
}

pub fn gens(c: &Common, arr: &Arrangement, field: FieldKind) -> Run {
    let cfg = config(arr)?;
    match field {
        FieldKind::Rational => gens_in(c, &cfg, Rationals),
        FieldKind::Prime { p } => gens_in(c, &cfg, PrimeField::new(p)?),
        FieldKind::Cyclotomic { n } => gens_in(c, &cfg, CyclotomicField::new(n)?),
    }
}

fn gens_in<K: fermat_core::field::Field>(c: &Common, cfg: &FermatConfig, field: K) -> Run {
    let ring = cfg.ring(field);
    let gens = ideal_generators(cfg, &ring)?;
    let records: Vec<Value> = generator_specs(cfg)
        .iter()
        .zip(&gens)
        .enumerate()
        .map(|(index, (spec, g))| {
            json!({
                "index": index,
                "chosen": spec.chosen(),
                "rest": spec.rest(),
                "terms": g.len(),
                "polynomial": g.to_string(),
            })
        })
        .collect();
    let doc = json!({
        "config": to_value(cfg),
        "field": ring.field().kind().to_string(),
        "degree": generator_degree(cfg),
        "count": gens.len(),
        "generators": records,
    });
    let cas = (c.format == Format::CasExport).then(|| cas_export(&ring, &gens, c.cas_dialect.into()));
    emit(c, doc, plain_gens, cas, EXIT_OK)
}

fn list(v: &Value) -> String {
    let items: Vec<String> = v.as_array().unwrap().iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn plain_gens(doc: &Value) -> String {
    let cfg = &doc["config"];
    let mut out =
        format!("N={}, n={}: {} generators of degree {}\n", cfg["N"], cfg["n"], doc["count"], doc["degree"]);
    for g in doc["generators"].as_array().unwrap() {
        let _ = writeln!(
            out,
            "g{} A={} B={} ({} terms)\n  {}",
            g["index"],
            list(&g["chosen"]),
            list(&g["rest"]),
            g["terms"],
            g["polynomial"].as_str().unwrap()
        );
    }
    out
}

pub fn contain(c: &Common, arr: &Arrangement, field: FieldKind, primes: &[u64], groebner_check: bool) -> Run {
    let cfg = config(arr)?;
    for &p in primes {
        PrimeField::new(p)?;
    }
    let opts = ContainmentOptions { field, budgets: c.budgets(), fallback_primes: primes.to_vec(), groebner_check };
    let mut report = check_noncontainment(&cfg, &opts)?;
    if c.no_timings {
        report = report.without_timings();
    }
    let code = report.overall.exit_code() as u8;
    emit(c, to_value(&report), plain_contain, None, code)
}

fn plain_contain(doc: &Value) -> String {
    let cfg = &doc["config"];
    let sym = &doc["symbolic"];
    let ord = &doc["ordinary"];
    let mut out = format!("N={}, n={}\n", cfg["N"], cfg["n"]);
    let _ = writeln!(
        out,
        "symbolic: F in I^({}): {} (minimum order {} over {} flats; {})",
        sym["m"],
        sym["verdict"].as_str().unwrap(),
        sym["min_order"],
        sym["per_flat_orders"].as_array().map_or(0, Vec::len),
        doc["symbolic_method"].as_str().unwrap()
    );
    let _ = writeln!(
        out,
        "ordinary: F in I^{} by {} over {}: {}",
        ord["r"],
        ord["method"].as_str().unwrap(),
        ord["field"].as_str().unwrap(),
        ord["verdict"].as_str().unwrap()
    );
    for a in ord["attempts"].as_array().unwrap() {
        let grade = if a["proof_grade"] == true { "proof" } else { "evidence" };
        let detail = match &a["system"] {
            Value::Object(s) => format!(
                "{} rows x {} columns, rank {}, {}",
                s["rows"],
                s["columns"],
                s["rank"],
                s["method"].as_str().unwrap_or("")
            ),
            _ => a["note"].as_str().unwrap_or("").to_string(),
        };
        let _ = writeln!(
            out,
            "  {:<14}{:<10}{detail} ({grade})",
            a["field"].as_str().unwrap(),
            a["verdict"].as_str().unwrap()
        );
    }
    if let Value::Object(g) = &ord["groebner"] {
        let nf = match g["normal_form_zero"].as_bool() {
            Some(true) => "zero",
            Some(false) => "nonzero",
            None => "over budget",
        };
        let _ = writeln!(out, "groebner cross-check over {}: normal form {nf}, agrees: {}", g["field"].as_str().unwrap(), g["agrees_with_graded"]);
    }
    if let Value::Object(t) = &doc["timings"] {
        let _ = writeln!(out, "timings: symbolic {} ms, ordinary {} ms", t["symbolic_ms"], t["ordinary_ms"]);
    }
    let _ = writeln!(out, "overall: {}", doc["overall"].as_str().unwrap());
    out
}

fn smallest_prime_with_roots(n: u32) -> u64 {
    primes_congruent_one(n, 2, 1)[0]
}

pub fn structure(c: &Common, arr: &Arrangement, field: Option<FieldKind>, completeness: bool) -> Run {
    let cfg = config(arr)?;
    let n = cfg.degree();
    let field = field.unwrap_or(FieldKind::Prime { p: smallest_prime_with_roots(n) });
    let budget = c.budgets().groebner();
    let mut checks = Vec::new();
    let mut identities = Value::Null;
    let mut passed = true;
    let mut undecided = false;
    if cfg.dim() >= 3 {
        let rep = run_structure_check(StructureCheck::ConeIntersection, &cfg, field, budget)?;
        passed &= rep.passed();
        undecided |= rep.undecided();
        checks.push(to_value(&rep));
        let ids = verify_generator_identities(&cfg)?;
        passed &= ids.all_hold();
        identities = to_value(&ids);
    }
    if cfg.dim() == 2 || completeness {
        let has_roots = match field {
            FieldKind::Rational => false,
            FieldKind::Prime { p } => p % u64::from(n) == 1,
            FieldKind::Cyclotomic { n: m } => m % n == 0,
        };
        if !has_roots {
            return Err(Failure::usage(format!(
                "{field} has no primitive {n}-th root of unity; use prime:p with p = 1 mod {n} or cyclotomic:{n}"
            )));
        }
        let rep = run_structure_check(StructureCheck::GeneratorCompleteness, &cfg, field, budget)?;
        passed &= rep.passed();
        undecided |= rep.undecided();
        checks.push(to_value(&rep));
    }
    let code = if undecided {
        EXIT_BUDGET
    } else if passed {
        EXIT_OK
    } else {
        EXIT_DEVIATION
    };
    let doc = json!({
        "config": to_value(&cfg),
        "field": field.to_string(),
        "checks": checks,
        "identities": identities,
        "passed": passed && !undecided,
    });
    emit(c, doc, plain_structure, None, code)
}

fn plain_structure(doc: &Value) -> String {
    let cfg = &doc["config"];
    let mut out = format!("N={}, n={} over {}\n", cfg["N"], cfg["n"], doc["field"].as_str().unwrap());
    for chk in doc["checks"].as_array().unwrap() {
        let equal = match chk["equal"].as_bool() {
            Some(true) => "equal",
            Some(false) => "NOT equal",
            None => "undecided (budget)",
        };
        let _ = write!(
            out,
            "{}: intersection of {} ideals vs {} generators: {equal}",
            chk["check"].as_str().unwrap(),
            chk["components"],
            chk["generator_count"]
        );
        if let Some(single) = chk["single_cone_equal"].as_bool() {
            let _ = write!(out, "; one cone alone {}", if single { "EQUALS it" } else { "differs" });
        }
        out.push('\n');
    }
    if let Value::Object(ids) = &doc["identities"] {
        for id in ids["identities"].as_array().unwrap() {
            let _ = writeln!(
                out,
                "identity {}: {}",
                id["name"].as_str().unwrap(),
                if id["holds"] == true { "holds" } else { "FAILS" }
            );
        }
    }
    let _ = writeln!(out, "{}", if doc["passed"] == true { "PASS" } else { "FAIL" });
    out
}

pub fn prooftrace(c: &Common, arr: &Arrangement, scan: bool) -> Run {
    let cfg = config(arr)?;
    let trace = proof_trace(&cfg, scan)?;
    let code = if trace.all_match() { EXIT_OK } else { EXIT_DEVIATION };
    let mut doc = to_value(&trace);
    doc["all_match"] = json!(trace.all_match());
    emit(c, doc, plain_trace, None, code)
}

fn plain_trace(doc: &Value) -> String {
    let cfg = &doc["config"];
    let mut out = format!(
        "N={}, n={} ({} case), distinguished generator g{} with A={}, cofactor {}\n",
        cfg["N"],
        cfg["n"],
        doc["parity"].as_str().unwrap(),
        doc["generator_index"],
        list(&doc["chosen"]),
        doc["cofactor"].as_str().unwrap()
    );
    let _ = writeln!(out, "{:<40}{:>5}  {:<34}{:>9}{:>9}", "step", "x=0", "monomial", "expected", "computed");
    for s in doc["steps"].as_array().unwrap() {
        let mark = if s["matches"] == true { "" } else { "  MISMATCH" };
        let _ = writeln!(
            out,
            "{:<40}{:>5}  {:<34}{:>9}{:>9}{mark}",
            s["name"].as_str().unwrap(),
            format!("x{}", s["zeroed"]),
            s["monomial"].as_str().unwrap(),
            s["expected"].to_string(),
            s["computed"].as_str().unwrap()
        );
    }
    let _ = writeln!(out, "cofactor coefficients disagree: {}", doc["contradiction"]);
    if let Value::Object(lit) = &doc["literal_pattern"] {
        let _ = writeln!(
            out,
            "literal second target {}: coefficient {}",
            lit["monomial"].as_str().unwrap(),
            lit["coefficient"].as_str().unwrap()
        );
    }
    for u in doc["uniqueness"].as_array().unwrap() {
        let _ = writeln!(
            out,
            "pair scan for {} ({} pairs): contributing {} -> {}",
            u["target"].as_str().unwrap(),
            u["pairs_scanned"],
            u["contributing"],
            if u["unique"] == true { "unique" } else { "NOT unique" }
        );
    }
    let _ = writeln!(out, "{}", if doc["all_match"] == true { "all coefficients match" } else { "MISMATCH" });
    out
}
