use fermat_core::arrangement::{
    enumerate_flats, fermat_polynomial, hyperplanes_through, ideal_generators, verify_generator_identities,
    FermatConfig, Flat,
};
use fermat_core::field::{CyclotomicField, FieldKind, PrimeField, Rationals};
use fermat_core::ideal::{graded_membership, ideal_power, GradedBudget, GroebnerBudget, Ideal};
use fermat_core::lab::*;
use fermat_core::poly::Polynomial;

fn cfg(dim: usize, n: u32) -> FermatConfig {
    FermatConfig::new(dim, n).unwrap()
}

#[test]
fn plane_cubic_report() {
    let opts = ContainmentOptions { groebner_check: true, ..Default::default() };
    let rep = check_noncontainment(&cfg(2, 3), &opts).unwrap();
    assert_eq!(rep.overall, Verdict::Confirmed);
    assert_eq!(rep.symbolic.per_flat_orders.len(), 12);
    assert!(rep.symbolic.per_flat_orders.iter().all(|o| o.order == Some(3)));
    let sys = rep.ordinary.attempts[0].system.as_ref().unwrap();
    assert_eq!(sys["rows"], 55);
    assert_eq!(sys["columns"], 18);
    assert_eq!(rep.ordinary.groebner.unwrap().agrees_with_graded, Some(true));
}

#[test]
fn graded_and_normal_form_agree() {
    for (dim, n) in [(2, 3), (2, 4), (3, 3)] {
        let opts = ContainmentOptions { groebner_check: true, ..Default::default() };
        let rep = check_noncontainment(&cfg(dim, n), &opts).unwrap();
        let g = rep.ordinary.groebner.unwrap();
        assert_eq!(g.normal_form_zero, Some(false), "({dim},{n})");
        assert_eq!(g.agrees_with_graded, Some(true), "({dim},{n})");
    }
}

#[test]
fn fermat_vanishes_at_least_as_often_as_its_hyperplanes() {
    for dim in [2, 3] {
        for n in [3, 4, 5] {
            let c = cfg(dim, n);
            let ring = c.ring(CyclotomicField::new(n).unwrap());
            let f = fermat_polynomial(&c, &ring).unwrap();
            for flat in enumerate_flats(&c) {
                let through = hyperplanes_through(&flat, &c).unwrap() as u64;
                let order = vanishing_order(&f, &flat, n).unwrap().unwrap();
                assert!(through >= 3 && order >= through, "{flat} at {c}");
            }
        }
    }
}

#[test]
fn containment_bound_never_contradicted() {
    for r in 1..=4 {
        for m in 1..=10 {
            let q = ContainmentQuery::for_flats(m, r).unwrap();
            assert_eq!(els_hh_bound(&q), m >= 2 * r);
        }
    }
    let rep = check_noncontainment(&cfg(2, 3), &ContainmentOptions::default()).unwrap();
    assert!(!rep.bound_guarantees_containment);
}

#[test]
fn squares_of_generators_have_sound_certificates() {
    let c = cfg(2, 3);
    let ring = c.ring(Rationals);
    let gens = ideal_generators(&c, &ring).unwrap();
    let square = ideal_power(&Ideal::new(&ring, gens.clone()).unwrap(), 2).unwrap();
    let probe = &(&gens[0] * &gens[1]) * &(&Polynomial::var(&ring, 0) - &Polynomial::var(&ring, 2));
    let res = graded_membership(&probe, square.generators(), GradedBudget::default()).unwrap();
    let cert = res.certificate.expect("present");
    assert!(cert.reproduces(&probe, square.generators()).unwrap());
    let json = cert.to_json(ring.field());
    let back = fermat_core::ideal::Certificate::from_json(ring.field(), &json).unwrap();
    assert_eq!(back.expand(&ring, square.generators()).unwrap(), probe);
}

#[test]
fn larger_cases() {
    for (dim, n) in [(3, 3), (2, 4), (2, 5)] {
        let rep = check_noncontainment(&cfg(dim, n), &ContainmentOptions::default()).unwrap();
        assert_eq!(rep.overall, Verdict::Confirmed, "({dim},{n})");
    }
    let rep = check_noncontainment(
        &cfg(2, 5),
        &ContainmentOptions { field: FieldKind::Cyclotomic { n: 5 }, ..Default::default() },
    )
    .unwrap();
    assert_eq!(rep.overall, Verdict::Confirmed);
}

#[test]
fn structure_checks() {
    let b = GroebnerBudget::default();
    for p in [7, 13] {
        assert!(verify_cone_intersection(&cfg(3, 3), PrimeField::new(p).unwrap(), b).unwrap().passed());
    }
    assert!(verify_generator_completeness(&cfg(2, 3), CyclotomicField::new(3).unwrap(), b).unwrap().passed());
    assert!(verify_generator_completeness(&cfg(2, 4), PrimeField::new(13).unwrap(), b).unwrap().passed());
}

#[test]
fn generator_identities() {
    for dim in [3, 4] {
        assert!(verify_generator_identities(&cfg(dim, 3)).unwrap().all_hold());
    }
}

#[test]
fn proof_traces() {
    for (dim, n) in [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (4, 3)] {
        let t = proof_trace(&cfg(dim, n), dim <= 3).unwrap();
        assert!(t.all_match(), "({dim},{n}): {t:#?}");
    }
}

#[test]
fn orders_on_coordinate_flats_grow_with_n() {
    for n in [3, 4, 5] {
        let c = cfg(2, n);
        let ring = c.ring(CyclotomicField::new(n).unwrap());
        let f = fermat_polynomial(&c, &ring).unwrap();
        let flat = Flat::coordinate(0, 1).unwrap();
        assert_eq!(vanishing_order(&f, &flat, n).unwrap(), Some(u64::from(n)));
    }
}
