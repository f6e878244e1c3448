mod common;

use common::*;
use fermat_core::arrangement::{enumerate_flats, hyperplane_form, hyperplanes, FermatConfig};
use fermat_core::field::{CyclotomicField, PrimeField, Rationals};
use fermat_core::lab::{symbolic_membership, vanishing_order};
use fermat_core::poly::{product, Polynomial};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_field_axioms(a in elem_spec(), b in elem_spec(), c in elem_spec()) {
        let k = Rationals;
        check_field_axioms(&k, &field_elem(&k, &a), &field_elem(&k, &b), &field_elem(&k, &c))?;
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 7, 13, 31, 32003, 2147483647]), a in elem_spec(), b in elem_spec(), c in elem_spec()) {
        let k = PrimeField::new(p).unwrap();
        check_field_axioms(&k, &field_elem(&k, &a), &field_elem(&k, &b), &field_elem(&k, &c))?;
    }

    #[test]
    fn cyclotomic_field_axioms(n in 3u32..=8, a in elem_spec(), b in elem_spec(), c in elem_spec()) {
        let k = CyclotomicField::new(n).unwrap();
        check_field_axioms(&k, &field_elem(&k, &a), &field_elem(&k, &b), &field_elem(&k, &c))?;
    }

    #[test]
    fn normal_form_is_idempotent(inst in membership_instance()) {
        check_normal_form_idempotent(&inst, Rationals)?;
        check_normal_form_idempotent(&inst, PrimeField::new(7).unwrap())?;
    }

    #[test]
    fn graded_membership_agrees_with_groebner(inst in membership_instance()) {
        check_graded_against_groebner(&inst, Rationals)?;
        check_graded_against_groebner(&inst, PrimeField::new(32003).unwrap())?;
    }

    #[test]
    fn symbolic_membership_is_monotone(picks in prop::collection::vec(0usize..9, 1..7), m in 1u64..5) {
        // products of arrangement hyperplanes have known orders along flats
        let cfg = FermatConfig::new(2, 3).unwrap();
        let ring = cfg.ring(CyclotomicField::new(3).unwrap());
        let planes = hyperplanes(&cfg);
        let f = product(&ring, picks.iter().map(|&p| hyperplane_form(&planes[p], &ring, 3).unwrap()));
        let hi = symbolic_membership(&f, &cfg, m + 1).unwrap().holds;
        let lo = symbolic_membership(&f, &cfg, m).unwrap().holds;
        prop_assert!(!hi || lo);
    }

    #[test]
    fn vanishing_order_is_additive(picks in prop::collection::vec(0usize..12, 0..5), flat_ix in 0usize..21) {
        let cfg = FermatConfig::new(2, 4).unwrap();
        let ring = cfg.ring(CyclotomicField::new(4).unwrap());
        let planes = hyperplanes(&cfg);
        let flats = enumerate_flats(&cfg);
        let flat = &flats[flat_ix % flats.len()];
        let forms: Vec<Polynomial<_>> = picks.iter().map(|&p| hyperplane_form(&planes[p], &ring, 4).unwrap()).collect();
        let each: u64 = forms.iter().map(|h| vanishing_order(h, flat, 4).unwrap().unwrap()).sum();
        let f = product(&ring, forms);
        prop_assert_eq!(vanishing_order(&f, flat, 4).unwrap(), Some(each));
    }
}
