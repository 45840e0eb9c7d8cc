use chromatic_core::arith::Rat;
use chromatic_core::hondatate::*;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d).unwrap()
}

fn two_invariant_places(p: u64) -> CMPlaceStructure {
    CMPlaceStructure::new(p, vec![Place::new("x", 1, 1), Place::new("y", 1, 1)], vec![0, 1], 2, 0).unwrap()
}

fn single_invariant(p: u64) -> CMPlaceStructure {
    CMPlaceStructure::new(p, vec![Place::new("v", 1, 1)], vec![0], 1, 0).unwrap()
}

#[test]
fn structure_rejects_bad_conjugation_and_degree() {
    let pl = || vec![Place::new("u", 1, 1), Place::new("uc", 1, 2)];
    assert_eq!(CMPlaceStructure::new(5, pl(), vec![1, 1], 3, 0), Err(HondaTateError::ConjNotInvolution));
    assert!(matches!(CMPlaceStructure::new(5, pl(), vec![1, 0], 3, 0), Err(HondaTateError::ConjChangesDegrees(_))));
    assert!(matches!(
        CMPlaceStructure::new(5, vec![Place::new("u", 1, 1)], vec![0], 2, 0),
        Err(HondaTateError::DegreeMismatch { found: 1, declared: 2 })
    ));
}

#[test]
fn validate_examples() {
    for n in 2..=12 {
        assert!(validate_type(&PAdicType::split_height(5, n)).is_ok());
    }
    let s = CMPlaceStructure::split_quadratic(5);
    assert!(validate_type(&PAdicType::new(s.clone(), vec![r(1, 2), r(1, 2)]).unwrap()).is_ok());
    let bad = PAdicType::new(s.clone(), vec![r(1, 1), r(1, 1)]).unwrap();
    let v = validate_type(&bad).unwrap_err();
    assert_eq!(v.len(), 2);
    assert!(v.iter().all(|x| matches!(x, TypeViolation::ConjugateSum { sum, .. } if *sum == r(2, 1))));
    let out_of_range = PAdicType::new(s, vec![r(-1, 1), r(2, 1)]).unwrap();
    assert!(validate_type(&out_of_range)
        .unwrap_err()
        .iter()
        .any(|x| matches!(x, TypeViolation::SlopeRange { .. })));
}

#[test]
fn slopes_examples() {
    assert_eq!(slopes_of_type(&PAdicType::split_height(3, 7)).unwrap(), vec![r(1, 7), r(6, 7)]);
    let ram = CMPlaceStructure::new(3, vec![Place::new("w", 2, 1)], vec![0], 2, 0).unwrap();
    assert_eq!(slopes_of_type(&PAdicType::new(ram.clone(), vec![r(1, 1)]).unwrap()).unwrap(), vec![r(1, 2)]);
    assert!(slopes_of_type(&PAdicType::new(ram, vec![r(1, 2)]).unwrap()).is_err());
    let ordinary = PAdicType::new(CMPlaceStructure::split_quadratic(3), vec![r(0, 1), r(1, 1)]).unwrap();
    assert_eq!(slopes_of_type(&ordinary).unwrap(), vec![r(0, 1), r(1, 1)]);
}

#[test]
fn split_height_n_has_m_n_and_dimension_n() {
    for n in 2..=12u64 {
        let inv = invariants_and_dimension(&PAdicType::split_height(7, n)).unwrap();
        assert_eq!(inv.inv, vec![r(1, n as i64), r(n as i64 - 1, n as i64)]);
        assert_eq!(inv.m, n);
        assert_eq!(inv.dim_a, Rat::from(n));
    }
}

#[test]
fn symmetric_and_ordinary_invariants() {
    let t = PAdicType::new(two_invariant_places(5), vec![r(1, 2), r(1, 2)]).unwrap();
    let inv = invariants_and_dimension(&t).unwrap();
    assert_eq!((inv.m, inv.dim_a), (2, Rat::from(2u64)));

    let s = CMPlaceStructure::new(
        5,
        vec![Place::new("a", 1, 1), Place::new("ac", 1, 1), Place::new("b", 1, 2), Place::new("bc", 1, 2)],
        vec![1, 0, 3, 2],
        6,
        0,
    )
    .unwrap();
    let ordinary = PAdicType::new(s, vec![r(0, 1), r(1, 1), r(1, 1), r(0, 1)]).unwrap();
    let inv = invariants_and_dimension(&ordinary).unwrap();
    assert!(inv.inv.iter().all(Rat::is_zero));
    assert_eq!((inv.m, inv.dim_a), (1, Rat::from(3u64)));
}

#[test]
fn residue_degree_scales_the_invariant() {
    let s = CMPlaceStructure::new(2, vec![Place::new("u", 1, 3), Place::new("uc", 1, 3)], vec![1, 0], 6, 0).unwrap();
    let t = PAdicType::new(s, vec![r(1, 3), r(2, 3)]).unwrap();
    let inv = invariants_and_dimension(&t).unwrap();
    assert_eq!(inv.inv, vec![r(0, 1), r(0, 1)]);
    assert_eq!(inv.m, 1);
    let real = CMPlaceStructure::new(2, vec![Place::new("v", 1, 1)], vec![0], 1, 1).unwrap();
    let inv = invariants_and_dimension(&PAdicType::new(real, vec![r(1, 2)]).unwrap()).unwrap();
    assert_eq!(inv.real_inv, vec![r(1, 2)]);
    assert_eq!(inv.m, 2);
}

#[test]
fn frobenius_valuations_give_the_type() {
    let t = PAdicType::from_frobenius(CMPlaceStructure::split_quadratic(5), &[1, 2], 3).unwrap();
    assert_eq!(t.eta, vec![r(1, 3), r(2, 3)]);
    assert_eq!(invariants_and_dimension(&t).unwrap().m, 3);
}

#[test]
fn kottwitz_examples() {
    let t = PAdicType::split_height(5, 4);
    let plain = invariants_and_dimension(&t).unwrap();
    let zero = LocalInvariants { over_p: vec![Rat::zero(); 2], away: vec![Rat::zero()], real: vec![] };
    let k = kottwitz_invariants(&t, &zero).unwrap();
    assert_eq!(k.over_p, plain.inv);
    assert_eq!(k.away, vec![Rat::zero()]);

    let b = LocalInvariants { over_p: vec![r(1, 4), r(0, 1)], away: vec![r(1, 2)], real: vec![r(1, 2)] };
    let k = kottwitz_invariants(&t, &b).unwrap();
    assert_eq!(k.over_p, vec![r(0, 1), r(3, 4)]);
    assert_eq!(k.away, vec![r(1, 2)]);
    assert_eq!(k.real, vec![r(0, 1)]);
}

#[test]
fn minimality_examples() {
    let cover = [Cover { below: 0, rel_e: 1 }, Cover { below: 0, rel_e: 1 }];
    for n in 3..=9 {
        let t = PAdicType::split_height(5, n);
        assert_eq!(minimality_check(&t, &single_invariant(5), &cover).unwrap(), Minimality::MinimalOverSub);
    }
    let t = PAdicType::split_height(5, 2);
    assert_eq!(
        minimality_check(&t, &single_invariant(5), &cover).unwrap(),
        Minimality::Descends(vec![r(1, 2)])
    );

    let sub = CMPlaceStructure::split_quadratic(3);
    let up = CMPlaceStructure::new(3, vec![Place::new("w", 2, 1), Place::new("wc", 2, 1)], vec![1, 0], 4, 0).unwrap();
    let pulled = PAdicType::new(up, vec![r(2, 5), r(8, 5)]).unwrap();
    let cover = [Cover { below: 0, rel_e: 2 }, Cover { below: 1, rel_e: 2 }];
    assert_eq!(
        minimality_check(&pulled, &sub, &cover).unwrap(),
        Minimality::Descends(vec![r(1, 5), r(4, 5)])
    );
}

#[test]
fn minimality_rejects_inconsistent_covering() {
    let t = PAdicType::split_height(5, 3);
    let sub = CMPlaceStructure::split_quadratic(5);
    let swapped_conj = [Cover { below: 0, rel_e: 1 }, Cover { below: 0, rel_e: 1 }];
    assert!(matches!(minimality_check(&t, &sub, &swapped_conj), Err(HondaTateError::Covering(_))));
    let wrong_e = [Cover { below: 0, rel_e: 2 }, Cover { below: 1, rel_e: 2 }];
    assert!(matches!(minimality_check(&t, &sub, &wrong_e), Err(HondaTateError::Covering(_))));
    let short = [Cover { below: 0, rel_e: 1 }];
    assert!(matches!(minimality_check(&t, &sub, &short), Err(HondaTateError::Covering(_))));
}

#[test]
fn weil_integer_examples() {
    let w = |a, b, q| WeilInteger { d: -1, a, b, q };
    assert!(verify_weil_integer(&w(2, 1, 5)).is_ok());
    assert!(verify_weil_integer(&w(1, 1, 2)).is_ok());
    assert_eq!(verify_weil_integer(&w(3, 1, 5)), Err(WeilViolation::Norm(10)));
    assert_eq!(verify_weil_integer(&w(2, 1, 6)), Err(WeilViolation::NotPrimePower(6)));
    assert_eq!(
        verify_weil_integer(&WeilInteger { d: -4, a: 1, b: 1, q: 5 }),
        Err(WeilViolation::BadField(-4))
    );
    assert!(verify_weil_integer(&WeilInteger { d: -2, a: 1, b: 2, q: 9 }).is_ok());
}

#[test]
fn non_realizable_height_is_reported() {
    let t = PAdicType::split_height(5, 3);
    assert!(matches!(newton_polygon_of_type(&t, 2), Err(HondaTateError::NonRealizable { .. })));
    assert!(newton_polygon_of_type(&t, 3).is_ok());
}

fn arb_type() -> impl Strategy<Value = PAdicType> {
    let pair = (1u64..4, 1u64..4, 0u64..13, 1u64..13);
    let inv = (1u64..4, 1u64..4);
    (prop::collection::vec(pair, 0..4), prop::collection::vec(inv, 0..3))
        .prop_filter("nonempty", |(a, b)| !a.is_empty() || !b.is_empty())
        .prop_map(|(pairs, invs)| {
            let mut places = Vec::new();
            let mut conj = Vec::new();
            let mut eta = Vec::new();
            for (i, (e, f, num, den)) in pairs.into_iter().enumerate() {
                let s = Rat::new(num.min(den) as i64, den as i64).unwrap();
                let base = places.len();
                places.push(Place::new(format!("s{i}"), e, f));
                places.push(Place::new(format!("s{i}c"), e, f));
                conj.extend([base + 1, base]);
                eta.push(&s * Rat::from(e));
                eta.push((Rat::one() - &s) * Rat::from(e));
            }
            for (i, (e, f)) in invs.into_iter().enumerate() {
                conj.push(places.len());
                places.push(Place::new(format!("i{i}"), e, f));
                eta.push(Rat::from(e) / Rat::from(2u64));
            }
            let d = places.iter().map(Place::degree).sum();
            PAdicType::new(CMPlaceStructure::new(7, places, conj, d, 0).unwrap(), eta).unwrap()
        })
}

proptest! {
    #[test]
    fn valid_types_give_polarizable_polygons(t in arb_type()) {
        prop_assert!(validate_type(&t).is_ok());
        let inv = invariants_and_dimension(&t).unwrap();
        let poly = newton_polygon(&t).unwrap();
        prop_assert!(poly.is_polarizable());
        let (height, dim) = poly.total();
        prop_assert_eq!(Rat::from(height), Rat::from(2u64) * &inv.dim_a);
        prop_assert_eq!(Rat::from(dim), inv.dim_a);
    }

    #[test]
    fn zero_shift_is_identity(t in arb_type()) {
        let n = t.eta.len();
        let zero = LocalInvariants { over_p: vec![Rat::zero(); n], away: vec![], real: vec![] };
        prop_assert_eq!(kottwitz_invariants(&t, &zero).unwrap().over_p, invariants_and_dimension(&t).unwrap().inv);
    }

    #[test]
    fn pullback_along_ramified_cover_descends(t in arb_type(), g in 1u64..4) {
        let s = &t.structure;
        let places = s.places().iter().map(|x| Place::new(format!("{}'", x.id), x.e * g, x.f)).collect();
        let up = CMPlaceStructure::new(7, places, s.conj().to_vec(), s.degree() * g, 0).unwrap();
        let eta = t.eta.iter().map(|x| x * Rat::from(g)).collect();
        let pulled = PAdicType::new(up, eta).unwrap();
        let cover: Vec<Cover> = (0..t.eta.len()).map(|i| Cover { below: i, rel_e: g }).collect();
        prop_assert_eq!(minimality_check(&pulled, s, &cover).unwrap(), Minimality::Descends(t.eta.clone()));
    }
}
