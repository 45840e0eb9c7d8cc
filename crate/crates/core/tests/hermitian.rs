use chromatic_core::arith::{is_prime, Rat};
use chromatic_core::hermitian::*;
use proptest::prelude::*;

fn q(n: i64) -> Rat {
    Rat::from(n)
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d).unwrap()
}

fn gauss() -> QuadImagField {
    QuadImagField::new(-1).unwrap()
}

/// `(a, b)_p = 1` iff `a x^2 + b y^2 = z^2` has a primitive solution modulo a high power of `p`.
fn hilbert_oracle(a: i64, b: i64, p: u64, e: u32) -> i32 {
    let m = p.pow(e) as i64;
    let all: std::collections::HashSet<i64> = (0..m).map(|z| z * z % m).collect();
    let units: std::collections::HashSet<i64> = (0..m).filter(|z| z % p as i64 != 0).map(|z| z * z % m).collect();
    for x in 0..m {
        for y in 0..m {
            let v = (a * x % m * x % m + b * y % m * y % m).rem_euclid(m);
            let primitive_xy = x % p as i64 != 0 || y % p as i64 != 0;
            if (primitive_xy && all.contains(&v)) || units.contains(&v) {
                return 1;
            }
        }
    }
    -1
}

#[test]
fn field_rejects_bad_d() {
    assert!(QuadImagField::new(-4).is_err());
    assert!(QuadImagField::new(3).is_err());
    assert_eq!(QuadImagField::new(-1).unwrap().discriminant(), -4);
    assert_eq!(QuadImagField::new(-3).unwrap().discriminant(), -3);
    let f = gauss();
    assert_eq!(f.splitting(Place::Prime(5)), Splitting::Split);
    assert_eq!(f.splitting(Place::Prime(3)), Splitting::Inert);
    assert_eq!(f.splitting(Place::Prime(2)), Splitting::Ramified);
}

#[test]
fn hilbert_examples() {
    assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinity).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(5), &q(-1), Place::Prime(5)).unwrap(), 1);
    assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Prime(2)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(3), &q(-1), Place::Prime(3)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(0), &q(1), Place::Prime(3)), Err(HermitianError::Zero));
}

#[test]
fn hilbert_matches_primitive_solution_search() {
    for (p, e) in [(2u64, 6u32), (3, 4), (5, 3), (7, 3)] {
        let ps = p as i64;
        let span = if p >= 5 { 4 } else { 9 };
        let units: Vec<i64> = (-span..=span).filter(|u| *u != 0 && u % ps != 0).collect();
        let mut reps = units.clone();
        reps.extend(units.iter().map(|u| u * ps));
        for &a in &reps {
            for &b in &reps {
                let got = hilbert_symbol(&q(a), &q(b), Place::Prime(p)).unwrap();
                assert_eq!(got, hilbert_oracle(a, b, p, e), "({a},{b})_{p}");
            }
        }
    }
}

#[test]
fn hilbert_ignores_square_factors() {
    for p in [2u64, 3, 5, 11] {
        for a in [-7i64, 3, 6, 10] {
            for b in [-1i64, 2, 5, -15] {
                let base = hilbert_symbol(&q(a), &q(b), Place::Prime(p)).unwrap();
                let scaled = &q(a) * r(9, 49);
                assert_eq!(hilbert_symbol(&scaled, &q(b), Place::Prime(p)).unwrap(), base);
            }
        }
    }
}

fn product_over_places(a: &Rat, b: &Rat) -> i32 {
    let mut s = hilbert_symbol(a, b, Place::Infinity).unwrap();
    for l in bad_primes(&[a, b]).unwrap() {
        s *= hilbert_symbol(a, b, Place::Prime(l)).unwrap();
    }
    s
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-1000i64..=1000, 1i64..=1000)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| r(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_product_formula(a in nonzero_rat(), b in nonzero_rat()) {
        prop_assert_eq!(product_over_places(&a, &b), 1);
    }

    #[test]
    fn hilbert_is_symmetric_and_bimultiplicative(a in nonzero_rat(), b in nonzero_rat(), c in nonzero_rat()) {
        for l in bad_primes(&[&a, &b, &c]).unwrap().into_iter().map(Place::Prime).chain([Place::Infinity]) {
            let ab = hilbert_symbol(&a, &b, l).unwrap();
            prop_assert_eq!(ab, hilbert_symbol(&b, &a, l).unwrap());
            prop_assert_eq!(
                hilbert_symbol(&a, &(&b * &c), l).unwrap(),
                ab * hilbert_symbol(&a, &c, l).unwrap()
            );
            prop_assert_eq!(hilbert_symbol(&a, &-&a, l).unwrap(), 1);
        }
    }

    #[test]
    fn global_norms_are_local_norms(x in -60i64..60, y in -60i64..60, d in prop::sample::select(vec![-1i64, -2, -3, -5, -7, -15])) {
        prop_assume!(x != 0 || y != 0);
        let f = QuadImagField::new(d).unwrap();
        let n = q(x * x - d * y * y);
        for l in bad_primes(&[&n, &q(d)]).unwrap() {
            prop_assert!(is_local_norm(&n, &f, Place::Prime(l)).unwrap());
        }
        prop_assert!(is_local_norm(&n, &f, Place::Infinity).unwrap());
    }

    #[test]
    fn split_places_are_trivial(entries in prop::collection::vec(nonzero_rat(), 1..5)) {
        let f = gauss();
        for l in [5u64, 13, 17, 29] {
            let c = local_class_u(&f, entries.len(), Place::Prime(l), &entries).unwrap();
            prop_assert_eq!(c.class, LocalClass::SplitTrivial);
        }
    }

    #[test]
    fn diagonal_forms_satisfy_the_global_sequence(entries in prop::collection::vec(nonzero_rat(), 1..5), d in prop::sample::select(vec![-1i64, -2, -3, -7, -11])) {
        let f = QuadImagField::new(d).unwrap();
        let spec = GlobalFormSpec::from_diagonal(f, &entries).unwrap();
        prop_assert!(global_exists_u(&spec));
        if entries.len() % 2 == 0 {
            prop_assert_eq!(global_classify_gu(&spec), GUClassification::EvenRank { exists: true });
        }
    }

    #[test]
    fn scaling_covariance(entries in prop::collection::vec(nonzero_rat(), 1..5), s in nonzero_rat()) {
        let f = gauss();
        let n = entries.len();
        let scaled: Vec<Rat> = entries.iter().map(|e| e * &s).collect();
        let s_n = s.pow(n as i64).unwrap();
        for l in [2u64, 3, 7, 11] {
            let before = local_class_u(&f, n, Place::Prime(l), &entries).unwrap().xi();
            let after = local_class_u(&f, n, Place::Prime(l), &scaled).unwrap().xi();
            let shift = u8::from(!is_local_norm(&s_n, &f, Place::Prime(l)).unwrap());
            prop_assert_eq!(after, before ^ shift);
        }
        let LocalClass::Signature { p, q } = local_class_u(&f, n, Place::Infinity, &entries).unwrap().class else { unreachable!() };
        let LocalClass::Signature { p: p2, q: q2 } = local_class_u(&f, n, Place::Infinity, &scaled).unwrap().class else { unreachable!() };
        if s.is_negative() { prop_assert_eq!((p2, q2), (q, p)); } else { prop_assert_eq!((p2, q2), (p, q)); }
        if n % 2 == 0 {
            let a = GlobalFormSpec::from_diagonal(f, &entries).unwrap();
            let b = GlobalFormSpec::from_diagonal(f, &scaled).unwrap();
            prop_assert_eq!(global_classify_gu(&a), global_classify_gu(&b));
        }
    }
}

#[test]
fn local_norm_examples() {
    let f = gauss();
    assert!(is_local_norm(&q(5), &f, Place::Infinity).unwrap());
    for l in [2u64, 3, 5, 7] {
        assert!(is_local_norm(&q(5), &f, Place::Prime(l)).unwrap());
        assert!(is_local_norm(&q(1), &f, Place::Prime(l)).unwrap());
    }
    assert!(!is_local_norm(&q(3), &f, Place::Prime(3)).unwrap());
    assert!(!is_local_norm(&q(-1), &f, Place::Infinity).unwrap());
}

#[test]
fn norm_index_is_two_at_nonsplit_places() {
    for d in [-1i64, -2, -3, -5, -6, -7, -10, -15, -21] {
        let f = QuadImagField::new(d).unwrap();
        for l in (2..60).filter(|&l| is_prime(l)) {
            let place = Place::Prime(l);
            let want = if f.splitting(place) == Splitting::Split { 1 } else { 2 };
            assert_eq!(norm_index(&f, place).unwrap(), want, "d={d} l={l}");
        }
        assert_eq!(norm_index(&f, Place::Infinity).unwrap(), 2);
    }
}

#[test]
fn pairing_translation() {
    let f = gauss();
    let delta = FieldElt { x: q(0), y: q(1) };
    let xi = pairing_translate(&f, &delta, Direction::BetaToXi).unwrap();
    assert_eq!(xi, FieldElt { x: q(-2), y: q(0) });
    let one = FieldElt { x: q(1), y: q(0) };
    assert_eq!(pairing_translate(&f, &one, Direction::XiToBeta).unwrap(), FieldElt { x: q(0), y: r(-1, 2) });
    let f7 = QuadImagField::new(-7).unwrap();
    for y in [r(3, 5), q(-2), r(1, 14)] {
        let beta = FieldElt { x: q(0), y };
        let back = pairing_translate(&f7, &pairing_translate(&f7, &beta, Direction::BetaToXi).unwrap(), Direction::XiToBeta).unwrap();
        assert_eq!(back, beta);
    }
    assert_eq!(pairing_translate(&f, &one, Direction::BetaToXi), Err(HermitianError::Symmetry));
    assert_eq!(pairing_translate(&f, &delta, Direction::XiToBeta), Err(HermitianError::Symmetry));
}

#[test]
fn local_class_examples() {
    let f = gauss();
    assert_eq!(local_class_u(&f, 1, Place::Prime(3), &[q(3)]).unwrap().class, LocalClass::Nonsplit(1));
    assert_eq!(local_class_u(&f, 1, Place::Prime(3), &[q(9)]).unwrap().class, LocalClass::Nonsplit(0));
    assert_eq!(
        local_class_u(&f, 3, Place::Infinity, &[q(1), q(-1), q(-4)]).unwrap().class,
        LocalClass::Signature { p: 1, q: 2 }
    );
    assert_eq!(local_class_u(&f, 2, Place::Prime(3), &[q(3)]), Err(HermitianError::Rank { found: 1, rank: 2 }));
    assert_eq!(local_class_u(&f, 1, Place::Prime(3), &[q(0)]), Err(HermitianError::Zero));
}

fn sig(p: u64, q: u64) -> LocalFormClass {
    LocalFormClass { place: Place::Infinity, class: LocalClass::Signature { p, q } }
}

fn nonsplit(l: u64) -> LocalFormClass {
    LocalFormClass { place: Place::Prime(l), class: LocalClass::Nonsplit(1) }
}

#[test]
fn global_existence_examples() {
    let f = gauss();
    assert!(global_exists_u(&GlobalFormSpec::new(f, 3, vec![sig(3, 0)]).unwrap()));
    assert!(!global_exists_u(&GlobalFormSpec::new(f, 3, vec![nonsplit(3), sig(3, 0)]).unwrap()));
    assert!(global_exists_u(&GlobalFormSpec::new(f, 3, vec![nonsplit(3), sig(2, 1)]).unwrap()));
    assert!(global_exists_u(&GlobalFormSpec::new(f, 2, vec![nonsplit(3), nonsplit(7), sig(2, 0)]).unwrap()));
}

#[test]
fn global_spec_validation() {
    let f = gauss();
    assert_eq!(GlobalFormSpec::new(f, 2, vec![sig(2, 1)]), Err(HermitianError::Signature { p: 2, q: 1, n: 2 }));
    assert_eq!(GlobalFormSpec::new(f, 2, vec![nonsplit(3)]), Err(HermitianError::Archimedean));
    assert_eq!(GlobalFormSpec::new(f, 2, vec![nonsplit(5), sig(2, 0)]), Err(HermitianError::ClassKind(Place::Prime(5))));
    assert_eq!(
        GlobalFormSpec::new(f, 2, vec![nonsplit(3), nonsplit(3), sig(2, 0)]),
        Err(HermitianError::DuplicatePlace(Place::Prime(3)))
    );
}

#[test]
fn gu_examples() {
    let f = gauss();
    let a = GlobalFormSpec::new(f, 1, vec![sig(1, 0)]).unwrap();
    let b = GlobalFormSpec::new(f, 1, vec![sig(0, 1)]).unwrap();
    assert!(gu_equivalent(&a, &b).unwrap());
    let c = GlobalFormSpec::new(f, 3, vec![sig(3, 0)]).unwrap();
    let d = GlobalFormSpec::new(f, 3, vec![sig(2, 1)]).unwrap();
    assert!(!gu_equivalent(&c, &d).unwrap());
    assert_eq!(
        global_classify_gu(&GlobalFormSpec::new(f, 2, vec![nonsplit(3), sig(1, 1)]).unwrap()),
        GUClassification::EvenRank { exists: true }
    );
    assert_eq!(
        global_classify_gu(&GlobalFormSpec::new(f, 2, vec![nonsplit(3), sig(2, 0)]).unwrap()),
        GUClassification::EvenRank { exists: false }
    );
    let e = GlobalFormSpec::new(f, 2, vec![sig(2, 0)]).unwrap();
    assert_eq!(gu_equivalent(&e, &e), Err(HermitianError::Parity("odd")));
}

#[test]
fn norm_classes_realize_every_inert_pair() {
    let f = gauss();
    let inert: Vec<u64> = (3..=60).filter(|&l| is_prime(l) && l % 4 == 3).collect();
    for &l in inert.iter().filter(|&&l| l <= 50) {
        let other = *inert.iter().find(|&&m| m != l).unwrap();
        let a = find_norm_class_witness(&f, &[Place::Prime(l), Place::Prime(other)], 5000).unwrap();
        let a = a.unwrap_or_else(|| panic!("no witness for {{{l}, {other}}}"));
        let spec = GlobalFormSpec::from_diagonal(f, &[a]).unwrap();
        let places: Vec<Place> = spec.local().iter().filter(|c| c.xi() == 1).map(|c| c.place).collect();
        assert_eq!(places, vec![Place::Prime(l.min(other)), Place::Prime(l.max(other))]);
    }
}
