use std::collections::BTreeSet;

use chromatic_core::arith::{is_prime, kronecker, val_u64, Rat};
use chromatic_core::greek::alpha_invariant_order;
use chromatic_core::hermitian::QuadImagField;
use chromatic_core::level1::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn field(d: i64) -> QuadImagField {
    QuadImagField::new(d).unwrap()
}

fn fundamental_discriminants(bound: i64) -> Vec<i64> {
    (3..=bound).map(|n| -n).filter(|&d| fundamental_check(d).is_ok()).collect()
}

/// `h = -(w / 2|D|) sum_{a=1}^{|D|} chi(a) a`.
fn dirichlet_class_number(disc: i64) -> i64 {
    let w = match disc {
        -4 => 4,
        -3 => 6,
        _ => 2,
    };
    let n = -disc;
    let s: i64 = (1..=n).map(|a| kronecker(disc, a) as i64 * a).sum();
    -w * s / (2 * n)
}

/// Reduced forms enumerated by `c`, then `b`, then `a`.
fn swapped_enumeration(disc: i64) -> BTreeSet<(i64, i64, i64)> {
    let mut out = BTreeSet::new();
    for c in 1..=-disc {
        for b in -c..=c {
            let num = b * b - disc;
            if num % (4 * c) != 0 {
                continue;
            }
            let a = num / (4 * c);
            let g = num_integer::gcd(num_integer::gcd(a, b), c);
            let reduced = b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c));
            if reduced && g == 1 {
                out.insert((a, b, c));
            }
        }
    }
    out
}

#[test]
fn class_group_examples() {
    let g = class_group(&field(-1));
    assert_eq!(g.order(), 1);
    assert_eq!(g.forms, vec![BQForm::new(1, 0, 1)]);
    let g = class_group(&field(-5));
    assert_eq!(g.disc, -20);
    assert_eq!(g.forms, vec![BQForm::new(1, 0, 5), BQForm::new(2, 2, 3)]);
    assert_eq!(g.structure(), vec![2]);
    let g = class_group(&field(-3));
    assert_eq!(g.forms, vec![BQForm::new(1, 1, 1)]);
}

#[test]
fn non_fundamental_rejected_with_hint() {
    assert_eq!(fundamental_check(-12), Err(Level1Error::NonFundamental { disc: -12, hint: -3 }));
    assert_eq!(fundamental_check(-16), Err(Level1Error::NonFundamental { disc: -16, hint: -1 }));
    assert!(class_group_of_discriminant(-36).is_err());
    assert!(class_group_of_discriminant(-23).is_ok());
}

#[test]
fn class_numbers_match_dirichlet_and_swapped_enumeration() {
    for disc in fundamental_discriminants(200) {
        let g = class_group_of_discriminant(disc).unwrap();
        let forms: BTreeSet<_> = g.forms.iter().map(|f| (f.a, f.b, f.c)).collect();
        assert_eq!(forms, swapped_enumeration(disc), "D = {disc}");
        assert_eq!(g.order() as i64, dirichlet_class_number(disc), "D = {disc}");
    }
}

#[test]
fn class_group_structures() {
    assert_eq!(class_group_of_discriminant(-23).unwrap().structure(), vec![3]);
    assert_eq!(class_group_of_discriminant(-84).unwrap().structure(), vec![2, 2]);
    assert_eq!(class_group_of_discriminant(-56).unwrap().structure(), vec![4]);
    assert_eq!(class_group_of_discriminant(-47).unwrap().structure(), vec![5]);
    for disc in fundamental_discriminants(400) {
        let g = class_group_of_discriminant(disc).unwrap();
        let s = g.structure();
        assert_eq!(s.iter().product::<usize>(), g.order(), "D = {disc}");
        assert!(s.windows(2).all(|w| w[1] % w[0] == 0), "D = {disc}: {s:?}");
        let exponent = (0..g.order()).map(|i| g.element_order(i)).max().unwrap();
        assert_eq!(s.last().copied().unwrap_or(1), exponent, "D = {disc}");
    }
}

#[test]
fn torsion_units_count_norm_one_elements() {
    for disc in fundamental_discriminants(300) {
        let d = if disc % 4 == 0 { disc / 4 } else { disc };
        let units = elements_of_norm(disc, 1).len() as u64;
        assert_eq!(torsion_units(&field(d)), units);
        assert!([2, 4, 6].contains(&units));
        if units != 2 {
            assert!(disc == -3 || disc == -4);
        }
    }
}

/// `Z`-basis `content * {A, (-B + sqrt D)/2}` as elements.
fn ideal_basis(i: &Ideal) -> [OElt; 2] {
    let c = i.content;
    [OElt { x: 2 * c * i.form.a, y: 0 }, OElt { x: -c * i.form.b, y: c }]
}

fn ideal_of_disc(disc: i64) -> impl Strategy<Value = Ideal> {
    let primes: Vec<u64> = (2..200u64).filter(|&l| is_prime(l) && kronecker(disc, l as i64) != -1).collect();
    proptest::sample::select(primes).prop_flat_map(move |l| {
        let d = if disc % 4 == 0 { disc / 4 } else { disc };
        let ps = PrimeIdeal::over(&field(d), l).unwrap();
        proptest::sample::select(ps).prop_map(move |p| p.ideal(disc))
    })
}

fn disc_and_two_ideals() -> impl Strategy<Value = (i64, Ideal, Ideal, Ideal)> {
    proptest::sample::select(vec![-4i64, -3, -20, -23, -56, -84, -47, -71])
        .prop_flat_map(|d| (Just(d), ideal_of_disc(d), ideal_of_disc(d), ideal_of_disc(d)))
}

proptest! {
    #[test]
    fn composition_is_a_group_law((disc, i, j, k) in disc_and_two_ideals()) {
        let g = class_group_of_discriminant(disc).unwrap();
        let (a, b, c) = (g.index_of(&i.form).unwrap(), g.index_of(&j.form).unwrap(), g.index_of(&k.form).unwrap());
        let e = g.identity();
        prop_assert_eq!(g.table[g.table[a][b]][c], g.table[a][g.table[b][c]]);
        prop_assert_eq!(g.table[a][b], g.table[b][a]);
        prop_assert_eq!(g.table[a][e], a);
        let inv = g.index_of(&i.form.inverse()).unwrap();
        prop_assert_eq!(g.table[a][inv], e);
    }

    #[test]
    fn ideal_product_contains_products_and_multiplies_norms((disc, i, j, k) in disc_and_two_ideals()) {
        let ij = i.mul(&j);
        prop_assert_eq!(ij.norm(), i.norm() * j.norm());
        for x in ideal_basis(&i) {
            for y in ideal_basis(&j) {
                prop_assert!(ij.contains(&x.mul(&y, disc)));
            }
        }
        let ijk = ij.mul(&k);
        prop_assert_eq!(ijk.norm(), i.norm() * j.norm() * k.norm());
        prop_assert!(ijk.form.reduce() == i.form.compose(&j.form).compose(&k.form));
    }

    #[test]
    fn principal_iff_identity_class((disc, i, _j, _k) in disc_and_two_ideals()) {
        let g = class_group_of_discriminant(disc).unwrap();
        let principal = g.index_of(&i.form) == Some(g.identity());
        prop_assert_eq!(i.generator().is_some(), principal);
    }
}

#[test]
fn unit_group_rank_examples() {
    let f = field(-1);
    let target = OElt { x: 4, y: 1 };
    let w = PrimeIdeal::over(&f, 5).unwrap().into_iter().find(|w| w.ideal(-4).contains(&target)).unwrap();
    let r = unit_group_rank(&f, &[w]);
    assert_eq!((r.torsion, r.rank), (4, 1));
    assert_eq!(r.witnesses[0].order, 1);
    let kappa = r.witnesses[0].kappa;
    let associates: Vec<OElt> = elements_of_norm(-4, 1).iter().map(|u| u.mul(&target, -4)).collect();
    assert!(associates.contains(&kappa));
    assert_eq!(kappa.in_sqrt_d(&f).0 * kappa.in_sqrt_d(&f).0 + kappa.in_sqrt_d(&f).1 * kappa.in_sqrt_d(&f).1, Rat::from(5));

    let f = field(-5);
    let over2 = PrimeIdeal::over(&f, 2).unwrap();
    assert_eq!(over2.len(), 1);
    let r = unit_group_rank(&f, &over2);
    assert_eq!((r.torsion, r.rank, r.witnesses[0].order), (2, 1, 2));
    let (a, b) = r.witnesses[0].kappa.in_sqrt_d(&f);
    assert_eq!(&a * &a + Rat::from(5) * &b * &b, Rat::from(4));
    assert_eq!(unit_group_rank(&f, &[]).rank, 0);
}

fn primes_of_field(f: &QuadImagField, bound: u64) -> Vec<PrimeIdeal> {
    (2..=bound).filter(|&l| is_prime(l)).filter_map(|l| PrimeIdeal::over(f, l).ok()).flatten().collect()
}

/// Index of the span of `rows` in `Z^n`, or `None` if the span has lower rank.
fn lattice_index(rows: &[Vec<i64>], n: usize) -> Option<i64> {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut index = 1;
    for col in 0..n {
        let mut pivot: Option<Vec<i64>> = None;
        let mut rest = Vec::new();
        for mut r in m.drain(..) {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(p) => {
                    while r[col] != 0 {
                        let q = p[col] / r[col];
                        for k in 0..n {
                            p[k] -= q * r[k];
                        }
                        std::mem::swap(p, &mut r);
                    }
                    rest.push(r);
                }
            }
        }
        index *= pivot?[col].abs();
        m = rest;
    }
    Some(index)
}

#[test]
fn s_unit_sequence_exact_for_q_sqrt_minus_5() {
    let f = field(-5);
    let disc = -20;
    let g = class_group(&f);
    let primes = primes_of_field(&f, 30);
    assert_eq!(primes.len(), 10);
    let classes: Vec<usize> = primes.iter().map(|w| g.index_of(&w.ideal(disc).form).unwrap()).collect();
    let mut elements = Vec::new();
    for n in 2..=600 {
        for z in elements_of_norm(disc, n) {
            let v: Vec<i64> = primes.iter().map(|w| valuation_at(disc, &z, w) as i64).collect();
            let covered: i64 = primes.iter().zip(&v).map(|(w, &e)| (w.l as i64).pow(e as u32)).product();
            if covered == n {
                elements.push(v);
            }
        }
    }
    for mask in 1u32..(1 << primes.len()) {
        let s: Vec<usize> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).collect();
        let image: Vec<Vec<i64>> = elements
            .iter()
            .filter(|v| (0..primes.len()).all(|i| v[i] == 0 || s.contains(&i)))
            .map(|v| s.iter().map(|&i| v[i]).collect())
            .collect();
        for v in &image {
            let class = s.iter().zip(v).fold(g.identity(), |acc, (&i, &e)| (0..e).fold(acc, |a, _| g.table[a][classes[i]]));
            assert_eq!(class, g.identity());
        }
        let generated: BTreeSet<usize> = s.iter().map(|&i| classes[i]).chain([g.identity()]).collect();
        let kernel_index = generated.len() as i64;
        assert_eq!(lattice_index(&image, s.len()), Some(kernel_index), "S = {s:?}");
        let report = unit_group_rank(&f, &s.iter().map(|&i| primes[i]).collect::<Vec<_>>());
        assert_eq!(report.rank, s.len());
        for wit in &report.witnesses {
            assert_eq!(wit.kappa.norm(disc), (wit.prime.l as i64).pow(wit.order));
            assert_eq!(valuation_at(disc, &wit.kappa, &wit.prime), wit.order);
        }
    }
}

fn sqrt_minus_one_mod(m: u64) -> u64 {
    let p = (2..).find(|p| m % p == 0).unwrap();
    let r = (1..p).find(|r| (r * r + 1) % p == 0).unwrap();
    (0..m).find(|s| s % p == r && (s * s + 1) % m == 0).unwrap()
}

/// `q = t / t^c` for Gaussian `t = a + b i`, as `(a + b i)^2 / (a^2 + b^2)` mod `p^2`.
fn gaussian_q(a: i64, b: i64, p: u64) -> u64 {
    let m = p * p;
    let s = sqrt_minus_one_mod(m) as i64;
    let re = a * a - b * b;
    let im = 2 * a * b;
    let num = Rat::from(re + im * s);
    (num / Rat::from(a * a + b * b)).reduce_mod(m).unwrap()
}

#[test]
fn generator_prime_examples() {
    let f = field(-1);
    let w = find_generator_prime(&f, 5, 1000).unwrap();
    assert_eq!(w.l, 13);
    assert_eq!(w.t.in_sqrt_d(&f), (Rat::from(3), Rat::from(2)));
    assert_eq!(w.q_mod_p2, 3);
    assert_eq!(w.q_mod_p2, gaussian_q(3, 2, 5));
    assert_eq!(w.q_power_mod_p2, 6);

    let w = find_generator_prime(&f, 13, 1000).unwrap();
    assert_eq!(w.l, 5);
    assert_eq!(w.t.in_sqrt_d(&f), (Rat::from(2), Rat::from(1)));
    assert_eq!(w.q_mod_p2, gaussian_q(2, 1, 13));
    assert_ne!(w.q_power_mod_p2, 1);

    assert_eq!(find_generator_prime(&f, 7, 1000), Err(Level1Error::NotSplit { p: 7 }));
    assert_eq!(find_generator_prime(&f, 2, 1000), Err(Level1Error::PrimeTwo));
    assert_eq!(find_generator_prime(&f, 5, 12), Err(Level1Error::SearchExhausted { cap: 12 }));
}

#[test]
fn generator_prime_is_minimal_over_gaussian_oracle() {
    let f = field(-1);
    for p in (3..200u64).filter(|&p| is_prime(p) && p % 4 == 1) {
        let w = find_generator_prime(&f, p, 10_000).unwrap();
        let ok = |l: u64| {
            let (a, b) = (1..).map(|a| (a, ((l as i64 - a * a) as f64).sqrt() as i64)).find(|&(a, b)| a * a + b * b == l as i64).unwrap();
            let q = gaussian_q(a.max(b), a.min(b), p);
            let m = p * p;
            (0..4).fold(1u64, |acc, _| acc * q % m) != 1
        };
        for l in (2..w.l).filter(|&l| is_prime(l) && l % 4 == 1 && l != p) {
            assert!(!ok(l), "p = {p}, l = {l} should have been accepted");
        }
        assert!(ok(w.l));
    }
}

#[test]
fn generator_prime_with_nonprincipal_candidates() {
    let f = field(-5);
    for p in [3u64, 7, 23, 29, 41] {
        let w = find_generator_prime(&f, p, 10_000).unwrap();
        assert_eq!(w.t.norm(-20), w.l as i64);
        assert_ne!(w.q_power_mod_p2, 1);
        for (l, _) in &w.rejected {
            assert!(*l < w.l);
        }
        assert!(w.rejected.iter().any(|(_, why)| *why == "nonprincipal"));
    }
}

#[test]
fn decomposition_examples() {
    let f = field(-1);
    for p in [5u64, 13, 17, 29] {
        let d = decomposition_count(&f, p).unwrap();
        assert_eq!((d.f, d.factors), (1, 1));
    }
    let f = field(-5);
    let d = decomposition_count(&f, 3).unwrap();
    assert_eq!((d.f, d.factors, d.h), (2, 1, 2));
    assert_eq!(d.prime.ideal(-20).form.reduce(), BQForm::new(2, 2, 3));
    let d = decomposition_count(&f, 29).unwrap();
    assert_eq!((d.f, d.factors), (1, 2));
    assert!(decomposition_count(&f, 11).is_err());
    assert!(decomposition_count(&f, 5).is_err());
}

#[test]
fn decomposition_matches_norm_equation() {
    let f = field(-5);
    for p in (3..500u64).filter(|&p| is_prime(p) && kronecker(-20, p as i64) == 1) {
        let d = decomposition_count(&f, p).unwrap();
        let principal = (0..=p as i64).any(|b| {
            let a2 = p as i64 - 5 * b * b;
            a2 >= 0 && (a2 as f64).sqrt() as i64 * (a2 as f64).sqrt() as i64 == a2
        });
        assert_eq!(d.f == 1, principal, "p = {p}");
        assert_eq!(d.f * d.factors, 2);
    }
}

fn nu_big(p: u64, k: u64, t: u64) -> u32 {
    let mut n = BigUint::from(k).pow(t as u32) - 1u32;
    let pb = BigUint::from(p);
    let mut v = 0;
    while (&n % &pb) == BigUint::from(0u32) {
        n /= &pb;
        v += 1;
    }
    v
}

#[test]
fn j_order_examples() {
    let t = j_homotopy_orders(5, 2, 2, 20).unwrap();
    let at = |t0: u64| t.rows.iter().find(|r| r.t == t0).unwrap().clone();
    assert_eq!(at(4).order, 5);
    assert_eq!(at(20).order, 25);
    assert_eq!(at(2).order, 1);
    assert!(t.rows.iter().all(|r| r.t % 2 == 0));
    assert_eq!(j_homotopy_orders(5, 10, 2, 4), Err(Level1Error::DivisibleByP));
}

#[test]
fn j_orders_match_exact_powers() {
    for p in [3u64, 5, 7, 11] {
        for k in (2..30).filter(|k| k % p != 0) {
            let table = j_homotopy_orders(p, k, 1, 60).unwrap();
            for row in table.rows {
                assert_eq!(row.nu, nu_big(p, k, row.t), "p = {p}, k = {k}, t = {}", row.t);
                assert_eq!(row.order, p.pow(row.nu));
            }
        }
    }
}

#[test]
fn j_orders_vanish_off_multiples_of_p_minus_one() {
    for p in [5u64, 7, 11, 13] {
        let k = classical_generator(p);
        for row in j_homotopy_orders(p, k, 1, 200).unwrap().rows {
            assert_eq!(row.nu == 0, row.t % (p - 1) != 0, "p = {p}, t = {}", row.t);
        }
    }
}

#[test]
fn alpha_family_cross_check() {
    for p in [5u64, 7] {
        let k = classical_generator(p);
        assert_eq!(nu_big(p, k, p - 1), 1);
        for i in 1..=p * p {
            let t = (p - 1) * i;
            let nu = nu_power_minus_one(p, k, t).unwrap();
            assert_eq!(nu, val_u64(i, p) + 1);
            assert_eq!(nu, nu_big(p, k, t));
            assert!(alpha_invariant_order(p, t as i64, nu).unwrap().exists());
            assert!(!alpha_invariant_order(p, t as i64, nu + 1).unwrap().exists());
        }
    }
}

proptest! {
    #[test]
    fn lte_formula(p in proptest::sample::select(vec![3u64, 5, 7, 11, 13]), k in 2u64..500, t in 1u64..400) {
        prop_assume!(k % p != 0);
        let o = (1..p).find(|&o| (0..o).fold(1u64, |a, _| a * k % p) == 1).unwrap();
        let expected = if t % o == 0 { nu_big(p, k, o) + val_u64(t / o, p) } else { 0 };
        prop_assert_eq!(nu_power_minus_one(p, k, t).unwrap(), expected);
    }
}
