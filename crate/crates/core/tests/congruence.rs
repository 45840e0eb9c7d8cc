use chromatic_core::arith::{val_u64, ResidueRing, Submodule};
use chromatic_core::congruence::*;
use chromatic_core::modforms::{delta, eisenstein, sturm_bound, QSeries, Rationals, WeightedForm};

fn sturm(t: i64, m: u32) -> usize {
    sturm_bound(t, 2, m)
}

/// `Delta^m E_t` reduced modulo `p^j`, the cleared form of `E_t` at pole bound `m`.
fn cleared_eisenstein(t: u32, m: u32, ring: ResidueRing, prec: usize) -> Vec<u64> {
    let e = eisenstein(t, prec).unwrap().mul(&delta(prec).pow(m));
    e.reduce(ring).unwrap().coeffs().to_vec()
}

fn group_module(g: &CongruenceGroup) -> Submodule {
    let rows: Vec<Vec<u64>> = g.generators.iter().map(|x| x.series.coeffs().to_vec()).collect();
    Submodule::new(g.ring(), g.precision_used, &rows)
}

#[test]
fn a_weight_four_is_generated_by_e4() {
    let g = compute_a(5, 2, 4, 1, 0, sturm(4, 0)).unwrap();
    assert_eq!(g.log_size, 1);
    assert_eq!(g.exponent(), 5);
    let e4 = cleared_eisenstein(4, 0, g.ring(), g.precision_used);
    assert!(group_module(&g).contains(&e4));
}

#[test]
fn a_weight_six_is_trivial() {
    let g = compute_a(5, 2, 6, 1, 0, sturm(6, 0)).unwrap();
    assert_eq!(g.log_size, 0);
    assert!(g.generators.is_empty());
}

#[test]
fn a_weight_twenty_contains_e20_of_order_25() {
    let g = compute_a(5, 2, 20, 2, 0, sturm(20, 0)).unwrap();
    assert_eq!(g.exponent(), 25);
    let e20 = cleared_eisenstein(20, 0, g.ring(), g.precision_used);
    assert!(group_module(&g).contains(&e20));
    assert_eq!(Submodule::order_log(g.ring(), &e20), 2);
}

#[test]
fn a_rejects_low_precision_and_bad_primes() {
    assert!(matches!(
        compute_a(5, 2, 20, 2, 0, 5),
        Err(CongruenceError::InsufficientPrecision { given: 5, needed: 6 })
    ));
    assert!(matches!(compute_a(3, 2, 4, 1, 0, 50), Err(CongruenceError::PrimeTooSmall(3))));
    assert!(matches!(compute_a(5, 5, 4, 1, 0, 50), Err(CongruenceError::SamePrimes)));
    assert!(matches!(compute_a(5, 4, 4, 1, 0, 50), Err(CongruenceError::NotPrime(4))));
}

#[test]
fn a_odd_weight_is_trivial() {
    let g = compute_a(5, 2, 7, 1, 0, 50).unwrap();
    assert_eq!(g.log_size, 0);
}

#[test]
fn a_exponent_matches_eisenstein_orders() {
    for p in [5u64, 7] {
        for i in 1..=25u64 {
            let t = ((p - 1) * i) as i64;
            let j = val_u64(i, p) + 1;
            let g = compute_a(p, 2, t, j, 0, sturm(t, 0)).unwrap();
            assert_eq!(g.log_exponent, j, "p={p} i={i}");
            let et = cleared_eisenstein(t as u32, 0, g.ring(), g.precision_used);
            let module = group_module(&g);
            assert!(module.contains(&et), "p={p} i={i}");
            assert_eq!(Submodule::order_log(g.ring(), &et), j);
        }
    }
}

#[test]
fn a_is_stable_under_larger_pole_bound() {
    for i in 1..=12u64 {
        let t = (4 * i) as i64;
        let j = val_u64(i, 5) + 1;
        let g0 = compute_a(5, 2, t, j, 0, sturm(t, 1)).unwrap();
        let g1 = compute_a(5, 2, t, j, 1, sturm(t, 1)).unwrap();
        assert_eq!(g0.log_exponent, g1.log_exponent, "t={t}");
    }
}

#[test]
fn a_generators_verify_at_double_precision() {
    for (t, j, m) in [(4i64, 1u32, 0u32), (20, 2, 0), (24, 1, 1), (40, 2, 1), (100, 3, 0), (12, 2, 2)] {
        let g = compute_a(5, 2, t, j, m, sturm(t, m)).unwrap();
        assert!(verify_a(&g, 2), "t={t} j={j} m={m}");
    }
    let g = compute_a(7, 3, 6, 1, 0, sturm_bound(6, 3, 0)).unwrap();
    assert!(verify_a(&g, 2));
}

#[test]
fn b_detects_beta_one_in_the_full_level_two_space() {
    let g = compute_b(5, 2, 24, 4, 1, 0, sturm(24, 0), WitnessSpace::Full).unwrap();
    assert_eq!(g.verdict, Some(BVerdict::WitnessFound));
    assert_eq!(g.log_exponent, 1);
}

#[test]
fn b_old_subspace_verdict_is_labelled() {
    let g = compute_b(5, 2, 24, 4, 1, 0, sturm(24, 0), WitnessSpace::Old).unwrap();
    assert_eq!(g.verdict, Some(BVerdict::NoWitnessInOldSubspace));
}

#[test]
fn b_preconditions() {
    assert!(matches!(
        compute_b(5, 2, 24, 6, 1, 0, sturm(24, 0), WitnessSpace::Old),
        Err(CongruenceError::Precondition(_))
    ));
    assert!(matches!(
        compute_b(5, 2, 24, 4, 2, 0, sturm(24, 0), WitnessSpace::Old),
        Err(CongruenceError::Precondition(_))
    ));
    assert!(matches!(
        compute_b(5, 3, 24, 4, 1, 0, sturm_bound(24, 3, 0), WitnessSpace::Full),
        Err(CongruenceError::Precondition(_))
    ));
    let g = compute_b(5, 2, 25, 4, 1, 0, sturm(25, 0), WitnessSpace::Full).unwrap();
    assert_eq!(g.log_size, 0);
    assert_eq!(g.verdict, Some(BVerdict::NoWitness));
}

#[test]
fn b_verdict_is_monotone_in_k_and_precision() {
    for i in 1..=5i64 {
        let t = 24 * i;
        for jm in [5i64] {
            let j = 4 * jm;
            let hi = compute_b(5, 2, t, j, 2, 0, sturm(t, 0), WitnessSpace::Full).unwrap();
            let lo = compute_b(5, 2, t, j, 1, 0, sturm(t, 0), WitnessSpace::Full).unwrap();
            if hi.verdict == Some(BVerdict::WitnessFound) {
                assert_eq!(lo.verdict, Some(BVerdict::WitnessFound), "t={t} j={j}");
            }
        }
        for j in [4i64, 8] {
            let base = sturm(t, 0);
            let a = compute_b(5, 2, t, j, 1, 0, base, WitnessSpace::Full).unwrap();
            let b = compute_b(5, 2, t, j, 1, 0, 2 * base, WitnessSpace::Full).unwrap();
            if b.verdict == Some(BVerdict::WitnessFound) {
                assert_eq!(a.verdict, Some(BVerdict::WitnessFound), "t={t} j={j}");
            }
        }
    }
}

fn one(prec: usize) -> WeightedForm {
    WeightedForm::holomorphic(0, QSeries::one(Rationals, prec))
}

#[test]
fn serre_examples() {
    let e4 = WeightedForm::eisenstein(4, 30).unwrap();
    assert_eq!(serre_congruence_check(&one(30), &e4, 5, 1).unwrap(), SerreVerdict::Consistent);
    let e4p = e4.pow(5);
    assert_eq!(serre_congruence_check(&one(30), &e4p, 5, 2).unwrap(), SerreVerdict::Consistent);
    assert_eq!(serre_congruence_check(&e4p, &one(30), 5, 2).unwrap(), SerreVerdict::Consistent);
    let d = WeightedForm::holomorphic(12, delta(30));
    assert_eq!(serre_congruence_check(&d, &d, 5, 3).unwrap(), SerreVerdict::Consistent);
}

#[test]
fn serre_flags_truncations_that_hide_weight() {
    // At precision one every normalised form looks like 1.
    let e4 = WeightedForm::eisenstein(4, 1).unwrap();
    assert_eq!(serre_congruence_check(&one(1), &e4, 5, 2).unwrap(), SerreVerdict::WeightViolation);
    // Weight 0 against weight 20 at precision 1: weight fine, congruence fine.
    let e20 = WeightedForm::eisenstein(20, 1).unwrap();
    assert_eq!(serre_congruence_check(&one(1), &e20, 5, 2).unwrap(), SerreVerdict::Consistent);
}

#[test]
fn serre_weight_condition_forces_the_power_identity() {
    // Once f1 = f2 mod p^k and the weights differ by (p-1)p^(k-1)s, the Eisenstein power is 1 mod p^k.
    for k in 1..=3u32 {
        let s = 5u32.pow(k - 1);
        let f1 = WeightedForm::holomorphic(0, QSeries::from_rats(vec![1.into(), 0.into(), 3.into()]));
        let f2 = WeightedForm::holomorphic(
            4 * s as i64,
            QSeries::from_rats(vec![1.into(), (5i64.pow(k)).into(), 3.into()]),
        );
        assert_eq!(serre_congruence_check(&f1, &f2, 5, k).unwrap(), SerreVerdict::Consistent);
    }
}

#[test]
fn serre_rejects_non_congruent_inputs() {
    let e4 = WeightedForm::eisenstein(4, 30).unwrap();
    assert!(matches!(
        serre_congruence_check(&one(30), &e4, 5, 2),
        Err(CongruenceError::Precondition(_))
    ));
}

#[test]
fn serre_handles_poles() {
    let prec = 20;
    let inv = WeightedForm { weight: -12, pole_order: 1, cleared: QSeries::one(Rationals, prec) };
    let e4 = WeightedForm::eisenstein(4, prec).unwrap();
    let lhs = inv.clone();
    let rhs = inv.mul(&e4);
    assert_eq!(serre_congruence_check(&lhs, &rhs, 5, 1).unwrap(), SerreVerdict::Consistent);
}
