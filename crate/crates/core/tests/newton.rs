use chromatic_core::newton::*;
use proptest::prelude::*;

fn figure() -> NewtonPolygon {
    NewtonPolygon::from_slopes(&[(1, 1, 1), (1, 3, 1), (1, 2, 1)]).unwrap()
}

#[test]
fn figure_polygon() {
    let p = figure();
    let segs: Vec<(u64, u64, u64)> = p.segments().iter().map(|s| (s.d, s.h, s.mult)).collect();
    assert_eq!(segs, vec![(1, 3, 1), (1, 2, 1), (1, 1, 1)]);
    assert_eq!(p.total(), (6, 3));
    assert_eq!(p.breakpoints(), vec![(0, 0), (3, 1), (5, 2), (6, 3)]);
    let art = p.render_ascii();
    assert!(art.starts_with("breakpoints: (0,0) (3,1) (5,2) (6,3)\n"));
    let rows: Vec<&str> = art.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], "  3 . . . . . . o");
    assert_eq!(rows[3], "  0 o . . . . . .");
}

#[test]
fn non_coprime_pairs_are_split_with_a_note() {
    let p = NewtonPolygon::from_slopes(&[(2, 4, 1)]).unwrap();
    assert_eq!(p.segments(), &[Segment { d: 1, h: 2, mult: 2 }]);
    assert_eq!(p.total(), (4, 2));
    assert_eq!(p.notes().len(), 1);
}

#[test]
fn empty_and_errors() {
    let p = NewtonPolygon::from_slopes(&[]).unwrap();
    assert_eq!(p.total(), (0, 0));
    assert_eq!(p.breakpoints(), vec![(0, 0)]);
    assert!(p.is_polarizable());
    assert_eq!(NewtonPolygon::from_slopes(&[(2, 1, 1)]), Err(NewtonError::DimensionExceedsHeight { d: 2, h: 1 }));
    assert_eq!(NewtonPolygon::from_slopes(&[(0, 0, 1)]), Err(NewtonError::ZeroHeight));
    assert_eq!(NewtonPolygon::from_slopes(&[(1, 2, 0)]), Err(NewtonError::ZeroMultiplicity));
}

#[test]
fn duals_and_polarization() {
    let p = NewtonPolygon::from_slopes(&[(1, 3, 1)]).unwrap();
    assert_eq!(p.dual(), NewtonPolygon::from_slopes(&[(2, 3, 1)]).unwrap());
    assert!(!p.is_polarizable());
    assert!(NewtonPolygon::from_slopes(&[(1, 2, 5)]).unwrap().is_polarizable());
    assert!(NewtonPolygon::from_slopes(&[(0, 1, 1), (1, 1, 1)]).unwrap().is_polarizable());
    assert!(NewtonPolygon::from_slopes(&[(1, 3, 1), (2, 3, 1)]).unwrap().is_polarizable());
    assert_eq!(NewtonPolygon::from_slopes(&[(1, 1, 2)]).unwrap().breakpoints(), vec![(0, 0), (2, 2)]);
}

fn polygon() -> impl Strategy<Value = NewtonPolygon> {
    proptest::collection::vec((1u64..9).prop_flat_map(|h| (0..=h, Just(h), 1u64..4)), 0..6)
        .prop_map(|v| NewtonPolygon::from_slopes(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dual_is_an_involution(p in polygon()) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn dual_swaps_dimension(p in polygon()) {
        let (h, d) = p.total();
        prop_assert_eq!(p.dual().total(), (h, h - d));
    }

    #[test]
    fn sum_with_dual_is_polarizable(p in polygon()) {
        prop_assert!(p.direct_sum(&p.dual()).is_polarizable());
    }

    #[test]
    fn breakpoints_are_convex(p in polygon()) {
        let bps = p.breakpoints();
        for w in bps.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            // slope(a,b) < slope(b,c)
            prop_assert!((b.1 - a.1) * (c.0 - b.0) < (c.1 - b.1) * (b.0 - a.0));
        }
        for s in p.segments() {
            prop_assert_eq!(chromatic_core::arith::gcd_u64(s.d, s.h), 1);
        }
    }
}
