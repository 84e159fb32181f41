#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};
use proptest::prelude::*;

use polar_ekr::equality::intersection_distribution;
use polar_ekr::exactnum::{int, rat, rat_int, Rational};
use polar_ekr::hoffman::{bound_report, f_sweep, generic_ratio_bound, BoundReport, WeightVector};
use polar_ekr::lp::{build_lp_for, solve_exact};
use polar_ekr::report::{BoundRecord, Record};
use polar_ekr::scheme::{check_eigenmatrix, dual_eigenmatrix, eigenmatrix};
use polar_ekr::{Execution, SchemeParams};

fn odd_point() -> impl Strategy<Value = SchemeParams> {
    (1u32..=15, 2u32..=40).prop_map(|(h, q)| SchemeParams::new(2 * h + 1, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The algebra never uses that q is a prime power, so any q >= 2 must work.
    #[test]
    fn ratio_bound_matches_closed_form(params in odd_point()) {
        let r = bound_report(params).unwrap();
        prop_assert!(r.bounds_match);
        prop_assert!(r.point_pencil <= r.closed_form_bound);
        prop_assert!(r.k > r.lambda);
    }

    #[test]
    fn eigenmatrix_is_self_consistent(d in 1u32..=10, q in 2u32..=12) {
        let em = eigenmatrix(SchemeParams::new(d, q).unwrap()).unwrap();
        check_eigenmatrix(&em).unwrap();
        let qm = dual_eigenmatrix(&em);
        let n = rat_int(&em.n);
        let dd = em.d();
        for i in 0..=dd {
            for k in 0..=dd {
                let s: Rational = (0..=dd).map(|j| rat_int(&em.p[i][j]) * &qm[j][k]).sum();
                prop_assert_eq!(s, if i == k { n.clone() } else { Rational::zero() });
            }
        }
    }

    #[test]
    fn bound_records_round_trip(params in odd_point()) {
        let r = bound_report(params).unwrap();
        let line = Record::Bound(BoundRecord::from(&r)).to_json();
        let Record::Bound(rec) = Record::from_json(&line).unwrap() else { panic!("wrong kind") };
        prop_assert_eq!(BoundReport::try_from(&rec).unwrap(), r);
    }

    #[test]
    fn intersection_counts_are_consistent(h in 1u32..=4, q in 2u32..=5, size in 1u64..10_000) {
        let em = eigenmatrix(SchemeParams::new(2 * h + 1, q).unwrap()).unwrap();
        let rep = intersection_distribution(&em, &int(size as i64)).unwrap();
        prop_assert!(rep.n[0].is_one());
        prop_assert!(rep.n[em.d()].is_zero());
        prop_assert_eq!(rep.n.iter().sum::<Rational>(), rat(size as i64, 1));
    }

    #[test]
    fn sweep_never_beats_the_optimal_weight(h in 1u32..=4, q in 2u32..=9, grid in 2usize..=60) {
        let params = SchemeParams::new(2 * h + 1, q).unwrap();
        let rep = f_sweep(params, grid, Execution::Sequential).unwrap();
        prop_assert_eq!(rep.samples.len(), grid);
        prop_assert!(rep.samples.iter().all(|(_, m)| *m <= rep.optimal_min));
    }
}

// Every admissible weighting gives a valid bound, and the Delsarte LP is the
// best such bound, so none may fall below the LP optimum.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weighted_bounds_never_beat_the_lp(
        point in prop::sample::select(vec![(3u32, 2u32), (3, 3), (5, 2)]),
        raw in prop::collection::vec(-40i64..=0, 4),
        top in 1i64..=5,
    ) {
        let params = SchemeParams::new(point.0, point.1).unwrap();
        let em = eigenmatrix(params).unwrap();
        let lp = solve_exact(&build_lp_for(&em).program).unwrap().optimum.unwrap();
        let d = em.d();
        let mut coeffs: Vec<Rational> = raw.iter().take(d - 1).map(|&c| rat(c, 8)).collect();
        coeffs.push(rat(top, 1));
        let w = WeightVector::new(coeffs).unwrap();
        if let Ok(b) = generic_ratio_bound(&em, &w) {
            prop_assert!(b.bound >= lp, "weights {:?} give {} < LP {}", w.coeffs(), b.bound, lp);
        }
    }
}
