// Property-based invariants: structural laws that must hold for arbitrary
// inputs, not just the sampled campaigns.

mod common;

use common::assert_ddf_invariants;
use proptest::prelude::*;

use pnspace::ddf::{mixture, Ddf};
use pnspace::grid::Grid;
use pnspace::report::{CheckParams, VerificationReport};
use pnspace::spaces::{NormDef, PnSpace};
use pnspace::tnorm::{TConorm, TNorm};
use pnspace::topology::in_strong;
use pnspace::transform::{m_transform, MbFunction};
use pnspace::trifn::{colift, lift, sup_convolve};
use pnspace::ddf::AnalyticDdf;

fn grid() -> Grid {
    Grid::new(128, 4.0).expect("valid grid")
}

/// Step mixtures with up to four atoms; weights shrink so the total stays
/// below 1 and the mixture may be deficient.
fn arb_ddf() -> impl Strategy<Value = Ddf> {
    proptest::collection::vec((0.0f64..5.0, 0.05f64..0.3), 1..4).prop_map(|atoms| {
        let grid = grid();
        let weights: Vec<f64> = atoms.iter().map(|(_, w)| *w).collect();
        let steps: Vec<Ddf> = atoms.iter().map(|(a, _)| Ddf::eps(*a, grid)).collect();
        mixture(&weights, &steps).expect("weights sum below 1").ddf
    })
}

fn arb_tnorm() -> impl Strategy<Value = TNorm> {
    prop_oneof![
        Just(TNorm::Minimum),
        Just(TNorm::Product),
        Just(TNorm::Lukasiewicz),
        Just(TNorm::tg(AnalyticDdf::Ratio { c: 1.0 }, 2.0).unwrap()),
    ]
}

proptest! {
    #[test]
    fn convolution_output_is_a_ddf(f in arb_ddf(), g in arb_ddf(), t in arb_tnorm()) {
        let h = sup_convolve(&t, &f, &g);
        assert_ddf_invariants(&h, &t.name());
    }

    #[test]
    fn convolution_is_commutative(f in arb_ddf(), g in arb_ddf(), t in arb_tnorm()) {
        let a = sup_convolve(&t, &f, &g);
        let b = sup_convolve(&t, &g, &f);
        prop_assert!(a.eq_within(&b, 0, 1e-12).holds);
    }

    #[test]
    fn convolution_is_monotone_in_each_argument(
        f in arb_ddf(), g in arb_ddf(), shrink in arb_ddf(), t in arb_tnorm()
    ) {
        // min(F, S) <= F pointwise, so the convolution must not grow.
        let smaller = lift(&TNorm::Minimum, &f, &shrink);
        let big = sup_convolve(&t, &f, &g);
        let small = sup_convolve(&t, &smaller, &g);
        prop_assert!(small.le(&big, 1e-12).holds);
    }

    #[test]
    fn eps0_is_the_identity_and_eps_inf_absorbs(f in arb_ddf(), t in arb_tnorm()) {
        let grid = f.grid();
        let with_id = sup_convolve(&t, &f, &Ddf::eps0(grid));
        prop_assert!(with_id.eq_within(&f, 0, 1e-12).holds);
        let with_bottom = sup_convolve(&t, &f, &Ddf::eps_inf(grid));
        prop_assert!(with_bottom.is_eps_inf());
    }

    #[test]
    fn convolution_never_exceeds_the_min_lift(f in arb_ddf(), g in arb_ddf(), t in arb_tnorm()) {
        let conv = sup_convolve(&t, &f, &g);
        let bound = lift(&TNorm::Minimum, &f, &g);
        prop_assert!(conv.le(&bound, 1e-12).holds);
    }

    #[test]
    fn lift_orders_with_colift(f in arb_ddf(), g in arb_ddf()) {
        let below = lift(&TNorm::Lukasiewicz, &f, &g);
        let mid = lift(&TNorm::Minimum, &f, &g);
        let above = colift(&TConorm::Maximum, &f, &g);
        prop_assert!(below.le(&mid, 1e-12).holds);
        prop_assert!(mid.le(&above, 1e-12).holds);
    }

    #[test]
    fn transforms_preserve_ddf_shape(f in arb_ddf(), p in 1.0f64..3.0, b in 0.2f64..2.0) {
        let pow = MbFunction::parse(&format!("pow:{p}")).unwrap();
        let blow = MbFunction::parse(&format!("blowup:{b}")).unwrap();
        assert_ddf_invariants(&m_transform(&f, &pow), "pow transform");
        let g = m_transform(&f, &blow);
        assert_ddf_invariants(&g, "blowup transform");
        // Past a finite pole the transformed function is complete.
        prop_assert_eq!(g.eval(b + 2.0 * f.grid().step()), 1.0);
    }

    #[test]
    fn scalar_tnorms_obey_boundary_and_commutativity(
        x in 0.0f64..=1.0, y in 0.0f64..=1.0, t in arb_tnorm()
    ) {
        prop_assert!((t.eval(x, 1.0) - x).abs() <= 1e-9);
        prop_assert!((t.eval(x, y) - t.eval(y, x)).abs() <= 1e-12);
        prop_assert!(t.eval(x, y) <= x.min(y) + 1e-12);
        let s = t.dual();
        prop_assert!((s.eval(x, 0.0) - x).abs() <= 1e-9);
        prop_assert!(s.eval(x, y) + 1e-12 >= x.max(y));
    }

    #[test]
    fn strong_membership_is_symmetric_and_monotone(
        px in -2.0f64..2.0, py in -2.0f64..2.0,
        qx in -2.0f64..2.0, qy in -2.0f64..2.0,
        t in 0.05f64..1.5, dt in 0.0f64..1.0
    ) {
        let space = PnSpace::simple_space(
            2, grid(), NormDef::L2, AnalyticDdf::Ratio { c: 1.0 },
        ).unwrap();
        let p = [px, py];
        let q = [qx, qy];
        prop_assert_eq!(in_strong(&space, &p, &q, t), in_strong(&space, &q, &p, t));
        if in_strong(&space, &p, &q, t) {
            prop_assert!(in_strong(&space, &p, &q, t + dt));
        }
    }

    #[test]
    fn reports_round_trip_through_json(
        trials in 1u64..10_000, violation in 0.0f64..1.0
    ) {
        let report = VerificationReport {
            campaign: "round-trip".into(),
            verdict: pnspace::report::Verdict::Pass,
            trials,
            checked: trials,
            max_violation: violation,
            witness: None,
            claim: "serialization is lossless".into(),
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(report, back);
    }

    #[test]
    fn derived_params_are_stable_and_label_sensitive(seed in any::<u64>(), trials in 1u64..1000) {
        let base = CheckParams::new(trials, seed);
        prop_assert_eq!(base.derive("a"), base.derive("a"));
        prop_assert_ne!(base.derive("a").seed, base.derive("b").seed);
        prop_assert_eq!(base.derive("a").trials, trials);
    }
}
