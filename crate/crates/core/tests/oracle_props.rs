use cubiprox::oracle::suites::{run_suite, Suite};
use cubiprox::oracle::{bisect, golden_min, roots_by_bisection, suite_seed, Bracket};
use cubiprox::{ConvexQuartic, Cubic};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bisection_and_golden_section_agree(
        a in 0.1..5.0f64,
        b in -3.0..3.0f64,
        slack in 0.0..3.0f64,
        d in -5.0..5.0f64,
        y in -20.0..20.0f64,
    ) {
        let h = ConvexQuartic::new(a, b, 3.0 * b * b / (8.0 * a) + slack, d, 0.0).unwrap();
        let span = y.abs() + 10.0;
        let (g, _) = golden_min(|x| h.value(x) + 0.5 * (x - y) * (x - y), -span, span, 1e-12);
        let slope = |x: f64| h.derivative(x) + x - y;
        let r = bisect(&Bracket::from_fn(-span, span, slope).unwrap(), slope, 1e-13).unwrap();
        prop_assert!((g - r).abs() <= 1e-6, "golden {g} vs bisection {r}");
    }

    #[test]
    fn bisection_finds_the_closed_form_roots(
        a in 0.5..5.0f64,
        r1 in -5.0..5.0f64,
        r2 in -5.0..5.0f64,
        r3 in -5.0..5.0f64,
    ) {
        let mut want = [r1, r2, r3];
        want.sort_by(f64::total_cmp);
        prop_assume!(want[1] - want[0] > 1e-2 && want[2] - want[1] > 1e-2);
        let f = Cubic::new(a, -a * (r1 + r2 + r3), a * (r1 * r2 + r1 * r3 + r2 * r3), -a * r1 * r2 * r3).unwrap();
        let got = roots_by_bisection(&f, 1e-13);
        let closed = f.solve().distinct();
        prop_assert_eq!(got.len(), 3);
        for ((g, c), w) in got.iter().zip(&closed).zip(want) {
            prop_assert!((g - c).abs() <= 1e-6 && (g - w).abs() <= 1e-6, "{got:?} {closed:?} {want:?}");
        }
    }
}

#[test]
fn every_suite_passes_on_the_default_seed() {
    for suite in Suite::ALL {
        let r = run_suite(suite, suite_seed(), 1000, suite.default_tol()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.fallbacks, 0, "{r:?}");
    }
}

#[test]
fn reports_are_reproducible() {
    let a = run_suite(Suite::Perspective, 11, 50, 1e-5).unwrap();
    let b = run_suite(Suite::Perspective, 11, 50, 1e-5).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invalid_bracket_is_reported() {
    assert!(Bracket::from_fn(2.0, 3.0, |x| x * x + 1.0).is_err());
    assert!(Bracket::new(3.0, 2.0, -1.0, 1.0).is_err());
}
