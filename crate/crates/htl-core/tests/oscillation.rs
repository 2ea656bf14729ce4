use core::f64::consts::{E, PI};

use htl_core::oscillation::{
    bmo_log_norm, check_domination, check_prop_log, check_prop_loglog, check_variation_bound, dyadic_arcs_in,
    mean_oscillation, total_variation, Arc, ArcFamily, CheckStatus, Marks, Precondition, PropositionOptions, Variation,
};
use htl_core::{Complex64, Result};
use proptest::prelude::*;

fn ok<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Result<f64> {
    move |x| Ok(f(x))
}

#[test]
fn mean_oscillation_of_log_is_scale_free() {
    // ∫_0^d |ln x - (ln d - 1)| dx / d = 2/e for every d
    for d in [0.5, 0.1, 0.01] {
        let arc = Arc::new(0.0, d).unwrap();
        let r = mean_oscillation(ok(f64::ln), &arc, &Marks::singular_at(&[0.0])).unwrap();
        assert!((r.mo - 2.0 / E).abs() < 1e-6, "d = {d}: {}", r.mo);
        assert!((r.mean.re - (d.ln() - 1.0)).abs() < 1e-9);
    }
}

#[test]
fn elementary_oscillations_and_variations() {
    let unit = Arc::new(0.0, 1.0).unwrap();
    let circle = Arc::new(0.0, 2.0 * PI).unwrap();
    let none = Marks::none();
    assert!((mean_oscillation(ok(|x| x), &unit, &none).unwrap().mo - 0.25).abs() < 1e-14);
    assert!((mean_oscillation(ok(f64::sin), &circle, &none).unwrap().mo - 2.0 / PI).abs() < 1e-12);
    assert_eq!(total_variation(ok(|x| x), &unit, &none).unwrap(), Variation::Finite(1.0));
    let tv = total_variation(ok(f64::sin), &circle, &none).unwrap().value();
    assert!((tv - 4.0).abs() < 1e-7, "{tv}");
    let log_arc = Arc::new(0.0, 0.5).unwrap();
    let marks = Marks::singular_at(&[0.0]);
    assert_eq!(total_variation(ok(f64::ln), &log_arc, &marks).unwrap(), Variation::Unbounded);
}

#[test]
fn complex_samples_use_the_modulus() {
    let circle = Arc::new(0.0, 2.0 * PI).unwrap();
    let f = |x: f64| -> Result<Complex64> { Ok(Complex64::from_polar(1.0, x)) };
    let r = mean_oscillation(f, &circle, &Marks::none()).unwrap();
    assert!(r.mean.norm() < 1e-14);
    assert!((r.mo - 1.0).abs() < 1e-14);
}

#[test]
fn variation_bound_examples() {
    let unit = Arc::new(0.0, 1.0).unwrap();
    let c = check_variation_bound(ok(|x| x), &unit, &Marks::none()).unwrap();
    assert_eq!(c.status, CheckStatus::Pass);
    assert!((c.margin - 0.25 - 1e-8).abs() < 1e-12);
    let log_arc = Arc::new(0.0, 0.3).unwrap();
    let c = check_variation_bound(ok(f64::ln), &log_arc, &Marks::singular_at(&[0.0])).unwrap();
    assert_eq!(c.status, CheckStatus::VacuousPass);
}

#[test]
fn domination_examples() {
    let arc = Arc::new(-1.0, 2.0).unwrap();
    let none = Marks::none();
    let g = ok(|x: f64| x.powi(3) + x);
    let same = check_domination(&g, &g, &arc, false, &none).unwrap();
    assert_eq!(same.status, CheckStatus::Pass);
    let half = check_domination(ok(|x: f64| 0.5 * (x.powi(3) + x)), &g, &arc, true, &none).unwrap();
    assert_eq!(half.status, CheckStatus::Pass);
    assert!((half.mo_f - 0.5 * half.mo_g).abs() < 1e-12);
    let bad = check_domination(ok(|x: f64| 3.0 * x), ok(|x| x), &arc, false, &none).unwrap();
    assert_eq!(bad.status, CheckStatus::PreconditionViolated);
    assert!(matches!(bad.precondition, Precondition::Violated { .. }));
}

#[test]
fn log_log_satisfies_the_logarithmic_proposition() {
    let delta = (-2.0f64).exp();
    let arcs = dyadic_arcs_in(delta, 30);
    let f = ok(|x: f64| (-x.abs().ln()).ln());
    let df = ok(|x: f64| 1.0 / (x * x.abs().ln()));
    let t = check_prop_log(&f, &df, delta, &arcs, PropositionOptions::default()).unwrap();
    assert_eq!(t.status, CheckStatus::Pass);
    assert!(t.delta_exceeds_hypothesis);
    let mono = PropositionOptions { monotone: true, ..Default::default() };
    assert_eq!(check_prop_log(&f, &df, delta, &arcs, mono).unwrap().status, CheckStatus::Pass);
    let zero = check_prop_log(ok(|_| 0.0), ok(|_| 0.0), 0.05, &dyadic_arcs_in(0.05, 10), Default::default()).unwrap();
    assert_eq!(zero.status, CheckStatus::Pass);
    assert!(!zero.delta_exceeds_hypothesis);
}

#[test]
fn raw_log_violates_the_derivative_hypothesis() {
    let t = check_prop_log(
        ok(|x: f64| x.abs().ln()),
        ok(|x: f64| 1.0 / x),
        0.05,
        &dyadic_arcs_in(0.05, 5),
        Default::default(),
    )
    .unwrap();
    assert_eq!(t.status, CheckStatus::PreconditionViolated);
}

#[test]
fn signed_reciprocal_log_satisfies_the_loglog_proposition() {
    let delta = (-2.0f64).exp();
    let arcs = dyadic_arcs_in(delta, 30);
    let f = ok(|x: f64| if x == 0.0 { 0.0 } else { -x.signum() / x.abs().ln() });
    let df = ok(|x: f64| 1.0 / (x.abs() * x.abs().ln().powi(2)));
    let t = check_prop_loglog(&f, &df, delta, &arcs, PropositionOptions::default()).unwrap();
    assert_eq!(t.status, CheckStatus::Pass);
    let wide = check_prop_loglog(&f, &df, 0.2, &dyadic_arcs_in(0.2, 4), Default::default()).unwrap();
    assert_eq!(wide.status, CheckStatus::PreconditionViolated);
}

#[test]
fn weighted_oscillation_of_log_log_stays_bounded() {
    let f = ok(|x: f64| (-x.abs().ln()).ln());
    let marks = Marks::singular_at(&[0.0]);
    let mut last = 0.0;
    for k in [4, 10, 20, 30] {
        let arc = Arc::centered(0.0, 2.0 * (-(k as f64)).exp2()).unwrap();
        let w = mean_oscillation(&f, &arc, &marks).unwrap().weighted;
        assert!(w < 2.0, "k = {k}: {w}");
        last = w;
    }
    assert!(last > 0.0);
    // Contrast: the raw logarithm's weighted oscillation grows with the weight.
    let g = ok(|x: f64| x.abs().ln());
    let small = mean_oscillation(&g, &Arc::centered(0.0, 1e-8).unwrap(), &marks).unwrap();
    let large = mean_oscillation(&g, &Arc::centered(0.0, 1e-2).unwrap(), &marks).unwrap();
    assert!(small.weighted > 2.0 * large.weighted);
}

#[test]
fn bmo_supremum_is_monotone_in_the_family() {
    // periodic in x, singular at 0 only
    let f = ok(|x: f64| {
        let w = if x.abs() > PI { x - 2.0 * PI * x.signum() } else { x };
        (-(w.abs() / 4.0).ln()).ln()
    });
    let marks = Marks::singular_at(&[0.0]);
    let small = ArcFamily::dyadic(0.0, 10);
    let mut big = small.clone();
    big.extend(ArcFamily::random(3, 40, 1e-6));
    let a = bmo_log_norm(&f, &small, &marks).unwrap();
    let b = bmo_log_norm(&f, &big, &marks).unwrap();
    assert!(b.sup >= a.sup);
    assert_eq!(b.reports.len(), big.len());
    let c = bmo_log_norm(ok(|_| 1.5), &small, &marks).unwrap();
    assert!(c.sup < 1e-14);
    assert!(bmo_log_norm(&f, &ArcFamily::default(), &marks).is_err());
}

/// Piecewise-linear interpolant through `(xs[i], ys[i])`.
fn piecewise_linear(xs: Vec<f64>, ys: Vec<f64>) -> impl Fn(f64) -> Result<f64> {
    move |x| {
        let i = xs.partition_point(|&k| k <= x).clamp(1, xs.len() - 1);
        let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        Ok(ys[i - 1] + t * (ys[i] - ys[i - 1]))
    }
}

fn knots() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..12)
        .prop_flat_map(|m| (prop::collection::vec(0.01..0.5f64, m), prop::collection::vec(-5.0..5.0f64, m + 1)))
        .prop_map(|(steps, ys)| {
            let mut xs = vec![0.0];
            for s in steps {
                let last = *xs.last().unwrap();
                xs.push(last + s);
            }
            (xs, ys)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oscillation_ignores_shifts_and_scales((xs, ys) in knots(), c in -10.0..10.0f64) {
        let arc = Arc::new(xs[0], *xs.last().unwrap()).unwrap();
        let marks = Marks::breaks_at(&xs);
        let f = piecewise_linear(xs.clone(), ys.clone());
        let base = mean_oscillation(&f, &arc, &marks).unwrap().mo;
        let shifted = mean_oscillation(|x| Ok(f(x)? + c), &arc, &marks).unwrap().mo;
        let scaled = mean_oscillation(|x| Ok(c * f(x)?), &arc, &marks).unwrap().mo;
        prop_assert!((shifted - base).abs() < 1e-10);
        prop_assert!((scaled - c.abs() * base).abs() < 1e-10 * (1.0 + c.abs()));
    }

    #[test]
    fn oscillation_is_at_most_half_the_variation((xs, ys) in knots()) {
        let arc = Arc::new(xs[0], *xs.last().unwrap()).unwrap();
        let marks = Marks::breaks_at(&xs);
        let c = check_variation_bound(piecewise_linear(xs.clone(), ys.clone()), &arc, &marks).unwrap();
        prop_assert_eq!(c.status, CheckStatus::Pass);
        let exact: f64 = ys.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        prop_assert!((c.variation.value() - exact).abs() < 1e-9 * (1.0 + exact));
    }
}
