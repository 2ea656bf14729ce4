use htl_core::fredholm::{
    apply_toeplitz, kernel_probe, preimage_smooth, section_evidence, surjectivity_probe, JacobiSolver, PreimageSolver,
    SectionSolver,
};
use htl_core::hardy::{fourier_coeffs, sample_circle, toeplitz_truncation, FourierCoeffs, KnownFunction};
use htl_core::{Complex64, Error};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn band_error(got: &FourierCoeffs, want: &FourierCoeffs) -> f64 {
    (0..=want.max_index() as i64).map(|k| (got.get(k) - want.get(k)).norm_sqr()).sum::<f64>().sqrt()
}

fn symbol_coeffs(grid: usize, n: usize) -> FourierCoeffs {
    fourier_coeffs(&sample_circle(&KnownFunction::Symbol, grid, 1e-5).unwrap(), n).unwrap()
}

#[test]
fn identity_and_shift_symbols() {
    let f = FourierCoeffs::from_analytic(&[c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)]);
    let one = FourierCoeffs::from_analytic(&[c(1.0, 0.0)]).resized(2);
    assert_eq!(apply_toeplitz(&one, &f, 2).unwrap(), f);

    let z = FourierCoeffs::from_analytic(&[c(0.0, 0.0), c(1.0, 0.0)]);
    let unit = FourierCoeffs::from_analytic(&[c(1.0, 0.0)]);
    let out = apply_toeplitz(&z, &unit, 1).unwrap();
    assert_eq!(out, z);
}

#[test]
fn finite_section_matches_the_operator_exactly() {
    let a = symbol_coeffs(1 << 12, 100);
    let n = 40;
    let f: Vec<Complex64> = (0..n).map(|k| c((k as f64 * 0.37).sin(), 1.0 / (k + 1) as f64)).collect();
    let section = toeplitz_truncation(&a, n).unwrap();
    let via_matrix = section.matvec(&f);
    let via_operator = apply_toeplitz(&a, &FourierCoeffs::from_analytic(&f), n - 1).unwrap();
    for (k, v) in via_matrix.iter().enumerate() {
        assert_eq!(*v, via_operator.get(k as i64), "index {k}");
    }
}

#[test]
fn preimage_of_zero_is_zero() {
    let eta = preimage_smooth(&FourierCoeffs::zeros(4), true, 1 << 12, 1e-5).unwrap();
    assert!(eta.l1_norm() == 0.0);
}

#[test]
fn preimage_of_one_round_trips_on_a_small_grid() {
    let solver = PreimageSolver::new(1 << 14, 1e-5).unwrap();
    let g = FourierCoeffs::from_analytic(&[c(1.0, 0.0)]);
    let eta = solver.preimage(&g, true).unwrap();
    let back = apply_toeplitz(solver.symbol(), &eta, 0).unwrap();
    let err = band_error(&back, &g);
    assert!(err <= 1e-6, "residual {err:e}");
}

#[test]
fn preimage_round_trip_on_a_fine_grid() {
    let solver = PreimageSolver::new(1 << 18, 1e-5).unwrap();
    let mut cubic = FourierCoeffs::zeros(3);
    cubic.set(1, c(2.0, 0.0));
    cubic.set(3, c(1.0, 0.0));
    let mut high = FourierCoeffs::zeros(64);
    high.set(64, c(0.0, 1.0));
    high.set(17, c(0.5, -0.5));
    for g in [cubic, high] {
        let eta = solver.preimage(&g, true).unwrap();
        let back = apply_toeplitz(solver.symbol(), &eta, g.max_index()).unwrap();
        let err = band_error(&back, &g);
        assert!(err <= 1e-6, "degree {}: residual {err:e}", g.max_index());
    }
}

#[test]
fn preimage_preconditions() {
    let solver = PreimageSolver::new(1 << 10, 1e-5).unwrap();
    let g = FourierCoeffs::from_analytic(&[c(1.0, 0.0)]);
    assert!(matches!(solver.preimage(&g, false), Err(Error::InvalidArgument(_))));
    let mut mixed = FourierCoeffs::zeros(2);
    mixed.set(-2, c(1e-3, 0.0));
    assert!(matches!(solver.preimage(&mixed, true), Err(Error::NotAnalytic(_))));
}

#[test]
fn kernel_probe_on_trivial_symbols() {
    let solver = JacobiSolver::default();
    let one = FourierCoeffs::from_analytic(&[c(1.0, 0.0)]).resized(32);
    let report = kernel_probe(&one, &[4, 8, 16], &solver).unwrap();
    for s in &report.sigma_min {
        assert!((s - 1.0).abs() < 1e-12);
    }
    let z = FourierCoeffs::from_analytic(&[c(0.0, 0.0), c(1.0, 0.0)]).resized(32);
    let report = kernel_probe(&z, &[4, 8, 16], &solver).unwrap();
    for s in &report.sigma_min {
        assert!(s.abs() < 1e-12);
    }
}

#[test]
fn jacobi_solver_handles_a_singular_section() {
    // T_n(z) annihilates e_{n-1}; its pseudo-inverse solution of T x = e_1
    // is e_0, and e_0 itself is not reachable.
    let z = FourierCoeffs::from_analytic(&[c(0.0, 0.0), c(1.0, 0.0)]).resized(8);
    let section = toeplitz_truncation(&z, 6).unwrap();
    let mut e1 = vec![c(0.0, 0.0); 6];
    e1[1] = c(1.0, 0.0);
    let mut e0 = vec![c(0.0, 0.0); 6];
    e0[0] = c(1.0, 0.0);
    let res = JacobiSolver::default().analyze(&section, &[e1, e0]).unwrap();
    assert_eq!(res.solutions[0].rank, 5);
    assert!((res.solutions[0].x[0] - c(1.0, 0.0)).norm() < 1e-12);
    assert!(res.solutions[0].residual < 1e-12);
    assert!((res.solutions[1].residual - 1.0).abs() < 1e-12);
}

#[test]
fn log_symbol_sections_and_target_growth() {
    let grid = 1 << 16;
    let a = symbol_coeffs(grid, 1024);
    let g = fourier_coeffs(&sample_circle(&KnownFunction::G, grid, 1e-5).unwrap(), 1024).unwrap();
    let orders = [16, 32, 64, 128];
    let ev = section_evidence(&a, &g, &orders, &JacobiSolver::default()).unwrap();
    assert!(ev.kernel.sigma_min.iter().all(|&s| s > 0.1));
    assert!(ev.target.max_residual() < 1e-10);
    assert!(ev.target.l1_strictly_increasing());
    for (t, ctl) in ev.target.l1_growth().iter().zip(ev.control.l1_growth()) {
        assert!(t > &ctl, "target growth {t} vs control {ctl}");
    }
    for l in ev.control.coeff_l1.iter().flatten() {
        assert!((l - 1.0).abs() < 1e-10);
    }
    let alone = surjectivity_probe(&a, &g, &orders, &JacobiSolver::default()).unwrap();
    assert_eq!(alone, ev.target);
}

#[test]
fn single_order_is_insufficient() {
    let a = FourierCoeffs::from_analytic(&[c(2.0, 0.0)]).resized(16);
    let g = FourierCoeffs::from_analytic(&[c(1.0, 0.0)]).resized(16);
    let r = surjectivity_probe(&a, &g, &[8], &JacobiSolver::default()).unwrap();
    assert!(r.insufficient_data);
    assert!(!r.l1_strictly_increasing());
    assert!((r.coeff_l1[0].unwrap() - 0.5).abs() < 1e-14);
}

fn analytic_poly(len: usize) -> impl Strategy<Value = FourierCoeffs> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len)
        .prop_map(|v| FourierCoeffs::from_analytic(&v.into_iter().map(|(r, i)| c(r, i)).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_toeplitz_is_linear(f in analytic_poly(12), h in analytic_poly(12),
                                alpha in (-2.0..2.0f64, -2.0..2.0f64), beta in (-2.0..2.0f64, -2.0..2.0f64)) {
        let a = symbol_coeffs(1 << 10, 64);
        let (al, be) = (c(alpha.0, alpha.1), c(beta.0, beta.1));
        let combo: Vec<Complex64> = f.analytic_part().iter().zip(h.analytic_part()).map(|(x, y)| al * x + be * y).collect();
        let lhs = apply_toeplitz(&a, &FourierCoeffs::from_analytic(&combo), 30).unwrap();
        let tf = apply_toeplitz(&a, &f, 30).unwrap();
        let th = apply_toeplitz(&a, &h, 30).unwrap();
        for k in 0..=30 {
            let rhs = al * tf.get(k) + be * th.get(k);
            prop_assert!((lhs.get(k) - rhs).norm() < 1e-10);
        }
    }
}
