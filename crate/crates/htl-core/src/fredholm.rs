//! Finite-section evidence about `T_a f = P(a f)` on the analytic side:
//! trivial kernel, an explicit preimage for smooth targets, and the growth
//! of finite-section solutions for the target that is not in the range.
//!
//! All of this is numerical evidence gathered on truncations, not proof.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::hardy::{
    fourier_coeffs, sample_circle, toeplitz_truncation, FourierCoeffs, KnownFunction, ToeplitzTruncation,
};
use crate::linalg::Svd;

/// Co-analytic energy above which an input is not treated as analytic.
pub const ANALYTIC_TOLERANCE: f64 = 1e-10;

/// Singular values below this fraction of the largest are dropped.
pub const RANK_THRESHOLD: f64 = 1e-12;

fn require_analytic(f: &FourierCoeffs) -> Result<()> {
    let e = f.coanalytic_energy();
    if e > ANALYTIC_TOLERANCE {
        return Err(Error::NotAnalytic(e));
    }
    Ok(())
}

/// `P(a f)` for analytic `f`, returned with coefficients `0..=out_n`.
///
/// Every output coefficient needs `a_{m-k}` for `m ≤ out_n`, `k ≤ N_f`, so
/// the symbol must carry `max(out_n, N_f)` coefficients per side. The sum
/// runs in the same order as a finite-section product, so both agree
/// exactly.
pub fn apply_toeplitz(a: &FourierCoeffs, f: &FourierCoeffs, out_n: usize) -> Result<FourierCoeffs> {
    require_analytic(f)?;
    let nf = f.max_index();
    let required = out_n.max(nf);
    if a.max_index() < required {
        return Err(Error::BandwidthOverflow { required, available: a.max_index() });
    }
    let fa = f.analytic_part();
    let mut out = FourierCoeffs::zeros(out_n);
    for m in 0..=out_n as i64 {
        let s: Complex64 = fa.iter().enumerate().map(|(k, &x)| a.get(m - k as i64) * x).sum();
        out.set(m, s);
    }
    Ok(out)
}

/// Coefficients of `a`, `a⁻` and `1/a⁺` from one grid, so that the
/// factorization `a = a⁺/a⁻` holds between them to grid accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct PreimageSolver {
    symbol: FourierCoeffs,
    a_minus: FourierCoeffs,
    inverse_a_plus: FourierCoeffs,
}

impl PreimageSolver {
    pub fn new(grid: usize, window: f64) -> Result<PreimageSolver> {
        let n = grid / 2 - 1;
        let coeffs =
            |f: KnownFunction| -> Result<FourierCoeffs> { fourier_coeffs(&sample_circle(&f, grid, window)?, n) };
        Ok(PreimageSolver {
            symbol: coeffs(KnownFunction::Symbol)?,
            a_minus: coeffs(KnownFunction::AMinus)?,
            inverse_a_plus: coeffs(KnownFunction::InverseAPlus)?,
        })
    }

    /// The symbol's coefficients, with the bandwidth of the preimages.
    pub fn symbol(&self) -> &FourierCoeffs {
        &self.symbol
    }

    /// `η = P(a⁻ g)/a⁺`, which satisfies `T_a η = g` for bounded analytic
    /// `g`. The division is carried out as a product with the coefficients
    /// of `1/a⁺`.
    pub fn preimage(&self, g: &FourierCoeffs, bounded: bool) -> Result<FourierCoeffs> {
        if !bounded {
            return Err(Error::InvalidArgument("the explicit preimage needs a bounded target"));
        }
        require_analytic(g)?;
        let d = g.max_index();
        let n = self.symbol.max_index();
        if d > n {
            return Err(Error::BandwidthOverflow { required: d, available: n });
        }
        let ga = g.analytic_part();
        // P(a⁻ g) has degree at most deg g since a⁻ has no positive part.
        let p: Vec<Complex64> =
            (0..=d).map(|m| (m..=d).map(|k| self.a_minus.get(m as i64 - k as i64) * ga[k]).sum()).collect();
        let mut eta = FourierCoeffs::zeros(n);
        for m in 0..=n {
            let s: Complex64 = (0..=m.min(d)).map(|k| p[k] * self.inverse_a_plus.get((m - k) as i64)).sum();
            eta.set(m as i64, s);
        }
        Ok(eta)
    }
}

/// [`PreimageSolver::preimage`] with a fresh solver on the given grid.
pub fn preimage_smooth(g: &FourierCoeffs, bounded: bool, grid: usize, window: f64) -> Result<FourierCoeffs> {
    PreimageSolver::new(grid, window)?.preimage(g, bounded)
}

/// Least-squares solution of one right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares {
    pub x: Vec<Complex64>,
    /// `‖T x - b‖₂`.
    pub residual: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionAnalysis {
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub solutions: Vec<LeastSquares>,
}

/// Smallest singular value and least-squares solves for one section, all
/// from a single factorization.
pub trait SectionSolver {
    fn analyze(&self, section: &ToeplitzTruncation, rhs: &[Vec<Complex64>]) -> Result<SectionAnalysis>;
}

/// Dense Jacobi SVD. Exact to working precision; practical up to a few
/// hundred rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiSolver {
    pub threshold: f64,
}

impl Default for JacobiSolver {
    fn default() -> Self {
        JacobiSolver { threshold: RANK_THRESHOLD }
    }
}

/// `‖T x - b‖₂`.
pub fn residual_norm(section: &ToeplitzTruncation, x: &[Complex64], b: &[Complex64]) -> f64 {
    let tx = section.matvec(x);
    tx.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt()
}

impl SectionSolver for JacobiSolver {
    fn analyze(&self, section: &ToeplitzTruncation, rhs: &[Vec<Complex64>]) -> Result<SectionAnalysis> {
        let n = section.order();
        let svd = Svd::from_row_major(&section.to_dense(), n, n)?;
        let s = svd.singular_values();
        let mut solutions = Vec::with_capacity(rhs.len());
        for b in rhs {
            let (x, rank) = svd.solve(b, self.threshold)?;
            let residual = residual_norm(section, &x, b);
            solutions.push(LeastSquares { x, residual, rank });
        }
        Ok(SectionAnalysis { sigma_max: s[0], sigma_min: s[n - 1], solutions })
    }
}

/// One row per section order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub orders: Vec<usize>,
    pub sigma_min: Vec<f64>,
    /// Least-squares residual `‖T_n x - g_n‖₂`; absent for the kernel probe.
    pub residual: Vec<Option<f64>>,
    /// `ℓ¹` norm of the least-squares solution; absent for the kernel probe.
    pub coeff_l1: Vec<Option<f64>>,
    /// Fewer than two orders, so no trend can be read off.
    pub insufficient_data: bool,
}

impl ProbeReport {
    fn new(orders: &[usize]) -> ProbeReport {
        ProbeReport {
            orders: orders.to_vec(),
            sigma_min: Vec::new(),
            residual: Vec::new(),
            coeff_l1: Vec::new(),
            insufficient_data: orders.len() < 2,
        }
    }

    /// Ratios of consecutive `ℓ¹` norms.
    pub fn l1_growth(&self) -> Vec<f64> {
        self.coeff_l1
            .windows(2)
            .map(|w| match (w[0], w[1]) {
                (Some(a), Some(b)) => b / a,
                _ => f64::NAN,
            })
            .collect()
    }

    pub fn l1_strictly_increasing(&self) -> bool {
        !self.insufficient_data && self.l1_growth().iter().all(|&r| r > 1.0)
    }

    pub fn sigma_strictly_decreasing(&self) -> bool {
        !self.insufficient_data && self.sigma_min.windows(2).all(|w| w[1] < w[0])
    }

    pub fn max_residual(&self) -> f64 {
        self.residual.iter().flatten().copied().fold(0.0, f64::max)
    }
}

fn check_orders(orders: &[usize], a: &FourierCoeffs) -> Result<()> {
    if orders.is_empty() || orders[0] == 0 {
        return Err(Error::InvalidArgument("orders must be positive"));
    }
    if orders.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("orders must be strictly increasing"));
    }
    let top = orders[orders.len() - 1];
    if a.max_index() + 1 < top {
        return Err(Error::BandwidthOverflow { required: top - 1, available: a.max_index() });
    }
    Ok(())
}

fn head(c: &FourierCoeffs, n: usize) -> Vec<Complex64> {
    (0..n as i64).map(|k| c.get(k)).collect()
}

fn l1(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm()).sum()
}

/// Kernel, target and control reports from one factorization per order.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionEvidence {
    pub kernel: ProbeReport,
    pub target: ProbeReport,
    /// The same solve for `T_a z²`, which is in the range with preimage
    /// `z²`; its `ℓ¹` norm stays at 1.
    pub control: ProbeReport,
}

/// Runs the kernel and surjectivity probes together. Only the analytic
/// part of `g` enters, so coefficients computed from samples may carry
/// small co-analytic noise.
pub fn section_evidence<S: SectionSolver + ?Sized>(
    a: &FourierCoeffs,
    g: &FourierCoeffs,
    orders: &[usize],
    solver: &S,
) -> Result<SectionEvidence> {
    check_orders(orders, a)?;
    let top = orders[orders.len() - 1];
    if 2 * top > g.max_index() + 1 {
        return Err(Error::BandwidthOverflow { required: 2 * top - 1, available: g.max_index() });
    }
    let mut e2 = FourierCoeffs::zeros(2);
    e2.set(2, Complex64::new(1.0, 0.0));
    let control = apply_toeplitz(a, &e2, top - 1)?;
    let mut kernel = ProbeReport::new(orders);
    let mut target = ProbeReport::new(orders);
    let mut ctrl = ProbeReport::new(orders);
    for &n in orders {
        let section = toeplitz_truncation(a, n)?;
        let rhs = vec![head(g, n), head(&control, n)];
        let res = solver.analyze(&section, &rhs)?;
        for report in [&mut kernel, &mut target, &mut ctrl] {
            report.sigma_min.push(res.sigma_min);
        }
        kernel.residual.push(None);
        kernel.coeff_l1.push(None);
        for (report, sol) in [(&mut target, &res.solutions[0]), (&mut ctrl, &res.solutions[1])] {
            report.residual.push(Some(sol.residual));
            report.coeff_l1.push(Some(l1(&sol.x)));
        }
    }
    Ok(SectionEvidence { kernel, target, control: ctrl })
}

/// `σ_min(T_n(a))` over the orders.
pub fn kernel_probe<S: SectionSolver + ?Sized>(a: &FourierCoeffs, orders: &[usize], solver: &S) -> Result<ProbeReport> {
    check_orders(orders, a)?;
    let mut report = ProbeReport::new(orders);
    for &n in orders {
        let res = solver.analyze(&toeplitz_truncation(a, n)?, &[])?;
        report.sigma_min.push(res.sigma_min);
        report.residual.push(None);
        report.coeff_l1.push(None);
    }
    Ok(report)
}

/// Least-squares solutions of `T_n(a) x = P_n g` and their `ℓ¹` norms.
pub fn surjectivity_probe<S: SectionSolver + ?Sized>(
    a: &FourierCoeffs,
    g: &FourierCoeffs,
    orders: &[usize],
    solver: &S,
) -> Result<ProbeReport> {
    Ok(section_evidence(a, g, orders, solver)?.target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn shift_symbol_shifts() {
        let z = FourierCoeffs::from_analytic(&[c(0.0), c(1.0)]);
        let one = FourierCoeffs::from_analytic(&[c(1.0)]);
        let out = apply_toeplitz(&z, &one, 1).unwrap();
        assert_eq!(out.get(0), c(0.0));
        assert_eq!(out.get(1), c(1.0));
        assert!(matches!(apply_toeplitz(&z, &one, 2), Err(Error::BandwidthOverflow { required: 2, available: 1 })));
    }

    #[test]
    fn coanalytic_input_is_rejected() {
        let mut f = FourierCoeffs::zeros(2);
        f.set(-1, c(1.0));
        let a = FourierCoeffs::from_analytic(&[c(1.0)]).resized(4);
        assert!(matches!(apply_toeplitz(&a, &f, 2), Err(Error::NotAnalytic(_))));
    }

    #[test]
    fn orders_are_validated() {
        let a = FourierCoeffs::from_analytic(&[c(1.0)]).resized(40);
        let s = JacobiSolver::default();
        assert!(kernel_probe(&a, &[8, 4], &s).is_err());
        assert!(kernel_probe(&a, &[64], &s).is_err());
        assert!(kernel_probe(&a, &[8], &s).unwrap().insufficient_data);
    }
}
