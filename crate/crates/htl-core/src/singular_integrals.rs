//! Cauchy-type integrals over the cut `[-1, 0]` and the asymptotic
//! estimates for them near `-1`.
//!
//! With `u = 1 + t` the integrals run over `[0, 1]` with a logarithmic
//! endpoint at `u = 0`, and the point `z` enters only through `w = 1 + z`.
//! Evaluating from `w` directly keeps full relative accuracy for `z` close
//! to `-1`, where `1 + z` itself would cancel.

use alloc::vec::Vec;
use core::f64::consts::{LN_10, PI};
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Cut, Error, Result};
use crate::hardy::{sample_circle, CircleFunction, GridFunction};
use crate::quad::Mesh;
use crate::symbol::{self, UnitAngle};

/// `e^-3`, the outer split point of the integrals and the largest offset
/// at which the asymptotic estimates are checked.
pub const SPLIT_POINT: f64 = 0.049_787_068_367_863_944;

/// Absolute floor of the graded mesh at `u = 0`.
pub const MESH_FLOOR: f64 = 1e-14;

/// The floor also stays this far below `|w|`, so that the near-pole
/// scale of `1/(u - w)` is always resolved.
const FLOOR_BELOW_POLE: f64 = 1e-10;

/// Shortest θ-range accepted by [`asym_check`], in decades.
pub const MIN_DECADES: f64 = 3.0;

/// Headroom applied to measured ratios when calibrating constants.
pub const CALIBRATION_HEADROOM: f64 = 1.5;

fn check_shifted(w: Complex64) -> Result<()> {
    if w.im == 0.0 && w.re >= 0.0 && w.re <= 1.0 {
        return Err(Error::OnBranchCut { cut: Cut::UnitSegment, re: w.re - 1.0, im: w.im });
    }
    Ok(())
}

fn floor_for(w: Complex64) -> f64 {
    MESH_FLOOR.min(FLOOR_BELOW_POLE * w.norm())
}

/// Mesh on `[lo, hi] ⊆ [0, 1]` graded toward 0, with the split points and
/// the scale of `w` as breakpoints.
fn mesh_for(w: Complex64, lo: f64, hi: f64) -> Mesh {
    let mut points = alloc::vec![SPLIT_POINT, w.norm()];
    let mut mesh = Mesh::new(lo, hi);
    if w.re > 0.0 && w.re < 1.0 {
        points.push(w.re);
        mesh = mesh.graded_toward(w.re, 0.25 * w.im.abs());
    }
    if lo == 0.0 {
        mesh = mesh.graded_toward(0.0, floor_for(w));
    } else {
        // same geometric grading, cut off at lo
        let mut d = 0.5 * hi;
        while d > lo {
            points.push(d);
            d *= 0.5;
        }
    }
    mesh.with_points(&points)
}

fn first_break(mesh: &Mesh) -> f64 {
    mesh.breaks()[1]
}

/// `∫_0^1 du / ((u - w)(1 - ln u))`, i.e. `q̃(z)` at `z = w - 1`.
pub fn q_tilde_a_shifted(w: Complex64) -> Result<Complex64> {
    check_shifted(w)?;
    let mesh = mesh_for(w, 0.0, 1.0);
    let eps = first_break(&mesh);
    let body = mesh.integrate_excluding(&[0.0], |u| Ok((u - w).inv() / (1.0 - u.ln())))?;
    // On [0, ε] the kernel is -1/w to first order.
    Ok(body - w.inv() * (eps / (1.0 - eps.ln())))
}

/// `q̃(z) = ∫_{-1}^0 dt / ((t - z)(1 - ln(1 + t)))`, holomorphic off `[-1, 0]`.
pub fn q_tilde_a(z: Complex64) -> Result<Complex64> {
    check_cut(z)?;
    q_tilde_a_shifted(1.0 + z)
}

fn check_cut(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re >= -1.0 && z.re <= 0.0 {
        return Err(Error::OnBranchCut { cut: Cut::UnitSegment, re: z.re, im: z.im });
    }
    Ok(())
}

fn dq_kernel(w: Complex64, u: f64) -> Complex64 {
    let l = 1.0 - u.ln();
    (u - w).inv() / (u * l * l)
}

/// `∫_lo^hi du / ((u - w) u (1 - ln u)²)`; from `lo = 0` the innermost panel
/// is replaced by its leading term `-(1/w)/(1 - ln ε)`.
fn dq_integral(w: Complex64, lo: f64, hi: f64) -> Result<Complex64> {
    let mesh = mesh_for(w, lo, hi);
    if lo > 0.0 {
        return mesh.integrate(|u| Ok(dq_kernel(w, u)));
    }
    let eps = first_break(&mesh);
    let body = mesh.integrate_excluding(&[0.0], |u| Ok(dq_kernel(w, u)))?;
    Ok(body - w.inv() / (1.0 - eps.ln()))
}

/// `q̃'(z)` at `z = w - 1`, from `1/z + ∫ du / ((u - w) u (1 - ln u)²)`.
pub fn dq_tilde_a_shifted(w: Complex64) -> Result<Complex64> {
    check_shifted(w)?;
    let z = w - 1.0;
    if z.norm() == 0.0 {
        return Err(Error::SingularPoint { re: 0.0, im: 0.0 });
    }
    Ok(z.inv() + dq_integral(w, 0.0, 1.0)?)
}

pub fn dq_tilde_a(z: Complex64) -> Result<Complex64> {
    check_cut(z)?;
    dq_tilde_a_shifted(1.0 + z)
}

/// The mean `a₀ = (1/2π)∫ a` of the symbol; real by symmetry.
pub fn symbol_mean() -> Result<f64> {
    let mesh = Mesh::new(-PI, PI).graded_toward(0.0, MESH_FLOOR).with_max_width(0.25);
    let total: f64 = mesh.integrate(|x| Ok(symbol::symbol_on_circle(UnitAngle::from_offset(x))?.re))?;
    Ok(total / (2.0 * PI))
}

/// `Qa` on the circle through the reflection identity
/// `Qa(e^{iθ}) = a(e^{iθ}) - q̃(e^{-iθ}) - a₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedQa {
    a0: f64,
}

impl ReflectedQa {
    pub fn new() -> Result<ReflectedQa> {
        Ok(ReflectedQa { a0: symbol_mean()? })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn eval(&self, t: UnitAngle) -> Result<Complex64> {
        let a = symbol::symbol_on_circle(t)?;
        // 1 + conj(z) = conj(1 + z) on the circle
        let q = q_tilde_a_shifted(t.one_plus().conj())?;
        Ok(a - q - self.a0)
    }
}

impl CircleFunction for ReflectedQa {
    fn eval(&self, t: UnitAngle) -> Result<Complex64> {
        ReflectedQa::eval(self, t)
    }
}

/// `Qa` sampled on the `n`-point grid with the given exclusion window.
pub fn qa_on_circle(n: usize, window: f64) -> Result<GridFunction> {
    sample_circle(&ReflectedQa::new()?, n, window)
}

/// `(1 + t) g(t)` at `t = u - 1`, which is real on the cut.
fn weighted_g(u: f64) -> f64 {
    let p = 1.0 - u.ln();
    let l = p.ln() + 2.0;
    1.0 / (p * l * l)
}

/// `(ln(1 - ln u) + 2)⁻¹`, whose derivative is `(1+t)g(t)/u`.
pub fn g_cut_antiderivative(u: f64) -> f64 {
    1.0 / ((1.0 - u.ln()).ln() + 2.0)
}

/// `G(z) = ∫_{-1}^0 (1 + t) g(t) / (t - z) dt` at `z = w - 1`.
pub fn big_g_shifted(w: Complex64) -> Result<Complex64> {
    check_shifted(w)?;
    let mesh = mesh_for(w, 0.0, 1.0);
    let eps = first_break(&mesh);
    let body = mesh.integrate_excluding(&[0.0], |u| Ok((u - w).inv() * weighted_g(u)))?;
    Ok(body - w.inv() * (eps * weighted_g(eps)))
}

pub fn big_g(z: Complex64) -> Result<Complex64> {
    check_cut(z)?;
    big_g_shifted(1.0 + z)
}

/// The limit `G(-1) = ∫_{-1}^0 g(t) dt`, by graded quadrature with the
/// innermost panel closed by the antiderivative.
pub fn big_g_at_minus_one() -> Result<f64> {
    big_g_limit_with_floor(MESH_FLOOR)
}

/// [`big_g_at_minus_one`] with an explicit mesh floor, for refinement checks.
pub fn big_g_limit_with_floor(floor: f64) -> Result<f64> {
    let mesh = Mesh::new(0.0, 1.0).graded_toward(0.0, floor).with_points(&[SPLIT_POINT]);
    let eps = first_break(&mesh);
    let body: f64 = mesh.integrate_excluding(&[0.0], |u| Ok(weighted_g(u) / u))?;
    Ok(body + g_cut_antiderivative(eps))
}

/// The tail `h = (h₋₁ - G(z)) / ((1 + z) a⁻(z))` and its closed-form model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailModel {
    pub h_minus_one: Complex64,
    pub window: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSample {
    pub h: Complex64,
    pub model: Complex64,
    /// `|G(z) - G(-1) + (ln(1 - ln|x|) + 2)⁻¹|`.
    pub residual: f64,
    /// `residual · |ln|x|| · (ln|ln|x||)²`, bounded as `x → 0`.
    pub scaled_residual: f64,
}

impl TailModel {
    /// The critical case `h₋₁ = G(-1)`.
    pub fn critical(window: f64) -> Result<TailModel> {
        Ok(TailModel { h_minus_one: Complex64::new(big_g_at_minus_one()?, 0.0), window })
    }

    fn denominator(t: UnitAngle) -> Result<Complex64> {
        Ok(t.one_plus() * symbol::a_minus_on_circle(t)?)
    }

    pub fn h_at(&self, t: UnitAngle) -> Result<Complex64> {
        let g = big_g_shifted(t.one_plus())?;
        Ok((self.h_minus_one - g) / TailModel::denominator(t)?)
    }

    /// `(ln(1 - ln|x|) + 2)⁻¹ / ((1 + z) a⁻(z))`, defined for `|x| < e`.
    pub fn model_at(&self, t: UnitAngle) -> Result<Complex64> {
        let x = t.offset().abs();
        Ok(Complex64::new(g_cut_antiderivative(x), 0.0) / TailModel::denominator(t)?)
    }
}

/// `h` and its model at offset `x` from `-1`, for `0 < |x| ≤ e^-3`.
pub fn tail_model_h(offset: f64, model: &TailModel) -> Result<TailSample> {
    if offset == 0.0 {
        return Err(Error::SingularPoint { re: -1.0, im: 0.0 });
    }
    if offset.abs() > SPLIT_POINT {
        return Err(Error::OutOfRange { what: "offset", value: offset });
    }
    let t = UnitAngle::from_offset(offset);
    let g = big_g_shifted(t.one_plus())?;
    let den = TailModel::denominator(t)?;
    let x = offset.abs();
    let closed = g_cut_antiderivative(x);
    let g_minus_one = big_g_at_minus_one()?;
    let residual = (g - g_minus_one + closed).norm();
    let lx = x.ln().abs();
    Ok(TailSample {
        h: (model.h_minus_one - g) / den,
        model: Complex64::new(closed, 0.0) / den,
        residual,
        scaled_residual: residual * lx * lx.ln().powi(2),
    })
}

/// The estimates near `-1`, each a relation `lhs ∼ model` as the offset
/// `θ → 0+` with `z = -e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimate {
    /// `d/dx ln a⁺ ∼ 1/(x ln x)`.
    DLogAPlus,
    /// `d/dx Im ln a⁺ ∼ (π/2)/(x ln² x)`.
    DImLogAPlus,
    /// `d/dx Re ln a⁺ ∼ 1/(x ln x)`.
    DReLogAPlus,
    /// `∫_0^θ ∼ 1/((1+z) ln(1+z))`, the inner part of `q̃'`.
    InnerPart,
    /// `∫_θ^{e^-3} ∼ 1/((1+z) ln²(1+z))`, the middle part of `q̃'`.
    MiddlePart,
    /// `q̃' + 1/((1+z)(1 - ln θ)) ∼ 1/(θ ln² θ)`.
    DerivativeRemainder,
    /// `d/dθ Re q̃ - 1/(θ ln θ) ∼ 1/(θ ln² θ)`.
    RealPartRate,
    /// `0 ≥ d/dθ Im q̃ ≥ -M/(θ ln² θ)`.
    ImaginaryPartRate,
}

impl Estimate {
    pub const ALL: [Estimate; 8] = [
        Estimate::DLogAPlus,
        Estimate::DImLogAPlus,
        Estimate::DReLogAPlus,
        Estimate::InnerPart,
        Estimate::MiddlePart,
        Estimate::DerivativeRemainder,
        Estimate::RealPartRate,
        Estimate::ImaginaryPartRate,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Estimate::DLogAPlus => "d-lna",
            Estimate::DImLogAPlus => "d-ilna",
            Estimate::DReLogAPlus => "d-lnaa",
            Estimate::InnerPart => "I1",
            Estimate::MiddlePart => "i2",
            Estimate::DerivativeRemainder => "ddq",
            Estimate::RealPartRate => "dreq",
            Estimate::ImaginaryPartRate => "diq",
        }
    }

    pub fn from_name(name: &str) -> Option<Estimate> {
        Estimate::ALL.iter().copied().find(|e| e.name() == name)
    }

    /// `(lhs, model)` at offset `theta`.
    pub fn evaluate(&self, theta: f64) -> Result<(Complex64, Complex64)> {
        let t = UnitAngle::from_offset(theta);
        let z = t.point();
        let w = t.one_plus();
        let l = theta.ln();
        let log_rate = Complex64::new(1.0 / (theta * l), 0.0);
        let log2_rate = Complex64::new(1.0 / (theta * l * l), 0.0);
        let iz = Complex64::i() * z;
        Ok(match self {
            Estimate::DLogAPlus => (symbol::deriv_log_a_plus(theta, SPLIT_POINT)?, log_rate),
            Estimate::DImLogAPlus => {
                let d = symbol::deriv_log_a_plus(theta, SPLIT_POINT)?;
                (Complex64::new(d.im, 0.0), log2_rate * (0.5 * PI))
            }
            Estimate::DReLogAPlus => {
                let d = symbol::deriv_log_a_plus(theta, SPLIT_POINT)?;
                (Complex64::new(d.re, 0.0), log_rate)
            }
            Estimate::InnerPart => (dq_integral(w, 0.0, theta)?, (w * w.ln()).inv()),
            Estimate::MiddlePart => {
                let lw = w.ln();
                (dq_integral(w, theta, SPLIT_POINT)?, (w * lw * lw).inv())
            }
            Estimate::DerivativeRemainder => {
                let d = dq_tilde_a_shifted(w)?;
                (d + (w * (1.0 - l)).inv(), log2_rate)
            }
            Estimate::RealPartRate => {
                let d = iz * dq_tilde_a_shifted(w)?;
                (Complex64::new(d.re - log_rate.re, 0.0), log2_rate)
            }
            Estimate::ImaginaryPartRate => {
                let d = iz * dq_tilde_a_shifted(w)?;
                (Complex64::new(d.im, 0.0), log2_rate)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCheck {
    pub estimate: Estimate,
    pub rho: f64,
    pub theta: Vec<f64>,
    pub lhs: Vec<Complex64>,
    pub model: Vec<Complex64>,
    pub ratio: Vec<f64>,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Largest ratio with headroom: the constant in `|lhs| ≤ C|model|`.
    pub constant: f64,
    /// Offsets dropped because evaluation failed there.
    pub dropped: Vec<f64>,
    /// For the sign-constrained estimate: every `lhs ≤ 0`.
    pub sign_ok: Option<bool>,
    pub passed: bool,
}

/// Log-spaced offsets from `lo` to `hi`, `per_decade` points per decade.
pub fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let m = ((decades * per_decade as f64).round() as usize).max(1);
    (0..=m).map(|i| lo * (LN_10 * decades * i as f64 / m as f64).exp()).collect()
}

/// Ratio `|lhs|/|model|` over log-spaced offsets in `[lo, hi]`. Passes when
/// every ratio lies in `[1/ρ, ρ]` and `max/min < ρ`, so `ρ ≤ 1` always
/// fails.
pub fn asym_check(estimate: Estimate, lo: f64, hi: f64, per_decade: usize, rho: f64) -> Result<AsymptoticCheck> {
    if !(lo > 0.0 && hi > lo && hi <= SPLIT_POINT * (1.0 + 1e-12)) {
        return Err(Error::InvalidArgument("offset range must satisfy 0 < lo < hi ≤ e^-3"));
    }
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::OutOfRange { what: "rho", value: rho });
    }
    let mut theta = Vec::new();
    let mut lhs = Vec::new();
    let mut model = Vec::new();
    let mut dropped = Vec::new();
    for x in log_grid(lo, hi, per_decade.max(1)) {
        match estimate.evaluate(x) {
            Ok((a, b)) if a.is_finite() && b.is_finite() => {
                theta.push(x);
                lhs.push(a);
                model.push(b);
            }
            _ => dropped.push(x),
        }
    }
    let got = match (theta.first(), theta.last()) {
        (Some(a), Some(b)) => (b / a).log10(),
        _ => 0.0,
    };
    if got < MIN_DECADES - 1e-9 {
        return Err(Error::InsufficientDecades { got, need: MIN_DECADES });
    }
    let ratio: Vec<f64> = lhs.iter().zip(&model).map(|(a, b)| a.norm() / b.norm()).collect();
    let ratio_min = ratio.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio_max = ratio.iter().copied().fold(0.0, f64::max);
    let sign_ok = match estimate {
        Estimate::ImaginaryPartRate => Some(lhs.iter().all(|v| v.re <= 0.0)),
        _ => None,
    };
    let confined = ratio_min >= 1.0 / rho && ratio_max <= rho && ratio_max / ratio_min < rho;
    Ok(AsymptoticCheck {
        estimate,
        rho,
        theta,
        lhs,
        model,
        ratio,
        ratio_min,
        ratio_max,
        constant: CALIBRATION_HEADROOM * ratio_max,
        dropped,
        sign_ok,
        passed: confined && sign_ok.unwrap_or(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_value_is_one_half() {
        // ∫_{-1}^0 g = [(ln a⁺ + 2)⁻¹] from -1 to 0 = 1/2
        assert!((big_g_at_minus_one().unwrap() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn cut_is_rejected() {
        assert!(q_tilde_a(Complex64::new(-0.5, 0.0)).is_err());
        assert!(dq_tilde_a(Complex64::new(-1.0, 0.0)).is_err());
        assert!(big_g(Complex64::new(0.0, 0.0)).is_err());
        assert!(q_tilde_a(Complex64::new(-0.5, 1e-3)).is_ok());
    }

    #[test]
    fn too_short_range_is_rejected() {
        let e = asym_check(Estimate::DLogAPlus, 1e-4, 1e-4 * 1.0001, 4, 4.0).unwrap_err();
        assert!(matches!(e, Error::InvalidArgument(_) | Error::InsufficientDecades { .. }));
        let e = asym_check(Estimate::DLogAPlus, 1e-5, 1e-3, 4, 4.0).unwrap_err();
        assert!(matches!(e, Error::InsufficientDecades { .. }));
    }
}
