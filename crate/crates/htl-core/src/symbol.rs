//! The symbol `a = a⁺/a⁻` with `a⁺(z) = 1 - Log(1 + z)` and
//! `a⁻(z) = 1 - Log(1 + 1/z)`, the test function `g`, and their values on
//! the unit circle near the singular point `-1`.
//!
//! Points of the circle are carried as [`UnitAngle`], which keeps both the
//! angle `θ` and the offset `x = arg(-z)` from `-1`. Everything singular
//! lives at `x = 0`, so evaluations there are done in the offset to avoid
//! the cancellation in `π - θ`.

use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Cut, Error, Result};

/// Default limit on `|x|` for [`deriv_log_a_plus`].
pub const DERIV_LIMIT: f64 = 0.049_787_068_367_863_944; // e^-3

/// Principal argument in `(-π, π]`.
///
/// `atan2` returns `-π` for a negative real part with a `-0.0` imaginary
/// part; that is folded back to `π`.
pub fn arg_principal(z: Complex64) -> Result<f64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let t = z.im.atan2(z.re);
    Ok(if t <= -PI { PI } else { t })
}

/// A point `e^{iθ}` of the unit circle, stored with `θ ∈ (-π, π]` and its
/// offset `x = arg(-e^{iθ}) ∈ (-π, π]` from `-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitAngle {
    theta: f64,
    offset: f64,
}

fn reduce(t: f64) -> f64 {
    if t > -PI && t <= PI {
        t
    } else {
        let period = 2.0 * PI;
        let r = t - period * ((t + PI) / period).floor();
        if r <= -PI {
            PI
        } else {
            r
        }
    }
}

impl UnitAngle {
    pub fn new(theta: f64) -> UnitAngle {
        let theta = reduce(theta);
        let offset = if theta > 0.0 { theta - PI } else { theta + PI };
        UnitAngle { theta, offset }
    }

    /// The point `-e^{ix}`.
    pub fn from_offset(x: f64) -> UnitAngle {
        let offset = reduce(x);
        let theta = if offset > 0.0 { offset - PI } else { offset + PI };
        UnitAngle { theta, offset }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn point(&self) -> Complex64 {
        if self.offset.abs() < self.theta.abs() {
            -Complex64::new(self.offset.cos(), self.offset.sin())
        } else {
            Complex64::new(self.theta.cos(), self.theta.sin())
        }
    }

    /// `1 + z`, accurate near `-1`.
    pub fn one_plus(&self) -> Complex64 {
        // 1 - e^{ix} = -2i sin(x/2) e^{ix/2}
        let h = 0.5 * self.offset;
        Complex64::new(0.0, -2.0 * h.sin()) * Complex64::new(h.cos(), h.sin())
    }

    pub fn conj(&self) -> UnitAngle {
        if self.offset == 0.0 || self.theta == PI {
            return *self;
        }
        UnitAngle { theta: -self.theta, offset: -self.offset }
    }

    pub fn is_singular(&self) -> bool {
        self.offset == 0.0
    }
}

/// Which principal branch produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `Log(1 + z)`, cut along `(-inf, -1]`.
    OnePlusZ,
    /// `Log(1 + 1/z)`, cut along `[-1, 0]`.
    OnePlusInverse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolValue {
    pub value: Complex64,
    pub branch: Branch,
}

fn singular(z: Complex64) -> Error {
    Error::SingularPoint { re: z.re, im: z.im }
}

/// `a⁺(z) = 1 - Log(1 + z)`, holomorphic off `(-inf, -1]`.
pub fn eval_a_plus(z: Complex64) -> Result<SymbolValue> {
    if z.im == 0.0 && z.re <= -1.0 {
        return Err(Error::OnBranchCut { cut: Cut::NegativeRay, re: z.re, im: z.im });
    }
    Ok(SymbolValue { value: 1.0 - (1.0 + z).ln(), branch: Branch::OnePlusZ })
}

/// `a⁻(z) = 1 - Log(1 + 1/z)`, holomorphic off `[-1, 0]`.
pub fn eval_a_minus(z: Complex64) -> Result<SymbolValue> {
    if z.im == 0.0 && z.re >= -1.0 && z.re <= 0.0 {
        return Err(Error::OnBranchCut { cut: Cut::UnitSegment, re: z.re, im: z.im });
    }
    Ok(SymbolValue { value: 1.0 - (1.0 + z.inv()).ln(), branch: Branch::OnePlusInverse })
}

/// `Log(1 + z)` on the circle as `ln(2 sin(|x|/2)) + iθ/2`.
pub fn log_one_plus_on_circle(t: UnitAngle) -> Result<Complex64> {
    if t.is_singular() {
        return Err(singular(t.point()));
    }
    let m = 2.0 * (0.5 * t.offset().abs()).sin();
    Ok(Complex64::new(m.ln(), 0.5 * t.theta()))
}

pub fn a_plus_on_circle(t: UnitAngle) -> Result<Complex64> {
    Ok(1.0 - log_one_plus_on_circle(t)?)
}

/// On the circle `a⁻ = conj(a⁺)`.
pub fn a_minus_on_circle(t: UnitAngle) -> Result<Complex64> {
    Ok(a_plus_on_circle(t)?.conj())
}

/// `a = a⁺/a⁻`, unimodular on the circle.
pub fn symbol_on_circle(t: UnitAngle) -> Result<Complex64> {
    let p = a_plus_on_circle(t)?;
    Ok(p / p.conj())
}

/// `a(e^{iθ})`; fails at `θ = ±π`.
pub fn eval_symbol(theta: f64) -> Result<Complex64> {
    symbol_on_circle(UnitAngle::new(theta))
}

/// Principal `Log a⁺` on the circle.
pub fn log_a_plus_on_circle(t: UnitAngle) -> Result<Complex64> {
    Ok(a_plus_on_circle(t)?.ln())
}

/// Principal `Log a` on the circle. `Re a⁺ > 0` there, so this is
/// `2i·arg a⁺` without wrapping.
pub fn log_symbol_on_circle(t: UnitAngle) -> Result<Complex64> {
    let p = a_plus_on_circle(t)?;
    Ok(Complex64::new(0.0, 2.0 * p.im.atan2(p.re)))
}

/// `g(z) = (1+z)⁻¹ (a⁺)⁻¹ (ln a⁺ + 2)⁻²`.
pub fn eval_g(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(-1.0, 0.0) {
        return Err(singular(z));
    }
    let p = eval_a_plus(z)?.value;
    g_from_parts(z, 1.0 + z, p)
}

fn g_from_parts(z: Complex64, one_plus: Complex64, p: Complex64) -> Result<Complex64> {
    let l = p.ln() + 2.0;
    let den = one_plus * p * l * l;
    if den.norm() == 0.0 || !den.is_finite() {
        return Err(singular(z));
    }
    Ok(den.inv())
}

pub fn g_on_circle(t: UnitAngle) -> Result<Complex64> {
    let p = a_plus_on_circle(t)?;
    g_from_parts(t.point(), t.one_plus(), p)
}

/// `(ln a⁺ + 2)⁻¹` at `-e^{ix}`; its derivative in `x` is `i z g(z)`.
pub fn g_antiderivative(x: f64) -> Result<Complex64> {
    Ok((log_a_plus_on_circle(UnitAngle::from_offset(x))? + 2.0).inv())
}

/// `∫_{-ε}^{ε} g(-e^{ix}) dx` from the antiderivative, for `ε` tiny.
pub fn g_tail_mass(eps: f64) -> Result<Complex64> {
    let fp = g_antiderivative(eps)?;
    let fm = g_antiderivative(-eps)?;
    let e = Complex64::new(eps.cos(), -eps.sin());
    Ok(Complex64::i() * (fp * e - fm * e.conj()) - (fp + fm) * eps)
}

/// `d/dx ln a⁺(-e^{ix})` in closed form, for `0 < |x| ≤ limit`.
pub fn deriv_log_a_plus(x: f64, limit: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Err(singular(Complex64::new(-1.0, 0.0)));
    }
    if x.abs() > limit {
        return Err(Error::OutOfRange { what: "offset", value: x });
    }
    let t = UnitAngle::from_offset(x);
    let p = a_plus_on_circle(t)?;
    let dp = Complex64::new(-0.5 * x.signum() / (0.5 * x.abs()).tan(), -0.5);
    Ok(dp / p)
}

/// `d/dx Im ln a⁺(-e^{ix})` in real terms, for `0 < |x| < π`: with
/// `R = 1 - ln(2 sin(|x|/2))` it is
/// `((cos x - 1)R - sin x·(x - sgn(x)π)/2) / (4 sin²(|x|/2)(R² + (π/2 - |x|/2)²))`.
pub fn deriv_im_log_a_plus(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(singular(Complex64::new(-1.0, 0.0)));
    }
    let h = 0.5 * x.abs();
    let r = 1.0 - (2.0 * h.sin()).ln();
    let i = 0.5 * PI - h;
    let s2 = 4.0 * h.sin() * h.sin();
    // cos x - 1 = -2 sin²(x/2), without the cancellation
    let num = -0.5 * s2 * r - x.sin() * (x - x.signum() * PI) / 2.0;
    Ok(num / (s2 * (r * r + i * i)))
}
