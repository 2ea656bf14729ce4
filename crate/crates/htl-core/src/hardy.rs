//! Sampling on the circle, Fourier coefficients, the Riesz projections and
//! finite Toeplitz sections.
//!
//! Grids are `θ_j = -π + 2πj/n`, so node 0 sits exactly on the singular
//! point `-1`. Nodes closer to `-1` than the exclusion window are flagged;
//! their values are replaced by a correction chosen so that the trapezoid
//! sum over a patch of neighbours reproduces a graded-quadrature integral of
//! the function over that patch. Coefficients then converge at the rate the
//! smooth part allows instead of stalling on the singularity.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::fft::fft_in_place;
use crate::quad::{gauss_legendre, Mesh};
use crate::symbol::{self, UnitAngle};

/// Unflagged neighbours on each side of the flagged block used by the fill.
pub const PATCH_NODES: usize = 64;

/// Relative floor of the graded mesh inside a patch.
const PATCH_FLOOR: f64 = 1e-14;

/// Below this modulus a symbol sample counts as vanishing.
pub const DEGENERATE_MODULUS: f64 = 1e-6;

/// Smallest grid accepted by [`winding_number`].
pub const WINDING_MIN_SAMPLES: usize = 1 << 12;

/// A function on the circle, possibly singular at `-1`.
pub trait CircleFunction {
    fn eval(&self, t: UnitAngle) -> Result<Complex64>;

    /// `∫_{-ε}^{ε} f(-e^{ix}) dx` for the tiny interval left out by graded
    /// quadrature. Zero for integrable singularities weak enough to ignore.
    fn singular_mass(&self, _eps: f64) -> Result<Complex64> {
        Ok(Complex64::zero())
    }
}

impl<F> CircleFunction for F
where
    F: Fn(UnitAngle) -> Result<Complex64>,
{
    fn eval(&self, t: UnitAngle) -> Result<Complex64> {
        self(t)
    }
}

/// The named functions of the construction, ready for sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownFunction {
    APlus,
    AMinus,
    Symbol,
    InverseAPlus,
    G,
    LogAPlus,
    LogSymbol,
}

impl CircleFunction for KnownFunction {
    fn eval(&self, t: UnitAngle) -> Result<Complex64> {
        match self {
            KnownFunction::APlus => symbol::a_plus_on_circle(t),
            KnownFunction::AMinus => symbol::a_minus_on_circle(t),
            KnownFunction::Symbol => symbol::symbol_on_circle(t),
            KnownFunction::InverseAPlus => Ok(symbol::a_plus_on_circle(t)?.inv()),
            KnownFunction::G => symbol::g_on_circle(t),
            KnownFunction::LogAPlus => symbol::log_a_plus_on_circle(t),
            KnownFunction::LogSymbol => symbol::log_symbol_on_circle(t),
        }
    }

    fn singular_mass(&self, eps: f64) -> Result<Complex64> {
        match self {
            // g is integrable but only barely: the mass within ε of -1 is
            // of order 1/ln ln(1/ε), far from negligible.
            KnownFunction::G => symbol::g_tail_mass(eps),
            _ => Ok(Complex64::zero()),
        }
    }
}

/// Offset from `-1` of node `j` of an `n`-point grid.
pub fn node_offset(j: usize, n: usize) -> f64 {
    if 2 * j <= n {
        2.0 * PI * j as f64 / n as f64
    } else {
        -2.0 * PI * (n - j) as f64 / n as f64
    }
}

pub fn node_angle(j: usize, n: usize) -> UnitAngle {
    UnitAngle::from_offset(node_offset(j, n))
}

/// Samples on the uniform grid with a flag mask for the excluded window.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<Complex64>,
    flagged: Vec<bool>,
    window: f64,
}

fn check_grid(n: usize) -> Result<()> {
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::GridSize(n));
    }
    Ok(())
}

impl GridFunction {
    /// Wraps point values; nothing is flagged.
    pub fn from_values(values: Vec<Complex64>) -> Result<GridFunction> {
        check_grid(values.len())?;
        let flagged = vec![false; values.len()];
        Ok(GridFunction { values, flagged, window: 0.0 })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn flagged(&self) -> &[bool] {
        &self.flagged
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / self.len() as f64
    }

    pub fn angle(&self, j: usize) -> UnitAngle {
        node_angle(j, self.len())
    }

    /// Pointwise product. Flags are merged.
    pub fn mul(&self, other: &GridFunction) -> Result<GridFunction> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument("grid sizes differ"));
        }
        Ok(GridFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            flagged: self.flagged.iter().zip(&other.flagged).map(|(a, b)| *a || *b).collect(),
            window: self.window.max(other.window),
        })
    }
}

/// Samples `f` at `θ_j = -π + 2πj/n`.
///
/// Nodes with `|θ_j - (-π)| < window` are flagged and never evaluated
/// pointwise; they receive the patch-corrected fill. With `window = 0` a
/// function singular at `-1` fails at node 0.
pub fn sample_circle<F: CircleFunction + ?Sized>(f: &F, n: usize, window: f64) -> Result<GridFunction> {
    let mut grid = sample_circle_unfilled(f, n, window)?;
    if grid.flagged.iter().any(|&b| b) {
        fill_patch(f, &mut grid)?;
    }
    Ok(grid)
}

/// Like [`sample_circle`] but flagged samples are left at zero. This is the
/// right form for functions that are not integrable at `-1`, where a fill
/// would be meaningless.
pub fn sample_circle_unfilled<F: CircleFunction + ?Sized>(f: &F, n: usize, window: f64) -> Result<GridFunction> {
    check_grid(n)?;
    if window.is_nan() || window < 0.0 {
        return Err(Error::OutOfRange { what: "window", value: window });
    }
    let mut values = vec![Complex64::zero(); n];
    let mut flagged = vec![false; n];
    for j in 0..n {
        let x = node_offset(j, n);
        if x.abs() < window {
            flagged[j] = true;
            continue;
        }
        let v = f.eval(node_angle(j, n)).map_err(|e| e.at_sample(j))?;
        if !v.is_finite() {
            return Err(Error::NonIntegrable(x).at_sample(j));
        }
        values[j] = v;
    }
    Ok(GridFunction { values, flagged, window })
}

fn fill_patch<F: CircleFunction + ?Sized>(f: &F, grid: &mut GridFunction) -> Result<()> {
    let n = grid.len();
    let h = grid.step();
    let idx = |s: isize| s.rem_euclid(n as isize) as usize;
    let reach = (1..n / 2).take_while(|&j| grid.flagged[j] || grid.flagged[n - j]).count();
    if reach + 2 >= n / 2 {
        return Err(Error::OutOfRange { what: "window", value: grid.window });
    }
    let p = (reach + PATCH_NODES).min(n / 2 - 1);
    let half = p as f64 * h;

    let mesh = Mesh::new(-half, half).graded_toward(0.0, PATCH_FLOOR * 2.0 * half);
    let breaks = mesh.breaks();
    let centre = breaks.iter().position(|&b| b == 0.0).unwrap_or(0);
    let eps = breaks[centre + 1];
    let eval = |x: f64| f.eval(UnitAngle::from_offset(x));
    let mut total = mesh.integrate_excluding(&[0.0], eval)? + f.singular_mass(eps)?;

    // Flagged nodes away from the centre get their cell average.
    for s in 1..=reach as isize {
        for j in [s, -s] {
            let k = idx(j);
            if !grid.flagged[k] {
                continue;
            }
            let x = j as f64 * h;
            let avg = gauss_legendre(x - 0.5 * h, x + 0.5 * h, eval)? / h;
            grid.values[k] = avg;
        }
    }
    for s in -(p as isize)..=(p as isize) {
        if s == 0 {
            continue;
        }
        let w = if s.unsigned_abs() == p { 0.5 * h } else { h };
        total -= grid.values[idx(s)] * w;
    }
    grid.values[0] = total / h;
    Ok(())
}

/// Coefficients `c_{-N}, …, c_N` of `Σ c_k e^{ikθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    max_index: usize,
    data: Vec<Complex64>,
}

impl FourierCoeffs {
    pub fn zeros(max_index: usize) -> FourierCoeffs {
        FourierCoeffs { max_index, data: vec![Complex64::zero(); 2 * max_index + 1] }
    }

    /// From `c_{-N}, …, c_N`; the length must be odd.
    pub fn from_symmetric(data: Vec<Complex64>) -> Result<FourierCoeffs> {
        if data.len() % 2 == 0 {
            return Err(Error::InvalidArgument("coefficient vector must have odd length"));
        }
        Ok(FourierCoeffs { max_index: data.len() / 2, data })
    }

    /// Polynomial `c_0 + c_1 z + … + c_N z^N`.
    pub fn from_analytic(coeffs: &[Complex64]) -> FourierCoeffs {
        let n = coeffs.len().saturating_sub(1);
        let mut out = FourierCoeffs::zeros(n);
        out.data[n..n + coeffs.len()].copy_from_slice(coeffs);
        out
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.max_index {
            return Complex64::zero();
        }
        self.data[(k + self.max_index as i64) as usize]
    }

    pub fn set(&mut self, k: i64, v: Complex64) {
        assert!(k.unsigned_abs() as usize <= self.max_index, "index {k} out of range");
        self.data[(k + self.max_index as i64) as usize] = v;
    }

    /// `c_0, …, c_N`.
    pub fn analytic_part(&self) -> &[Complex64] {
        &self.data[self.max_index..]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.max_index as i64;
        self.data.iter().enumerate().map(move |(i, &c)| (i as i64 - n, c))
    }

    /// `Σ_{k<0} |c_k|²`.
    pub fn coanalytic_energy(&self) -> f64 {
        self.data[..self.max_index].iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Keeps `|k| ≤ max_index`, padding with zeros when growing.
    pub fn resized(&self, max_index: usize) -> FourierCoeffs {
        let mut out = FourierCoeffs::zeros(max_index);
        let m = max_index.min(self.max_index) as i64;
        for k in -m..=m {
            out.set(k, self.get(k));
        }
        out
    }

    /// `Σ c_k e^{ikθ}`, summed in the offset from `-1`.
    pub fn evaluate(&self, t: UnitAngle) -> Complex64 {
        let x = t.offset();
        self.iter()
            .map(|(k, c)| {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                c * Complex64::from_polar(s, k as f64 * x)
            })
            .sum()
    }

    /// Values on the `n`-point grid; requires `2N < n`.
    pub fn synthesize(&self, n: usize) -> Result<GridFunction> {
        check_grid(n)?;
        if 2 * self.max_index >= n {
            return Err(Error::InsufficientResolution { requested: self.max_index, samples: n });
        }
        let mut buf = vec![Complex64::zero(); n];
        for (k, c) in self.iter() {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            buf[k.rem_euclid(n as i64) as usize] = c * s;
        }
        fft_in_place(&mut buf, true);
        GridFunction::from_values(buf)
    }

    /// Discrete convolution truncated to `|k| ≤ max_index`.
    pub fn convolve(&self, other: &FourierCoeffs, max_index: usize) -> FourierCoeffs {
        let mut out = FourierCoeffs::zeros(max_index);
        let m = max_index as i64;
        for (j, a) in self.iter() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.iter() {
                let s = j + k;
                if s.abs() <= m {
                    out.data[(s + m) as usize] += a * b;
                }
            }
        }
        out
    }
}

/// `c_{-N..N}` from a sampled function; requires `2N < n`.
pub fn fourier_coeffs(f: &GridFunction, max_index: usize) -> Result<FourierCoeffs> {
    let n = f.len();
    if 2 * max_index >= n {
        return Err(Error::InsufficientResolution { requested: max_index, samples: n });
    }
    let mut buf = f.values.clone();
    fft_in_place(&mut buf, false);
    let scale = 1.0 / n as f64;
    let mut out = FourierCoeffs::zeros(max_index);
    for k in -(max_index as i64)..=(max_index as i64) {
        let s = if k % 2 == 0 { scale } else { -scale };
        out.set(k, buf[k.rem_euclid(n as i64) as usize] * s);
    }
    Ok(out)
}

/// Keeps `k ≥ 0`.
pub fn riesz_p(c: &FourierCoeffs) -> FourierCoeffs {
    let mut out = c.clone();
    for v in &mut out.data[..c.max_index] {
        *v = Complex64::zero();
    }
    out
}

/// Keeps `k < 0`.
pub fn riesz_q(c: &FourierCoeffs) -> FourierCoeffs {
    let mut out = c.clone();
    for v in &mut out.data[c.max_index..] {
        *v = Complex64::zero();
    }
    out
}

/// `T_n(a) = (a_{j-k})_{j,k=0}^{n-1}`, stored by its generator.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzTruncation {
    order: usize,
    // a_{-(n-1)}, …, a_{n-1}
    diagonals: Vec<Complex64>,
}

pub fn toeplitz_truncation(a: &FourierCoeffs, order: usize) -> Result<ToeplitzTruncation> {
    if order == 0 {
        return Err(Error::InvalidArgument("section order must be positive"));
    }
    if a.max_index() + 1 < order {
        return Err(Error::BandwidthOverflow { required: order - 1, available: a.max_index() });
    }
    let m = order as i64 - 1;
    Ok(ToeplitzTruncation { order, diagonals: (-m..=m).map(|k| a.get(k)).collect() })
}

impl ToeplitzTruncation {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.diagonals[row + self.order - 1 - col]
    }

    /// Largest imaginary part relative to the largest entry.
    pub fn imaginary_ratio(&self) -> f64 {
        let big = self.diagonals.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let im = self.diagonals.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        if big == 0.0 {
            0.0
        } else {
            im / big
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.order);
        (0..self.order).map(|j| (0..self.order).map(|k| self.get(j, k) * x[k]).sum()).collect()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.order;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                out.push(self.get(j, k));
            }
        }
        out
    }
}

/// Winding number of the sampled curve around 0 by argument unwrapping over
/// the unflagged samples.
pub fn winding_number(f: &GridFunction) -> Result<i64> {
    let n = f.len();
    if n < WINDING_MIN_SAMPLES {
        return Err(Error::TooFewSamples { need: WINDING_MIN_SAMPLES, got: n });
    }
    let live: Vec<usize> = (0..n).filter(|&j| !f.flagged[j]).collect();
    for &j in &live {
        let m = f.values[j].norm();
        if m < DEGENERATE_MODULUS {
            return Err(Error::DegenerateSymbol { index: j, modulus: m });
        }
    }
    let mut total = 0.0;
    for (i, &j) in live.iter().enumerate() {
        let next = live[(i + 1) % live.len()];
        let step = symbol::arg_principal(f.values[next] / f.values[j])?;
        if step.abs() > 0.5 * PI {
            return Err(Error::UnwrapJump { index: next, step });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Riemann-sum estimate of `(1/2π)∫|f|` over the unflagged samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H1Surrogate {
    pub value: f64,
    pub window: f64,
}

pub fn h1_surrogate(f: &GridFunction) -> H1Surrogate {
    let sum: f64 = f.values.iter().zip(&f.flagged).filter(|(_, &fl)| !fl).map(|(v, _)| v.norm()).sum();
    H1Surrogate { value: sum / f.len() as f64, window: f.window }
}
