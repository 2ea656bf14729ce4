//! Mean oscillation, total variation and the log-weighted BMO norm over
//! families of arcs.
//!
//! Functions are given in a real coordinate along the circle (usually the
//! offset from `-1`) and must be `2π`-periodic in it when arcs wrap.
//! Singular points are marked so that the quadrature can grade toward them.

mod checks;

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::{Float, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quad::{panel_rule, Mesh};

pub use checks::{
    check_domination, check_prop_log, check_prop_loglog, check_variation_bound, dyadic_arcs_in, CheckStatus,
    DominationCheck, Precondition, PropositionOptions, PropositionRow, PropositionTable, VariationBoundCheck,
};

/// Arcs shorter than this are rejected.
pub const MIN_ARC_LENGTH: f64 = 1e-10;

/// Graded meshes stop at this fraction of the arc length.
pub const MESH_FLOOR: f64 = 1e-12;

/// Minimum number of panels, so at least 64 quadrature nodes per arc.
const MIN_PANELS: usize = 4;

/// Relative change at which total variation refinement stops.
pub const VARIATION_TOLERANCE: f64 = 1e-8;

const VARIATION_MAX_POINTS: usize = 1 << 22;

/// Default number of random arcs added to a dyadic family.
pub const RANDOM_ARCS: usize = 200;

/// Shortest random arc.
pub const RANDOM_MIN_LENGTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    left: f64,
    right: f64,
}

impl Arc {
    pub fn new(left: f64, right: f64) -> Result<Arc> {
        let len = right - left;
        if len.is_nan() || len < MIN_ARC_LENGTH {
            return Err(Error::DegenerateArc(len));
        }
        if len > 2.0 * PI * (1.0 + 1e-12) {
            return Err(Error::OutOfRange { what: "arc length", value: len });
        }
        Ok(Arc { left, right })
    }

    pub fn centered(centre: f64, length: f64) -> Result<Arc> {
        Arc::new(centre - 0.5 * length, centre + 0.5 * length)
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.left && x <= self.right
    }
}

/// The adopted weight `ln(4π/|I|)`.
pub fn log_weight(length: f64) -> f64 {
    (4.0 * PI / length).ln()
}

/// `4π/|ln|I||`, the weight with the logarithm in the denominator, kept for
/// side-by-side reporting. It decays as arcs shrink.
pub fn reciprocal_log_weight(length: f64) -> f64 {
    4.0 * PI / length.ln().abs()
}

/// Points where the integrand is singular or has kinks, in the arc
/// coordinate. Singular points are matched modulo `2π`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Marks {
    pub singular: Vec<f64>,
    pub breakpoints: Vec<f64>,
}

impl Marks {
    pub fn none() -> Marks {
        Marks::default()
    }

    pub fn singular_at(points: &[f64]) -> Marks {
        Marks { singular: points.to_vec(), breakpoints: Vec::new() }
    }

    pub fn breaks_at(points: &[f64]) -> Marks {
        Marks { singular: Vec::new(), breakpoints: points.to_vec() }
    }

    fn images(points: &[f64], arc: &Arc) -> Vec<f64> {
        let mut out = Vec::new();
        for &p in points {
            for m in [-1.0, 0.0, 1.0] {
                let q = p + 2.0 * PI * m;
                if arc.contains(q) {
                    out.push(q);
                }
            }
        }
        out
    }

    pub fn mesh(&self, arc: &Arc) -> Mesh {
        let len = arc.length();
        let mut mesh = Mesh::new(arc.left, arc.right).with_points(&Marks::images(&self.breakpoints, arc));
        for s in Marks::images(&self.singular, arc) {
            // Grading below a few ulps of the coordinate itself would put
            // nodes exactly on the singular point.
            mesh = mesh.graded_toward(s, (MESH_FLOOR * len).max(4096.0 * f64::EPSILON * s.abs()));
        }
        mesh.with_max_width(len / MIN_PANELS as f64)
    }
}

/// Values accepted by [`mean_oscillation`].
pub trait Sample: Copy {
    fn to_complex(self) -> Complex64;
    /// `Some` for real-valued samples, which get exact kink handling.
    fn as_real(self) -> Option<f64>;
}

impl Sample for f64 {
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn as_real(self) -> Option<f64> {
        Some(self)
    }
}

impl Sample for Complex64 {
    fn to_complex(self) -> Complex64 {
        self
    }
    fn as_real(self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variation {
    Finite(f64),
    /// Refinement did not settle or a sample was not finite.
    Unbounded,
}

impl Variation {
    pub fn value(&self) -> f64 {
        match self {
            Variation::Finite(v) => *v,
            Variation::Unbounded => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscillationReport {
    pub arc: Arc,
    pub mean: Complex64,
    pub mo: f64,
    pub variation: Option<Variation>,
    pub weight: f64,
    pub weighted: f64,
}

fn finite<T: Sample>(x: f64, v: T) -> Result<T> {
    if v.to_complex().is_finite() {
        Ok(v)
    } else {
        Err(Error::NonIntegrable(x))
    }
}

/// `f_I = |I|⁻¹∫_I f` and `MO_I(f) = |I|⁻¹∫_I |f - f_I|`.
///
/// Each panel carries 16 Gauss–Legendre nodes. For real `f`, panels where
/// `f - f_I` changes sign are split at the root so the kink of `|·|` never
/// sits inside a panel.
pub fn mean_oscillation<T, F>(f: F, arc: &Arc, marks: &Marks) -> Result<OscillationReport>
where
    T: Sample,
    F: Fn(f64) -> Result<T>,
{
    let eval = |x: f64| -> Result<T> { finite(x, f(x)?) };
    let mesh = marks.mesh(arc);
    let len = arc.length();
    let mut nodes: Vec<(f64, f64, T)> = Vec::with_capacity(16 * mesh.panel_count());
    for (a, b) in mesh.panels() {
        for (x, w) in panel_rule(a, b) {
            nodes.push((x, w, eval(x)?));
        }
    }
    let mean: Complex64 = nodes.iter().map(|&(_, w, v)| v.to_complex() * w).sum::<Complex64>() / len;

    let mut total = 0.0;
    for (p, (a, b)) in mesh.panels().enumerate() {
        let panel = &mut nodes[16 * p..16 * (p + 1)];
        match panel[0].2.as_real() {
            None => total += panel.iter().map(|&(_, w, v)| (v.to_complex() - mean).norm() * w).sum::<f64>(),
            Some(_) => {
                let m = mean.re;
                panel.sort_by(|x, y| x.0.total_cmp(&y.0));
                let signs: Vec<f64> = panel.iter().map(|&(_, _, v)| v.as_real().unwrap_or(0.0) - m).collect();
                let changes = signs.windows(2).any(|s| (s[0] < 0.0) != (s[1] < 0.0));
                if !changes {
                    total += panel.iter().map(|&(_, w, v)| w * (v.as_real().unwrap_or(0.0) - m)).sum::<f64>().abs();
                    continue;
                }
                let mut cuts = alloc::vec![a];
                for i in 0..15 {
                    if (signs[i] < 0.0) != (signs[i + 1] < 0.0) {
                        let g = |x: f64| -> Result<f64> { Ok(eval(x)?.as_real().unwrap_or(0.0) - m) };
                        cuts.push(bisect(&g, panel[i].0, panel[i + 1].0, signs[i])?);
                    }
                }
                cuts.push(b);
                for c in cuts.windows(2) {
                    let mut s = 0.0;
                    for (x, w) in panel_rule(c[0], c[1]) {
                        s += w * (eval(x)?.as_real().unwrap_or(0.0) - m);
                    }
                    total += s.abs();
                }
            }
        }
    }
    let mo = total / len;
    let weight = log_weight(len);
    Ok(OscillationReport { arc: *arc, mean, mo, variation: None, weight, weighted: weight * mo })
}

fn bisect<G: Fn(f64) -> Result<f64>>(g: &G, mut lo: f64, mut hi: f64, lo_value: f64) -> Result<f64> {
    let lo_neg = lo_value < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid)? < 0.0) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Total variation as the limit of sums over refined uniform partitions
/// (plus the marked points), doubling until the relative change is below
/// [`VARIATION_TOLERANCE`].
pub fn total_variation<F>(f: F, arc: &Arc, marks: &Marks) -> Result<Variation>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut extra = Marks::images(&marks.breakpoints, arc);
    extra.extend(Marks::images(&marks.singular, arc));
    let mut m = 64;
    let mut previous: Option<f64> = None;
    while m <= VARIATION_MAX_POINTS {
        let mut xs: Vec<f64> = (0..=m).map(|i| arc.left + arc.length() * i as f64 / m as f64).collect();
        xs.extend(extra.iter().copied());
        xs.sort_by(|a, b| a.total_cmp(b));
        let mut sum = 0.0;
        let mut last = f(xs[0])?;
        if !last.is_finite() {
            return Ok(Variation::Unbounded);
        }
        for &x in &xs[1..] {
            let v = f(x)?;
            if !v.is_finite() {
                return Ok(Variation::Unbounded);
            }
            sum += (v - last).abs();
            last = v;
        }
        if let Some(p) = previous {
            if (sum - p).abs() <= VARIATION_TOLERANCE * sum.abs().max(f64::MIN_POSITIVE) {
                return Ok(Variation::Finite(sum));
            }
        }
        previous = Some(sum);
        m *= 2;
    }
    Ok(Variation::Unbounded)
}

/// A list of arcs together with how many requested arcs were too short.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ArcFamily {
    arcs: Vec<Arc>,
    skipped: usize,
}

impl ArcFamily {
    pub fn from_arcs(arcs: Vec<Arc>) -> ArcFamily {
        ArcFamily { arcs, skipped: 0 }
    }

    /// Arcs of length `2π·2^-k` centred at `centre`, `k = 1..=depth`.
    pub fn dyadic(centre: f64, depth: u32) -> ArcFamily {
        let mut out = ArcFamily::default();
        for k in 1..=depth {
            match Arc::centered(centre, 2.0 * PI * (-(k as f64)).exp2()) {
                Ok(a) => out.arcs.push(a),
                Err(_) => out.skipped += 1,
            }
        }
        out
    }

    /// `count` arcs with uniform centres and log-uniform lengths in
    /// `[min_length, 2π]`, reproducible from `seed`.
    pub fn random(seed: u64, count: usize, min_length: f64) -> ArcFamily {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut unit = move || (rng.next_u64() >> 11) as f64 * (-53.0f64).exp2();
        let span = (2.0 * PI / min_length).ln();
        let arcs = (0..count)
            .map(|_| {
                let centre = PI * (2.0 * unit() - 1.0);
                let len = min_length * (span * unit()).exp();
                Arc { left: centre - 0.5 * len, right: centre + 0.5 * len }
            })
            .collect();
        ArcFamily { arcs, skipped: 0 }
    }

    /// Dyadic arcs at `centre` followed by [`RANDOM_ARCS`] random arcs.
    pub fn standard(centre: f64, depth: u32, seed: u64) -> ArcFamily {
        let mut out = ArcFamily::dyadic(centre, depth);
        out.extend(ArcFamily::random(seed, RANDOM_ARCS, RANDOM_MIN_LENGTH));
        out
    }

    pub fn extend(&mut self, other: ArcFamily) {
        self.arcs.extend(other.arcs);
        self.skipped += other.skipped;
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BmoLogEstimate {
    /// `sup weight(|I|)·MO_I(f)` with the adopted weight.
    pub sup: f64,
    /// Index of the first arc reaching the supremum.
    pub argsup: usize,
    /// The same supremum with [`reciprocal_log_weight`].
    pub reciprocal_weight_sup: f64,
    pub reports: Vec<OscillationReport>,
}

impl BmoLogEstimate {
    pub fn argsup_arc(&self) -> &Arc {
        &self.reports[self.argsup].arc
    }
}

/// Supremum of the weighted mean oscillation over a family.
pub fn bmo_log_norm<T, F>(f: F, family: &ArcFamily, marks: &Marks) -> Result<BmoLogEstimate>
where
    T: Sample,
    F: Fn(f64) -> Result<T>,
{
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut reports = Vec::with_capacity(family.len());
    let mut sup = f64::NEG_INFINITY;
    let mut argsup = 0;
    let mut recip = 0.0f64;
    for (i, arc) in family.arcs().iter().enumerate() {
        let r = mean_oscillation(&f, arc, marks)?;
        if r.weighted > sup {
            sup = r.weighted;
            argsup = i;
        }
        recip = recip.max(reciprocal_log_weight(arc.length()) * r.mo);
        reports.push(r);
    }
    Ok(BmoLogEstimate { sup, argsup, reciprocal_weight_sup: recip, reports })
}
