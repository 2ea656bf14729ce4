//! Checkers for the inequalities that bound mean oscillation.

use alloc::vec::Vec;
use core::f64::consts::E;
use num_traits::Float;

use super::{mean_oscillation, total_variation, Arc, Marks, Sample, Variation};
use crate::error::Result;

const SLACK: f64 = 1e-8;

/// Points per side used to verify derivative bounds and symmetry.
const PRECONDITION_POINTS: usize = 200;

/// Uniform points used to verify pairwise domination.
const DOMINATION_POINTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The bound is infinite, so there is nothing to check.
    VacuousPass,
    PreconditionViolated,
}

impl CheckStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckStatus::Pass | CheckStatus::VacuousPass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Precondition {
    Holds,
    Violated { at: f64, what: &'static str },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationBoundCheck {
    pub arc: Arc,
    pub mo: f64,
    pub variation: Variation,
    /// `V/2 + slack - MO`; negative on failure.
    pub margin: f64,
    pub status: CheckStatus,
}

/// `MO_I(f) ≤ V_I(f)/2`.
pub fn check_variation_bound<F>(f: F, arc: &Arc, marks: &Marks) -> Result<VariationBoundCheck>
where
    F: Fn(f64) -> Result<f64>,
{
    let variation = total_variation(&f, arc, marks)?;
    let mo = mean_oscillation(&f, arc, marks)?.mo;
    let (margin, status) = match variation {
        Variation::Unbounded => (f64::INFINITY, CheckStatus::VacuousPass),
        Variation::Finite(v) => {
            let margin = 0.5 * v + SLACK - mo;
            (margin, if margin >= 0.0 { CheckStatus::Pass } else { CheckStatus::Fail })
        }
    };
    Ok(VariationBoundCheck { arc: *arc, mo, variation, margin, status })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominationCheck {
    pub mo_f: f64,
    pub mo_g: f64,
    pub factor: f64,
    pub precondition: Precondition,
    pub status: CheckStatus,
}

fn mesh_points(arc: &Arc, marks: &Marks) -> Vec<f64> {
    let mut xs: Vec<f64> =
        (0..=DOMINATION_POINTS).map(|i| arc.left() + arc.length() * i as f64 / DOMINATION_POINTS as f64).collect();
    xs.extend(Marks::images(&marks.breakpoints, arc));
    xs.sort_by(|a, b| a.total_cmp(b));
    xs
}

fn is_monotone(v: &[f64]) -> bool {
    let tol = 1e-12 * v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    v.windows(2).all(|w| w[1] >= w[0] - tol) || v.windows(2).all(|w| w[1] <= w[0] + tol)
}

/// `MO_I(f) ≤ 2·MO_I(g)` whenever `|f(x) - f(y)| ≤ |g(x) - g(y)|`; factor 1
/// when both are monotone and `monotone` is set. The hypothesis is checked
/// on a mesh of the arc.
pub fn check_domination<F, G>(f: F, g: G, arc: &Arc, monotone: bool, marks: &Marks) -> Result<DominationCheck>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let xs = mesh_points(arc, marks);
    let fv = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let gv = xs.iter().map(|&x| g(x)).collect::<Result<Vec<_>>>()?;
    let mut precondition = Precondition::Holds;
    'outer: for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let df = (fv[i] - fv[j]).abs();
            let dg = (gv[i] - gv[j]).abs();
            if df > dg * (1.0 + 1e-12) + 1e-14 {
                precondition = Precondition::Violated { at: xs[i], what: "increment not dominated" };
                break 'outer;
            }
        }
    }
    if monotone && precondition == Precondition::Holds && !(is_monotone(&fv) && is_monotone(&gv)) {
        precondition = Precondition::Violated { at: arc.left(), what: "not monotone" };
    }
    let factor = if monotone { 1.0 } else { 2.0 };
    let mo_f = mean_oscillation(&f, arc, marks)?.mo;
    let mo_g = mean_oscillation(&g, arc, marks)?.mo;
    let status = if precondition != Precondition::Holds {
        CheckStatus::PreconditionViolated
    } else if mo_f <= factor * mo_g + SLACK {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(DominationCheck { mo_f, mo_g, factor, precondition, status })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropositionOptions {
    /// `f` is monotone on `(0, δ]`; tightens the logarithmic bound.
    pub monotone: bool,
    /// `M` in `|f'| ≤ M·b(x)`; the asserted bound scales by `M`.
    pub derivative_constant: f64,
}

impl Default for PropositionOptions {
    fn default() -> Self {
        PropositionOptions { monotone: false, derivative_constant: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropositionRow {
    pub arc: Arc,
    pub mo: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropositionTable {
    pub rows: Vec<PropositionRow>,
    pub precondition: Precondition,
    /// `δ` is larger than the range in which the bound is proved.
    pub delta_exceeds_hypothesis: bool,
    pub status: CheckStatus,
}

/// Centred, one-sided and shifted dyadic arcs inside `[-δ, δ]`.
pub fn dyadic_arcs_in(delta: f64, depth: u32) -> Vec<Arc> {
    let mut out = Vec::new();
    for k in 0..depth {
        let r = delta * (-(k as f64)).exp2();
        for (l, h) in [(-r, r), (0.0, r), (0.5 * r, r), (-r, 0.25 * r)] {
            if let Ok(a) = Arc::new(l, h) {
                out.push(a);
            }
        }
    }
    out
}

fn sample_offsets(delta: f64) -> impl Iterator<Item = f64> {
    (0..PRECONDITION_POINTS)
        .map(move |i| delta * (-12.0 * i as f64 / (PRECONDITION_POINTS - 1) as f64 * core::f64::consts::LN_10).exp())
}

fn arcs_inside(delta: f64, arcs: &[Arc]) -> Precondition {
    let tol = delta * 1e-12;
    match arcs.iter().find(|a| a.left() < -delta - tol || a.right() > delta + tol) {
        Some(a) => Precondition::Violated { at: a.left(), what: "arc leaves [-δ, δ]" },
        None => Precondition::Holds,
    }
}

fn derivative_bounded<D, T>(df: &D, delta: f64, m: f64, bound: fn(f64) -> f64) -> Result<Precondition>
where
    D: Fn(f64) -> Result<T>,
    T: Sample,
{
    for x in sample_offsets(delta) {
        for s in [x, -x] {
            if df(s)?.to_complex().norm() > m * bound(x) * (1.0 + 1e-9) {
                return Ok(Precondition::Violated { at: s, what: "derivative bound" });
            }
        }
    }
    Ok(Precondition::Holds)
}

fn table<F, T>(
    f: F,
    arcs: &[Arc],
    mut precondition: Precondition,
    delta_exceeds_hypothesis: bool,
    bound: impl Fn(f64) -> f64,
) -> Result<PropositionTable>
where
    F: Fn(f64) -> Result<T>,
    T: Sample,
{
    if arcs.is_empty() && precondition == Precondition::Holds {
        precondition = Precondition::Violated { at: 0.0, what: "no arcs" };
    }
    let marks = Marks::singular_at(&[0.0]);
    let mut rows = Vec::with_capacity(arcs.len());
    for arc in arcs {
        let mo = mean_oscillation(&f, arc, &marks)?.mo;
        let b = bound(arc.length());
        rows.push(PropositionRow { arc: *arc, mo, bound: b, pass: mo <= b + SLACK });
    }
    let status = if precondition != Precondition::Holds {
        CheckStatus::PreconditionViolated
    } else if rows.iter().all(|r| r.pass) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(PropositionTable { rows, precondition, delta_exceeds_hypothesis, status })
}

/// Even `f` with `|f'(x)| ≤ -1/(|x| ln|x|)` on `0 < |x| ≤ δ` has
/// `MO_I(f) ≤ -(8/e)/ln(|I|/2)` on arcs inside `[-δ, δ]`, and `4/e` in place
/// of `8/e` when `f` is monotone on `(0, δ]`.
///
/// The bound is proved for `δ ≤ e⁻¹/4`; larger `δ` is evaluated anyway and
/// flagged in the table.
pub fn check_prop_log<F, D>(
    f: F,
    df: D,
    delta: f64,
    arcs: &[Arc],
    options: PropositionOptions,
) -> Result<PropositionTable>
where
    F: Fn(f64) -> Result<f64>,
    D: Fn(f64) -> Result<f64>,
{
    let m = options.derivative_constant;
    let mut pre = arcs_inside(delta, arcs);
    if pre == Precondition::Holds && delta >= 1.0 / E {
        pre = Precondition::Violated { at: delta, what: "δ must stay below 1/e" };
    }
    if pre == Precondition::Holds {
        for x in sample_offsets(delta) {
            let (a, b) = (f(x)?, f(-x)?);
            if (a - b).abs() > 1e-9 * (1.0 + a.abs()) {
                pre = Precondition::Violated { at: x, what: "not even" };
                break;
            }
        }
    }
    if pre == Precondition::Holds {
        pre = derivative_bounded(&df, delta, m, |x| -1.0 / (x * x.ln()))?;
    }
    if pre == Precondition::Holds && options.monotone {
        let vals = sample_offsets(delta).map(&f).collect::<Result<Vec<_>>>()?;
        if !is_monotone(&vals) {
            pre = Precondition::Violated { at: delta, what: "not monotone on (0, δ]" };
        }
    }
    let c = if options.monotone { 4.0 / E } else { 8.0 / E };
    table(f, arcs, pre, delta > 0.25 / E, |len| -m * c / (0.5 * len).ln())
}

/// `f` with `|f'(x)| ≤ 1/(|x| ln²|x|)` on `0 < |x| ≤ δ ≤ e⁻²` has
/// `MO_I(f) ≤ 1/ln(-ln(|I|/2))` on arcs inside `[-δ, δ]`. Continuity at 0
/// is the caller's responsibility.
pub fn check_prop_loglog<F, D, T>(
    f: F,
    df: D,
    delta: f64,
    arcs: &[Arc],
    options: PropositionOptions,
) -> Result<PropositionTable>
where
    F: Fn(f64) -> Result<T>,
    D: Fn(f64) -> Result<T>,
    T: Sample,
{
    let m = options.derivative_constant;
    let mut pre = arcs_inside(delta, arcs);
    if pre == Precondition::Holds && delta > (-2.0f64).exp() * (1.0 + 1e-12) {
        pre = Precondition::Violated { at: delta, what: "δ exceeds e⁻²" };
    }
    if pre == Precondition::Holds {
        pre = derivative_bounded(&df, delta, m, |x| 1.0 / (x * x.ln().powi(2)))?;
    }
    table(f, arcs, pre, false, |len| m / (-(0.5 * len).ln()).ln())
}
