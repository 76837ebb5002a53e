//! Sampling with integer shifts of the fundamental spline.
//!
//! With t_k = k, a_k = 1 and S_k = L_a^σ(· − k), every f in the induced
//! space is f = Σ_k f(k) L_a^σ(· − k).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bspline::SplineParams;
use crate::complex::ComplexValue;
use crate::curve::{linspace, CurveMeta, CurveSample, CurveValues};
use crate::error::{Error, Result};
use crate::fundamental::FundamentalSplineModel;

/// Evaluation points closer than this to either end of the sample window are flagged.
pub const EDGE_MARGIN: i64 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct KramerCheckSpec {
    pub window: (i64, i64),
    pub t_grid: Vec<f64>,
    pub c1_tol: f64,
    pub c2_tol: f64,
}

impl Default for KramerCheckSpec {
    fn default() -> Self {
        Self {
            window: (-8, 8),
            t_grid: (0..=16).map(|i| -4.0 + 0.5 * i as f64).collect(),
            c1_tol: 1e-6,
            c2_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KramerReport {
    pub window: (i64, i64),
    pub c1_holds: bool,
    pub c1_max_deviation: f64,
    /// (k, l, |S_k(l) − δ_kl|) for every failing pair.
    pub c1_failures: Vec<(i64, i64, f64)>,
    pub c2_holds: bool,
    /// Σ_{k∈window} |S_k(t)|² for each t of the grid.
    pub c2_partial_sums: Vec<f64>,
    /// Largest contribution of the two outermost shifts.
    pub c2_max_edge_increment: f64,
    pub c2_failures: Vec<f64>,
}

/// Numerical check of S_k(l) = δ_kl and of bounded Σ_k |S_k(t)|² on a window.
pub fn kramer_conditions_check(model: &FundamentalSplineModel, spec: &KramerCheckSpec) -> Result<KramerReport> {
    let (lo, hi) = spec.window;
    if lo > hi {
        return Err(Error::Config(format!("empty window [{lo}, {hi}]")));
    }
    let span = hi - lo;
    // S_k(l) = L(l − k) depends on l − k only.
    let shifted: Vec<f64> = (-span..=span).map(|d| model.eval(d as f64)).collect::<Result<_>>()?;
    let mut c1_failures = Vec::new();
    let mut c1_max_deviation: f64 = 0.0;
    for k in lo..=hi {
        for l in lo..=hi {
            let value = shifted[(l - k + span) as usize];
            let target = if k == l { 1.0 } else { 0.0 };
            let dev = (value - target).abs();
            c1_max_deviation = c1_max_deviation.max(dev);
            if dev > spec.c1_tol {
                c1_failures.push((k, l, dev));
            }
        }
    }

    let mut c2_partial_sums = Vec::with_capacity(spec.t_grid.len());
    let mut c2_failures = Vec::new();
    let mut c2_max_edge_increment: f64 = 0.0;
    for &t in &spec.t_grid {
        let squares: Vec<f64> = (lo..=hi)
            .map(|k| model.eval(t - k as f64).map(|v| v * v))
            .collect::<Result<_>>()?;
        let edge = if lo == hi {
            squares[0]
        } else {
            squares[0] + squares[squares.len() - 1]
        };
        c2_max_edge_increment = c2_max_edge_increment.max(edge);
        if edge > spec.c2_tol {
            c2_failures.push(t);
        }
        c2_partial_sums.push(squares.iter().sum());
    }

    Ok(KramerReport {
        window: spec.window,
        c1_holds: c1_failures.is_empty(),
        c1_max_deviation,
        c1_failures,
        c2_holds: c2_failures.is_empty(),
        c2_partial_sums,
        c2_max_edge_increment,
        c2_failures,
    })
}

/// Integer samples of a function together with the points to reconstruct at.
#[derive(Debug, Clone)]
pub struct ReconstructionCase<'m> {
    model: &'m FundamentalSplineModel,
    sample_points: Vec<i64>,
    samples: Vec<f64>,
    eval_grid: Vec<f64>,
    truncation_window: (i64, i64),
}

impl<'m> ReconstructionCase<'m> {
    /// Samples must sit on consecutive integers; they are sorted here.
    pub fn new(model: &'m FundamentalSplineModel, mut samples: Vec<(i64, f64)>, eval_grid: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Config("reconstruction needs at least one sample".into()));
        }
        samples.sort_by_key(|&(k, _)| k);
        if samples.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
            return Err(Error::Config("samples must be given at consecutive integers".into()));
        }
        if samples.iter().any(|(_, v)| !v.is_finite()) {
            return Err(Error::Config("samples must be finite".into()));
        }
        if eval_grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::Config("evaluation grid must be finite".into()));
        }
        let truncation_window = (samples[0].0, samples[samples.len() - 1].0);
        let (sample_points, samples) = samples.into_iter().unzip();
        Ok(Self {
            model,
            sample_points,
            samples,
            eval_grid,
            truncation_window,
        })
    }

    pub fn model(&self) -> &FundamentalSplineModel {
        self.model
    }

    pub fn sample_points(&self) -> &[i64] {
        &self.sample_points
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval_grid(&self) -> &[f64] {
        &self.eval_grid
    }

    pub fn truncation_window(&self) -> (i64, i64) {
        self.truncation_window
    }

    /// Σ_k f(k) L(t − k) over the sample window.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        self.sample_points
            .iter()
            .zip(&self.samples)
            .try_fold(0.0, |acc, (&k, &f)| Ok(acc + f * self.model.eval(t - k as f64)?))
    }
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub curve: CurveSample,
    /// Grid points within `EDGE_MARGIN` of the sample window edges.
    pub flagged: Vec<f64>,
    /// max_k |reconstruction(k) − f(k)| over the sample points.
    pub max_integer_error: f64,
}

pub fn reconstruct(case: &ReconstructionCase<'_>) -> Result<Reconstruction> {
    let values = case
        .eval_grid
        .par_iter()
        .map(|&t| case.value_at(t))
        .collect::<Result<Vec<f64>>>()?;
    let (lo, hi) = case.truncation_window;
    let flagged = case
        .eval_grid
        .iter()
        .copied()
        .filter(|&t| t < (lo + EDGE_MARGIN) as f64 || t > (hi - EDGE_MARGIN) as f64)
        .collect();
    let mut max_integer_error: f64 = 0.0;
    for (&k, &f) in case.sample_points.iter().zip(&case.samples) {
        max_integer_error = max_integer_error.max((case.value_at(k as f64)? - f).abs());
    }
    let p = case.model.params();
    let meta = CurveMeta {
        a: p.a(),
        sigma: p.sigma(),
        function: "reconstruction".into(),
    };
    Ok(Reconstruction {
        curve: CurveSample::new(case.eval_grid.clone(), CurveValues::Real(values), meta)?,
        flagged,
        max_integer_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// {e^{ik·}} on L²[0, 2π].
    FourierOn0To2Pi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub kind: BasisKind,
    pub order_window: (i64, i64),
}

impl BasisSpec {
    pub fn fourier(max_order: i64) -> Self {
        Self {
            kind: BasisKind::FourierOn0To2Pi,
            order_window: (-max_order, max_order),
        }
    }
}

/// Tolerance for g(m) = 2π f̂(m) at the integers.
pub const FOURIER_INTERPOLATION_TOL: f64 = 1e-5;
/// Allowed change of f̂(k) when the quadrature grid is doubled.
pub const FOURIER_QUADRATURE_TOL: f64 = 1e-9;
const FOURIER_GRID: usize = 4096;

#[derive(Debug, Clone)]
pub struct FourierInterpolant {
    /// (k, f̂(k)) over the order window.
    pub coefficients: Vec<(i64, ComplexValue)>,
    /// g(t) = 2π Σ_k f̂(k) L(t − k).
    pub curve: CurveSample,
    pub max_integer_error: f64,
}

/// Trapezoid approximations of (1/2π)∫₀^{2π} f(x) e^{−ikx} dx on n panels,
/// reading f from `values`, sampled on `total + 1` equispaced points.
fn trapezoid_coefficient(values: &[f64], total: usize, n: usize, k: i64) -> ComplexValue {
    let stride = total / n;
    let mut acc = ComplexValue::new(0.5 * (values[0] + values[total]), 0.0);
    for j in 1..n {
        // Reduce k·j modulo n exactly before forming the angle.
        let turns = (k * j as i64).rem_euclid(n as i64) as f64 / n as f64;
        acc += ComplexValue::from_polar(values[j * stride], -2.0 * PI * turns);
    }
    acc / n as f64
}

/// Fourier coefficients of f on [0, 2π] by the trapezoid rule with one
/// Richardson step, which removes the h² endpoint error for non-periodic f and
/// leaves smooth periodic f untouched.
pub fn fourier_coefficients<F>(f: F, orders: (i64, i64)) -> Result<Vec<(i64, ComplexValue)>>
where
    F: Fn(f64) -> f64,
{
    let total = 2 * FOURIER_GRID;
    let values: Vec<f64> = (0..=total).map(|j| f(2.0 * PI * j as f64 / total as f64)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("f must be finite on [0, 2pi]".into()));
    }
    (orders.0..=orders.1)
        .map(|k| {
            let coarse = trapezoid_coefficient(&values, total, FOURIER_GRID / 2, k);
            let mid = trapezoid_coefficient(&values, total, FOURIER_GRID, k);
            let fine = trapezoid_coefficient(&values, total, total, k);
            let previous = (mid * 4.0 - coarse) / 3.0;
            let current = (fine * 4.0 - mid) / 3.0;
            let change = (current - previous).norm();
            if change > FOURIER_QUADRATURE_TOL {
                return Err(Error::Precision(format!(
                    "Fourier coefficient k={k} changed by {change:e} when the grid was doubled"
                )));
            }
            Ok((k, current))
        })
        .collect()
}

/// g(t) = 2π Σ_k f̂(k) L(t − k), the interpolant of the Fourier coefficients of f.
pub fn fourier_coefficient_interpolant<F>(
    model: &FundamentalSplineModel,
    f: F,
    spec: &BasisSpec,
    grid: &[f64],
) -> Result<FourierInterpolant>
where
    F: Fn(f64) -> f64,
{
    let (lo, hi) = spec.order_window;
    if lo > hi || lo != -hi {
        return Err(Error::Config(format!(
            "order window [{lo}, {hi}] must be symmetric about 0"
        )));
    }
    let BasisKind::FourierOn0To2Pi = spec.kind;
    let coefficients = fourier_coefficients(f, spec.order_window)?;

    let g = |t: f64| -> Result<ComplexValue> {
        coefficients
            .iter()
            .try_fold(ComplexValue::new(0.0, 0.0), |acc, &(k, c)| {
                Ok(acc + c * (2.0 * PI * model.eval(t - k as f64)?))
            })
    };

    let mut max_integer_error: f64 = 0.0;
    for &(m, c) in &coefficients {
        max_integer_error = max_integer_error.max((g(m as f64)? - c * (2.0 * PI)).norm());
    }
    if max_integer_error > FOURIER_INTERPOLATION_TOL {
        return Err(Error::InterpolationMismatch(format!(
            "g(m) deviates from 2*pi*f^(m) by {max_integer_error:e}"
        )));
    }

    let values = grid.iter().map(|&t| g(t)).collect::<Result<Vec<_>>>()?;
    let p = model.params();
    let meta = CurveMeta {
        a: p.a(),
        sigma: p.sigma(),
        function: "fourier_interpolant".into(),
    };
    Ok(FourierInterpolant {
        coefficients,
        curve: CurveSample::new(grid.to_vec(), CurveValues::from_complex(&values), meta)?,
        max_integer_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub k: i64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub from: f64,
    pub to: f64,
    pub n: usize,
}

/// On-disk form of a reconstruction case:
/// `{"params":{"a":..,"sigma":..},"samples":[{"k":..,"value":..}],"grid":{"from":..,"to":..,"n":..}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseFile {
    pub params: SplineParams,
    pub samples: Vec<SampleEntry>,
    pub grid: GridSpec,
}

impl CaseFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn build<'m>(&self, model: &'m FundamentalSplineModel) -> Result<ReconstructionCase<'m>> {
        if model.params() != self.params {
            return Err(Error::Config("case parameters do not match the model".into()));
        }
        let grid = linspace(self.grid.from, self.grid.to, self.grid.n)?;
        ReconstructionCase::new(model, self.samples.iter().map(|s| (s.k, s.value)).collect(), grid)
    }
}
