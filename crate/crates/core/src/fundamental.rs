//! The fundamental cardinal exponential spline L_a^σ, built two ways:
//! by numerical Fourier inversion of h(ξ) and by the coefficient series
//! Σ c_k E_a^σ(· − k) with c_k taken from the reciprocal symbol.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::admissibility::{check_admissibility, denominator_z, AdmissibilityReport, DEFAULT_SCAN_POINTS};
use crate::bspline::{ExpBSpline, SeriesTruncation, SplineParams};
use crate::complex::{principal_power_unchecked, ComplexValue};
use crate::curve::{linspace, CurveMeta, CurveSample, CurveValues};
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// |Z| below this is treated as a zero of the denominator.
pub const NEAR_ZERO_DENOMINATOR: f64 = 1e-12;
/// |s_j| below this is treated as a zero of the integer-sample symbol.
pub const SYMBOL_ZERO: f64 = 1e-10;
/// Integer samples E(k) below this are dropped from the symbol.
pub const SYMBOL_SAMPLE_CUTOFF: f64 = 1e-15;
/// Shifts kept clear of each edge of the coefficient window.
pub const SERIES_MARGIN: i64 = 4;

pub const DEFAULT_SYMBOL_GRID: usize = 4096;
pub const DEFAULT_WINDOW: (i64, i64) = (-256, 256);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// The integral is taken over [−2π·periods, 2π·periods].
    pub periods: usize,
    pub nodes_per_period: usize,
    pub tail_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            periods: 1024,
            nodes_per_period: 64,
            tail_tol: 1e-4,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.periods < 4 {
            return Err(Error::Config(format!("periods must be >= 4, got {}", self.periods)));
        }
        if self.nodes_per_period < 32 || !self.nodes_per_period.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "nodes_per_period must be even and >= 32, got {}",
                self.nodes_per_period
            )));
        }
        if self.tail_tol.is_nan() || self.tail_tol <= 0.0 {
            return Err(Error::Config(format!(
                "tail_tol must be positive, got {}",
                self.tail_tol
            )));
        }
        Ok(())
    }

    /// Node count actually used at abscissa x; grows with |x| beyond 8 to keep
    /// the phase e^{−iξx} resolved.
    pub fn nodes_for(&self, x: f64) -> usize {
        if x.abs() > 8.0 {
            let scaled = 16 * x.abs().ceil() as usize;
            let n = self.nodes_per_period.max(scaled);
            n + n % 2
        } else {
            self.nodes_per_period
        }
    }
}

fn periodized_q(a: f64, xi: f64) -> ComplexValue {
    ComplexValue::new(xi.rem_euclid(TWO_PI) / TWO_PI, a / TWO_PI)
}

/// h(ξ) = ((ξ + ia)/2π)^{−σ} / Z(σ, q(ξ)), with q(ξ) = ((ξ mod 2π) + ia)/2π.
pub fn integrand_h(p: SplineParams, xi: f64) -> Result<ComplexValue> {
    if !xi.is_finite() {
        return Err(Error::Domain(format!("xi must be finite, got {xi}")));
    }
    let z = denominator_z(p, periodized_q(p.a(), xi))?;
    if z.norm() < NEAR_ZERO_DENOMINATOR {
        return Err(Error::NearZeroDenominator { xi, abs: z.norm() });
    }
    let numerator = principal_power_unchecked(ComplexValue::new(xi, p.a()) / TWO_PI, -p.sigma());
    Ok(numerator / z)
}

/// Gauss–Legendre nodes on one period (0, 2π) together with 1/Z there.
#[derive(Debug, Clone)]
struct PeriodTable {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    inv_denominator: Vec<ComplexValue>,
}

impl PeriodTable {
    fn new(p: SplineParams, n: usize) -> Result<Self> {
        let rule = GaussLegendre::new(n.try_into().map_err(|_| Error::Config("zero nodes".into()))?);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for &(t, w) in rule.as_node_weight_pairs() {
            nodes.push(PI * (t + 1.0));
            weights.push(PI * w);
        }
        let inv_denominator = nodes
            .iter()
            .map(|&xi| {
                let z = denominator_z(p, periodized_q(p.a(), xi))?;
                if z.norm() < NEAR_ZERO_DENOMINATOR {
                    return Err(Error::NearZeroDenominator { xi, abs: z.norm() });
                }
                Ok(z.inv())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            nodes,
            weights,
            inv_denominator,
        })
    }
}

/// Evaluates L_a^σ(x) = (1/2π) ∫ h(ξ) e^{−iξx} dξ by composite Gauss–Legendre
/// quadrature, one panel per 2π period.
///
/// With the forward transform ∫ f(x) e^{−ixξ} dx used for E_a^σ, h(ξ) is the
/// complex conjugate of the transform of Σ c_k E_a^σ(· − k); the phase
/// e^{−iξx} therefore yields that same function rather than its reflection.
#[derive(Debug, Clone)]
pub struct FourierInversion {
    params: SplineParams,
    quad: QuadratureSpec,
    min_abs_z: f64,
    base: PeriodTable,
}

impl FourierInversion {
    pub fn new(p: SplineParams, quad: QuadratureSpec) -> Result<Self> {
        let report = check_admissibility(p, DEFAULT_SCAN_POINTS)?;
        Self::from_report(&report, quad)
    }

    pub fn from_report(report: &AdmissibilityReport, quad: QuadratureSpec) -> Result<Self> {
        quad.validate()?;
        if !report.admissible {
            return Err(Error::NotAdmissible(Box::new(report.clone())));
        }
        let p = report.params;
        let inv = Self {
            params: p,
            quad,
            min_abs_z: report.min_abs_z_scan,
            base: PeriodTable::new(p, quad.nodes_per_period)?,
        };
        let bound = inv.tail_bound();
        if bound > quad.tail_tol {
            return Err(Error::Precision(format!(
                "truncation tail bound {bound:e} exceeds tail_tol {:e}; increase periods (currently {})",
                quad.tail_tol, quad.periods
            )));
        }
        Ok(inv)
    }

    pub fn params(&self) -> SplineParams {
        self.params
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        self.quad
    }

    /// Bound on the part of the integral outside [−2πK, 2πK]:
    /// (2π)^σ (2πK)^{1−σ} / (π (σ−1) min|Z|).
    pub fn tail_bound(&self) -> f64 {
        let s = self.params.sigma();
        let cut = TWO_PI * self.quad.periods as f64;
        TWO_PI.powf(s) * cut.powf(1.0 - s) / (PI * (s - 1.0) * self.min_abs_z)
    }

    /// The raw inversion integral, imaginary part included.
    pub fn eval_complex(&self, x: f64) -> Result<ComplexValue> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("x must be finite, got {x}")));
        }
        let n = self.quad.nodes_for(x);
        let scaled;
        let table = if n == self.base.nodes.len() {
            &self.base
        } else {
            scaled = PeriodTable::new(self.params, n)?;
            &scaled
        };
        let shift = ComplexValue::new(0.0, self.params.a());
        let minus_sigma = -self.params.sigma();
        let k = self.quad.periods as i64;
        // Panels are summed in period order so the result does not depend on scheduling.
        let panels: Vec<ComplexValue> = (-k..k)
            .into_par_iter()
            .map(|period| {
                let offset = TWO_PI * period as f64;
                let mut panel = ComplexValue::new(0.0, 0.0);
                for ((&t, &w), &inv_z) in table.nodes.iter().zip(&table.weights).zip(&table.inv_denominator) {
                    let xi = offset + t;
                    let numerator = principal_power_unchecked((shift + xi) / TWO_PI, minus_sigma);
                    let phase = ComplexValue::from_polar(1.0, -xi * x);
                    panel += numerator * inv_z * phase * w;
                }
                panel
            })
            .collect();
        let total: ComplexValue = panels.iter().sum();
        Ok(total / TWO_PI)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = self.eval_complex(x)?;
        let limit = 10.0 * self.quad.tail_tol;
        if v.im.abs() > limit {
            return Err(Error::Precision(format!(
                "imaginary part {:e} of the inversion integral at x={x} exceeds {limit:e}",
                v.im
            )));
        }
        Ok(v.re)
    }
}

/// L_a^σ(x) by Fourier inversion; runs the admissibility check on every call.
pub fn eval_l_fourier(p: SplineParams, x: f64, quad: QuadratureSpec) -> Result<f64> {
    FourierInversion::new(p, quad)?.eval(x)
}

/// Coefficients c_k of L_a^σ = Σ c_k E_a^σ(· − k) on a finite window.
#[derive(Debug, Clone)]
pub struct FundamentalSplineModel {
    params: SplineParams,
    k_min: i64,
    coeffs: Vec<f64>,
    symbol_grid_size: usize,
    report: AdmissibilityReport,
    spline: ExpBSpline,
}

/// Builds the model from the integer samples E(k): the symbol
/// s_j = Σ_k E(k) e^{iξ_j k} on ξ_j = 2πj/M is inverted pointwise and the
/// c_k are the discrete Fourier coefficients of 1/s.
pub fn compute_coefficients(p: SplineParams, grid_size: usize, window: (i64, i64)) -> Result<FundamentalSplineModel> {
    if grid_size < 256 || !grid_size.is_power_of_two() {
        return Err(Error::Config(format!(
            "symbol grid size must be a power of two >= 256, got {grid_size}"
        )));
    }
    let half = (grid_size / 2) as i64;
    let (k_min, k_max) = window;
    if !(k_min < k_max && k_min >= -half && k_max < half) {
        return Err(Error::Config(format!(
            "coefficient window [{k_min}, {k_max}] must be non-empty and inside [-{half}, {half})"
        )));
    }
    let report = check_admissibility(p, DEFAULT_SCAN_POINTS)?;
    if !report.admissible {
        return Err(Error::NotAdmissible(Box::new(report)));
    }
    let spline = ExpBSpline::new(p, SeriesTruncation::default())?;

    let mut samples = Vec::new();
    for k in 1..grid_size {
        let e = spline.eval(k as f64);
        if (k as f64) > p.sigma() + 1.0 && e.abs() < SYMBOL_SAMPLE_CUTOFF {
            break;
        }
        samples.push((k, e));
    }

    let mut inverse: Vec<ComplexValue> = (0..grid_size)
        .map(|j| {
            let theta = TWO_PI * j as f64 / grid_size as f64;
            samples.iter().fold(ComplexValue::new(0.0, 0.0), |acc, &(k, e)| {
                acc + ComplexValue::from_polar(e, theta * k as f64)
            })
        })
        .collect();
    for (index, s) in inverse.iter_mut().enumerate() {
        let abs = s.norm();
        if abs < SYMBOL_ZERO {
            return Err(Error::SymbolZero { index, abs });
        }
        *s = s.inv();
    }

    let fft = FftPlanner::new().plan_fft_forward(grid_size);
    fft.process(&mut inverse);
    let scale = 1.0 / grid_size as f64;
    let coeffs = (k_min..=k_max)
        .map(|k| inverse[k.rem_euclid(grid_size as i64) as usize].re * scale)
        .collect();

    Ok(FundamentalSplineModel {
        params: p,
        k_min,
        coeffs,
        symbol_grid_size: grid_size,
        report,
        spline,
    })
}

impl FundamentalSplineModel {
    /// Model with the default symbol grid and coefficient window.
    pub fn new(p: SplineParams) -> Result<Self> {
        compute_coefficients(p, DEFAULT_SYMBOL_GRID, DEFAULT_WINDOW)
    }

    pub fn params(&self) -> SplineParams {
        self.params
    }

    pub fn report(&self) -> &AdmissibilityReport {
        &self.report
    }

    pub fn symbol_grid_size(&self) -> usize {
        self.symbol_grid_size
    }

    pub fn window(&self) -> (i64, i64) {
        (self.k_min, self.k_min + self.coeffs.len() as i64 - 1)
    }

    pub fn coefficient(&self, k: i64) -> Option<f64> {
        let idx = k.checked_sub(self.k_min)?;
        usize::try_from(idx).ok().and_then(|i| self.coeffs.get(i).copied())
    }

    /// (k, c_k) pairs over the window.
    pub fn coefficients(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, &c)| (self.k_min + i as i64, c))
    }

    pub fn spline(&self) -> &ExpBSpline {
        &self.spline
    }

    pub fn reliable_range(&self) -> (f64, f64) {
        let (lo, hi) = self.window();
        ((lo + SERIES_MARGIN) as f64, (hi - SERIES_MARGIN) as f64)
    }

    /// Σ_{k ≤ ⌊x⌋} c_k E_a^σ(x − k) over the window.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.reliable_range();
        if !(x >= lo && x <= hi) {
            return Err(Error::Range { x, lo, hi });
        }
        let a = self.params.a();
        let top = x.floor() as i64;
        let mut sum = 0.0;
        for k in (self.k_min..=top).rev() {
            let c = self.coeffs[(k - self.k_min) as usize];
            let y = x - k as f64;
            // E(y) ≤ e^{−ay} up to a modest factor; stop once further terms are negligible.
            if (c.abs() * (-a * y).exp()) < 1e-20 && y > self.params.sigma() + 1.0 {
                continue;
            }
            sum += c * self.spline.eval(y);
        }
        Ok(sum)
    }

    /// max over m in `range` of |Σ_k c_k E(m − k) − δ_{m,0}|.
    pub fn interpolation_residual(&self, range: (i64, i64)) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for m in range.0..=range.1 {
            let v = self.eval(m as f64)?;
            let target = if m == 0 { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
        Ok(worst)
    }
}

pub fn eval_l_series(model: &FundamentalSplineModel, x: f64) -> Result<f64> {
    model.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    AbsH,
    ReH,
    ImH,
    LCurve,
}

impl FigureKind {
    pub fn name(&self) -> &'static str {
        match self {
            FigureKind::AbsH => "abs_h",
            FigureKind::ReH => "re_h",
            FigureKind::ImH => "im_h",
            FigureKind::LCurve => "L",
        }
    }
}

/// One curve per parameter pair, sampled on `grid`.
pub fn emit_figure_data(which: FigureKind, sweeps: &[SplineParams], grid: &[f64]) -> Result<Vec<CurveSample>> {
    sweeps
        .iter()
        .map(|&p| {
            let meta = CurveMeta {
                a: p.a(),
                sigma: p.sigma(),
                function: which.name().to_string(),
            };
            let values = match which {
                FigureKind::LCurve => {
                    let model = FundamentalSplineModel::new(p)?;
                    grid.par_iter().map(|&x| model.eval(x)).collect::<Result<Vec<f64>>>()?
                }
                _ => {
                    let h = grid
                        .par_iter()
                        .map(|&xi| integrand_h(p, xi))
                        .collect::<Result<Vec<_>>>()?;
                    h.iter()
                        .map(|z| match which {
                            FigureKind::AbsH => z.norm(),
                            FigureKind::ReH => z.re,
                            _ => z.im,
                        })
                        .collect()
                }
            };
            CurveSample::new(grid.to_vec(), CurveValues::Real(values), meta)
        })
        .collect()
}

/// A named family of curves: one figure panel.
#[derive(Debug, Clone)]
pub struct FigureSweep {
    pub name: &'static str,
    pub kind: FigureKind,
    pub params: Vec<SplineParams>,
    pub grid: Vec<f64>,
}

/// The reference sweeps: h for fixed a = 2 with varying σ, h for fixed σ = √6
/// with varying a, and L_2^σ for σ ∈ {√6, 3.5, 4.25}.
pub fn figure_sweeps() -> Vec<FigureSweep> {
    let sqrt6 = 6f64.sqrt();
    let xi = linspace(-20.0, 20.0, 401).expect("static grid");
    let x = linspace(-6.0, 10.0, 161).expect("static grid");
    let p = |a: f64, s: f64| SplineParams::new(a, s).expect("static parameters");
    let by_sigma: Vec<_> = [2.5, 2.75, 3.0, 3.5].iter().map(|&s| p(2.0, s)).collect();
    let by_a: Vec<_> = [2.0, 3.0, 4.0, 5.0].iter().map(|&a| p(a, sqrt6)).collect();
    let mut out = Vec::new();
    for (name, kind, params) in [
        ("abs_h_by_sigma", FigureKind::AbsH, &by_sigma),
        ("re_h_by_sigma", FigureKind::ReH, &by_sigma),
        ("im_h_by_sigma", FigureKind::ImH, &by_sigma),
        ("abs_h_by_a", FigureKind::AbsH, &by_a),
        ("re_h_by_a", FigureKind::ReH, &by_a),
        ("im_h_by_a", FigureKind::ImH, &by_a),
    ] {
        out.push(FigureSweep {
            name,
            kind,
            params: params.clone(),
            grid: xi.clone(),
        });
    }
    out.push(FigureSweep {
        name: "L_by_sigma",
        kind: FigureKind::LCurve,
        params: [sqrt6, 3.5, 4.25].iter().map(|&s| p(2.0, s)).collect(),
        grid: x,
    });
    out
}
