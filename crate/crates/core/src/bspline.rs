//! Fractional exponential B-splines E_a^σ.
//!
//! Time domain:
//! E(x) = e^{−ax}/Γ(σ) · Σ_k binom(σ,k) (−1)^k (x−k)_+^{σ−1},
//! Fourier domain: Ê(ξ) = ((1 − e^{−(a+iξ)}) / (a+iξ))^σ.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::complex::{principal_power_unchecked, ComplexValue};
use crate::error::{Error, Result};

/// The pair (a, σ) with a > 0 and σ ≥ 1.
///
/// Every construction in this crate that needs the fundamental spline
/// additionally requires admissibility, which implies σ > 1.9.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct SplineParams {
    a: f64,
    sigma: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: f64,
    sigma: f64,
}

impl TryFrom<RawParams> for SplineParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        SplineParams::new(raw.a, raw.sigma)
    }
}

impl From<SplineParams> for RawParams {
    fn from(p: SplineParams) -> Self {
        RawParams { a: p.a, sigma: p.sigma }
    }
}

impl SplineParams {
    pub fn new(a: f64, sigma: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::Domain(format!("a must be a positive finite number, got {a}")));
        }
        if !sigma.is_finite() || sigma < 1.0 {
            return Err(Error::Domain(format!("sigma must be finite and >= 1, got {sigma}")));
        }
        Ok(Self { a, sigma })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTruncation {
    pub max_terms: usize,
    pub term_tol: f64,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            max_terms: 64,
            term_tol: 1e-14,
        }
    }
}

impl SeriesTruncation {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 4 {
            return Err(Error::Config(format!("max_terms must be >= 4, got {}", self.max_terms)));
        }
        if self.term_tol.is_nan() || self.term_tol <= 0.0 {
            return Err(Error::Config(format!(
                "term_tol must be positive, got {}",
                self.term_tol
            )));
        }
        Ok(())
    }
}

/// Sign and log-modulus of Γ(y), for y not a non-positive integer.
fn signed_ln_gamma(y: f64) -> (f64, f64) {
    if y >= 0.5 {
        return (1.0, ln_gamma(y));
    }
    // Reflection: Γ(y) Γ(1−y) = π / sin(πy). Reduce y mod 2 before the sine.
    let reduced = y - 2.0 * (y / 2.0).floor();
    let s = (PI * reduced).sin();
    let sign = if s < 0.0 { -1.0 } else { 1.0 };
    (sign, PI.ln() - s.abs().ln() - ln_gamma(1.0 - y))
}

/// binom(σ, k) = Γ(σ+1) / (Γ(k+1) Γ(σ−k+1)) via log-Gamma.
pub fn generalized_binomial(sigma: f64, k: u64) -> Result<f64> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::Domain(format!(
            "generalized_binomial requires sigma > 0, got {sigma}"
        )));
    }
    if k > (1u64 << 52) {
        return Err(Error::Domain(format!(
            "k={k} is beyond the exactly representable range"
        )));
    }
    let kf = k as f64;
    let tail_arg = sigma - kf + 1.0;
    if tail_arg <= 0.0 && tail_arg == tail_arg.round() {
        // Γ pole in the denominator.
        return Ok(0.0);
    }
    let (sign, ln_tail) = signed_ln_gamma(tail_arg);
    let ln_abs = ln_gamma(sigma + 1.0) - ln_gamma(kf + 1.0) - ln_tail;
    Ok(sign * ln_abs.exp())
}

/// Evaluator for E_a^σ with the series weights binom(σ,k)(−1)^k/Γ(σ) precomputed.
#[derive(Debug, Clone)]
pub struct ExpBSpline {
    params: SplineParams,
    trunc: SeriesTruncation,
    weights: Vec<f64>,
}

impl ExpBSpline {
    pub fn new(params: SplineParams, trunc: SeriesTruncation) -> Result<Self> {
        trunc.validate()?;
        let ln_gamma_sigma = ln_gamma(params.sigma);
        let weights = (0..=trunc.max_terms as u64)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                generalized_binomial(params.sigma, k).map(|b| sign * b * (-ln_gamma_sigma).exp())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { params, trunc, weights })
    }

    pub fn params(&self) -> SplineParams {
        self.params
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x <= 0.0 {
            return 0.0;
        }
        let decay = (-self.params.a * x).exp();
        if decay == 0.0 {
            return 0.0;
        }
        let exponent = self.params.sigma - 1.0;
        let last = (x.floor() as usize).min(self.trunc.max_terms);
        let mut sum = 0.0;
        for (k, w) in self.weights.iter().enumerate().take(last + 1) {
            let y = x - k as f64;
            if y <= 0.0 {
                // (x−k)_+^{σ−1} vanishes at the knot.
                break;
            }
            let term = w * y.powf(exponent);
            sum += term;
            if (k as f64) > self.params.sigma + 1.0 && (term * decay).abs() < self.trunc.term_tol {
                break;
            }
        }
        decay * sum
    }
}

/// E_a^σ(x) by the truncated time-domain series.
pub fn eval_time_domain(p: SplineParams, x: f64, trunc: SeriesTruncation) -> Result<f64> {
    Ok(ExpBSpline::new(p, trunc)?.eval(x))
}

/// Ê_a^σ(ξ) = ((1 − e^{−(a+iξ)}) / (a+iξ))^σ on the principal branch.
pub fn fourier_transform(p: SplineParams, xi: f64) -> ComplexValue {
    let z = ComplexValue::new(p.a, xi);
    let base = (ComplexValue::new(1.0, 0.0) - (-z).exp()) / z;
    principal_power_unchecked(base, p.sigma)
}

/// Growth of ∫ |ξ|^n |Ê(ξ)| dξ over dyadic shells [T, 2T].
#[derive(Debug, Clone, Serialize)]
pub struct MomentTailReport {
    pub order: u32,
    pub shell_starts: Vec<f64>,
    pub increments: Vec<f64>,
    /// Mean ratio of consecutive increments over the last half of the shells.
    pub tail_ratio: f64,
    /// True when the increments shrink geometrically (integrable moment).
    pub bounded: bool,
}

/// Heuristic integrability check for ξ ↦ |ξ|^n |Ê(ξ)|, used as a proxy for
/// the C^{⌊σ⌋−1} regularity of E_a^σ. Not a proof.
pub fn fourier_moment_tail(p: SplineParams, order: u32, shells: usize) -> Result<MomentTailReport> {
    if shells < 4 {
        return Err(Error::Config(format!("need at least 4 shells, got {shells}")));
    }
    let rule = GaussLegendre::new(16.try_into().expect("nonzero"));
    let start = 4.0 * PI;
    let mut shell_starts = Vec::with_capacity(shells);
    let mut increments = Vec::with_capacity(shells);
    let mut lo = start;
    for _ in 0..shells {
        let hi = 2.0 * lo;
        // One sub-interval per period of the oscillating numerator.
        let pieces = ((hi - lo) / (2.0 * PI)).ceil() as usize;
        let width = (hi - lo) / pieces as f64;
        let mut acc = 0.0;
        for j in 0..pieces {
            let a = lo + j as f64 * width;
            acc += rule.integrate(a, a + width, |xi| {
                xi.powi(order as i32) * fourier_transform(p, xi).norm()
            });
        }
        shell_starts.push(lo);
        increments.push(acc);
        lo = hi;
    }
    let ratios: Vec<f64> = increments.windows(2).map(|w| w[1] / w[0]).collect();
    let half = &ratios[ratios.len() / 2..];
    let tail_ratio = half.iter().sum::<f64>() / half.len() as f64;
    Ok(MomentTailReport {
        order,
        shell_starts,
        increments,
        tail_ratio,
        bounded: tail_ratio < 0.99,
    })
}
