//! Admissibility of an order σ for a fixed a > 0.
//!
//! σ is admissible when σ ≥ σ₀(a) and the argument condition
//! (π/2)(σ−1) + Arg ζ(σ, 1/2 + i a/2π) ∉ πℤ holds; together they keep the
//! periodized denominator Z(σ, q) = ζ(σ, q) + e^{−iπσ} ζ(σ, 1−q) zero-free.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bspline::SplineParams;
use crate::complex::{hurwitz_zeta, principal_arg, ComplexValue, ZetaConfig};
use crate::error::{Error, Result};

/// Tolerance (radians) for the distance of the condition-two left-hand side to πℤ.
/// The left-hand side moves about one radian per unit of σ, so an order quoted
/// to five decimals next to a bad value still lands inside this band.
pub const ARGUMENT_TOLERANCE: f64 = 1e-5;

/// Scan resolution used when a caller does not choose one.
pub const DEFAULT_SCAN_POINTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub params: SplineParams,
    pub sigma0: f64,
    pub condition1_holds: bool,
    /// ζ(σ, 1/2 + i a/2π).
    pub zeta_star: ComplexValue,
    pub arg_zeta_star: f64,
    pub lhs_condition2: f64,
    /// The same left-hand side evaluated with the conjugate point 1/2 − i a/2π.
    pub lhs_condition2_conjugate: f64,
    pub distance_to_pi_lattice: f64,
    pub condition2_holds: bool,
    pub min_abs_z_scan: f64,
    /// |Z| at ξ = π, i.e. Re q = 1/2.
    pub abs_z_at_pi: f64,
    pub scan_points: usize,
    pub admissible: bool,
}

/// σ₀(a) = 1/2 + √2 · √(1 + v² + v⁴), v = a/2π.
pub fn sigma_zero(a: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain(format!("sigma_zero requires a > 0, got {a}")));
    }
    let v2 = (a / (2.0 * PI)).powi(2);
    Ok(0.5 + SQRT_2 * (1.0 + v2 + v2 * v2).sqrt())
}

fn half_line_point(a: f64) -> ComplexValue {
    ComplexValue::new(0.5, a / (2.0 * PI))
}

/// Z(σ, q) = ζ(σ, q) + e^{−iπσ} ζ(σ, 1−q) for 0 ≤ Re q ≤ 1, Im q ≠ 0.
pub fn denominator_z(p: SplineParams, q: ComplexValue) -> Result<ComplexValue> {
    denominator_z_with(p, q, &ZetaConfig::default())
}

pub fn denominator_z_with(p: SplineParams, q: ComplexValue, cfg: &ZetaConfig) -> Result<ComplexValue> {
    if !(0.0..=1.0).contains(&q.re) {
        return Err(Error::Domain(format!("denominator_z requires 0 <= Re q <= 1, got {q}")));
    }
    let phase = ComplexValue::from_polar(1.0, -PI * p.sigma());
    let one = ComplexValue::new(1.0, 0.0);
    Ok(hurwitz_zeta(p.sigma(), q, cfg)? + phase * hurwitz_zeta(p.sigma(), one - q, cfg)?)
}

/// (π/2)(σ−1) + Arg ζ(σ, 1/2 + i a/2π).
pub fn lhs_condition2(a: f64, sigma: f64) -> Result<f64> {
    let zeta = hurwitz_zeta(sigma, half_line_point(a), &ZetaConfig::default())?;
    Ok(0.5 * PI * (sigma - 1.0) + principal_arg(zeta))
}

fn distance_to_pi_lattice(x: f64) -> f64 {
    (x - PI * (x / PI).round()).abs()
}

pub fn check_admissibility(p: SplineParams, scan_points: usize) -> Result<AdmissibilityReport> {
    if scan_points < 16 {
        return Err(Error::Config(format!("scan_points must be >= 16, got {scan_points}")));
    }
    if p.sigma() <= 1.0 {
        return Err(Error::Domain(format!(
            "admissibility requires sigma > 1, got {}",
            p.sigma()
        )));
    }
    let cfg = ZetaConfig::default();
    let a = p.a();
    let sigma = p.sigma();
    let sigma0 = sigma_zero(a)?;
    let condition1_holds = sigma >= sigma0;

    let zeta_star = hurwitz_zeta(sigma, half_line_point(a), &cfg)?;
    let arg_zeta_star = principal_arg(zeta_star);
    let lhs = 0.5 * PI * (sigma - 1.0) + arg_zeta_star;
    let conj_zeta = hurwitz_zeta(sigma, half_line_point(a).conj(), &cfg)?;
    let lhs_conj = 0.5 * PI * (sigma - 1.0) + principal_arg(conj_zeta);
    let distance = distance_to_pi_lattice(lhs);
    let condition2_holds = distance > ARGUMENT_TOLERANCE;

    let v = a / (2.0 * PI);
    let step = 1.0 / (scan_points - 1) as f64;
    let moduli = (0..scan_points)
        .into_par_iter()
        .map(|j| denominator_z_with(p, ComplexValue::new(j as f64 * step, v), &cfg).map(|z| z.norm()))
        .collect::<Result<Vec<f64>>>()?;
    let min_abs_z_scan = moduli.iter().copied().fold(f64::INFINITY, f64::min);
    let abs_z_at_pi = denominator_z_with(p, half_line_point(a), &cfg)?.norm();

    Ok(AdmissibilityReport {
        params: p,
        sigma0,
        condition1_holds,
        zeta_star,
        arg_zeta_star,
        lhs_condition2: lhs,
        lhs_condition2_conjugate: lhs_conj,
        distance_to_pi_lattice: distance,
        condition2_holds,
        min_abs_z_scan,
        abs_z_at_pi,
        scan_points,
        admissible: condition1_holds && condition2_holds && min_abs_z_scan > 0.0,
    })
}

/// Locates σ in `bracket` where the condition-two left-hand side meets a
/// multiple of π, i.e. where Z(σ, 1/2 + i a/2π) vanishes.
///
/// Bisects on sin(lhs), which is continuous even where Arg ζ* wraps by 2π.
pub fn find_non_admissible_sigma(a: f64, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && lo > 1.0) {
        return Err(Error::Bracket(format!("invalid bracket [{lo}, {hi}]")));
    }
    let f = |s: f64| lhs_condition2(a, s).map(f64::sin);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket(format!(
            "condition-two left-hand side does not cross a multiple of pi on [{lo}, {hi}]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let residual = distance_to_pi_lattice(lhs_condition2(a, root)?);
    if residual > 1e-8 {
        return Err(Error::Precision(format!(
            "bisection ended at sigma={root} with |lhs - m*pi| = {residual:e}"
        )));
    }
    Ok(root)
}
