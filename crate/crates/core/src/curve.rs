//! Sampled curves and their CSV / JSON serializations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::ComplexValue;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub a: f64,
    pub sigma: f64,
    /// Name of the sampled function, e.g. `abs_h` or `L`.
    pub function: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveValues {
    Real(Vec<f64>),
    Complex(Vec<(f64, f64)>),
}

impl CurveValues {
    pub fn len(&self) -> usize {
        match self {
            CurveValues::Real(v) => v.len(),
            CurveValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn from_complex(values: &[ComplexValue]) -> Self {
        CurveValues::Complex(values.iter().map(|z| (z.re, z.im)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    abscissae: Vec<f64>,
    values: CurveValues,
    meta: CurveMeta,
}

impl CurveSample {
    pub fn new(abscissae: Vec<f64>, values: CurveValues, meta: CurveMeta) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(Error::InvalidCurve(format!(
                "{} abscissae but {} values",
                abscissae.len(),
                values.len()
            )));
        }
        if abscissae.windows(2).any(|w| w[0].is_nan() || w[0] >= w[1]) {
            return Err(Error::InvalidCurve("abscissae must be strictly increasing".into()));
        }
        let finite = match &values {
            CurveValues::Real(v) => v.iter().all(|x| x.is_finite()),
            CurveValues::Complex(v) => v.iter().all(|(r, i)| r.is_finite() && i.is_finite()),
        };
        if !finite || abscissae.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCurve("curve contains non-finite entries".into()));
        }
        Ok(Self {
            abscissae,
            values,
            meta,
        })
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn values(&self) -> &CurveValues {
        &self.values
    }

    pub fn meta(&self) -> &CurveMeta {
        &self.meta
    }

    pub fn real_values(&self) -> Option<&[f64]> {
        match &self.values {
            CurveValues::Real(v) => Some(v),
            CurveValues::Complex(_) => None,
        }
    }

    /// CSV with a `#` metadata line followed by `x,value` or `xi,re,im` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# expspline {} function={} a={} sigma={}",
            env!("CARGO_PKG_VERSION"),
            self.meta.function,
            self.meta.a,
            self.meta.sigma
        );
        match &self.values {
            CurveValues::Real(v) => {
                out.push_str("x,value\n");
                for (x, y) in self.abscissae.iter().zip(v) {
                    let _ = writeln!(out, "{},{:.10e}", x, y);
                }
            }
            CurveValues::Complex(v) => {
                out.push_str("xi,re,im\n");
                for (x, (re, im)) in self.abscissae.iter().zip(v) {
                    let _ = writeln!(out, "{},{:.10e},{:.10e}", x, re, im);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// `n` equally spaced points from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || from >= to || !from.is_finite() || !to.is_finite() {
        return Err(Error::Config(format!("invalid grid from={from} to={to} n={n}")));
    }
    let step = (to - from) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { to } else { from + i as f64 * step })
        .collect())
}
