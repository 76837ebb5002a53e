//! Complex powers on the principal branch and the Hurwitz zeta function
//! ζ(σ, q) for real σ > 1 and complex q with non-negative real part.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex number used throughout the crate.
pub type ComplexValue = Complex64;

/// Bernoulli numbers B_2, B_4, ..., B_24.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Principal argument in (−π, π].
pub fn principal_arg(z: ComplexValue) -> f64 {
    let arg = z.im.atan2(z.re);
    if arg == -PI {
        PI
    } else {
        arg
    }
}

/// `base^exponent` on the principal branch, `exp(exponent · (ln|base| + i·Arg base))`.
pub fn principal_power(base: ComplexValue, exponent: f64) -> Result<ComplexValue> {
    if !(base.re.is_finite() && base.im.is_finite() && exponent.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite input to principal_power: base={base}, exponent={exponent}"
        )));
    }
    if base.re == 0.0 && base.im == 0.0 {
        return Err(Error::Domain("principal_power of zero base".into()));
    }
    Ok(principal_power_unchecked(base, exponent))
}

#[inline]
pub(crate) fn principal_power_unchecked(base: ComplexValue, exponent: f64) -> ComplexValue {
    let modulus = base.norm();
    let arg = principal_arg(base);
    ComplexValue::from_polar((exponent * modulus.ln()).exp(), exponent * arg)
}

/// Truncation settings for the Euler–Maclaurin evaluation of ζ(σ, q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaConfig {
    /// Terms summed directly before the asymptotic tail.
    pub cutoff: usize,
    /// Number of Bernoulli correction terms.
    pub bernoulli_terms: usize,
    pub target_abs_tol: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self {
            cutoff: 25,
            bernoulli_terms: 8,
            target_abs_tol: 1e-12,
        }
    }
}

impl ZetaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cutoff < 8 {
            return Err(Error::Config(format!(
                "zeta cutoff must be at least 8, got {}",
                self.cutoff
            )));
        }
        if !(1..=BERNOULLI_EVEN.len()).contains(&self.bernoulli_terms) {
            return Err(Error::Config(format!(
                "bernoulli_terms must be in 1..=12, got {}",
                self.bernoulli_terms
            )));
        }
        if self.target_abs_tol.is_nan() || self.target_abs_tol <= 0.0 {
            return Err(Error::Config(format!(
                "target_abs_tol must be positive, got {}",
                self.target_abs_tol
            )));
        }
        Ok(())
    }
}

/// Hurwitz zeta ζ(σ, q) = Σ_{k≥0} (q+k)^{−σ}.
///
/// Sums the first `cutoff` terms directly and adds the Euler–Maclaurin tail
/// at w = cutoff + q. The real part of `q` may be zero as long as `q` itself
/// is not, in which case the first term is simply the principal power of a
/// point on the imaginary axis.
pub fn hurwitz_zeta(sigma: f64, q: ComplexValue, cfg: &ZetaConfig) -> Result<ComplexValue> {
    cfg.validate()?;
    if !sigma.is_finite() || sigma <= 1.0 {
        return Err(Error::Domain(format!("hurwitz_zeta requires sigma > 1, got {sigma}")));
    }
    if !(q.re.is_finite() && q.im.is_finite()) {
        return Err(Error::Domain(format!("hurwitz_zeta requires finite q, got {q}")));
    }
    if q.re < 0.0 || (q.re == 0.0 && q.im == 0.0) {
        return Err(Error::Domain(format!(
            "hurwitz_zeta requires Re q > 0 (or Re q = 0 with Im q != 0), got {q}"
        )));
    }

    let n = cfg.cutoff;
    // Smallest terms first.
    let mut sum = ComplexValue::new(0.0, 0.0);
    for k in (0..n).rev() {
        sum += principal_power_unchecked(q + k as f64, -sigma);
    }

    let w = q + n as f64;
    let w_pow = principal_power_unchecked(w, -sigma);
    let mut tail = principal_power_unchecked(w, 1.0 - sigma) / (sigma - 1.0) + w_pow * 0.5;

    let inv_w2 = (w * w).inv();
    // Pochhammer-like product σ(σ+1)...(σ+2j−2), the power w^{−σ−2j+1} and (2j)!.
    let mut rising = sigma;
    let mut power = w_pow / w;
    let mut factorial = 2.0;
    let mut prev_norm = f64::INFINITY;
    let mut last_norm = 0.0;
    for j in 1..=cfg.bernoulli_terms {
        if j > 1 {
            let m = (2 * j) as f64;
            rising *= (sigma + m - 3.0) * (sigma + m - 2.0);
            power *= inv_w2;
            factorial *= (m - 1.0) * m;
        }
        let term = power * (BERNOULLI_EVEN[j - 1] / factorial * rising);
        last_norm = term.norm();
        if j > 1 && last_norm > prev_norm {
            return Err(Error::Precision(format!(
                "Euler-Maclaurin tail diverging at term {j} (|t_j|={last_norm:e} > |t_{{j-1}}|={prev_norm:e}) \
                 for sigma={sigma}, q={q}; increase cutoff"
            )));
        }
        prev_norm = last_norm;
        tail += term;
    }
    if last_norm > cfg.target_abs_tol {
        return Err(Error::Precision(format!(
            "last Euler-Maclaurin term {last_norm:e} exceeds target tolerance {:e} for sigma={sigma}, q={q}",
            cfg.target_abs_tol
        )));
    }

    let value = sum + tail;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Precision(format!(
            "non-finite zeta value for sigma={sigma}, q={q}"
        )));
    }
    Ok(value)
}
