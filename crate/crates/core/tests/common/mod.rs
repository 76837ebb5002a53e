//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use expspline::ComplexValue;
use gauss_quad::GaussLegendre;

pub const SQRT6: f64 = 2.449489742783178;

/// Σ_{k<terms} (q+k)^{−σ} summed smallest-first, plus the integral tail
/// (M+q)^{1−σ}/(σ−1) and the half end term (M+q)^{−σ}/2.
pub fn brute_force_zeta(sigma: f64, q: ComplexValue, terms: usize) -> ComplexValue {
    let mut sum = ComplexValue::new(0.0, 0.0);
    for k in (0..terms).rev() {
        sum += (q + k as f64).powf(-sigma);
    }
    let w = q + terms as f64;
    sum + w.powf(1.0 - sigma) / (sigma - 1.0) + w.powf(-sigma) * 0.5
}

/// Σ_{|k|≤terms} (q+k)^{−σ} with principal powers throughout.
pub fn two_sided_sum(sigma: f64, q: ComplexValue, terms: i64) -> ComplexValue {
    let mut sum = ComplexValue::new(0.0, 0.0);
    for k in (1..=terms).rev() {
        sum += (q + k as f64).powf(-sigma) + (q - k as f64).powf(-sigma);
    }
    sum + q.powf(-sigma)
}

/// n-fold convolution of e^{−a·}χ_[0,1] with itself, computed by nested
/// Gauss–Legendre quadrature split at the integer knots.
pub struct ConvolutionOracle {
    a: f64,
    rule: GaussLegendre,
}

impl ConvolutionOracle {
    pub fn new(a: f64) -> Self {
        Self {
            a,
            rule: GaussLegendre::new(14.try_into().unwrap()),
        }
    }

    pub fn eval(&self, order: usize, x: f64) -> f64 {
        if order == 1 {
            // Box on (0, 1]: the same value convention at the jumps as (x − k)_+^0 = 0 at a knot.
            return if x > 0.0 && x <= 1.0 { (-self.a * x).exp() } else { 0.0 };
        }
        let lo = (x - 1.0).max(0.0);
        let hi = x.min((order - 1) as f64);
        if hi <= lo {
            return 0.0;
        }
        let mut total = 0.0;
        let mut left = lo;
        while left < hi {
            let right = (left.floor() + 1.0).min(hi);
            // Gauss nodes are interior, so the order-1 jump at t = 1 is never sampled.
            total += self
                .rule
                .integrate(left, right, |t| self.eval(order - 1, t) * (-self.a * (x - t)).exp());
            left = right;
        }
        total
    }
}

/// ∫₀^{len} f(x) e^{−iξx} dx by Gauss–Legendre on unit panels.
pub fn fourier_quadrature(f: impl Fn(f64) -> f64, len: usize, xi: f64) -> ComplexValue {
    let rule = GaussLegendre::new(40.try_into().unwrap());
    let mut acc = ComplexValue::new(0.0, 0.0);
    for j in 0..len {
        let a = j as f64;
        let re = rule.integrate(a, a + 1.0, |x| f(x) * (xi * x).cos());
        let im = rule.integrate(a, a + 1.0, |x| -f(x) * (xi * x).sin());
        acc += ComplexValue::new(re, im);
    }
    acc
}

pub fn delta(m: i64) -> f64 {
    if m == 0 {
        1.0
    } else {
        0.0
    }
}

pub fn two_pi() -> f64 {
    2.0 * PI
}
