mod common;

use std::f64::consts::PI;

use common::{brute_force_zeta, SQRT6};
use expspline::{hurwitz_zeta, principal_power, ComplexValue, ZetaConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

#[test]
fn power_matches_high_precision_value() {
    // exp(−√6 · Log(1/2 + i/π)) at 50 digits, inputs rounded to f64 first.
    let v = principal_power(c(0.5, 1.0 / PI), -SQRT6).unwrap();
    assert!((v.re - 0.652_269_289_713_151_9).abs() < 1e-14, "{v}");
    assert!((v.im + 3.541_206_459_580_153).abs() < 1e-14, "{v}");
}

#[test]
fn example_zeta_value() {
    let z = hurwitz_zeta(SQRT6, c(0.5, 1.0 / PI), &ZetaConfig::default()).unwrap();
    assert!((z.re - 1.19269).abs() < 1e-4);
    assert!((z.im + 3.76542).abs() < 1e-4);
    // 50-digit reference.
    assert!((z.re - 1.192_689_128_913_790_4).abs() < 1e-12);
    assert!((z.im + 3.765_418_879_070_645).abs() < 1e-12);
}

#[test]
fn cubic_zeta_against_brute_force() {
    let q = c(0.25, 0.5);
    let z = hurwitz_zeta(3.0, q, &ZetaConfig::default()).unwrap();
    let oracle = brute_force_zeta(3.0, q, 1_000_000);
    assert!((z - oracle).norm() < 1e-9, "{z} vs {oracle}");
    assert!((z.re + 5.338_282_548_137_402).abs() < 1e-12);
    assert!((z.im - 0.580_263_372_796_827_6).abs() < 1e-12);
}

#[test]
fn random_points_against_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = ZetaConfig::default();
    for _ in 0..12 {
        let sigma = rng.gen_range(1.5..8.0);
        let q = c(rng.gen_range(0.2..=1.0), rng.gen_range(-2.0..=2.0));
        let em = hurwitz_zeta(sigma, q, &cfg).unwrap();
        let bf = brute_force_zeta(sigma, q, 200_000);
        assert!((em - bf).norm() < 1e-8, "sigma={sigma} q={q}: {em} vs {bf}");
    }
}

#[test]
fn imaginary_axis_start_is_accepted() {
    let cfg = ZetaConfig::default();
    let q = c(0.0, 0.4);
    let direct = hurwitz_zeta(2.5, q, &cfg).unwrap();
    let shifted = hurwitz_zeta(2.5, q + 1.0, &cfg).unwrap() + principal_power(q, -2.5).unwrap();
    assert!((direct - shifted).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_symmetry(sigma in 1.2f64..10.0, re in 0.01f64..1.0, im in -3.0f64..3.0) {
        let cfg = ZetaConfig::default();
        let q = c(re, im);
        let a = hurwitz_zeta(sigma, q.conj(), &cfg).unwrap();
        let b = hurwitz_zeta(sigma, q, &cfg).unwrap().conj();
        prop_assert!((a - b).norm() <= 2.0 * cfg.target_abs_tol * (1.0 + b.norm()));
    }

    #[test]
    fn shift_recurrence(sigma in 1.2f64..10.0, re in 0.05f64..1.0, im in -3.0f64..3.0) {
        let cfg = ZetaConfig::default();
        let q = c(re, im);
        let lhs = hurwitz_zeta(sigma, q, &cfg).unwrap() - hurwitz_zeta(sigma, q + 1.0, &cfg).unwrap();
        let rhs = principal_power(q, -sigma).unwrap();
        prop_assert!((lhs - rhs).norm() <= 2.0 * cfg.target_abs_tol * (1.0 + rhs.norm()));
    }

    #[test]
    fn power_exponents_add(re in 0.01f64..5.0, im in -5.0f64..5.0, s1 in -4.0f64..4.0, s2 in -4.0f64..4.0) {
        let b = c(re, im);
        let joint = principal_power(b, s1 + s2).unwrap();
        let split = principal_power(b, s1).unwrap() * principal_power(b, s2).unwrap();
        prop_assert!((joint - split).norm() <= 1e-12 * joint.norm());
    }
}
