//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
//! Set EXPSPLINE_BLESS=1 to rewrite the golden figure CSVs.

mod common;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{brute_force_zeta, delta, ConvolutionOracle, SQRT6};
use expspline::admissibility::DEFAULT_SCAN_POINTS;
use expspline::{
    check_admissibility, emit_figure_data, figure_sweeps, find_non_admissible_sigma, fourier_coefficient_interpolant,
    fourier_transform, hurwitz_zeta, lhs_condition2, linspace, reconstruct, sigma_zero, BasisSpec, ComplexValue,
    CurveValues, ExpBSpline, FourierInversion, FundamentalSplineModel, QuadratureSpec, ReconstructionCase,
    SeriesTruncation, SplineParams, ZetaConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(a: f64, sigma: f64) -> SplineParams {
    SplineParams::new(a, sigma).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit: Duration, outcome: Outcome) -> Outcome {
    let detail = |d: String| format!("{d}; {:.3?} (limit {limit:?})", elapsed);
    match outcome {
        Ok(d) if elapsed <= limit => Ok(detail(d)),
        Ok(d) | Err(d) => Err(detail(d)),
    }
}

fn c1() -> Outcome {
    let t = Instant::now();
    let s0 = sigma_zero(2.0).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    within(
        el,
        Duration::from_millis(1),
        check((s0 - 1.99103).abs() <= 1e-5, format!("sigma0(2) = {s0:.8}")),
    )
}

fn c2() -> Outcome {
    let t = Instant::now();
    let z = hurwitz_zeta(SQRT6, ComplexValue::new(0.5, 1.0 / PI), &ZetaConfig::default()).map_err(|e| e.to_string())?;
    let lhs = lhs_condition2(2.0, SQRT6).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    let ok = (z.re - 1.19269).abs() <= 1e-4
        && (z.im + 3.76542).abs() <= 1e-4
        && (z.arg() + 1.26405).abs() <= 1e-4
        && (lhs - 1.01281).abs() <= 1e-4;
    within(
        el,
        Duration::from_millis(10),
        check(ok, format!("zeta* = {z:.6}, Arg = {:.6}, lhs = {lhs:.6}", z.arg())),
    )
}

fn c3() -> Outcome {
    let t = Instant::now();
    let s = find_non_admissible_sigma(2.0, (4.0, 5.5)).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    within(
        el,
        Duration::from_secs(1),
        check((s - 4.68126).abs() <= 1e-3, format!("sigma = {s:.8}")),
    )
}

fn c4() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let points: Vec<(f64, ComplexValue)> = (0..100)
        .map(|_| {
            (
                rng.gen_range(1.5..=8.0),
                // 1 − U[0, 1) lies in (0, 1].
                ComplexValue::new(1.0 - rng.gen::<f64>(), rng.gen_range(-2.0..=2.0)),
            )
        })
        .collect();
    let cfg = ZetaConfig::default();
    let worst = points
        .par_iter()
        .map(|&(sigma, q)| {
            let em = hurwitz_zeta(sigma, q, &cfg).map_err(|e| e.to_string())?;
            Ok((em - brute_force_zeta(sigma, q, 1_000_000)).norm())
        })
        .collect::<Result<Vec<f64>, String>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let el = t.elapsed();
    within(
        el,
        Duration::from_secs(30),
        check(
            worst <= 1e-8,
            format!("max |EM - brute force| = {worst:.3e} over 100 points"),
        ),
    )
}

fn c5() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for a in [1.0, 2.0] {
        let oracle = ConvolutionOracle::new(a);
        for n in 1..=3usize {
            let e = ExpBSpline::new(params(a, n as f64), SeriesTruncation::default()).map_err(|e| e.to_string())?;
            for i in 0..=1000 {
                let x = i as f64 * n as f64 / 1000.0;
                worst = worst.max((e.eval(x) - oracle.eval(n, x)).abs());
            }
        }
    }
    let el = t.elapsed();
    within(
        el,
        Duration::from_secs(20),
        check(worst <= 1e-6, format!("sup error {worst:.3e}")),
    )
}

fn c6() -> Outcome {
    let mut violations = 0usize;
    let mut checked = 0usize;
    for (a, sigma) in [
        (2.0, SQRT6),
        (2.0, 3.5),
        (1.0, 1.0),
        (0.5, 1.25),
        (4.0, 4.25),
        (3.0, 7.5),
    ] {
        let p = params(a, sigma);
        for i in 0..=6000 {
            let xi = 10f64.powf(i as f64 / 1000.0);
            let bound = 2f64.powf(sigma) / (a * a + xi * xi).powf(sigma / 2.0);
            for x in [xi, -xi] {
                checked += 1;
                if fourier_transform(p, x).norm() > bound {
                    violations += 1;
                }
            }
        }
    }
    check(
        violations == 0,
        format!("{violations} violations in {checked} evaluations"),
    )
}

const TEST_PAIRS: [(f64, f64); 4] = [(2.0, SQRT6), (2.0, 3.5), (2.0, 4.25), (4.0, SQRT6)];

fn c7() -> Outcome {
    let t = Instant::now();
    let mut series_worst: f64 = 0.0;
    let mut fourier_worst: f64 = 0.0;
    for (a, sigma) in TEST_PAIRS {
        let p = params(a, sigma);
        let model = FundamentalSplineModel::new(p).map_err(|e| e.to_string())?;
        let inv =
            FourierInversion::from_report(model.report(), QuadratureSpec::default()).map_err(|e| e.to_string())?;
        for m in -8i64..=8 {
            let x = m as f64;
            series_worst = series_worst.max((model.eval(x).map_err(|e| e.to_string())? - delta(m)).abs());
            fourier_worst = fourier_worst.max((inv.eval(x).map_err(|e| e.to_string())? - delta(m)).abs());
        }
    }
    let el = t.elapsed();
    within(
        el,
        Duration::from_secs(120),
        check(
            series_worst <= 1e-6 && fourier_worst <= 2e-3,
            format!("series {series_worst:.3e}, fourier {fourier_worst:.3e}"),
        ),
    )
}

fn c8() -> Outcome {
    let p = params(2.0, SQRT6);
    let model = FundamentalSplineModel::new(p).map_err(|e| e.to_string())?;
    let inv = FourierInversion::from_report(model.report(), QuadratureSpec::default()).map_err(|e| e.to_string())?;
    let grid = linspace(-5.0, 5.0, 201).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for x in grid {
        let f = inv.eval(x).map_err(|e| e.to_string())?;
        let s = model.eval(x).map_err(|e| e.to_string())?;
        worst = worst.max((f - s).abs());
    }
    check(worst <= 2e-3, format!("sup |L_fourier - L_series| = {worst:.3e}"))
}

fn c9() -> Outcome {
    let sigma = SQRT6;
    let model = FundamentalSplineModel::new(params(2.0, sigma)).map_err(|e| e.to_string())?;
    let n = sigma.floor();
    let ratio = |k: i64| model.coefficient(k).unwrap().abs() / (k.abs() as f64).powf(n - 1.0);
    let band_max = |lo: i64, hi: i64| (lo..=hi).chain(-hi..=-lo).map(ratio).fold(0.0, f64::max);
    let early = band_max(16, 32);
    let late = band_max(128, 256);
    let all = band_max(16, 256);
    let coeff_ok = all.is_finite() && late <= early;

    // L vanishes at the integers, so the constant is fitted on the unit shell 3 ≤ |x| ≤ 4.
    let weighted = |x: f64| model.eval(x).map(|v| v.abs() * x.abs().powf(n));
    let mut fitted: f64 = 0.0;
    for i in 1..100 {
        let x = 3.0 + i as f64 / 100.0;
        fitted = fitted
            .max(weighted(x).map_err(|e| e.to_string())?)
            .max(weighted(-x).map_err(|e| e.to_string())?);
    }
    let mut spline_worst: f64 = 0.0;
    for i in 0..=1200 {
        let x = 3.0 + i as f64 / 100.0;
        spline_worst = spline_worst
            .max(weighted(x).map_err(|e| e.to_string())?)
            .max(weighted(-x).map_err(|e| e.to_string())?);
    }
    check(
        coeff_ok && spline_worst <= fitted,
        format!(
            "|c_k|/|k|^{} max {all:.3e} ([16,32] {early:.3e}, [128,256] {late:.3e}); |L||x|^{} max {spline_worst:.3e} vs fitted {fitted:.3e}",
            n - 1.0,
            n
        ),
    )
}

fn c10() -> Outcome {
    let pairs = [
        (2.0, SQRT6),
        (2.0, 2.5),
        (2.0, 2.75),
        (2.0, 3.0),
        (2.0, 3.5),
        (2.0, 4.25),
        (3.0, SQRT6),
        (4.0, SQRT6),
    ];
    let mut worst = f64::INFINITY;
    for (a, sigma) in pairs {
        let r = check_admissibility(params(a, sigma), DEFAULT_SCAN_POINTS).map_err(|e| e.to_string())?;
        if !r.admissible {
            return Err(format!("({a}, {sigma}) not admissible"));
        }
        worst = worst.min(r.min_abs_z_scan / r.abs_z_at_pi);
    }
    check(worst > 0.01, format!("min over pairs of min|Z| / |Z(pi)| = {worst:.4}"))
}

fn c11() -> Outcome {
    let model = FundamentalSplineModel::new(params(2.0, SQRT6)).map_err(|e| e.to_string())?;
    let l = |t: f64| model.eval(t).unwrap();
    let f = |t: f64| 2.0 * l(t) - 3.0 * l(t - 1.0) + 0.5 * l(t + 2.0);
    let samples = (-30..=30).map(|k| (k, f(k as f64))).collect();
    let grid = linspace(-3.0, 5.0, 101).map_err(|e| e.to_string())?;
    let case = ReconstructionCase::new(&model, samples, grid.clone()).map_err(|e| e.to_string())?;
    let rec = reconstruct(&case).map_err(|e| e.to_string())?;
    let values = rec.curve.real_values().unwrap();
    let worst = grid
        .iter()
        .zip(values)
        .map(|(&t, v)| (v - f(t)).abs())
        .fold(0.0, f64::max);
    check(
        worst <= 1e-6,
        format!("max reconstruction error {worst:.3e} on 101 points"),
    )
}

fn c12() -> Outcome {
    let model = FundamentalSplineModel::new(params(2.0, SQRT6)).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (-6..=6).map(f64::from).collect();
    let g =
        fourier_coefficient_interpolant(&model, f64::cos, &BasisSpec::fourier(8), &grid).map_err(|e| e.to_string())?;
    let CurveValues::Complex(values) = g.curve.values() else {
        return Err("expected a complex curve".into());
    };
    let mut worst: f64 = 0.0;
    for (&m, &(re, im)) in grid.iter().zip(values) {
        let target = if m.abs() == 1.0 { PI } else { 0.0 };
        worst = worst.max((re - target).abs()).max(im.abs());
    }
    check(worst <= 1e-5, format!("max |g(m) - target| = {worst:.3e} on [-6, 6]"))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn render_sweeps() -> Result<Vec<(String, String)>, String> {
    figure_sweeps()
        .into_iter()
        .map(|s| {
            let curves = emit_figure_data(s.kind, &s.params, &s.grid).map_err(|e| e.to_string())?;
            Ok((
                format!("{}.csv", s.name),
                curves.iter().map(|c| c.to_csv()).collect::<String>(),
            ))
        })
        .collect()
}

/// The stored L curves must themselves satisfy criteria 7 and 8.
fn cross_check_golden_l(text: &str) -> Result<(), String> {
    let quad = QuadratureSpec::default();
    let mut sigma = f64::NAN;
    let mut inv: Option<FourierInversion> = None;
    for line in text.lines() {
        if let Some(meta) = line.strip_prefix("# ") {
            sigma = meta
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix("sigma="))
                .and_then(|v| v.parse().ok())
                .ok_or("golden header lacks sigma")?;
            inv = Some(FourierInversion::new(params(2.0, sigma), quad).map_err(|e| e.to_string())?);
            continue;
        }
        let Some((x, v)) = line.split_once(',') else { continue };
        let (Ok(x), Ok(v)) = (x.parse::<f64>(), v.parse::<f64>()) else {
            continue;
        };
        if x.fract() == 0.0 && (v - delta(x as i64)).abs() > 1e-6 {
            return Err(format!("golden L(sigma={sigma}) at {x} is {v}"));
        }
        // Every fifth point is enough to catch a wrong curve.
        if (x * 10.0).round() as i64 % 5 == 0 && (-5.0..=5.0).contains(&x) {
            let f = inv.as_ref().unwrap().eval(x).map_err(|e| e.to_string())?;
            if (f - v).abs() > 2e-3 {
                return Err(format!(
                    "golden L(sigma={sigma}) at {x} is {v}, Fourier route gives {f}"
                ));
            }
        }
    }
    Ok(())
}

fn c13() -> Outcome {
    let first = render_sweeps()?;
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?
        .install(render_sweeps)?;
    if first != single {
        return Err("output differs between thread counts".into());
    }
    let dir = golden_dir();
    if std::env::var("EXPSPLINE_BLESS").as_deref() == Ok("1") {
        std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
        for (name, text) in &first {
            std::fs::write(dir.join(name), text).map_err(|e| e.to_string())?;
        }
    }
    let mut bytes = 0;
    for (name, text) in &first {
        let stored = std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        if &stored != text {
            return Err(format!("{name} differs from golden"));
        }
        if name.starts_with("L_") {
            cross_check_golden_l(&stored)?;
        }
        bytes += text.len();
    }
    Ok(format!("{} golden files ({bytes} bytes) byte-identical", first.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("C1 sigma0(2)", c1),
        ("C2 zeta* and condition-two lhs", c2),
        ("C3 non-admissible sigma for a=2", c3),
        ("C4 zeta oracle equivalence", c4),
        ("C5 integer-order convolution", c5),
        ("C6 Fourier decay envelope", c6),
        ("C7 fundamental interpolation", c7),
        ("C8 route agreement", c8),
        ("C9 coefficient and spline decay", c9),
        ("C10 zero-free denominator scan", c10),
        ("C11 sampling round trip", c11),
        ("C12 Fourier-coefficient interpolant", c12),
        ("C13 figure regression", c13),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
