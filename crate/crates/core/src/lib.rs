//! Fundamental cardinal exponential B-splines of real order.
//!
//! The crate evaluates fractional exponential B-splines E_a^σ, decides
//! whether an order σ admits a fundamental interpolating spline L_a^σ,
//! constructs L_a^σ by Fourier inversion and by a coefficient series, and
//! reconstructs functions from their integer samples.

pub mod admissibility;
pub mod bspline;
pub mod complex;
pub mod curve;
pub mod error;
pub mod fundamental;
pub mod sampling;

pub use admissibility::{
    check_admissibility, denominator_z, find_non_admissible_sigma, lhs_condition2, sigma_zero, AdmissibilityReport,
};
pub use bspline::{
    eval_time_domain, fourier_transform, generalized_binomial, ExpBSpline, SeriesTruncation, SplineParams,
};
pub use complex::{hurwitz_zeta, principal_power, ComplexValue, ZetaConfig};
pub use curve::{linspace, CurveMeta, CurveSample, CurveValues};
pub use error::{Error, Result};
pub use fundamental::{
    compute_coefficients, emit_figure_data, eval_l_fourier, eval_l_series, figure_sweeps, integrand_h, FigureKind,
    FigureSweep, FourierInversion, FundamentalSplineModel, QuadratureSpec,
};
pub use sampling::{
    fourier_coefficient_interpolant, kramer_conditions_check, reconstruct, BasisKind, BasisSpec, CaseFile,
    FourierInterpolant, KramerCheckSpec, KramerReport, Reconstruction, ReconstructionCase,
};
