//! Optimal cavity intensity for pairwise cat-state entanglement.
//!
//! The objective is the peak concurrence `C_pm` at `Gt = pi/2`, where the
//! transferred fraction `sin^2(Gt)/N` is largest for every intensity. For an
//! even cat the optimum also solves the closed stationarity condition
//!
//! ```text
//! N = 4x cosh x / (x e^x + cosh x W0(-x sech x e^{-x tanh x})),   x = |alpha|^2
//! ```

mod lambert;
mod search;

pub use lambert::lambert_w0;
pub use search::{bisect_secant, golden_section_max, GoldenMax};

use std::f64::consts::FRAC_PI_2;

use crate::analytic::coherent_concurrence;
use crate::error::{invalid, Result};
use crate::model::{ParityKind, SystemParams};

pub const THRESHOLD_BRACKET: (f64, f64) = (1e-6, 10.0);
pub const INTENSITY_BRACKET: (f64, f64) = (1e-4, 10.0);
pub const INTENSITY_TOL: f64 = 1e-8;
const ROOT_XTOL: f64 = 1e-14;
const PLATEAU_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RootSolve,
    GoldenSection,
}

/// Where the reported optimum sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimumKind {
    Interior,
    LowerBoundary,
    UpperBoundary,
    /// The objective is constant on the whole bracket.
    Plateau,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumReport {
    pub intensity: f64,
    pub concurrence: f64,
    pub method: Method,
    pub kind: OptimumKind,
    /// `|rhs - N|` for a root solve, final bracket width for golden section.
    pub residual: f64,
    pub iterations: usize,
}

/// Peak concurrence over time at fixed intensity.
pub fn peak_concurrence(n_crystallites: usize, intensity: f64, parity: ParityKind) -> f64 {
    let p = SystemParams::new(n_crystallites, 1.0).with_intensity(intensity).with_parity(parity);
    coherent_concurrence(&p, FRAC_PI_2)
}

/// Argument of the product log in the threshold condition.
pub fn threshold_lambert_argument(x: f64) -> f64 {
    -x / x.cosh() * (-x * x.tanh()).exp()
}

/// Right-hand side of the threshold condition.
///
/// `w = -x e^x sech x` always solves `w e^w = z`; for `x e^x sech x <= 1`
/// (x below about 0.639) it is the principal-branch value itself, the
/// denominator vanishes identically and the right-hand side is `+inf`.
pub fn threshold_rhs(x: f64) -> Result<f64> {
    let cosh = x.cosh();
    let trivial = -x * x.exp() / cosh;
    if trivial >= -1.0 {
        return Ok(f64::INFINITY);
    }
    let w = lambert_w0(threshold_lambert_argument(x))?;
    let denom = x * x.exp() + cosh * w;
    Ok(if denom > 0.0 { 4.0 * x * cosh / denom } else { f64::INFINITY })
}

/// Solves the threshold condition for `|alpha|^2` at given N >= 3.
pub fn threshold_intensity(n_crystallites: usize) -> Result<OptimumReport> {
    if n_crystallites < 3 {
        return Err(invalid(
            "n_crystallites",
            format!("the threshold condition needs N >= 3, got {n_crystallites}"),
        ));
    }
    let n = n_crystallites as f64;
    let (lo, hi) = THRESHOLD_BRACKET;
    // errors cannot occur: every argument is >= -1/e by construction
    let f = |x: f64| threshold_rhs(x).map(|r| r - n).unwrap_or(f64::NAN);
    let (x, iterations) = bisect_secant(f, lo, hi, ROOT_XTOL)?;
    let z = threshold_lambert_argument(x);
    debug_assert!(z >= -1.0 / std::f64::consts::E);
    let residual = (threshold_rhs(x)? - n).abs();
    Ok(OptimumReport {
        intensity: x,
        concurrence: peak_concurrence(n_crystallites, x, ParityKind::Even),
        method: Method::RootSolve,
        kind: OptimumKind::Interior,
        residual,
        iterations,
    })
}

/// Maximizes the peak concurrence over `|alpha|^2` in [1e-4, 10] by golden
/// section.
pub fn optimal_intensity(n_crystallites: usize, parity: ParityKind) -> Result<OptimumReport> {
    if n_crystallites < 2 {
        return Err(invalid(
            "n_crystallites",
            format!("pairwise entanglement needs N >= 2, got {n_crystallites}"),
        ));
    }
    let (lo, hi) = INTENSITY_BRACKET;
    let objective = |x: f64| peak_concurrence(n_crystallites, x, parity);
    let best = golden_section_max(objective, lo, hi, INTENSITY_TOL);
    let samples: Vec<f64> = (0..=200).map(|k| objective(lo + (hi - lo) * k as f64 / 200.0)).collect();
    let spread = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let kind = if spread <= PLATEAU_TOL {
        OptimumKind::Plateau
    } else if best.x - lo <= 2.0 * INTENSITY_TOL {
        OptimumKind::LowerBoundary
    } else if hi - best.x <= 2.0 * INTENSITY_TOL {
        OptimumKind::UpperBoundary
    } else {
        OptimumKind::Interior
    };
    Ok(OptimumReport {
        intensity: best.x,
        concurrence: best.value,
        method: Method::GoldenSection,
        kind,
        residual: best.width,
        iterations: best.iterations,
    })
}
