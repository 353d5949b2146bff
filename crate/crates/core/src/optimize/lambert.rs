//! Principal branch of the Lambert W function on the real axis.

use std::f64::consts::E;

use crate::error::{Error, Result};

const BRANCH_POINT: f64 = -1.0 / E;
const MAX_ITER: usize = 64;

/// `W_0(z)`: the solution `w >= -1` of `w e^w = z`, for `z >= -1/e`.
///
/// Halley iteration from a branch-point series, Taylor or asymptotic seed.
/// On return `|w e^w - z| <= 1e-14 max(1, |z|)`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    if z.is_nan() || z < BRANCH_POINT {
        return Err(Error::Domain { z });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    // p = sqrt(2 (e z + 1)) measures the distance to the branch point
    let p = (2.0 * (E * z + 1.0)).max(0.0).sqrt();
    if p < 1e-3 {
        // series about z = -1/e; Halley stalls here because w + 1 -> 0
        return Ok(-1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p - 43.0 / 540.0 * p.powi(4));
    }
    let mut w = seed(z, p);
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        if !next.is_finite() {
            break;
        }
        let done = (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs());
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

fn seed(z: f64, p: f64) -> f64 {
    if z < -0.25 {
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z.abs() <= 0.5 {
        z * (1.0 - z * (1.0 - 1.5 * z))
    } else if z < 3.0 {
        let l = z.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}
