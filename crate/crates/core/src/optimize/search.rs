//! Scalar bracketing searches.

use crate::error::{Error, Result};

/// Root of `f` on `[lo, hi]` by bisection down to `xtol`, then a secant
/// polish that is only accepted when it stays inside the final bracket and
/// lowers `|f|`. Values of `+-inf` are allowed and count by their sign.
pub fn bisect_secant(f: impl Fn(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> Result<(f64, usize)> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NoRoot { lo, hi });
    }
    let mut iterations = 0;
    while b - a > xtol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        iterations += 1;
        if fm == 0.0 {
            return Ok((mid, iterations));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    let (mut x_prev, mut f_prev) = if fa.is_finite() { (a, fa) } else { (b, f(b)) };
    for _ in 0..8 {
        if !(fx.is_finite() && f_prev.is_finite()) || fx == f_prev {
            break;
        }
        let next = x - fx * (x - x_prev) / (fx - f_prev);
        iterations += 1;
        let fnext = f(next);
        if !(next >= a && next <= b) || !(fnext.abs() < fx.abs()) {
            break;
        }
        (x_prev, f_prev) = (x, fx);
        (x, fx) = (next, fnext);
    }
    Ok((x, iterations))
}

/// Result of a golden-section maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenMax {
    pub x: f64,
    pub value: f64,
    /// Width of the final bracket.
    pub width: f64,
    pub iterations: usize,
}

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower
/// than `xtol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> GoldenMax {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while b - a > xtol {
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // compare the interior best with the end points so monotone objectives
    // report the boundary; ties go to the end point since a flat tail can
    // round two probes to the same value
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx >= best.1 {
            best = (x, fx);
        }
    }
    GoldenMax { x: best.0, value: best.1, width: b - a, iterations }
}
