//! Wootters concurrence of two-qubit densities.
//!
//! The `lambda_i` of the definition are the square roots of the eigenvalues
//! of `rho (sy x sy) rho* (sy x sy)`. [`concurrence`] obtains them as the
//! singular values of `tau = W^T (sy x sy) W` for a factor `rho = W W^dag`,
//! which never takes the square root of a rounding-level eigenvalue.
//! [`concurrence_from_spin_flip_product`] is the direct eigenvalue route.

use nalgebra::{DMatrix, Matrix4, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::density::TwoQubitDensity;
use crate::error::{Error, Result};

/// Eigenvalues of rho at or below this are treated as exact zeros when
/// factoring rho.
const RANK_TOL: f64 = 1e-14;
const NEGATIVE_CLAMP: f64 = 1e-10;
const IMAGINARY_TOL: f64 = 1e-9;

/// `sy x sy` in the basis |00>, |01>, |10>, |11>; it is real.
fn sigma_yy() -> Matrix4<Complex64> {
    let mut s = Matrix4::zeros();
    s[(0, 3)] = Complex64::new(-1.0, 0.0);
    s[(3, 0)] = Complex64::new(-1.0, 0.0);
    s[(1, 2)] = Complex64::new(1.0, 0.0);
    s[(2, 1)] = Complex64::new(1.0, 0.0);
    s
}

/// `(sy x sy) rho* (sy x sy)`, conjugation taken in the standard basis.
pub fn spin_flip(rho: &TwoQubitDensity) -> Matrix4<Complex64> {
    let s = sigma_yy();
    s * rho.matrix().map(|z| z.conj()) * s
}

/// `max(lambda_1 - lambda_2 - lambda_3 - lambda_4, 0)`.
pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    rho.check(
        crate::density::HERMITICITY_TOL,
        crate::density::TRACE_TOL,
        crate::density::POSITIVITY_TOL,
    )?;
    let eig = SymmetricEigen::new(rho.hermitian_part());
    let kept: Vec<usize> = (0..4).filter(|&i| eig.eigenvalues[i] > RANK_TOL).collect();
    if kept.is_empty() {
        return Err(Error::NotADensityMatrix { reason: "no positive eigenvalue".into() });
    }
    let w = DMatrix::from_fn(4, kept.len(), |r, c| {
        let i = kept[c];
        eig.eigenvectors[(r, i)] * eig.eigenvalues[i].sqrt()
    });
    let s = DMatrix::from_fn(4, 4, |r, c| sigma_yy()[(r, c)]);
    let tau = w.transpose() * s * &w;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    Ok(wootters_combination(&mut lambdas))
}

/// Concurrence through the eigenvalues of `rho * spin_flip(rho)`.
///
/// Tiny negative real parts (down to -1e-10) are clamped to zero; imaginary
/// parts above 1e-9 are rejected. Loses accuracy near rank-deficient rho,
/// where a rounding-level eigenvalue `e` contributes `sqrt(e)`.
pub fn concurrence_from_spin_flip_product(rho: &TwoQubitDensity) -> Result<f64> {
    rho.check(
        crate::density::HERMITICITY_TOL,
        crate::density::TRACE_TOL,
        crate::density::POSITIVITY_TOL,
    )?;
    let m = rho.matrix() * spin_flip(rho);
    let (_, t) = Schur::new(m).unpack();
    let mut lambdas = Vec::with_capacity(4);
    for i in 0..4 {
        let ev = t[(i, i)];
        if ev.im.abs() > IMAGINARY_TOL {
            return Err(Error::NotADensityMatrix {
                reason: format!("spin-flip product eigenvalue {ev} is not real"),
            });
        }
        if ev.re < -NEGATIVE_CLAMP {
            return Err(Error::NotADensityMatrix {
                reason: format!("spin-flip product eigenvalue {} is negative", ev.re),
            });
        }
        lambdas.push(ev.re.max(0.0).sqrt());
    }
    Ok(wootters_combination(&mut lambdas))
}

/// Concurrence of the pure state `a|00> + b|01> + c|10> + d|11>`:
/// `2|ad - bc|` (the vector is normalized first).
pub fn pure_state_concurrence(amplitudes: [Complex64; 4]) -> f64 {
    let [a, b, c, d] = amplitudes;
    let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    2.0 * (a * d - b * c).norm() / norm_sq
}

fn wootters_combination(lambdas: &mut [f64]) -> f64 {
    // stable sort, descending
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let (first, rest) = lambdas.split_first().expect("at least one lambda");
    (first - rest.iter().sum::<f64>()).max(0.0)
}
