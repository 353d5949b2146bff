//! Two-qubit reduced density matrices.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Which single-mode qubit basis the 4x4 matrix is written in.
///
/// The tag is metadata only: the concurrence kernel treats every basis alike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QubitBasis {
    /// Fock levels {|0>, |1>} of each crystallite.
    Number,
    /// Even/odd superpositions of the coherent states |+mu>, |-mu>.
    Tilde(Complex64),
    /// The two dominant eigenvectors of each single-mode reduced density
    /// (oracle-side, no closed-form input).
    LocalSupport,
}

/// 4x4 density in the row-major order |00>, |01>, |10>, |11>, where the left
/// label belongs to the first crystallite of the pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity {
    entries: Matrix4<Complex64>,
    basis: QubitBasis,
}

impl TwoQubitDensity {
    /// Validates Hermiticity, unit trace and positivity at the default
    /// tolerances.
    pub fn new(entries: Matrix4<Complex64>, basis: QubitBasis) -> Result<Self> {
        let rho = TwoQubitDensity { entries, basis };
        rho.check(HERMITICITY_TOL, TRACE_TOL, POSITIVITY_TOL)?;
        Ok(rho)
    }

    /// Wraps a matrix without checking it.
    pub fn from_matrix_unchecked(entries: Matrix4<Complex64>, basis: QubitBasis) -> Self {
        TwoQubitDensity { entries, basis }
    }

    pub fn from_real(entries: [[f64; 4]; 4], basis: QubitBasis) -> Result<Self> {
        let m = Matrix4::from_fn(|i, j| Complex64::new(entries[i][j], 0.0));
        Self::new(m, basis)
    }

    /// Projector onto a pure two-qubit state (normalized here).
    pub fn pure(amplitudes: [Complex64; 4], basis: QubitBasis) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotADensityMatrix { reason: "zero state vector".into() });
        }
        let m = Matrix4::from_fn(|i, j| amplitudes[i] * amplitudes[j].conj() / (norm * norm));
        Self::new(m, basis)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    pub fn basis(&self) -> QubitBasis {
        self.basis
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[(i, i)].re).sum()
    }

    /// Largest entrywise modulus of the difference to `other`.
    pub fn max_abs_diff(&self, other: &TwoQubitDensity) -> f64 {
        (self.entries - other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.hermitian_part()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    pub(crate) fn hermitian_part(&self) -> Matrix4<Complex64> {
        (self.entries + self.entries.adjoint()).scale(0.5)
    }

    /// Checks the density invariants at the given tolerances.
    pub fn check(&self, herm_tol: f64, trace_tol: f64, psd_tol: f64) -> Result<()> {
        if self.entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotADensityMatrix { reason: "non-finite entry".into() });
        }
        let herm = (self.entries - self.entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > herm_tol {
            return Err(Error::NotADensityMatrix { reason: format!("Hermiticity violated by {herm:e}") });
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > trace_tol {
            return Err(Error::NotADensityMatrix { reason: format!("trace {tr} differs from 1") });
        }
        let min_ev = self.eigenvalues()[0];
        if min_ev < -psd_tol {
            return Err(Error::NotADensityMatrix { reason: format!("negative eigenvalue {min_ev:e}") });
        }
        Ok(())
    }
}
