use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::hamiltonian::SparseHermitian;
use super::state::PureState;
use crate::error::{Error, Result};

/// `exp(-i H t)` through a dense eigendecomposition of every
/// total-excitation block; exact in the truncated space.
#[derive(Debug, Clone)]
pub struct SectorPropagator {
    dimension: usize,
    blocks: Vec<SectorEigen>,
}

#[derive(Debug, Clone)]
struct SectorEigen {
    start: usize,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl SectorPropagator {
    pub fn new(hamiltonian: &SparseHermitian) -> Self {
        let offsets = hamiltonian.sector_offsets();
        let blocks = (0..hamiltonian.n_sectors())
            .map(|k| {
                let eig = SymmetricEigen::new(hamiltonian.sector_block(k));
                SectorEigen { start: offsets[k], energies: eig.eigenvalues, vectors: eig.eigenvectors }
            })
            .collect();
        SectorPropagator { dimension: hamiltonian.dimension(), blocks }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `psi(t) = exp(-i H t) psi0`, `t` in raw time units.
    pub fn evolve(&self, psi0: &PureState, t: f64) -> Result<PureState> {
        if psi0.dimension() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: psi0.dimension() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dimension];
        let input = psi0.amplitudes();
        for block in &self.blocks {
            let len = block.energies.len();
            let range = block.start..block.start + len;
            if input[range.clone()].iter().all(|a| *a == Complex64::new(0.0, 0.0)) {
                continue;
            }
            let v = &block.vectors;
            // coefficients in the eigenbasis, rotated by the phases
            let mut coeff = vec![Complex64::new(0.0, 0.0); len];
            for (e, c) in coeff.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (r, a) in input[range.clone()].iter().enumerate() {
                    acc += a * v[(r, e)];
                }
                *c = acc * Complex64::from_polar(1.0, -block.energies[e] * t);
            }
            for (r, o) in out[range].iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (e, c) in coeff.iter().enumerate() {
                    acc += c * v[(r, e)];
                }
                *o = acc;
            }
        }
        Ok(PureState::new(out))
    }
}

/// One-shot `exp(-i H t) psi0`. Build a [`SectorPropagator`] to reuse the
/// eigendecompositions across many times.
pub fn evolve_unitary(hamiltonian: &SparseHermitian, psi0: &PureState, t: f64) -> Result<PureState> {
    SectorPropagator::new(hamiltonian).evolve(psi0, t)
}
