use nalgebra::DMatrix;

use super::basis::FockBasis;
use crate::error::{Error, Result};

/// Real symmetric Hamiltonian `sum_j g_j (a^dag b_j + a b_j^dag)` in the
/// frame rotating at the common frequency, stored as its strictly upper
/// triangle (the diagonal is zero). It is block diagonal across
/// total-excitation sectors.
#[derive(Debug, Clone)]
pub struct SparseHermitian {
    dimension: usize,
    /// `(row, col, value)` with `row < col`.
    upper: Vec<(usize, usize, f64)>,
    sector_offsets: Vec<usize>,
}

impl SparseHermitian {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn upper_entries(&self) -> &[(usize, usize, f64)] {
        &self.upper
    }

    pub fn sector_offsets(&self) -> &[usize] {
        &self.sector_offsets
    }

    pub fn n_sectors(&self) -> usize {
        self.sector_offsets.len() - 1
    }

    /// Dense block of sector `total`.
    pub fn sector_block(&self, total: usize) -> DMatrix<f64> {
        let start = self.sector_offsets[total];
        let len = self.sector_offsets[total + 1] - start;
        let mut m = DMatrix::zeros(len, len);
        for &(r, c, v) in &self.upper {
            if r >= start && r < start + len {
                m[(r - start, c - start)] = v;
                m[(c - start, r - start)] = v;
            }
        }
        m
    }

    /// Full rows as `(col, value)` lists, both triangles.
    pub fn rows(&self) -> Vec<Vec<(usize, f64)>> {
        let mut rows = vec![Vec::new(); self.dimension];
        for &(r, c, v) in &self.upper {
            rows[r].push((c, v));
            rows[c].push((r, v));
        }
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
        }
        rows
    }
}

/// Builds `H` for couplings `g_1..g_N` on a basis with `N + 1` modes.
pub fn build_hamiltonian(couplings: &[f64], basis: &FockBasis) -> Result<SparseHermitian> {
    if basis.n_modes() != couplings.len() + 1 {
        return Err(Error::DimensionMismatch { expected: couplings.len() + 1, found: basis.n_modes() });
    }
    let mut upper = Vec::new();
    for i in 0..basis.dimension() {
        let occ = basis.state(i);
        for (j, &g) in couplings.iter().enumerate() {
            let mode = j + 1;
            if occ[mode] == 0 {
                continue;
            }
            // a^dag b_j moves one quantum from crystallite j into the cavity
            let mut target = occ.to_vec();
            target[mode] -= 1;
            target[0] += 1;
            let k = basis.index_of(&target).expect("excitation-conserving move stays in the basis");
            let value = g * (occ[mode] as f64 * (occ[0] as f64 + 1.0)).sqrt();
            upper.push((i.min(k), i.max(k), value));
        }
    }
    upper.sort_by_key(|a| (a.0, a.1));
    Ok(SparseHermitian { dimension: basis.dimension(), upper, sector_offsets: basis.sector_offsets().to_vec() })
}
