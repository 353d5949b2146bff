use std::collections::HashMap;

use crate::error::{invalid, Error, Result};

pub const DEFAULT_CAPACITY: usize = 200_000;

/// Occupation-number basis of `n_modes` bosonic modes with total excitation
/// at most `max_total`. Mode 0 is the cavity, modes 1..=N the crystallites.
///
/// States are grouped by total excitation; each sector is contiguous and
/// lexicographically ordered inside.
#[derive(Debug, Clone)]
pub struct FockBasis {
    n_modes: usize,
    max_total: usize,
    states: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
    sector_offsets: Vec<usize>,
}

/// `C(max_total + n_modes, n_modes)`, saturating.
pub fn basis_dimension(n_modes: usize, max_total: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=n_modes as u128 {
        acc = acc * (max_total as u128 + i) / i;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

impl FockBasis {
    pub fn new(n_modes: usize, max_total: usize) -> Result<Self> {
        Self::with_capacity(n_modes, max_total, DEFAULT_CAPACITY)
    }

    pub fn with_capacity(n_modes: usize, max_total: usize, capacity: usize) -> Result<Self> {
        if n_modes < 2 {
            return Err(invalid("n_modes", format!("need at least 2 modes, got {n_modes}")));
        }
        if max_total < 1 {
            return Err(invalid("max_total", "cutoff must be at least 1"));
        }
        if max_total > u16::MAX as usize {
            return Err(invalid("max_total", format!("cutoff {max_total} too large")));
        }
        let dim = basis_dimension(n_modes, max_total);
        if dim > capacity {
            return Err(Error::CapacityExceeded { what: "Fock basis", required: dim, limit: capacity });
        }
        let mut states = Vec::with_capacity(dim);
        let mut sector_offsets = Vec::with_capacity(max_total + 2);
        for total in 0..=max_total {
            sector_offsets.push(states.len());
            let mut occ = vec![0u16; n_modes];
            fill_sector(&mut occ, 0, total, &mut states);
        }
        sector_offsets.push(states.len());
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(FockBasis { n_modes, max_total, states, index, sector_offsets })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &[u16] {
        &self.states[i]
    }

    pub fn states(&self) -> &[Vec<u16>] {
        &self.states
    }

    pub fn index_of(&self, occupations: &[u16]) -> Option<usize> {
        self.index.get(occupations).copied()
    }

    /// Index range of the states with total excitation `total`.
    pub fn sector(&self, total: usize) -> std::ops::Range<usize> {
        self.sector_offsets[total]..self.sector_offsets[total + 1]
    }

    pub fn sector_offsets(&self) -> &[usize] {
        &self.sector_offsets
    }

    /// Total excitation of state `i`.
    pub fn total(&self, i: usize) -> usize {
        self.states[i].iter().map(|&n| n as usize).sum()
    }

    /// Index of state `i` with one more quantum in `mode`, if retained.
    pub fn raised(&self, i: usize, mode: usize) -> Option<usize> {
        let mut occ = self.states[i].clone();
        occ[mode] += 1;
        self.index_of(&occ)
    }
}

/// Lexicographic (descending in earlier modes) enumeration of occupation
/// tuples with a fixed total.
fn fill_sector(occ: &mut [u16], mode: usize, remaining: usize, out: &mut Vec<Vec<u16>>) {
    if mode == occ.len() - 1 {
        occ[mode] = remaining as u16;
        out.push(occ.to_vec());
        return;
    }
    for k in (0..=remaining).rev() {
        occ[mode] = k as u16;
        fill_sector(occ, mode + 1, remaining - k, out);
    }
    occ[mode] = 0;
}
