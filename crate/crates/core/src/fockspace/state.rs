use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::basis::FockBasis;
use crate::error::{invalid, Error, Result};
use crate::model::{InitialField, ParityKind};

/// Largest admissible discarded probability when truncating an initial
/// cavity state.
pub const TRUNCATION_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        PureState { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Probability in each total-excitation sector.
    pub fn sector_weights(&self, basis: &FockBasis) -> Vec<f64> {
        (0..=basis.max_total())
            .map(|k| basis.sector(k).map(|i| self.amplitudes[i].norm_sqr()).sum())
            .collect()
    }
}

/// Density matrix over a [`FockBasis`], stored dense and row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    dimension: usize,
    entries: Vec<Complex64>,
}

impl MixedState {
    pub fn from_pure(psi: &PureState) -> Self {
        let dimension = psi.dimension();
        let a = psi.amplitudes();
        let mut entries = Vec::with_capacity(dimension * dimension);
        for r in 0..dimension {
            for c in 0..dimension {
                entries.push(a[r] * a[c].conj());
            }
        }
        MixedState { dimension, entries }
    }

    pub fn from_row_major(dimension: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dimension * dimension {
            return Err(Error::DimensionMismatch { expected: dimension * dimension, found: entries.len() });
        }
        Ok(MixedState { dimension, entries })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dimension + c]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension).map(|i| self.get(i, i).re).sum()
    }

    pub fn max_abs_diff(&self, other: &MixedState) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Hermiticity within 1e-10, unit trace within 1e-8 and eigenvalues
    /// above -1e-8.
    pub fn check(&self) -> Result<()> {
        let n = self.dimension;
        let mut herm: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                herm = herm.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        if herm > 1e-10 {
            return Err(Error::NotADensityMatrix { reason: format!("Hermiticity violated by {herm:e}") });
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > 1e-8 {
            return Err(Error::NotADensityMatrix { reason: format!("trace {tr}") });
        }
        let m = DMatrix::from_fn(n, n, |r, c| 0.5 * (self.get(r, c) + self.get(c, r).conj()));
        let min = SymmetricEigen::new(m).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -1e-8 {
            return Err(Error::NotADensityMatrix { reason: format!("negative eigenvalue {min:e}") });
        }
        Ok(())
    }
}

/// Photon-number amplitudes `<n|psi>` of the initial cavity state for
/// `n = 0..=max_n`, not normalized to the truncated space.
fn cavity_amplitudes(kind: InitialField, alpha: Complex64, max_n: usize) -> Vec<Complex64> {
    let x = alpha.norm_sqr();
    let mut coherent = Vec::with_capacity(max_n + 1);
    let mut term = Complex64::new((-x / 2.0).exp(), 0.0);
    for n in 0..=max_n {
        if n > 0 {
            term = term * alpha / (n as f64).sqrt();
        }
        coherent.push(term);
    }
    match kind {
        InitialField::SinglePhoton => {
            (0..=max_n).map(|n| Complex64::new(if n == 1 { 1.0 } else { 0.0 }, 0.0)).collect()
        }
        InitialField::Coherent => coherent,
        InitialField::Cat(parity) => {
            let keep_odd = parity == ParityKind::Odd;
            coherent
                .into_iter()
                .enumerate()
                .map(|(n, c)| if (n % 2 == 1) == keep_odd { c } else { Complex64::new(0.0, 0.0) })
                .collect()
        }
    }
}

/// Probability of photon numbers above `max_n` in the (normalized) initial
/// cavity state, summed directly over the tail.
pub fn truncation_tail(kind: InitialField, intensity: f64, max_n: usize) -> f64 {
    let x = intensity;
    let weight = |n: usize| -> bool {
        match kind {
            InitialField::SinglePhoton => n == 1,
            InitialField::Coherent => true,
            InitialField::Cat(ParityKind::Even) => n.is_multiple_of(2),
            InitialField::Cat(ParityKind::Odd) => n % 2 == 1,
        }
    };
    if kind == InitialField::SinglePhoton {
        return if max_n >= 1 { 0.0 } else { 1.0 };
    }
    // unnormalized Poisson weights x^n/n! relative to the cat norm
    let norm = match kind {
        InitialField::Coherent => x.exp(),
        InitialField::Cat(ParityKind::Even) => x.cosh(),
        InitialField::Cat(ParityKind::Odd) => x.sinh(),
        InitialField::SinglePhoton => unreachable!(),
    };
    if norm == 0.0 {
        // odd cat at zero intensity is the single photon
        return if max_n >= 1 { 0.0 } else { 1.0 };
    }
    // log-domain to survive large n
    let mut log_term = 0.0f64;
    let mut tail = 0.0;
    let ln_x = x.ln();
    let ln_norm = norm.ln();
    for n in 0..max_n + 4000 {
        if n > 0 {
            log_term += ln_x - (n as f64).ln();
        }
        if n > max_n && weight(n) {
            let t = (log_term - ln_norm).exp();
            tail += t;
            if n > max_n + 2 && (n as f64) > x && t < 1e-30 * tail.max(1e-300) {
                break;
            }
        }
    }
    tail
}

/// Smallest cutoff whose discarded tail is below [`TRUNCATION_TAIL`].
pub fn required_cutoff(kind: InitialField, intensity: f64) -> usize {
    let mut m = 1;
    while truncation_tail(kind, intensity, m) >= TRUNCATION_TAIL {
        m += 1;
    }
    m
}

/// Cavity in `kind`, all crystallites in vacuum. Normalized within the
/// truncated space.
pub fn prepare_initial(kind: InitialField, alpha: Complex64, basis: &FockBasis) -> Result<PureState> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(invalid("alpha", "must be finite"));
    }
    let max_n = basis.max_total();
    let tail = truncation_tail(kind, alpha.norm_sqr(), max_n);
    if tail >= TRUNCATION_TAIL {
        return Err(Error::TruncationTooSmall { tail });
    }
    let mut cavity = cavity_amplitudes(kind, alpha, max_n);
    if let InitialField::Cat(ParityKind::Odd) = kind {
        if alpha.norm_sqr() == 0.0 {
            cavity = cavity_amplitudes(InitialField::SinglePhoton, alpha, max_n);
        }
    }
    let norm = cavity.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(invalid("alpha", "initial cavity state has zero norm in the truncated space"));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.dimension()];
    let mut occ = vec![0u16; basis.n_modes()];
    for (n, c) in cavity.into_iter().enumerate() {
        occ[0] = n as u16;
        let i = basis.index_of(&occ).expect("pure cavity states are in the basis");
        amplitudes[i] = c / norm;
    }
    Ok(PureState::new(amplitudes))
}
