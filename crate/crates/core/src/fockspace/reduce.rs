use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use super::basis::FockBasis;
use super::state::{MixedState, PureState};
use crate::analytic::DEGENERACY_THRESHOLD;
use crate::density::{QubitBasis, TwoQubitDensity};
use crate::error::{invalid, Error, Result};
use crate::model::PairIndex;

/// Largest population allowed outside {|0>, |1>}^2 for a number-basis
/// projection.
pub const LEAKAGE_TOL: f64 = 1e-8;

/// A state on a [`FockBasis`] that can be reduced to two modes.
pub trait FockState {
    fn dimension(&self) -> usize;

    /// Density of modes `(mode_a, mode_b)` on the local space
    /// `(M + 1) x (M + 1)`, index `i_a (M + 1) + i_b`.
    fn two_mode_density(&self, basis: &FockBasis, mode_a: usize, mode_b: usize) -> DMatrix<Complex64>;

    /// `<n_mode>`.
    fn mean_occupation(&self, basis: &FockBasis, mode: usize) -> f64;
}

/// Groups basis states by the occupations of every mode other than the two
/// kept ones; each entry is `(local pair index, basis index)`.
fn group_by_rest(basis: &FockBasis, mode_a: usize, mode_b: usize) -> Vec<Vec<(usize, usize)>> {
    let local = basis.max_total() + 1;
    let mut groups: HashMap<Vec<u16>, Vec<(usize, usize)>> = HashMap::new();
    for (i, occ) in basis.states().iter().enumerate() {
        let rest: Vec<u16> =
            occ.iter().enumerate().filter(|&(k, _)| k != mode_a && k != mode_b).map(|(_, &v)| v).collect();
        let pair = occ[mode_a] as usize * local + occ[mode_b] as usize;
        groups.entry(rest).or_default().push((pair, i));
    }
    let mut out: Vec<_> = groups.into_values().collect();
    // deterministic summation order
    out.sort_by_key(|g| g[0].1);
    out
}

fn check_modes(basis: &FockBasis, dimension: usize, mode_a: usize, mode_b: usize) {
    assert_eq!(dimension, basis.dimension(), "state does not live on this basis");
    assert!(mode_a != mode_b && mode_a < basis.n_modes() && mode_b < basis.n_modes());
}

impl FockState for PureState {
    fn dimension(&self) -> usize {
        PureState::dimension(self)
    }

    fn two_mode_density(&self, basis: &FockBasis, mode_a: usize, mode_b: usize) -> DMatrix<Complex64> {
        check_modes(basis, self.dimension(), mode_a, mode_b);
        let local = basis.max_total() + 1;
        let psi = self.amplitudes();
        let mut rho = DMatrix::zeros(local * local, local * local);
        for group in group_by_rest(basis, mode_a, mode_b) {
            for &(p, i) in &group {
                for &(q, j) in &group {
                    rho[(p, q)] += psi[i] * psi[j].conj();
                }
            }
        }
        rho
    }

    fn mean_occupation(&self, basis: &FockBasis, mode: usize) -> f64 {
        self.amplitudes().iter().enumerate().map(|(i, a)| a.norm_sqr() * basis.state(i)[mode] as f64).sum()
    }
}

impl FockState for MixedState {
    fn dimension(&self) -> usize {
        MixedState::dimension(self)
    }

    fn two_mode_density(&self, basis: &FockBasis, mode_a: usize, mode_b: usize) -> DMatrix<Complex64> {
        check_modes(basis, self.dimension(), mode_a, mode_b);
        let local = basis.max_total() + 1;
        let mut rho = DMatrix::zeros(local * local, local * local);
        for group in group_by_rest(basis, mode_a, mode_b) {
            for &(p, i) in &group {
                for &(q, j) in &group {
                    rho[(p, q)] += self.get(i, j);
                }
            }
        }
        rho
    }

    fn mean_occupation(&self, basis: &FockBasis, mode: usize) -> f64 {
        (0..self.dimension()).map(|i| self.get(i, i).re * basis.state(i)[mode] as f64).sum()
    }
}

/// Traces the second mode out of a two-mode density.
fn first_mode_density(pair: &DMatrix<Complex64>, local: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(local, local, |i, k| (0..local).map(|j| pair[(i * local + j, k * local + j)]).sum())
}

fn second_mode_density(pair: &DMatrix<Complex64>, local: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(local, local, |j, l| (0..local).map(|i| pair[(i * local + j, i * local + l)]).sum())
}

/// Orthonormal even/odd cat pair on `|+mu>, |-mu>`, truncated to `local`
/// Fock levels and renormalized there.
pub fn tilde_vectors(mu: Complex64, local: usize) -> Result<[DVector<Complex64>; 2]> {
    let mu_sq = mu.norm_sqr();
    if !(mu_sq >= DEGENERACY_THRESHOLD) {
        return Err(Error::DegenerateBasis { amplitude_sq: mu_sq, threshold: DEGENERACY_THRESHOLD });
    }
    let mut even = DVector::zeros(local);
    let mut odd = DVector::zeros(local);
    // mu^n / sqrt(n!); the common factor e^{-|mu|^2/2} drops out
    let mut term = Complex64::new(1.0, 0.0);
    for n in 0..local {
        if n > 0 {
            term = term * mu / (n as f64).sqrt();
        }
        if n % 2 == 0 {
            even[n] = term;
        } else {
            odd[n] = term;
        }
    }
    let (ne, no) = (even.norm(), odd.norm());
    Ok([even / Complex64::new(ne, 0.0), odd / Complex64::new(no, 0.0)])
}

fn number_vectors(local: usize) -> [DVector<Complex64>; 2] {
    let mut zero = DVector::zeros(local);
    let mut one = DVector::zeros(local);
    zero[0] = Complex64::new(1.0, 0.0);
    one[1] = Complex64::new(1.0, 0.0);
    [zero, one]
}

/// The two dominant eigenvectors of a single-mode density, largest first.
fn support_vectors(rho: &DMatrix<Complex64>) -> [DVector<Complex64>; 2] {
    let herm = (rho + rho.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    [eig.eigenvectors.column(order[0]).into_owned(), eig.eigenvectors.column(order[1]).into_owned()]
}

/// `<a b| rho |c d>` for local vectors of each mode.
fn project(
    pair: &DMatrix<Complex64>,
    local: usize,
    first: &[DVector<Complex64>; 2],
    second: &[DVector<Complex64>; 2],
) -> Matrix4<Complex64> {
    // two-mode product vectors, row order |00>, |01>, |10>, |11>
    let products: Vec<DVector<Complex64>> = (0..4)
        .map(|q| {
            let (a, b) = (&first[q / 2], &second[q % 2]);
            DVector::from_fn(local * local, |p, _| a[p / local] * b[p % local])
        })
        .collect();
    let applied: Vec<DVector<Complex64>> = products.iter().map(|v| pair * v).collect();
    Matrix4::from_fn(|r, c| products[r].dotc(&applied[c]))
}

/// Reduces a Fock-space state to the qubit pair of crystallites
/// `(pair.m, pair.n)`.
pub fn reduce_to_qubit_pair<S: FockState>(
    state: &S,
    pair: PairIndex,
    basis: &FockBasis,
    qubit_basis: QubitBasis,
) -> Result<TwoQubitDensity> {
    if pair.m() >= basis.n_modes() || pair.n() >= basis.n_modes() {
        return Err(invalid("pair", format!("basis has only {} crystallites", basis.n_modes() - 1)));
    }
    if state.dimension() != basis.dimension() {
        return Err(Error::DimensionMismatch { expected: basis.dimension(), found: state.dimension() });
    }
    let local = basis.max_total() + 1;
    let two_mode = state.two_mode_density(basis, pair.m(), pair.n());
    let (first, second) = match qubit_basis {
        QubitBasis::Number => (number_vectors(local), number_vectors(local)),
        QubitBasis::Tilde(mu) => {
            let v = tilde_vectors(mu, local)?;
            (v.clone(), v)
        }
        QubitBasis::LocalSupport => (
            support_vectors(&first_mode_density(&two_mode, local)),
            support_vectors(&second_mode_density(&two_mode, local)),
        ),
    };
    let m = project(&two_mode, local, &first, &second);
    let rho = TwoQubitDensity::from_matrix_unchecked(m, qubit_basis);
    if qubit_basis == QubitBasis::Number {
        let total: f64 = (0..two_mode.nrows()).map(|i| two_mode[(i, i)].re).sum();
        let weight = total - rho.trace();
        if weight > LEAKAGE_TOL {
            return Err(Error::Leakage { weight });
        }
    }
    Ok(rho)
}

/// `|<0_C W_N | psi>|^2` with `W_N = N^{-1/2} sum_j |1_j>`.
pub fn w_state_fidelity(psi: &PureState, basis: &FockBasis) -> f64 {
    let n = basis.n_modes() - 1;
    let mut occ = vec![0u16; basis.n_modes()];
    let mut overlap = Complex64::new(0.0, 0.0);
    for j in 1..=n {
        occ[j] = 1;
        if let Some(i) = basis.index_of(&occ) {
            overlap += psi.amplitudes()[i];
        }
        occ[j] = 0;
    }
    overlap.norm_sqr() / n as f64
}

/// `<n_mode>`; mode 0 is the cavity.
pub fn observable_mean_photon<S: FockState>(state: &S, mode: usize, basis: &FockBasis) -> Result<f64> {
    if mode >= basis.n_modes() {
        return Err(invalid("mode", format!("mode {mode} outside 0..{}", basis.n_modes())));
    }
    Ok(state.mean_occupation(basis, mode))
}

/// Expected total excitation `<a^dag a + sum_j b_j^dag b_j>`.
pub fn total_excitation<S: FockState>(state: &S, basis: &FockBasis) -> f64 {
    (0..basis.n_modes()).map(|m| state.mean_occupation(basis, m)).sum()
}
