//! Truncated Fock-space reference for the cavity plus `N` crystallite
//! modes: exact unitary evolution per excitation sector and a Lindblad
//! integrator for exciton loss. Mode 0 is the cavity, mode `j` crystallite
//! `j`.

mod basis;
mod hamiltonian;
mod lindblad;
mod reduce;
mod state;
mod unitary;

pub use basis::{basis_dimension, FockBasis, DEFAULT_CAPACITY};
pub use hamiltonian::{build_hamiltonian, SparseHermitian};
pub use lindblad::{
    default_step, evolve_lindblad, evolve_lindblad_trajectory, LindbladGenerator, DEFAULT_LINDBLAD_CAPACITY,
    STEP_HALVING_TOL,
};
pub use reduce::{
    observable_mean_photon, reduce_to_qubit_pair, tilde_vectors, total_excitation, w_state_fidelity, FockState,
    LEAKAGE_TOL,
};
pub use state::{prepare_initial, required_cutoff, truncation_tail, MixedState, PureState, TRUNCATION_TAIL};
pub use unitary::{evolve_unitary, SectorPropagator};

use num_complex::Complex64;

use crate::density::{QubitBasis, TwoQubitDensity};
use crate::error::{invalid, Result};
use crate::model::{InitialField, PairIndex, SystemParams};

/// Lossless reference for an arbitrary coupling profile, with the
/// eigendecomposition cached for repeated sampling.
#[derive(Debug, Clone)]
pub struct UnitaryOracle {
    basis: FockBasis,
    propagator: SectorPropagator,
    initial: PureState,
    collective: f64,
}

impl UnitaryOracle {
    /// Cutoff chosen by [`required_cutoff`].
    pub fn new(couplings: &[f64], field: InitialField, alpha: Complex64) -> Result<Self> {
        Self::with_cutoff(couplings, field, alpha, required_cutoff(field, alpha.norm_sqr()))
    }

    pub fn with_cutoff(couplings: &[f64], field: InitialField, alpha: Complex64, max_total: usize) -> Result<Self> {
        if couplings.is_empty() || couplings.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(invalid("couplings", "need at least one positive finite coupling"));
        }
        let basis = FockBasis::new(couplings.len() + 1, max_total)?;
        let hamiltonian = build_hamiltonian(couplings, &basis)?;
        let initial = prepare_initial(field, alpha, &basis)?;
        let collective = couplings.iter().map(|g| g * g).sum::<f64>().sqrt();
        Ok(UnitaryOracle { propagator: SectorPropagator::new(&hamiltonian), basis, initial, collective })
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn initial_state(&self) -> &PureState {
        &self.initial
    }

    /// State at dimensionless time `G' t`.
    pub fn state_at(&self, gt: f64) -> Result<PureState> {
        self.propagator.evolve(&self.initial, gt / self.collective)
    }

    pub fn pair_density(&self, gt: f64, pair: PairIndex, qubit_basis: QubitBasis) -> Result<TwoQubitDensity> {
        reduce_to_qubit_pair(&self.state_at(gt)?, pair, &self.basis, qubit_basis)
    }

    pub fn mean_cavity_photon(&self, gt: f64) -> Result<f64> {
        observable_mean_photon(&self.state_at(gt)?, 0, &self.basis)
    }
}

/// Extra excitation levels kept above the initial-state cutoff in
/// [`LindbladOracle`].
pub const LINDBLAD_MARGIN: usize = 2;

/// Lossy reference for the isotropic system in `params`, cavity prepared in
/// `field` with amplitude `params.alpha()`.
#[derive(Debug, Clone)]
pub struct LindbladOracle {
    params: SystemParams,
    basis: FockBasis,
    initial: MixedState,
}

impl LindbladOracle {
    pub fn new(params: &SystemParams, field: InitialField) -> Result<Self> {
        let params = params.validate()?;
        let alpha = params.alpha();
        // loss only lowers the excitation number; the margin guards the
        // integrator
        let max_total = required_cutoff(field, alpha.norm_sqr()) + LINDBLAD_MARGIN;
        let basis = FockBasis::new(params.n_crystallites + 1, max_total)?;
        let initial = MixedState::from_pure(&prepare_initial(field, alpha, &basis)?);
        Ok(LindbladOracle { params, basis, initial })
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn trajectory(&self, gts: &[f64]) -> Result<Vec<MixedState>> {
        evolve_lindblad_trajectory(&self.params, &self.basis, &self.initial, gts)
    }

    pub fn pair_densities(&self, gts: &[f64], pair: PairIndex, qubit_basis: QubitBasis) -> Result<Vec<TwoQubitDensity>> {
        self.trajectory(gts)?
            .iter()
            .map(|rho| reduce_to_qubit_pair(rho, pair, &self.basis, qubit_basis))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::analytic::{coherent_pair_density, single_photon_concurrence, single_photon_pair_density};
    use crate::dissipative::damped_concurrence;
    use crate::entanglement::concurrence;
    use crate::model::{CouplingProfile, ParityKind};

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    fn single(couplings: &[f64]) -> UnitaryOracle {
        UnitaryOracle::new(couplings, InitialField::SinglePhoton, ZERO).unwrap()
    }

    #[test]
    fn identity_at_zero_time() {
        let o = UnitaryOracle::new(&[1.0, 1.0, 1.0], InitialField::Cat(ParityKind::Even), Complex64::new(0.7, 0.2))
            .unwrap();
        let psi = o.state_at(0.0).unwrap();
        let diff = psi.amplitudes().iter().zip(o.initial_state().amplitudes()).map(|(a, b)| (a - b).norm());
        assert!(diff.fold(0.0, f64::max) < 1e-13);
    }

    #[test]
    fn norm_and_sectors_are_conserved() {
        let o = UnitaryOracle::new(&[0.5, 1.0, 1.5], InitialField::Coherent, Complex64::new(0.6, -0.4)).unwrap();
        let w0 = o.initial_state().sector_weights(o.basis());
        for gt in [0.3, 1.7, 4.0, 11.0] {
            let psi = o.state_at(gt).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            for (a, b) in psi.sector_weights(o.basis()).iter().zip(&w0) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn w_state_reached_for_isotropic_coupling() {
        for n in [2, 3, 5] {
            let o = single(&vec![1.0; n]);
            let f = w_state_fidelity(&o.state_at(FRAC_PI_2).unwrap(), o.basis());
            assert!(f >= 1.0 - 1e-10, "N={n}: {f}");
        }
    }

    #[test]
    fn anisotropic_w_fidelity_stays_below_one() {
        let o = single(&[3.0, 4.0]);
        let best = (0..=400)
            .map(|k| w_state_fidelity(&o.state_at(PI * k as f64 / 400.0).unwrap(), o.basis()))
            .fold(0.0, f64::max);
        assert!((best - 0.98).abs() < 1e-10, "{best}");
    }

    #[test]
    fn single_photon_densities_match_closed_form() {
        let g = [0.7, 1.3, 2.0];
        let profile = CouplingProfile::new(g.to_vec()).unwrap();
        let o = single(&g);
        let pair = PairIndex::new(1, 3, 3).unwrap();
        for gt in [0.2, 1.0, 2.5] {
            let oracle = o.pair_density(gt, pair, QubitBasis::Number).unwrap();
            let exact = single_photon_pair_density(&profile, gt, pair);
            assert!(oracle.max_abs_diff(&exact) < 1e-12);
            let c = concurrence(&oracle).unwrap();
            assert!((c - single_photon_concurrence(&profile, gt, pair)).abs() < 1e-10);
        }
    }

    #[test]
    fn isotropic_pairs_are_equivalent() {
        let o = UnitaryOracle::new(&[1.0; 4], InitialField::Cat(ParityKind::Odd), Complex64::new(0.8, 0.0)).unwrap();
        let a = o.pair_density(1.1, PairIndex::new(1, 2, 4).unwrap(), QubitBasis::LocalSupport).unwrap();
        let b = o.pair_density(1.1, PairIndex::new(3, 4, 4).unwrap(), QubitBasis::LocalSupport).unwrap();
        assert!((concurrence(&a).unwrap() - concurrence(&b).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn coffman_kundu_wootters_monogamy() {
        let g = [1.0, 0.6, 1.7, 0.4];
        let o = single(&g);
        for gt in [0.4, 1.2, 2.9] {
            let psi = o.state_at(gt).unwrap();
            let n1 = observable_mean_photon(&psi, 1, o.basis()).unwrap();
            let tangle = 4.0 * n1 * (1.0 - n1);
            let sum: f64 = (2..=4)
                .map(|j| {
                    let rho =
                        reduce_to_qubit_pair(&psi, PairIndex::new(1, j, 4).unwrap(), o.basis(), QubitBasis::Number)
                            .unwrap();
                    concurrence(&rho).unwrap().powi(2)
                })
                .sum();
            assert!(sum <= tangle + 1e-12, "{sum} > {tangle}");
        }
    }

    #[test]
    fn cat_tilde_density_matches_closed_form() {
        let params = SystemParams::new(3, 1.0).with_intensity(1.0).with_parity(ParityKind::Odd);
        let o = UnitaryOracle::new(&[1.0; 3], InitialField::Cat(ParityKind::Odd), params.alpha()).unwrap();
        for gt in [FRAC_PI_2, 0.8] {
            let exact = coherent_pair_density(&params, gt).unwrap();
            let oracle = o.pair_density(gt, PairIndex::first(3).unwrap(), exact.basis()).unwrap();
            assert!(oracle.max_abs_diff(&exact) < 1e-6, "{}", oracle.max_abs_diff(&exact));
        }
    }

    #[test]
    fn truncation_is_converged() {
        let alpha = Complex64::new(1.0, 0.0);
        let field = InitialField::Cat(ParityKind::Even);
        let m = required_cutoff(field, 1.0);
        let a = UnitaryOracle::with_cutoff(&[1.0, 1.0], field, alpha, m).unwrap();
        let b = UnitaryOracle::with_cutoff(&[1.0, 1.0], field, alpha, 2 * m).unwrap();
        let pair = PairIndex::first(2).unwrap();
        for gt in [0.5, 1.5] {
            let ca = concurrence(&a.pair_density(gt, pair, QubitBasis::LocalSupport).unwrap()).unwrap();
            let cb = concurrence(&b.pair_density(gt, pair, QubitBasis::LocalSupport).unwrap()).unwrap();
            assert!((ca - cb).abs() < 1e-8);
        }
    }

    #[test]
    fn lossless_lindblad_matches_unitary() {
        let params = SystemParams::new(2, 1.0);
        let lossy = LindbladOracle::new(&params, InitialField::SinglePhoton).unwrap();
        let exact = UnitaryOracle::with_cutoff(&[1.0, 1.0], InitialField::SinglePhoton, ZERO, 1 + LINDBLAD_MARGIN)
            .unwrap();
        let rho = lossy.trajectory(&[0.9]).unwrap().pop().unwrap();
        let psi = MixedState::from_pure(&exact.state_at(0.9).unwrap());
        assert!(rho.max_abs_diff(&psi) < 1e-9);
    }

    #[test]
    fn vacuum_is_stationary_and_excitation_decays() {
        let params = SystemParams::new(2, 1.0).with_decay_rate(0.3);
        let oracle = LindbladOracle::new(&params, InitialField::SinglePhoton).unwrap();
        let basis = oracle.basis();
        let vac = PureState::new(
            (0..basis.dimension()).map(|i| if basis.total(i) == 0 { Complex64::new(1.0, 0.0) } else { ZERO }).collect(),
        );
        let vac = MixedState::from_pure(&vac);
        let after = evolve_lindblad(&params, basis, &vac, 2.0).unwrap();
        assert!(after.max_abs_diff(&vac) < 1e-14);

        let gts: Vec<f64> = (0..=20).map(|k| 0.5 * k as f64).collect();
        let traj = oracle.trajectory(&gts).unwrap();
        let totals: Vec<f64> = traj.iter().map(|r| total_excitation(r, basis)).collect();
        assert!(totals.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(totals[20] < 0.5);
        for rho in &traj {
            rho.check().unwrap();
        }
    }

    #[test]
    fn damped_concurrence_matches_lindblad() {
        let params = SystemParams::new(2, 1.0)
            .with_intensity(0.25)
            .with_decay_rate(0.13)
            .with_parity(ParityKind::Even);
        let oracle = LindbladOracle::new(&params, InitialField::Cat(ParityKind::Even)).unwrap();
        let gts = [0.5, 1.0, FRAC_PI_2];
        let rhos = oracle.pair_densities(&gts, PairIndex::first(2).unwrap(), QubitBasis::LocalSupport).unwrap();
        for (gt, rho) in gts.iter().zip(&rhos) {
            let c = concurrence(rho).unwrap();
            let exact = damped_concurrence(&params, *gt).unwrap();
            assert!((c - exact).abs() < 1e-6, "gt={gt}: {c} vs {exact}");
        }
    }
}
