use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use proptest::prelude::*;

use symshare::analytic::{
    coherent_concurrence, coherent_pair_density, mean_photon_number, single_photon_concurrence,
    single_photon_pair_density, transfer_coefficients,
};
use symshare::dissipative::{damped_concurrence, damped_pair_density};
use symshare::entanglement::{concurrence_from_spin_flip_product, pure_state_concurrence};
use symshare::fockspace::{reduce_to_qubit_pair, UnitaryOracle};
use symshare::optimize::lambert_w0;
use symshare::{
    concurrence, CouplingProfile, InitialField, PairIndex, ParityKind, QubitBasis, SystemParams, TwoQubitDensity,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn parity() -> impl Strategy<Value = ParityKind> {
    prop_oneof![Just(ParityKind::Even), Just(ParityKind::Odd)]
}

fn amplitudes() -> impl Strategy<Value = [Complex64; 4]> {
    prop::array::uniform4((-1.0..1.0f64, -1.0..1.0f64))
        .prop_filter("nonzero", |a| a.iter().map(|(x, y)| x * x + y * y).sum::<f64>() > 1e-3)
        .prop_map(|a| a.map(|(x, y)| c(x, y)))
}

/// `G G^dag / tr` for a random complex 4x4 `G` of rank `rank`.
fn density() -> impl Strategy<Value = TwoQubitDensity> {
    (prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 16), 1usize..=4).prop_map(|(entries, rank)| {
        let g = Matrix4::from_fn(|r, k| if k < rank { c(entries[4 * r + k].0, entries[4 * r + k].1) } else { c(0.0, 0.0) });
        let rho = g * g.adjoint();
        let tr = rho.trace();
        TwoQubitDensity::from_matrix_unchecked(rho / tr, QubitBasis::Number)
    })
}

/// `exp(-i theta n.sigma) e^{i phi}`.
fn qubit_unitary() -> impl Strategy<Value = Matrix2<Complex64>> {
    (0.0..PI, 0.0..PI, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(theta, polar, azim, phase)| {
        let (nx, ny, nz) = (polar.sin() * azim.cos(), polar.sin() * azim.sin(), polar.cos());
        let (s, co) = theta.sin_cos();
        let m = Matrix2::new(c(co, -s * nz), c(-s * ny, -s * nx), c(s * ny, -s * nx), c(co, s * nz));
        m * Complex64::from_polar(1.0, phase)
    })
}

fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, k| a[(r / 2, k / 2)] * b[(r % 2, k % 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn local_unitary_invariance(rho in density(), u in qubit_unitary(), v in qubit_unitary()) {
        let w = kron(&u, &v);
        let rotated = TwoQubitDensity::from_matrix_unchecked(w * rho.matrix() * w.adjoint(), rho.basis());
        let a = concurrence(&rho).unwrap();
        let b = concurrence(&rotated).unwrap();
        prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn pure_state_formula(amps in amplitudes()) {
        let rho = TwoQubitDensity::pure(amps, QubitBasis::Number).unwrap();
        let formula = pure_state_concurrence(amps);
        prop_assert!((concurrence(&rho).unwrap() - formula).abs() < 1e-12);
        // the spin-flip eigenvalue route loses precision on rank-one input
        prop_assert!((concurrence_from_spin_flip_product(&rho).unwrap() - formula).abs() < 1e-6);
    }

    #[test]
    fn concurrence_in_unit_interval(rho in density()) {
        let value = concurrence(&rho).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&value));
    }

    #[test]
    fn basis_tag_is_metadata(rho in density(), re in 0.1..2.0f64) {
        let tagged = TwoQubitDensity::from_matrix_unchecked(*rho.matrix(), QubitBasis::Tilde(c(re, 0.0)));
        prop_assert_eq!(concurrence(&rho).unwrap(), concurrence(&tagged).unwrap());
    }

    #[test]
    fn excitation_conservation(g in prop::collection::vec(0.01..5.0f64, 2..12), gt in -50.0..50.0f64) {
        let profile = CouplingProfile::new(g).unwrap();
        let total = transfer_coefficients(&profile, gt).total_probability();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_photon_duality(n in 2usize..20, gt in 0.0..20.0f64) {
        let profile = CouplingProfile::isotropic(n, 1.0).unwrap();
        let pair = PairIndex::first(n).unwrap();
        let params = SystemParams::new(n, 1.0);
        let lhs = single_photon_concurrence(&profile, gt, pair);
        let rhs = 2.0 / n as f64 * (1.0 - mean_photon_number(&params, gt, InitialField::SinglePhoton));
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn single_photon_wootters_consistency(
        g in prop::collection::vec(0.05..3.0f64, 2..8),
        gt in 0.0..10.0f64,
        seed in any::<(usize, usize)>(),
    ) {
        let n = g.len();
        let (m, k) = (seed.0 % n + 1, seed.1 % (n - 1) + 1);
        let k = if k >= m { k + 1 } else { k };
        let pair = PairIndex::new(m, k, n).unwrap();
        let profile = CouplingProfile::new(g).unwrap();
        let rho = single_photon_pair_density(&profile, gt, pair);
        let diff = concurrence(&rho).unwrap() - single_photon_concurrence(&profile, gt, pair);
        prop_assert!(diff.abs() < 1e-10);
    }

    #[test]
    fn cat_wootters_consistency(n in 2usize..11, x in 0.01..5.0f64, gt in 0.05..6.2f64, parity in parity()) {
        let params = SystemParams::new(n, 1.0).with_intensity(x).with_parity(parity);
        if let Ok(rho) = coherent_pair_density(&params, gt) {
            let diff = concurrence(&rho).unwrap() - coherent_concurrence(&params, gt);
            prop_assert!(diff.abs() < 1e-8, "{}", diff);
        }
    }

    #[test]
    fn concurrence_is_pi_periodic(n in 2usize..11, x in 0.0..5.0f64, gt in 0.0..20.0f64, parity in parity()) {
        let params = SystemParams::new(n, 1.0).with_intensity(x).with_parity(parity);
        let diff = coherent_concurrence(&params, gt) - coherent_concurrence(&params, gt + PI);
        prop_assert!(diff.abs() < 1e-12);
    }

    #[test]
    fn lossless_damped_reduction(n in 2usize..8, x in 0.05..3.0f64, gt in 0.05..12.0f64, parity in parity()) {
        let params = SystemParams::new(n, 1.0).with_intensity(x).with_parity(parity);
        let diff = damped_concurrence(&params, gt).unwrap() - coherent_concurrence(&params, gt);
        prop_assert!(diff.abs() < 1e-12);
        if let (Ok(a), Ok(b)) = (damped_pair_density(&params, gt), coherent_pair_density(&params, gt)) {
            prop_assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn validation_is_idempotent(n in 1usize..50, g in 0.01..10.0f64, gamma in 0.0..2.0f64, x in 0.0..10.0f64) {
        let params = SystemParams::new(n, g).with_decay_rate(gamma).with_intensity(x);
        let once = params.validate().unwrap();
        prop_assert_eq!(once.validate().unwrap(), once);
    }

    #[test]
    fn lambert_inverts(z in -0.36787944117144..1e6f64) {
        let w = lambert_w0(z).unwrap();
        prop_assert!((w * w.exp() - z).abs() <= 1e-13 * z.abs().max(1.0) * (1.0 + w.max(0.0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_conserves_sectors(
        g in prop::collection::vec(0.2..2.0f64, 2..4),
        x in 0.05..0.8f64,
        gt in 0.0..8.0f64,
        parity in parity(),
    ) {
        let oracle = UnitaryOracle::new(&g, InitialField::Cat(parity), c(x.sqrt(), 0.0)).unwrap();
        let before = oracle.initial_state().sector_weights(oracle.basis());
        let psi = oracle.state_at(gt).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
        for (a, b) in psi.sector_weights(oracle.basis()).iter().zip(&before) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn isotropic_pairs_are_identical(n in 3usize..5, x in 0.1..0.5f64, gt in 0.1..3.0f64, parity in parity()) {
        let oracle = UnitaryOracle::new(&vec![1.0; n], InitialField::Cat(parity), c(x.sqrt(), 0.0)).unwrap();
        let psi = oracle.state_at(gt).unwrap();
        let mu = c(0.0, -gt.sin() / (n as f64).sqrt()) * x.sqrt();
        let reference =
            reduce_to_qubit_pair(&psi, PairIndex::first(n).unwrap(), oracle.basis(), QubitBasis::Tilde(mu)).unwrap();
        for (m, k) in [(1, n), (2, 3), (n, 1)] {
            let rho = reduce_to_qubit_pair(&psi, PairIndex::new(m, k, n).unwrap(), oracle.basis(), QubitBasis::Tilde(mu))
                .unwrap();
            prop_assert!(rho.max_abs_diff(&reference) < 1e-12);
        }
    }
}

#[test]
fn photon_minimum_and_concurrence_maximum_coincide() {
    for n in 2..=6 {
        let profile = CouplingProfile::isotropic(n, 1.0).unwrap();
        let params = SystemParams::new(n, 1.0);
        let pair = PairIndex::first(n).unwrap();
        let grid: Vec<f64> = (0..=400).map(|k| PI * k as f64 / 400.0).collect();
        let arg = |values: Vec<f64>, better: fn(f64, f64) -> bool| {
            let mut best = 0;
            for (i, v) in values.iter().enumerate() {
                if better(*v, values[best]) {
                    best = i;
                }
            }
            best
        };
        let argmax = arg(grid.iter().map(|&t| single_photon_concurrence(&profile, t, pair)).collect(), |a, b| a > b);
        let argmin = arg(
            grid.iter().map(|&t| mean_photon_number(&params, t, InitialField::SinglePhoton)).collect(),
            |a, b| a < b,
        );
        assert_eq!(argmax, argmin);
        assert!((grid[argmax] - FRAC_PI_2).abs() < 1e-12);
    }
}

#[test]
fn odd_cat_tends_to_single_photon_law() {
    for n in 2..=10 {
        let params = SystemParams::new(n, 1.0).with_intensity(1e-6).with_parity(ParityKind::Odd);
        for k in 0..=100 {
            let gt = PI * k as f64 / 100.0;
            let s = gt.sin();
            let limit = 2.0 / n as f64 * s * s;
            assert!((coherent_concurrence(&params, gt) - limit).abs() < 1e-5);
        }
    }
}
