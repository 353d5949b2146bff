//! Closed forms with zero-temperature exciton loss at rate gamma, in the
//! Wigner-Weisskopf (Markovian) approximation. The cavity itself is lossless.
//!
//! Only the underdamped regime `N g^2 > (gamma/4)^2` is supported; `gt` is
//! the dimensionless time `G t`, `G = g sqrt(N)`.

use num_complex::Complex64;

use crate::analytic::{cat_concurrence, cat_pair_density};
use crate::density::TwoQubitDensity;
use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Damped cavity and per-crystallite amplitude factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedAmplitudes {
    /// `e^{-gamma t/4} [(gamma/4 delta) sin(delta t) + cos(delta t)]`
    pub u_prime: f64,
    /// `(g/delta) e^{-gamma t/4} sin(delta t)`
    pub v_prime: f64,
    /// `sqrt(N g^2 - (gamma/4)^2)`
    pub delta: f64,
}

fn damped_frequency(params: &SystemParams) -> Result<f64> {
    let coupling_sq = params.n_crystallites as f64 * params.coupling * params.coupling;
    let quarter = params.decay_rate / 4.0;
    let damping_sq = quarter * quarter;
    if coupling_sq <= damping_sq {
        return Err(Error::OverdampedRegime { coupling_sq, damping_sq });
    }
    Ok((coupling_sq - damping_sq).sqrt())
}

pub fn damped_amplitudes(params: &SystemParams, gt: f64) -> Result<DampedAmplitudes> {
    let delta = damped_frequency(params)?;
    let t = params.raw_time(gt);
    let quarter = params.decay_rate / 4.0;
    let envelope = (-quarter * t).exp();
    let (s, c) = (delta * t).sin_cos();
    Ok(DampedAmplitudes {
        u_prime: envelope * (quarter / delta * s + c),
        v_prime: params.coupling / delta * envelope * s,
        delta,
    })
}

/// `P'(t) = exp[-2|alpha|^2 (1 - 2 v'(t)^2)]`.
pub fn damped_overlap(params: &SystemParams, gt: f64) -> Result<f64> {
    let v = damped_amplitudes(params, gt)?.v_prime;
    Ok((-2.0 * params.intensity * (1.0 - 2.0 * v * v)).exp())
}

/// Pair density in the tilde basis built on `-i v'(t) alpha e^{-i w t}`.
pub fn damped_pair_density(params: &SystemParams, gt: f64) -> Result<TwoQubitDensity> {
    let v = damped_amplitudes(params, gt)?.v_prime;
    let phase = Complex64::from_polar(1.0, -params.frequency * params.raw_time(gt));
    let mu = Complex64::new(0.0, -v) * phase * params.alpha();
    cat_pair_density(params.parity, params.intensity, v * v, mu)
}

/// `C'_pm = (e^{4|alpha v'|^2} - 1) / (e^{2|alpha|^2} pm 1)`.
pub fn damped_concurrence(params: &SystemParams, gt: f64) -> Result<f64> {
    let v = damped_amplitudes(params, gt)?.v_prime;
    Ok(cat_concurrence(params.parity, params.intensity, v * v))
}

/// Strong-coupling (`g >> gamma`) approximation
/// `(exp[(4|alpha|^2/N) sin^2(Gt) e^{-gamma t/2}] - 1) / (e^{2|alpha|^2} pm 1)`.
pub fn damped_concurrence_weak_coupling(params: &SystemParams, gt: f64) -> f64 {
    let t = params.raw_time(gt);
    let s = gt.sin();
    let w = s * s * (-params.decay_rate * t / 2.0).exp() / params.n_crystallites as f64;
    cat_concurrence(params.parity, params.intensity, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{cavity_overlap, coherent_concurrence, coherent_pair_density};
    use crate::model::ParityKind;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn params(n: usize, gamma: f64, x: f64, parity: ParityKind) -> SystemParams {
        SystemParams::new(n, 1.0).with_decay_rate(gamma).with_intensity(x).with_parity(parity)
    }

    #[test]
    fn lossless_reduction_of_amplitudes() {
        let a = damped_amplitudes(&params(3, 0.0, 1.0, ParityKind::Odd), FRAC_PI_2).unwrap();
        assert!(a.u_prime.abs() < 1e-15);
        assert!((a.v_prime - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((a.delta - 3f64.sqrt()).abs() < 1e-15);
        let a0 = damped_amplitudes(&params(3, 0.4, 1.0, ParityKind::Odd), 0.0).unwrap();
        assert_eq!((a0.u_prime, a0.v_prime), (1.0, 0.0));
    }

    #[test]
    fn damped_frequency_value() {
        let a = damped_amplitudes(&params(3, 0.13, 1.0, ParityKind::Odd), 1.0).unwrap();
        assert!((a.delta - (3.0 - 0.13f64 * 0.13 / 16.0).sqrt()).abs() < 1e-15);
        assert!((a.delta - 1.73175).abs() < 1e-5);
    }

    #[test]
    fn overdamped_rejected() {
        let p = params(2, 8.0, 1.0, ParityKind::Even);
        assert!(matches!(damped_amplitudes(&p, 1.0), Err(Error::OverdampedRegime { .. })));
        assert!(damped_concurrence(&p, 1.0).is_err());
        assert!(damped_overlap(&p, 1.0).is_err());
        let edge = params(1, 4.0, 1.0, ParityKind::Even);
        assert!(damped_amplitudes(&edge, 1.0).is_err());
    }

    #[test]
    fn overlap_limits() {
        let p = params(3, 0.5, 0.7, ParityKind::Even);
        let start = (-1.4f64).exp();
        assert!((damped_overlap(&p, 0.0).unwrap() - start).abs() < 1e-16);
        assert!((damped_overlap(&p, 500.0).unwrap() - start).abs() < 1e-15);
        let q = params(3, 0.0, 0.7, ParityKind::Even);
        for k in 0..20 {
            let gt = 0.37 * k as f64;
            assert!((damped_overlap(&q, gt).unwrap() - cavity_overlap(&q, gt)).abs() < 1e-12);
        }
    }

    #[test]
    fn lossless_reduction_grid() {
        for parity in [ParityKind::Even, ParityKind::Odd] {
            for n in [2, 3, 5, 8] {
                for x in [0.01, 0.3, 1.0, 2.0, 5.0] {
                    let p = params(n, 0.0, x, parity);
                    for k in 1..25 {
                        let gt = 0.29 * k as f64;
                        let c = damped_concurrence(&p, gt).unwrap();
                        assert!((c - coherent_concurrence(&p, gt)).abs() < 1e-12);
                        assert!((damped_concurrence_weak_coupling(&p, gt) - coherent_concurrence(&p, gt)).abs() < 1e-12);
                        let d = damped_pair_density(&p, gt).unwrap();
                        let e = coherent_pair_density(&p, gt).unwrap();
                        assert!(d.max_abs_diff(&e) < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn long_times_decay_to_zero() {
        let p = params(3, 0.5, 1.0, ParityKind::Odd);
        assert!(damped_concurrence(&p, 400.0).unwrap() < 1e-12);
        assert!(damped_concurrence_weak_coupling(&p, 400.0) < 1e-12);
        let err = damped_pair_density(&p, 2000.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateBasis { .. }));
    }

    fn local_maxima(values: &[f64]) -> Vec<f64> {
        values.windows(3).filter(|w| w[1] > w[0] && w[1] >= w[2]).map(|w| w[1]).collect()
    }

    #[test]
    fn peaks_decrease_in_time() {
        for parity in [ParityKind::Odd, ParityKind::Even] {
            let p = params(3, 0.13, 1.0, parity);
            let series: Vec<f64> =
                (0..=2400).map(|k| damped_concurrence(&p, 6.0 * PI * k as f64 / 2400.0).unwrap()).collect();
            let peaks = local_maxima(&series);
            assert!(peaks.len() >= 5);
            assert!(peaks.windows(2).all(|w| w[1] < w[0]), "{parity}: {peaks:?}");
        }
    }

    #[test]
    fn period_maxima_non_increasing_in_decay_rate() {
        // pointwise monotonicity fails near the nodes, where the shifted
        // frequency delta moves the zero of sin(delta t)
        for period in 0..6 {
            let mut prev = f64::INFINITY;
            for gamma in [0.0, 0.05, 0.13, 0.25, 0.5, 1.0] {
                let p = params(3, gamma, 1.0, ParityKind::Odd);
                let peak = (0..=2000)
                    .map(|k| damped_concurrence(&p, PI * (period as f64 + k as f64 / 2000.0)).unwrap())
                    .fold(0.0, f64::max);
                assert!(peak <= prev + 1e-15, "period {period} gamma={gamma}");
                prev = peak;
            }
        }
    }

    #[test]
    fn weak_coupling_gap_shrinks_with_decay_rate() {
        let sup_gap = |gamma: f64| {
            let p = params(3, gamma, 1.0, ParityKind::Odd);
            (0..=3000)
                .map(|k| {
                    let gt = 6.0 * PI * k as f64 / 3000.0;
                    (damped_concurrence(&p, gt).unwrap() - damped_concurrence_weak_coupling(&p, gt)).abs()
                })
                .fold(0.0, f64::max)
        };
        let gaps: Vec<f64> = [0.26, 0.13, 0.065].iter().map(|&g| sup_gap(g)).collect();
        assert!(gaps[0] < 0.05);
        assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "{gaps:?}");
    }
}
