//! Closed forms for the lossless system: Heisenberg transfer coefficients,
//! factorized coherent amplitudes, reduced pair densities, concurrences and
//! the mean cavity photon number.
//!
//! Every `gt` argument is the dimensionless time `G t` (`G' t` for an
//! anisotropic [`CouplingProfile`]).

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::density::{QubitBasis, TwoQubitDensity};
use crate::error::{Error, Result};
use crate::model::{CouplingProfile, InitialField, PairIndex, ParityKind, SystemParams};

/// Below this |v alpha|^2 the even/odd qubit basis on |+-v alpha> is undefined.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Solution of the Heisenberg equations for an arbitrary coupling profile.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferCoefficients {
    /// `G' = sqrt(sum g_j^2)`.
    pub g_collective: f64,
    /// `f_j = g_j sin(G' t) / G'`.
    pub f: Vec<f64>,
    /// `cos(G' t)`.
    pub cos_term: f64,
}

impl TransferCoefficients {
    /// `sum f_j^2 + cos^2`, identically one.
    pub fn total_probability(&self) -> f64 {
        self.f.iter().map(|f| f * f).sum::<f64>() + self.cos_term * self.cos_term
    }
}

/// Amplitude factors of the factorized coherent evolution
/// `|alpha u>_C |v alpha>^N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitudes {
    pub u: Complex64,
    pub v: Complex64,
}

pub fn transfer_coefficients(profile: &CouplingProfile, gt: f64) -> TransferCoefficients {
    let g_collective = profile.collective_coupling();
    let (s, c) = gt.sin_cos();
    let f = profile.couplings().iter().map(|g| g * s / g_collective).collect();
    TransferCoefficients { g_collective, f, cos_term: c }
}

/// `u = cos(Gt) e^{-i w t}`, `v = -i sin(Gt)/sqrt(N) e^{-i w t}`.
pub fn isotropic_amplitudes(params: &SystemParams, gt: f64) -> ModeAmplitudes {
    let phase = Complex64::from_polar(1.0, -params.frequency * params.raw_time(gt));
    let n = params.n_crystallites as f64;
    let (s, c) = gt.sin_cos();
    ModeAmplitudes { u: phase * c, v: phase * Complex64::new(0.0, -s / n.sqrt()) }
}

/// Reduced density of crystallites (m, n) after a single photon has been
/// shared out of the cavity, in the number basis.
pub fn single_photon_pair_density(profile: &CouplingProfile, gt: f64, pair: PairIndex) -> TwoQubitDensity {
    let tc = transfer_coefficients(profile, gt);
    let fm = tc.f[pair.m() - 1];
    let fn_ = tc.f[pair.n() - 1];
    let mut rho = [[0.0; 4]; 4];
    rho[0][0] = 1.0 - fm * fm - fn_ * fn_;
    rho[1][1] = fn_ * fn_;
    rho[2][2] = fm * fm;
    rho[1][2] = fm * fn_;
    rho[2][1] = fm * fn_;
    let m = Matrix4::from_fn(|i, j| Complex64::new(rho[i][j], 0.0));
    TwoQubitDensity::from_matrix_unchecked(m, QubitBasis::Number)
}

/// `C = 2 g_m g_n sin^2(G' t) / G'^2`.
pub fn single_photon_concurrence(profile: &CouplingProfile, gt: f64, pair: PairIndex) -> f64 {
    let g = profile.couplings();
    let gc = profile.collective_coupling();
    let s = gt.sin();
    2.0 * g[pair.m() - 1] * g[pair.n() - 1] * s * s / (gc * gc)
}

/// Cavity-times-spectator overlap `P(t) = exp[-2|a|^2 (1 - 2 sin^2(Gt)/N)]`.
pub fn cavity_overlap(params: &SystemParams, gt: f64) -> f64 {
    let w = transferred_fraction(params, gt);
    (-2.0 * params.intensity * (1.0 - 2.0 * w)).exp()
}

/// `|v(t)|^2 = sin^2(Gt)/N`.
fn transferred_fraction(params: &SystemParams, gt: f64) -> f64 {
    let s = gt.sin();
    s * s / params.n_crystallites as f64
}

/// Reduced density of any pair for a cat-state cavity, in the tilde basis
/// built on `v(t) alpha`.
pub fn coherent_pair_density(params: &SystemParams, gt: f64) -> Result<TwoQubitDensity> {
    let mu = isotropic_amplitudes(params, gt).v * params.alpha();
    cat_pair_density(params.parity, params.intensity, transferred_fraction(params, gt), mu)
}

/// `C_pm = (e^{4|a|^2 sin^2(Gt)/N} - 1) / (e^{2|a|^2} pm 1)`.
pub fn coherent_concurrence(params: &SystemParams, gt: f64) -> f64 {
    cat_concurrence(params.parity, params.intensity, transferred_fraction(params, gt))
}

/// Mean cavity photon number `<a^dag a>`.
pub fn mean_photon_number(params: &SystemParams, gt: f64, initial: InitialField) -> f64 {
    let c = gt.cos();
    let c2 = c * c;
    let x = params.intensity;
    match initial {
        InitialField::SinglePhoton => c2,
        InitialField::Coherent => x * c2,
        // x (1 - e^{-2x}) / (1 + e^{-2x}) = x tanh x
        InitialField::Cat(ParityKind::Even) => x * x.tanh() * c2,
        // x (1 + e^{-2x}) / (1 - e^{-2x}) = x coth x -> 1 as x -> 0
        InitialField::Cat(ParityKind::Odd) => {
            if x == 0.0 {
                c2
            } else {
                x / x.tanh() * c2
            }
        }
    }
}

/// Concurrence of the cat-state pair density as a function of the cavity
/// intensity `x = |alpha|^2` and the per-crystallite transferred fraction
/// `w = |v|^2`: `(e^{4 x w} - 1) / (e^{2x} pm 1)`.
pub(crate) fn cat_concurrence(parity: ParityKind, x: f64, w: f64) -> f64 {
    let a = 4.0 * x * w;
    let b = 2.0 * x;
    match parity {
        ParityKind::Odd if x == 0.0 => 2.0 * w,
        _ if b > 1.0 => {
            // e^{a-b} (1 - e^{-a}) / (1 pm e^{-b}), no overflow for large x
            (a - b).exp() * (-(-a).exp_m1()) / (1.0 + parity.sign() * (-b).exp())
        }
        ParityKind::Even => a.exp_m1() / (b.exp_m1() + 2.0),
        ParityKind::Odd => a.exp_m1() / b.exp_m1(),
    }
}

/// Builds the 4x4 tilde-basis density shared by the lossless and damped
/// cases. `w = |v|^2` enters the cross-term overlap
/// `exp[-2x(1 - 2w)]`, `mu` labels the basis.
pub(crate) fn cat_pair_density(parity: ParityKind, x: f64, w: f64, mu: Complex64) -> Result<TwoQubitDensity> {
    let mu_sq = mu.norm_sqr();
    if !(mu_sq >= DEGENERACY_THRESHOLD) {
        return Err(Error::DegenerateBasis { amplitude_sq: mu_sq, threshold: DEGENERACY_THRESHOLD });
    }
    // (2 N_pm^2)^{-1} = 1 pm e^{-2x}
    let cat_norm = match parity {
        ParityKind::Even => 2.0 + (-2.0 * x).exp_m1(),
        ParityKind::Odd => -(-2.0 * x).exp_m1(),
    };
    // 1 + e^{-2|mu|^2} and 1 - e^{-2|mu|^2}, i.e. 1/(2 N_+(t)^2) and 1/(2 N_-(t)^2)
    let local_even = 2.0 + (-2.0 * mu_sq).exp_m1();
    let local_odd = -(-2.0 * mu_sq).exp_m1();
    let log_overlap = -2.0 * x * (1.0 - 2.0 * w);
    // 1 + P and 1 - P
    let p_plus = 2.0 + log_overlap.exp_m1();
    let p_minus = -log_overlap.exp_m1();
    let (same, flipped) = match parity {
        ParityKind::Even => (p_plus, p_minus),
        ParityKind::Odd => (p_minus, p_plus),
    };
    // N_pm^2 (1 pm P) / (8 N_a^2(t) N_b^2(t)) = (1 pm P) (local_a)(local_b) / (4 cat_norm)
    let scale = 0.25 / cat_norm;
    let d00 = scale * same * local_even * local_even;
    let d11 = scale * same * local_odd * local_odd;
    let corner = scale * same * local_even * local_odd;
    let middle = scale * flipped * local_even * local_odd;
    let mut rho = [[0.0; 4]; 4];
    rho[0][0] = d00;
    rho[3][3] = d11;
    rho[0][3] = corner;
    rho[3][0] = corner;
    for row in &mut rho[1..3] {
        row[1..3].fill(middle);
    }
    let m = Matrix4::from_fn(|i, j| Complex64::new(rho[i][j], 0.0));
    Ok(TwoQubitDensity::from_matrix_unchecked(m, QubitBasis::Tilde(mu)))
}
