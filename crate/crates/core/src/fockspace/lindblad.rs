//! Zero-temperature exciton loss: one jump operator `sqrt(gamma) b_j` per
//! crystallite, lossless cavity,
//!
//! ```text
//! d rho/dt = -i [H, rho] + gamma sum_j (b_j rho b_j^dag - {n_j, rho}/2)
//! ```
//!
//! integrated with fixed-step classical RK4.

use num_complex::Complex64;

use super::basis::FockBasis;
use super::hamiltonian::build_hamiltonian;
use super::state::MixedState;
use crate::error::{Error, Result};
use crate::model::SystemParams;

pub const DEFAULT_LINDBLAD_CAPACITY: usize = 400;
/// Largest entrywise change allowed when the step is halved.
pub const STEP_HALVING_TOL: f64 = 1e-8;

/// Precomputed sparse structure of the Lindbladian on one basis.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    dimension: usize,
    decay_rate: f64,
    rows: Vec<Vec<(usize, f64)>>,
    /// `gamma/2 * sum_j n_j` per basis state.
    damping: Vec<f64>,
    /// Per crystallite: `(state, raised state, sqrt(n_j + 1))` for every state
    /// whose raised partner is retained.
    jumps: Vec<Vec<(usize, usize, f64)>>,
}

impl LindbladGenerator {
    pub fn new(params: &SystemParams, basis: &FockBasis) -> Result<Self> {
        Self::with_capacity(params, basis, DEFAULT_LINDBLAD_CAPACITY)
    }

    pub fn with_capacity(params: &SystemParams, basis: &FockBasis, capacity: usize) -> Result<Self> {
        let dimension = basis.dimension();
        if dimension > capacity {
            return Err(Error::CapacityExceeded { what: "Lindblad basis", required: dimension, limit: capacity });
        }
        let n = params.n_crystallites;
        let h = build_hamiltonian(&vec![params.coupling; n], basis)?;
        let gamma = params.decay_rate;
        let damping = (0..dimension)
            .map(|i| 0.5 * gamma * basis.state(i)[1..].iter().map(|&k| k as f64).sum::<f64>())
            .collect();
        let jumps = (1..=n)
            .map(|mode| {
                (0..dimension)
                    .filter_map(|i| {
                        basis.raised(i, mode).map(|up| (i, up, (basis.state(i)[mode] as f64 + 1.0).sqrt()))
                    })
                    .collect()
            })
            .collect();
        Ok(LindbladGenerator { dimension, decay_rate: gamma, rows: h.rows(), damping, jumps })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `out = L(rho)`; `scratch` holds `-i H_eff rho` with
    /// `H_eff = H - i gamma/2 sum n_j`.
    fn apply(&self, rho: &[Complex64], out: &mut [Complex64], scratch: &mut [Complex64]) {
        let d = self.dimension;
        let zero = Complex64::new(0.0, 0.0);
        for r in 0..d {
            let y = &mut scratch[r * d..(r + 1) * d];
            y.fill(zero);
            for &(k, h) in &self.rows[r] {
                let src = &rho[k * d..(k + 1) * d];
                for (yc, s) in y.iter_mut().zip(src) {
                    *yc += s * h;
                }
            }
            let damp = self.damping[r];
            let own = &rho[r * d..(r + 1) * d];
            for (yc, s) in y.iter_mut().zip(own) {
                // -i (H rho) - damp rho
                *yc = Complex64::new(yc.im - damp * s.re, -yc.re - damp * s.im);
            }
        }
        for r in 0..d {
            for c in r..d {
                let v = scratch[r * d + c] + scratch[c * d + r].conj();
                out[r * d + c] = v;
                out[c * d + r] = v.conj();
            }
        }
        if self.decay_rate > 0.0 {
            for jump in &self.jumps {
                for &(r, ur, fr) in jump {
                    let scale = self.decay_rate * fr;
                    let row = &rho[ur * d..(ur + 1) * d];
                    let dst = &mut out[r * d..(r + 1) * d];
                    for &(c, uc, fc) in jump {
                        dst[c] += row[uc] * (scale * fc);
                    }
                }
            }
        }
    }

    /// Advances `rho` by `n_steps` RK4 steps of size `h`.
    fn integrate(&self, rho: &mut [Complex64], h: f64, n_steps: usize, work: &mut Workspace) {
        let Workspace { k1, k2, k3, k4, tmp, scratch } = work;
        for _ in 0..n_steps {
            self.apply(rho, k1, scratch);
            axpy_into(tmp, rho, k1, 0.5 * h);
            self.apply(tmp, k2, scratch);
            axpy_into(tmp, rho, k2, 0.5 * h);
            self.apply(tmp, k3, scratch);
            axpy_into(tmp, rho, k3, h);
            self.apply(tmp, k4, scratch);
            let w = h / 6.0;
            for i in 0..rho.len() {
                rho[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * w;
            }
        }
    }

    /// Samples `rho(t)` at ascending raw times (all `>= 0`) with steps no
    /// longer than `max_step`.
    pub fn trajectory(&self, rho0: &MixedState, times: &[f64], max_step: f64) -> Result<Vec<MixedState>> {
        if rho0.dimension() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: rho0.dimension() });
        }
        let mut rho = rho0.entries().to_vec();
        let mut work = Workspace::new(rho.len());
        let mut now = 0.0;
        let mut out = Vec::with_capacity(times.len());
        for &t in times {
            if !(t >= now) {
                return Err(crate::error::invalid("times", "sample times must be ascending and non-negative"));
            }
            let span = t - now;
            let n_steps = (span / max_step).ceil() as usize;
            if n_steps > 0 {
                self.integrate(&mut rho, span / n_steps as f64, n_steps, &mut work);
            }
            now = t;
            out.push(MixedState::from_row_major(self.dimension, rho.clone())?);
        }
        Ok(out)
    }
}

struct Workspace {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Workspace {
    fn new(len: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); len];
        Workspace { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z.clone(), scratch: z }
    }
}

fn axpy_into(out: &mut [Complex64], x: &[Complex64], dx: &[Complex64], h: f64) {
    for ((o, a), b) in out.iter_mut().zip(x).zip(dx) {
        *o = a + b * h;
    }
}

/// RK4 step size `min(0.005 / (g sqrt N), 0.005 / max(gamma, g))`.
pub fn default_step(params: &SystemParams) -> f64 {
    let g = params.coupling;
    (0.005 / params.collective_coupling()).min(0.005 / params.decay_rate.max(g))
}

/// `rho(t)` at each `G t` in `gts`, checked by repeating the run at half the
/// step: any entry moving by more than [`STEP_HALVING_TOL`] raises
/// `StepSizeUnstable`. Returns the half-step run.
pub fn evolve_lindblad_trajectory(
    params: &SystemParams,
    basis: &FockBasis,
    rho0: &MixedState,
    gts: &[f64],
) -> Result<Vec<MixedState>> {
    let generator = LindbladGenerator::new(params, basis)?;
    let times: Vec<f64> = gts.iter().map(|&gt| params.raw_time(gt)).collect();
    let h = default_step(params);
    let coarse = generator.trajectory(rho0, &times, h)?;
    let fine = generator.trajectory(rho0, &times, h / 2.0)?;
    let change = coarse.iter().zip(&fine).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
    if change > STEP_HALVING_TOL {
        return Err(Error::StepSizeUnstable { change });
    }
    Ok(fine)
}

/// `rho(t)` at a single `G t`.
pub fn evolve_lindblad(params: &SystemParams, basis: &FockBasis, rho0: &MixedState, gt: f64) -> Result<MixedState> {
    Ok(evolve_lindblad_trajectory(params, basis, rho0, &[gt])?.pop().expect("one sample"))
}
