//! Physical configuration shared by every module.
//!
//! Units: hbar = 1, every rate shares one inverse-time unit, and time is
//! passed around in the dimensionless form `G t` with `G = g sqrt(N)` (or
//! `G' = sqrt(sum g_j^2)` for an anisotropic profile). All dynamics run in the
//! frame rotating at the common frequency omega; omega only contributes the
//! global phase `exp(-i omega t)` to state amplitudes.

use crate::error::{invalid, Result};

/// Initial cat-state parity of the cavity field. `Even` carries the `+` sign
/// and `Odd` the `-` sign in every closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ParityKind {
    #[default]
    Even,
    Odd,
}

impl ParityKind {
    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> f64 {
        match self {
            ParityKind::Even => 1.0,
            ParityKind::Odd => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ParityKind::Even => "even",
            ParityKind::Odd => "odd",
        }
    }
}

impl std::str::FromStr for ParityKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" | "+" => Ok(ParityKind::Even),
            "odd" | "-" => Ok(ParityKind::Odd),
            other => Err(invalid("parity", format!("expected `even` or `odd`, got `{other}`"))),
        }
    }
}

impl std::fmt::Display for ParityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Initial state of the cavity field; the crystallites always start in vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialField {
    SinglePhoton,
    /// Glauber coherent state |alpha>.
    Coherent,
    /// Normalized |alpha> +/- |-alpha>.
    Cat(ParityKind),
}

/// Isotropic system: N crystallites with a common coupling `g` to the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub n_crystallites: usize,
    pub coupling: f64,
    pub frequency: f64,
    pub decay_rate: f64,
    /// |alpha|^2 of the initial cavity field.
    pub intensity: f64,
    /// arg(alpha), radians.
    pub field_phase: f64,
    pub parity: ParityKind,
}

impl SystemParams {
    pub fn new(n_crystallites: usize, coupling: f64) -> Self {
        SystemParams {
            n_crystallites,
            coupling,
            frequency: 0.0,
            decay_rate: 0.0,
            intensity: 0.0,
            field_phase: 0.0,
            parity: ParityKind::Even,
        }
    }

    pub fn with_intensity(mut self, intensity: f64) -> Self {
        self.intensity = intensity;
        self
    }

    pub fn with_parity(mut self, parity: ParityKind) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_decay_rate(mut self, decay_rate: f64) -> Self {
        self.decay_rate = decay_rate;
        self
    }

    pub fn with_frequency(mut self, frequency: f64) -> Self {
        self.frequency = frequency;
        self
    }

    pub fn with_field_phase(mut self, field_phase: f64) -> Self {
        self.field_phase = field_phase;
        self
    }

    /// Collective Rabi frequency `G = g sqrt(N)`.
    pub fn collective_coupling(&self) -> f64 {
        self.coupling * (self.n_crystallites as f64).sqrt()
    }

    /// Complex field amplitude `alpha = sqrt(|alpha|^2) e^{i phase}`.
    pub fn alpha(&self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(self.intensity.sqrt(), self.field_phase)
    }

    /// Converts a raw time into `G t`.
    pub fn scaled_time(&self, t: f64) -> f64 {
        t * self.collective_coupling()
    }

    /// Converts `G t` back into a raw time.
    pub fn raw_time(&self, gt: f64) -> f64 {
        gt / self.collective_coupling()
    }

    pub fn profile(&self) -> CouplingProfile {
        CouplingProfile { couplings: vec![self.coupling; self.n_crystallites] }
    }

    /// Checks every field invariant. Idempotent.
    pub fn validate(self) -> Result<Self> {
        if self.n_crystallites == 0 {
            return Err(invalid("n_crystallites", "at least one crystallite is required"));
        }
        check_positive("coupling", self.coupling)?;
        check_non_negative("frequency", self.frequency)?;
        check_non_negative("decay_rate", self.decay_rate)?;
        check_non_negative("intensity", self.intensity)?;
        if !self.field_phase.is_finite() {
            return Err(invalid("field_phase", "must be finite"));
        }
        Ok(self)
    }

    /// As [`validate`](Self::validate), additionally requiring that a pair of
    /// crystallites exists.
    pub fn validate_pairwise(self) -> Result<Self> {
        let p = self.validate()?;
        if p.n_crystallites < 2 {
            return Err(invalid(
                "n_crystallites",
                format!("pairwise entanglement needs N >= 2, got {}", p.n_crystallites),
            ));
        }
        Ok(p)
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(invalid(name, format!("must be finite and > 0, got {value}")));
    }
    Ok(())
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value >= 0.0) {
        return Err(invalid(name, format!("must be finite and >= 0, got {value}")));
    }
    Ok(())
}

/// Per-crystallite couplings `g_1..g_N` for the anisotropic single-photon case.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingProfile {
    couplings: Vec<f64>,
}

impl CouplingProfile {
    pub fn new(couplings: Vec<f64>) -> Result<Self> {
        if couplings.len() < 2 {
            return Err(invalid(
                "couplings",
                format!("need at least two crystallites, got {}", couplings.len()),
            ));
        }
        for &g in &couplings {
            check_positive("couplings", g)?;
        }
        Ok(CouplingProfile { couplings })
    }

    pub fn isotropic(n_crystallites: usize, coupling: f64) -> Result<Self> {
        Self::new(vec![coupling; n_crystallites])
    }

    pub fn validate(self) -> Result<Self> {
        Self::new(self.couplings)
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn len(&self) -> usize {
        self.couplings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.couplings.is_empty()
    }

    /// `G' = sqrt(sum_j g_j^2)`.
    pub fn collective_coupling(&self) -> f64 {
        self.couplings.iter().map(|g| g * g).sum::<f64>().sqrt()
    }

    pub fn is_isotropic(&self) -> bool {
        self.couplings.windows(2).all(|w| w[0] == w[1])
    }
}

/// Unordered-in-physics, ordered-in-storage pair of distinct crystallites,
/// 1-based. The first index labels the left qubit of a two-qubit density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairIndex {
    m: usize,
    n: usize,
}

impl PairIndex {
    pub fn new(m: usize, n: usize, n_crystallites: usize) -> Result<Self> {
        if n_crystallites < 2 {
            return Err(invalid(
                "n_crystallites",
                format!("pairwise entanglement needs N >= 2, got {n_crystallites}"),
            ));
        }
        if m == 0 || n == 0 || m > n_crystallites || n > n_crystallites {
            return Err(invalid(
                "pair",
                format!("indices ({m}, {n}) must lie in 1..={n_crystallites}"),
            ));
        }
        if m == n {
            return Err(invalid("pair", format!("indices must differ, got ({m}, {n})")));
        }
        Ok(PairIndex { m, n })
    }

    /// The pair (1, 2).
    pub fn first(n_crystallites: usize) -> Result<Self> {
        Self::new(1, 2, n_crystallites)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }
}
