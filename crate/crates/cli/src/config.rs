//! Run configuration: a plain-text `key = value` document (one pair per
//! line, `#` starts a comment) overlaid by command-line flags.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use symshare::{ParityKind, SystemParams};

use crate::error::{CliError, Result};

pub const KEYS: [&str; 11] =
    ["command", "figure", "N", "g", "gamma_over_g", "alpha2", "parity", "t_start", "t_stop", "points", "out"];

/// Grid points per `pi` of `Gt` when no `points` is given.
pub const POINTS_PER_PERIOD: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Figure,
    Sweep,
    Optimize,
    Verify,
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "figure" => Ok(Command::Figure),
            "sweep" => Ok(Command::Sweep),
            "optimize" => Ok(Command::Optimize),
            "verify" => Ok(Command::Verify),
            _ => Err(format!("unknown command `{s}` (figure, sweep, optimize, verify)")),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Figure => "figure",
            Command::Sweep => "sweep",
            Command::Optimize => "optimize",
            Command::Verify => "verify",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 7] =
        [FigureId::Fig1, FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig2c, FigureId::Fig2d, FigureId::Fig3, FigureId::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig2c => "fig2c",
            FigureId::Fig2d => "fig2d",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        }
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (fig1, fig2a, fig2b, fig2c, fig2d, fig3, fig4)"))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values as written; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub command: Option<Command>,
    pub figure: Option<FigureId>,
    pub n: Option<usize>,
    pub g: Option<f64>,
    pub gamma_over_g: Option<f64>,
    pub alpha2: Option<f64>,
    pub parity: Option<ParityKind>,
    pub t_start: Option<f64>,
    pub t_stop: Option<f64>,
    pub points: Option<usize>,
    pub out: Option<PathBuf>,
}

fn number<T: FromStr>(value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("`{value}` is not a valid number"))
}

impl ConfigOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ConfigOverrides::default();
        let mut seen: Vec<String> = vec![];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::Parse { line, reason: format!("expected `key = value`, got `{content}`") })?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(CliError::UnknownKey(key.to_string()));
            }
            if seen.iter().any(|k| k == key) {
                return Err(CliError::Parse { line, reason: format!("duplicate key `{key}`") });
            }
            seen.push(key.to_string());
            cfg.set(key, value).map_err(|reason| CliError::Parse { line, reason })?;
        }
        Ok(cfg)
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        if value.is_empty() {
            return Err(format!("empty value for `{key}`"));
        }
        match key {
            "command" => self.command = Some(value.parse()?),
            "figure" => self.figure = Some(value.parse()?),
            "N" => self.n = Some(number(value)?),
            "g" => self.g = Some(number(value)?),
            "gamma_over_g" => self.gamma_over_g = Some(number(value)?),
            "alpha2" => self.alpha2 = Some(number(value)?),
            "parity" => self.parity = Some(value.parse().map_err(|e: symshare::Error| e.to_string())?),
            "t_start" => self.t_start = Some(number(value)?),
            "t_stop" => self.t_stop = Some(number(value)?),
            "points" => self.points = Some(number(value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(self, top: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            command: top.command.or(self.command),
            figure: top.figure.or(self.figure),
            n: top.n.or(self.n),
            g: top.g.or(self.g),
            gamma_over_g: top.gamma_over_g.or(self.gamma_over_g),
            alpha2: top.alpha2.or(self.alpha2),
            parity: top.parity.or(self.parity),
            t_start: top.t_start.or(self.t_start),
            t_stop: top.t_stop.or(self.t_stop),
            points: top.points.or(self.points),
            out: top.out.or(self.out),
        }
    }
}

/// Uniform grid over `Gt` including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        let bad = |reason: String| CliError::Model(symshare::Error::InvalidParameter { name: "grid", reason });
        if !(start.is_finite() && stop.is_finite()) {
            return Err(bad("t_start and t_stop must be finite".into()));
        }
        if !(stop > start) {
            return Err(bad(format!("t_stop ({stop}) must exceed t_start ({start})")));
        }
        if points < 2 {
            return Err(bad(format!("points must be at least 2, got {points}")));
        }
        Ok(TimeGrid { start, stop, points })
    }

    /// [`POINTS_PER_PERIOD`] points per `pi`, ends included.
    pub fn with_default_density(start: f64, stop: f64) -> Result<Self> {
        let points = (POINTS_PER_PERIOD * (stop - start) / PI).round() as usize + 1;
        Self::new(start, stop, points.max(2))
    }

    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.points - 1) as f64;
        (0..self.points).map(|k| if k + 1 == self.points { self.stop } else { self.start + span * k as f64 / last }).collect()
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub figure: Option<FigureId>,
    pub n_crystallites: Option<usize>,
    pub coupling: f64,
    pub gamma_over_g: f64,
    pub alpha2: f64,
    pub parity: Option<ParityKind>,
    t_start: Option<f64>,
    t_stop: Option<f64>,
    points: Option<usize>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_COUPLING: f64 = 1.0;
pub const DEFAULT_ALPHA2: f64 = 1.0;
pub const DEFAULT_N: usize = 3;

impl RunConfig {
    pub fn resolve(o: ConfigOverrides) -> Result<Self> {
        let command = o.command.ok_or(CliError::Missing("command"))?;
        if command == Command::Figure && o.figure.is_none() {
            return Err(CliError::Missing("figure"));
        }
        let cfg = RunConfig {
            command,
            figure: o.figure,
            n_crystallites: o.n,
            coupling: o.g.unwrap_or(DEFAULT_COUPLING),
            gamma_over_g: o.gamma_over_g.unwrap_or(0.0),
            alpha2: o.alpha2.unwrap_or(DEFAULT_ALPHA2),
            parity: o.parity,
            t_start: o.t_start,
            t_stop: o.t_stop,
            points: o.points,
            out: o.out,
        };
        // surfaces InvalidParameter for N, g, gamma and alpha2
        cfg.params(cfg.n_crystallites.unwrap_or(DEFAULT_N))?;
        if cfg.t_start.is_some() || cfg.t_stop.is_some() || cfg.points.is_some() {
            cfg.grid(0.0, 2.0 * PI)?;
        }
        Ok(cfg)
    }

    /// Isotropic parameters for `n` crystallites.
    pub fn params(&self, n: usize) -> Result<SystemParams> {
        Ok(SystemParams::new(n, self.coupling)
            .with_decay_rate(self.gamma_over_g * self.coupling)
            .with_intensity(self.alpha2)
            .with_parity(self.parity.unwrap_or(ParityKind::Odd))
            .validate()?)
    }

    /// Time grid with the given default range for unset ends.
    pub fn grid(&self, default_start: f64, default_stop: f64) -> Result<TimeGrid> {
        let start = self.t_start.unwrap_or(default_start);
        let stop = self.t_stop.unwrap_or(default_stop);
        match self.points {
            Some(points) => TimeGrid::new(start, stop, points),
            None => TimeGrid::with_default_density(start, stop),
        }
    }
}

/// `key=value` pairs for a metadata header; floats in shortest round-trip
/// form so the header re-parses to the same values.
pub fn header(pairs: &[(&str, String)]) -> String {
    let body: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("symshare {}", body.join(" "))
}
