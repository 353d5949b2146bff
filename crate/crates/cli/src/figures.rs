//! Figure data: one emitter per [`FigureId`], each with a fixed column
//! schema. Time is the dimensionless `Gt`, `G = g sqrt(N)`.

use std::f64::consts::PI;

use symshare::analytic::{coherent_concurrence, mean_photon_number, single_photon_concurrence};
use symshare::dissipative::damped_concurrence;
use symshare::optimize::peak_concurrence;
use symshare::{CouplingProfile, InitialField, PairIndex, ParityKind};

use crate::config::{header, FigureId, RunConfig, DEFAULT_N};
use crate::error::Result;
use crate::table::Table;

/// Intensity axis of fig2a and fig2b: `|alpha|^2` from 0 to 6 in steps of 0.1.
pub const SURFACE_INTENSITIES: (f64, f64, usize) = (0.0, 6.0, 61);
/// Intensity axis of fig2c and fig2d: 0 to 6 in steps of 0.01.
pub const PEAK_INTENSITIES: (f64, f64, usize) = (0.0, 6.0, 601);
pub const PEAK_CRYSTALLITES: [usize; 4] = [2, 3, 5, 10];
pub const FIG3_INTENSITIES: [f64; 4] = [0.01, 0.1, 1.0, 2.0];
pub const FIG3_CRYSTALLITES: (usize, usize) = (2, 20);
pub const FIG4_DAMPING: [f64; 2] = [0.13, 0.5];

fn linspace((start, stop, points): (f64, f64, usize)) -> Vec<f64> {
    (0..points).map(|k| start + (stop - start) * k as f64 / (points - 1) as f64).collect()
}

fn f(v: f64) -> String {
    v.to_string()
}

pub fn run_figure(cfg: &RunConfig, figure: FigureId) -> Result<Table> {
    match figure {
        FigureId::Fig1 => fig1(cfg),
        FigureId::Fig2a => surface(cfg, figure, ParityKind::Odd),
        FigureId::Fig2b => surface(cfg, figure, ParityKind::Even),
        FigureId::Fig2c => peaks(figure, ParityKind::Odd),
        FigureId::Fig2d => peaks(figure, ParityKind::Even),
        FigureId::Fig3 => fig3(),
        FigureId::Fig4 => fig4(cfg),
    }
}

/// Single photon shared by `N` crystallites.
fn fig1(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.n_crystallites.unwrap_or(DEFAULT_N);
    let params = cfg.params(n)?.validate_pairwise()?;
    let grid = cfg.grid(0.0, 2.0 * PI)?;
    let profile = CouplingProfile::isotropic(n, params.coupling)?;
    let pair = PairIndex::first(n)?;
    let meta = header(&[
        ("command", "figure".into()),
        ("figure", "fig1".into()),
        ("N", n.to_string()),
        ("g", f(params.coupling)),
        ("t_start", f(grid.start)),
        ("t_stop", f(grid.stop)),
        ("points", grid.points.to_string()),
    ]);
    let mut table = Table::new(meta, &["Gt", "concurrence", "mean_photon"]);
    for gt in grid.values() {
        table.push(vec![
            gt.into(),
            single_photon_concurrence(&profile, gt, pair).into(),
            mean_photon_number(&params, gt, InitialField::SinglePhoton).into(),
        ]);
    }
    Ok(table)
}

/// Concurrence over time and intensity, intensity-major.
fn surface(cfg: &RunConfig, figure: FigureId, parity: ParityKind) -> Result<Table> {
    let n = cfg.n_crystallites.unwrap_or(DEFAULT_N);
    let base = cfg.params(n)?.validate_pairwise()?.with_parity(parity);
    let grid = cfg.grid(0.0, 2.0 * PI)?;
    let (i0, i1, ik) = SURFACE_INTENSITIES;
    let meta = header(&[
        ("command", "figure".into()),
        ("figure", figure.name().into()),
        ("N", n.to_string()),
        ("parity", parity.name().into()),
        ("t_start", f(grid.start)),
        ("t_stop", f(grid.stop)),
        ("points", grid.points.to_string()),
        ("intensity_start", f(i0)),
        ("intensity_stop", f(i1)),
        ("intensity_points", ik.to_string()),
    ]);
    let mut table = Table::new(meta, &["Gt", "intensity", "concurrence"]);
    let times = grid.values();
    for x in linspace(SURFACE_INTENSITIES) {
        let params = base.with_intensity(x);
        for &gt in &times {
            table.push(vec![gt.into(), x.into(), coherent_concurrence(&params, gt).into()]);
        }
    }
    Ok(table)
}

/// Peak concurrence (at `Gt = pi/2`) against intensity, `N`-major.
fn peaks(figure: FigureId, parity: ParityKind) -> Result<Table> {
    let (i0, i1, ik) = PEAK_INTENSITIES;
    let meta = header(&[
        ("command", "figure".into()),
        ("figure", figure.name().into()),
        ("parity", parity.name().into()),
        ("N", PEAK_CRYSTALLITES.map(|n| n.to_string()).join(";")),
        ("intensity_start", f(i0)),
        ("intensity_stop", f(i1)),
        ("intensity_points", ik.to_string()),
    ]);
    let mut table = Table::new(meta, &["intensity", "max_concurrence", "N"]);
    for n in PEAK_CRYSTALLITES {
        for x in linspace(PEAK_INTENSITIES) {
            table.push(vec![x.into(), peak_concurrence(n, x, parity).into(), n.into()]);
        }
    }
    Ok(table)
}

/// Peak concurrence against `N` at fixed intensities, with the `2/N` bound.
fn fig3() -> Result<Table> {
    let (lo, hi) = FIG3_CRYSTALLITES;
    let meta = header(&[
        ("command", "figure".into()),
        ("figure", "fig3".into()),
        ("alpha2", FIG3_INTENSITIES.map(f).join(";")),
        ("N_start", lo.to_string()),
        ("N_stop", hi.to_string()),
    ]);
    let mut table = Table::new(meta, &["intensity", "N", "max_concurrence_odd", "max_concurrence_even", "two_over_N"]);
    for x in FIG3_INTENSITIES {
        for n in lo..=hi {
            table.push(vec![
                x.into(),
                n.into(),
                peak_concurrence(n, x, ParityKind::Odd).into(),
                peak_concurrence(n, x, ParityKind::Even).into(),
                (2.0 / n as f64).into(),
            ]);
        }
    }
    Ok(table)
}

/// Damped concurrence for two damping ratios and both parities.
fn fig4(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.n_crystallites.unwrap_or(DEFAULT_N);
    let base = cfg.params(n)?.validate_pairwise()?;
    let grid = cfg.grid(0.0, 6.0 * PI)?;
    let meta = header(&[
        ("command", "figure".into()),
        ("figure", "fig4".into()),
        ("N", n.to_string()),
        ("g", f(base.coupling)),
        ("alpha2", f(base.intensity)),
        ("gamma_over_g", FIG4_DAMPING.map(f).join(";")),
        ("t_start", f(grid.start)),
        ("t_stop", f(grid.stop)),
        ("points", grid.points.to_string()),
    ]);
    let columns: Vec<String> = std::iter::once("Gt".to_string())
        .chain(FIG4_DAMPING.iter().flat_map(|r| {
            [ParityKind::Odd, ParityKind::Even].map(|p| format!("concurrence_{}_gamma_{}", p.name(), f(*r)))
        }))
        .collect();
    let names: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(meta, &names);
    let mut curves = vec![];
    for ratio in FIG4_DAMPING {
        for parity in [ParityKind::Odd, ParityKind::Even] {
            curves.push(base.with_decay_rate(ratio * base.coupling).with_parity(parity));
        }
    }
    for gt in grid.values() {
        let mut row = vec![gt.into()];
        for params in &curves {
            row.push(damped_concurrence(params, gt)?.into());
        }
        table.push(row);
    }
    Ok(table)
}
