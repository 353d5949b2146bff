use std::f64::consts::PI;

use symshare::analytic::{coherent_concurrence, mean_photon_number};
use symshare::dissipative::{damped_amplitudes, damped_concurrence};
use symshare::optimize::{optimal_intensity, threshold_intensity, Method, OptimumKind, OptimumReport};
use symshare::{InitialField, ParityKind};

use crate::config::{header, Command, RunConfig, DEFAULT_N};
use crate::error::{CliError, Result, Status};
use crate::figures::run_figure;
use crate::table::Table;
use crate::verify::run_verify;

pub fn run(cfg: &RunConfig) -> Result<(Table, Status)> {
    match cfg.command {
        Command::Figure => {
            let figure = cfg.figure.ok_or(CliError::Missing("figure"))?;
            Ok((run_figure(cfg, figure)?, Status::Success))
        }
        Command::Sweep => Ok((run_sweep(cfg)?, Status::Success)),
        Command::Optimize => Ok((run_optimize(cfg)?, Status::Success)),
        Command::Verify => run_verify(),
    }
}

/// Concurrence and mean cavity photon number over time for one cat-state
/// configuration; damped closed forms when `gamma_over_g > 0`.
pub fn run_sweep(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.n_crystallites.unwrap_or(DEFAULT_N);
    let params = cfg.params(n)?.validate_pairwise()?;
    let grid = cfg.grid(0.0, 2.0 * PI)?;
    let initial = InitialField::Cat(params.parity);
    let meta = header(&[
        ("command", "sweep".into()),
        ("N", n.to_string()),
        ("g", params.coupling.to_string()),
        ("gamma_over_g", cfg.gamma_over_g.to_string()),
        ("alpha2", params.intensity.to_string()),
        ("parity", params.parity.name().into()),
        ("t_start", grid.start.to_string()),
        ("t_stop", grid.stop.to_string()),
        ("points", grid.points.to_string()),
    ]);
    let mut table = Table::new(meta, &["Gt", "concurrence", "mean_photon"]);
    for gt in grid.values() {
        let (c, photons) = if params.decay_rate > 0.0 {
            // <a^dag a>(t) = u'(t)^2 <a^dag a>(0) with vacuum reservoirs
            let u = damped_amplitudes(&params, gt)?.u_prime;
            (damped_concurrence(&params, gt)?, u * u * mean_photon_number(&params, 0.0, initial))
        } else {
            (coherent_concurrence(&params, gt), mean_photon_number(&params, gt, initial))
        };
        table.push(vec![gt.into(), c.into(), photons.into()]);
    }
    Ok(table)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::RootSolve => "root_solve",
        Method::GoldenSection => "golden_section",
    }
}

fn kind_name(k: OptimumKind) -> &'static str {
    match k {
        OptimumKind::Interior => "interior",
        OptimumKind::LowerBoundary => "lower_boundary",
        OptimumKind::UpperBoundary => "upper_boundary",
        OptimumKind::Plateau => "plateau",
    }
}

/// Optimal intensity per `(N, parity)`: golden section for every pair, and
/// the threshold root for even parity with `N >= 3`. Without `N` the range
/// 2..=10 is covered; without `parity` both.
pub fn run_optimize(cfg: &RunConfig) -> Result<Table> {
    let ns: Vec<usize> = match cfg.n_crystallites {
        Some(n) => vec![n],
        None => (2..=10).collect(),
    };
    let parities = match cfg.parity {
        Some(p) => vec![p],
        None => vec![ParityKind::Odd, ParityKind::Even],
    };
    let meta = header(&[
        ("command", "optimize".into()),
        ("N", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")),
        ("parity", parities.iter().map(|p| p.name()).collect::<Vec<_>>().join(";")),
    ]);
    let mut table =
        Table::new(meta, &["N", "parity", "method", "kind", "intensity", "concurrence", "residual", "iterations"]);
    let mut push = |n: usize, parity: ParityKind, r: OptimumReport| {
        table.push(vec![
            n.into(),
            parity.name().into(),
            method_name(r.method).into(),
            kind_name(r.kind).into(),
            r.intensity.into(),
            r.concurrence.into(),
            r.residual.into(),
            r.iterations.into(),
        ])
    };
    for &n in &ns {
        for &parity in &parities {
            push(n, parity, optimal_intensity(n, parity)?);
            if parity == ParityKind::Even && n >= 3 {
                push(n, parity, threshold_intensity(n)?);
            }
        }
    }
    Ok(table)
}
