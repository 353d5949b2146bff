use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use symshare_cli::error::ERROR_EXIT_CODE;
use symshare_cli::{run, CliError, ConfigOverrides, RunConfig};

/// Figure data, sweeps, intensity optimization and oracle verification.
///
/// Flags mirror the configuration keys and override values from `--config`.
#[derive(Debug, Parser)]
#[command(name = "symshare", version)]
struct Args {
    /// figure, sweep, optimize or verify
    command: Option<String>,
    /// `key = value` configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "command", value_name = "COMMAND")]
    command_flag: Option<String>,
    /// fig1, fig2a, fig2b, fig2c, fig2d, fig3 or fig4
    #[arg(long)]
    figure: Option<String>,
    /// Number of crystallites
    #[arg(long = "N")]
    n: Option<String>,
    /// Exciton-cavity coupling
    #[arg(long)]
    g: Option<String>,
    /// Exciton decay rate over coupling
    #[arg(long = "gamma_over_g")]
    gamma_over_g: Option<String>,
    /// Initial cavity intensity |alpha|^2
    #[arg(long)]
    alpha2: Option<String>,
    /// even or odd
    #[arg(long)]
    parity: Option<String>,
    #[arg(long = "t_start")]
    t_start: Option<String>,
    #[arg(long = "t_stop")]
    t_stop: Option<String>,
    #[arg(long)]
    points: Option<String>,
    /// Output CSV path; stdout when absent
    #[arg(long)]
    out: Option<String>,
}

impl Args {
    fn overrides(&self) -> Result<ConfigOverrides, CliError> {
        let mut o = ConfigOverrides::default();
        let command = self.command_flag.as_ref().or(self.command.as_ref());
        let pairs = [
            ("command", command),
            ("figure", self.figure.as_ref()),
            ("N", self.n.as_ref()),
            ("g", self.g.as_ref()),
            ("gamma_over_g", self.gamma_over_g.as_ref()),
            ("alpha2", self.alpha2.as_ref()),
            ("parity", self.parity.as_ref()),
            ("t_start", self.t_start.as_ref()),
            ("t_stop", self.t_stop.as_ref()),
            ("points", self.points.as_ref()),
            ("out", self.out.as_ref()),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                o.set(key, v).map_err(|reason| CliError::Flag { key: key.to_string(), reason })?;
            }
        }
        Ok(o)
    }
}

fn execute(args: &Args) -> Result<i32, CliError> {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            ConfigOverrides::parse(&text)?
        }
        None => ConfigOverrides::default(),
    };
    let cfg = RunConfig::resolve(file.overlay(args.overrides()?))?;
    let (table, status) = run(&cfg)?;
    let csv = table.render();
    match &cfg.out {
        Some(path) => fs::write(path, csv).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(csv.as_bytes())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
        }
    }
    Ok(status.code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(ERROR_EXIT_CODE as u8)
        }
    }
}
