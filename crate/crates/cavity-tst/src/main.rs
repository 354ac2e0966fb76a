use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cavity_tst::config::{parse_columns, parse_mode, single_point, Plan, Settings};
use cavity_tst::csv::{write_csv, write_csv_file};
use cavity_tst::plot::emit_plot_script;
use cavity_tst::preset::NAMES;
use cavity_tst::sweep::{run_all, Table};
use cavity_tst::AppError;
use clap::Parser;

/// Cavity-modified quantum TST rate corrections under vibrational strong coupling.
///
/// Without --sweep or --preset, prints the breakdown for one parameter point.
#[derive(Parser, Debug)]
#[command(name = "cavity-tst", version, allow_negative_numbers = true)]
struct Cli {
    /// Figure preset (fig1..fig5, s1a, s1b, s2, s3, s4).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Well frequency (reference unit, default 1).
    #[arg(long)]
    omega: Option<f64>,
    /// Barrier frequency (default 0.5).
    #[arg(long = "omega-b")]
    omega_b: Option<f64>,
    /// Light-matter coupling in the well (default 0.1).
    #[arg(long)]
    eta: Option<f64>,
    /// Light-matter coupling at the barrier (default 0.1).
    #[arg(long = "eta-b")]
    eta_b: Option<f64>,
    /// Activation energy (default 0).
    #[arg(long = "e-a")]
    e_a: Option<f64>,
    /// Cavity frequency (default 1).
    #[arg(long = "omega-c")]
    omega_c: Option<f64>,
    /// Inverse temperature (default 10).
    #[arg(long)]
    beta: Option<f64>,
    /// Number of molecules (default 1).
    #[arg(long)]
    n: Option<u32>,
    /// incoherent or coherent.
    #[arg(long)]
    mode: Option<String>,
    /// VAR:START:STOP:STEPS[:log] with VAR one of omega_c, beta, eta, n_molecules.
    #[arg(long)]
    sweep: Option<String>,
    /// key = value settings file; flags override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// CSV destination (standard output if absent).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write a matplotlib script for the preset.
    #[arg(long = "plot-script", value_name = "FILE")]
    plot_script: Option<PathBuf>,
    /// Add perturbative columns.
    #[arg(long = "with-perturbative")]
    with_perturbative: bool,
    /// Add the centroid correction.
    #[arg(long = "with-centroid")]
    with_centroid: bool,
    /// In an eta sweep, move eta_b with eta.
    #[arg(long = "tie-eta")]
    tie_eta: bool,
    /// Comma-separated column list for sweeps.
    #[arg(long)]
    columns: Option<String>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
    /// Print the preset names and descriptions.
    #[arg(long = "list-presets")]
    list_presets: bool,
}

impl Cli {
    fn settings(&self) -> Result<Settings, AppError> {
        Ok(Settings {
            preset: self.preset.clone(),
            omega: self.omega,
            omega_b: self.omega_b,
            eta: self.eta,
            eta_b: self.eta_b,
            e_a: self.e_a,
            omega_c: self.omega_c,
            beta: self.beta,
            n: self.n,
            mode: self.mode.as_deref().map(parse_mode).transpose()?,
            sweep: self.sweep.as_deref().map(str::parse).transpose()?,
            out: self.out.clone(),
            plot_script: self.plot_script.clone(),
            with_perturbative: self.with_perturbative,
            with_centroid: self.with_centroid,
            tie_eta: self.tie_eta,
            columns: self.columns.as_deref().map(parse_columns).transpose()?,
            threads: self.threads,
        })
    }
}

fn stdout_err(source: io::Error) -> AppError {
    AppError::Io { path: PathBuf::from("<stdout>"), source }
}

fn emit(table: &Table, out: Option<&PathBuf>) -> Result<(), AppError> {
    match out {
        Some(path) => write_csv_file(table, path),
        None => write_csv(table, io::stdout().lock()).map_err(stdout_err),
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    if cli.list_presets {
        let mut out = io::stdout().lock();
        for name in NAMES {
            let p = cavity_tst::preset::preset(name)?;
            writeln!(out, "{name:6} {}", p.description).map_err(stdout_err)?;
        }
        return Ok(());
    }
    let file = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let settings = file.overlay(cli.settings()?);
    match settings.plan()? {
        Plan::Preset(p) => {
            let table = p.run(settings.threads)?;
            emit(&table, settings.out.as_ref())?;
            if let Some(script) = &settings.plot_script {
                let csv = settings.out.as_ref().map_or_else(|| format!("{}.csv", p.name), |o| o.display().to_string());
                emit_plot_script(&table, script, &csv)?;
            }
        }
        Plan::Sweep(cfg) => {
            let table = run_all(std::slice::from_ref(&*cfg), settings.threads)?;
            emit(&table, settings.out.as_ref())?;
        }
        Plan::Single { reaction, cavity, perturbative, centroid } => {
            let lines = single_point(&reaction, &cavity, perturbative, centroid)?;
            let mut out = io::stdout().lock();
            for (name, value) in lines {
                writeln!(out, "{name} {value}").map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (`| head`) is not a failure.
        Err(AppError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cavity-tst: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
