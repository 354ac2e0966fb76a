//! One-dimensional parameter sweeps evaluated point by point.

use std::fmt;
use std::str::FromStr;

use cavity_tst_core::perturbation::perturbative_report;
use cavity_tst_core::rates::{branching_ratio, selectivity_estimate};
use cavity_tst_core::spectrum::{barrier_spectrum, well_spectrum};
use cavity_tst_core::{
    CavitySetup, ChannelSpec, CorrectionBreakdown, PerturbativeReport, ReactionParams, SharedConditions,
};
use rayon::prelude::*;

use crate::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    OmegaC,
    Beta,
    Eta,
    NMolecules,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::OmegaC => "omega_c",
            SweepVariable::Beta => "beta",
            SweepVariable::Eta => "eta",
            SweepVariable::NMolecules => "n_molecules",
        }
    }
}

impl FromStr for SweepVariable {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        match s {
            "omega_c" => Ok(SweepVariable::OmegaC),
            "beta" => Ok(SweepVariable::Beta),
            "eta" => Ok(SweepVariable::Eta),
            "n_molecules" | "n" => Ok(SweepVariable::NMolecules),
            _ => Err(AppError::usage(format!(
                "unknown sweep variable {s:?} (expected omega_c, beta, eta or n_molecules)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// Grid over one variable, written on the command line as
/// `VAR:START:STOP:STEPS[:log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, start: f64, stop: f64, steps: usize, scale: Scale) -> Result<Self, AppError> {
        let spec = SweepSpec { variable, start, stop, steps, scale };
        spec.validate()?;
        Ok(spec)
    }

    /// Linear grid, unvalidated.
    pub fn linear(variable: SweepVariable, start: f64, stop: f64, steps: usize) -> Self {
        SweepSpec { variable, start, stop, steps, scale: Scale::Linear }
    }

    pub fn validate(&self) -> Result<(), AppError> {
        // A linear coupling sweep may start from the uncoupled point.
        let zero_ok = self.variable == SweepVariable::Eta && self.scale == Scale::Linear;
        let start_ok = self.start > 0.0 || (zero_ok && self.start == 0.0);
        if !(start_ok && self.start.is_finite() && self.stop.is_finite()) {
            return Err(AppError::usage(format!("sweep start must be a finite value > 0, got {}", self.start)));
        }
        if self.start >= self.stop {
            return Err(AppError::usage(format!("sweep start {} must be below stop {}", self.start, self.stop)));
        }
        if self.steps < 2 {
            return Err(AppError::usage(format!("sweep needs at least 2 steps, got {}", self.steps)));
        }
        if self.variable == SweepVariable::NMolecules && (self.start < 1.0 || self.stop > f64::from(u32::MAX)) {
            return Err(AppError::usage("n_molecules sweep must stay within [1, 2^32)"));
        }
        Ok(())
    }

    /// Grid values in increasing order. Endpoints are exact. Molecule
    /// counts are rounded to integers and duplicates dropped.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        let mut values: Vec<f64> = (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.steps - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect();
        if self.variable == SweepVariable::NMolecules {
            for v in &mut values {
                *v = v.round();
            }
            values.dedup();
        }
        values
    }
}

impl FromStr for SweepSpec {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(AppError::usage(format!("sweep {s:?} is not VAR:START:STOP:STEPS[:log]")));
        }
        let num = |p: &str| {
            p.trim().parse::<f64>().map_err(|_| AppError::usage(format!("sweep bound {p:?} is not a number")))
        };
        let steps = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| AppError::usage(format!("sweep steps {:?} is not a positive integer", parts[3])))?;
        let scale = match parts.get(4).map(|p| p.trim()) {
            None | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(other) => return Err(AppError::usage(format!("unknown sweep scale {other:?}"))),
        };
        SweepSpec::new(parts[0].trim().parse()?, num(parts[1])?, num(parts[2])?, steps, scale)
    }
}

/// Output columns, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    Curve,
    CurveValue,
    Param,
    Value,
    LambdaPlus,
    LambdaMinus,
    LambdaB1,
    LambdaB2,
    LambdaUnstable,
    S,
    Kappa,
    KappaStar,
    KappaGh,
    KappaZpe,
    KappaInterp,
    KappaCentroid,
    DeltaG,
    LambdaPlusP,
    LambdaMinusP,
    LambdaBP,
    LambdaUnstableP,
    SumWellP,
    SP,
    Phi1,
    SelectivityEst,
    Status,
}

impl Column {
    pub const ALL: [Column; 26] = [
        Column::Curve,
        Column::CurveValue,
        Column::Param,
        Column::Value,
        Column::LambdaPlus,
        Column::LambdaMinus,
        Column::LambdaB1,
        Column::LambdaB2,
        Column::LambdaUnstable,
        Column::S,
        Column::Kappa,
        Column::KappaStar,
        Column::KappaGh,
        Column::KappaZpe,
        Column::KappaInterp,
        Column::KappaCentroid,
        Column::DeltaG,
        Column::LambdaPlusP,
        Column::LambdaMinusP,
        Column::LambdaBP,
        Column::LambdaUnstableP,
        Column::SumWellP,
        Column::SP,
        Column::Phi1,
        Column::SelectivityEst,
        Column::Status,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Curve => "curve",
            Column::CurveValue => "curve_value",
            Column::Param => "param",
            Column::Value => "value",
            Column::LambdaPlus => "lambda_plus",
            Column::LambdaMinus => "lambda_minus",
            Column::LambdaB1 => "lambda_b1",
            Column::LambdaB2 => "lambda_b2",
            Column::LambdaUnstable => "lambda_unstable",
            Column::S => "S",
            Column::Kappa => "kappa",
            Column::KappaStar => "kappa_star",
            Column::KappaGh => "kappa_gh",
            Column::KappaZpe => "kappa_zpe",
            Column::KappaInterp => "kappa_interp",
            Column::KappaCentroid => "kappa_centroid",
            Column::DeltaG => "delta_g",
            Column::LambdaPlusP => "lambda_plus_p",
            Column::LambdaMinusP => "lambda_minus_p",
            Column::LambdaBP => "lambda_b_p",
            Column::LambdaUnstableP => "lambda_unstable_p",
            Column::SumWellP => "sum_well_p",
            Column::SP => "S_p",
            Column::Phi1 => "phi1",
            Column::SelectivityEst => "selectivity_est",
            Column::Status => "status",
        }
    }

    pub fn is_perturbative(self) -> bool {
        matches!(
            self,
            Column::LambdaPlusP
                | Column::LambdaMinusP
                | Column::LambdaBP
                | Column::LambdaUnstableP
                | Column::SumWellP
                | Column::SP
        )
    }

    pub fn needs_second_channel(self) -> bool {
        matches!(self, Column::Phi1 | Column::SelectivityEst)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Column {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self, AppError> {
        Column::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Column::ALL.iter().map(|c| c.name()).collect();
            AppError::usage(format!("unknown column {s:?}; valid columns: {}", names.join(", ")))
        })
    }
}

/// One table cell. Empty cells mark values that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Num(f64),
    Text(String),
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// Label of one curve in a multi-curve table.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub value: Cell,
}

/// Everything needed to evaluate one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub reaction: ReactionParams,
    pub cavity: CavitySetup,
    pub sweep: SweepSpec,
    pub columns: Vec<Column>,
    pub include_perturbative: bool,
    pub include_centroid: bool,
    /// In an `eta` sweep, move `η‡` together with `η`.
    pub tie_eta_b: bool,
    /// Competing channel for `phi1` and `selectivity_est`. Channel 1 is
    /// the barrier in `reaction`.
    pub second_channel: Option<ChannelSpec>,
    pub curve: Option<Curve>,
}

impl RunConfig {
    pub fn new(reaction: ReactionParams, cavity: CavitySetup, sweep: SweepSpec) -> Self {
        let mut cfg = RunConfig {
            reaction,
            cavity,
            sweep,
            columns: Vec::new(),
            include_perturbative: false,
            include_centroid: false,
            tie_eta_b: false,
            second_channel: None,
            curve: None,
        };
        cfg.columns = cfg.default_columns();
        cfg
    }

    /// Every column this configuration can fill, in canonical order.
    pub fn default_columns(&self) -> Vec<Column> {
        Column::ALL
            .into_iter()
            .filter(|c| match c {
                Column::Curve | Column::CurveValue => self.curve.is_some(),
                Column::KappaCentroid => self.include_centroid,
                c if c.is_perturbative() => self.include_perturbative,
                c if c.needs_second_channel() => self.second_channel.is_some(),
                _ => true,
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), AppError> {
        let usage = |e: cavity_tst_core::Error| AppError::usage(e.to_string());
        self.reaction.validate().map_err(usage)?;
        self.cavity.validate().map_err(usage)?;
        self.sweep.validate()?;
        if self.columns.is_empty() {
            return Err(AppError::usage("no output columns selected"));
        }
        for c in &self.columns {
            if c.is_perturbative() && !self.include_perturbative {
                return Err(AppError::usage(format!("column {c} needs --with-perturbative")));
            }
            if *c == Column::KappaCentroid && !self.include_centroid {
                return Err(AppError::usage("column kappa_centroid needs --with-centroid"));
            }
            if c.needs_second_channel() && self.second_channel.is_none() {
                return Err(AppError::usage(format!("column {c} needs a second reaction channel")));
            }
        }
        Ok(())
    }

    /// Parameters at one grid value.
    fn at(&self, x: f64) -> (ReactionParams, CavitySetup) {
        let mut rp = self.reaction;
        let mut cs = self.cavity;
        match self.sweep.variable {
            SweepVariable::OmegaC => cs.omega_c = x,
            SweepVariable::Beta => cs.beta = x,
            SweepVariable::Eta => {
                rp.eta = x;
                if self.tie_eta_b {
                    rp.eta_b = x;
                }
            }
            SweepVariable::NMolecules => cs.n_molecules = x as u32,
        }
        (rp, cs)
    }
}

/// Sweep output: one row per grid point, cells aligned with `columns`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Name of the preset that produced the rows, if any.
    pub preset: Option<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column_index(&self, c: Column) -> Option<usize> {
        self.columns.iter().position(|&x| x == c)
    }

    /// Numeric values of one column; non-numeric cells become `None`.
    pub fn numbers(&self, c: Column) -> Vec<Option<f64>> {
        let Some(i) = self.column_index(c) else { return Vec::new() };
        self.rows
            .iter()
            .map(|r| match r[i] {
                Cell::Num(v) => Some(v),
                _ => None,
            })
            .collect()
    }
}

#[derive(Default)]
struct Point {
    lambda_plus: Option<f64>,
    lambda_minus: Option<f64>,
    lambda_b1: Option<f64>,
    lambda_b2: Option<f64>,
    lambda_unstable: Option<f64>,
    breakdown: Option<CorrectionBreakdown>,
    pert: Option<PerturbativeReport>,
    phi1: Option<f64>,
    selectivity: Option<f64>,
    flags: Vec<&'static str>,
}

impl Point {
    fn flag(&mut self, f: &'static str) {
        if !self.flags.contains(&f) {
            self.flags.push(f);
        }
    }
}

fn compute(cfg: &RunConfig, x: f64) -> Point {
    let (rp, cs) = cfg.at(x);
    let mut p = Point::default();
    match (well_spectrum(&rp, &cs), barrier_spectrum(&rp, &cs)) {
        (Ok(ws), Ok(bs)) => {
            p.lambda_plus = Some(ws.lambda_plus);
            p.lambda_minus = Some(ws.lambda_minus);
            p.lambda_b1 = bs.stable.first().copied();
            p.lambda_b2 = bs.stable.get(1).copied();
            p.lambda_unstable = Some(bs.lambda_unstable);
            match CorrectionBreakdown::from_spectra(&ws, &bs, &rp, cs.beta) {
                Ok(b) => {
                    if cfg.include_centroid && b.kappa_centroid.is_none() {
                        p.flag("crossover");
                    }
                    p.breakdown = Some(b);
                }
                Err(_) => p.flag("error"),
            }
        }
        _ => p.flag("error"),
    }
    if cfg.include_perturbative {
        match perturbative_report(&rp, &cs) {
            Ok(r) => {
                if !r.valid {
                    p.flag("resonance");
                }
                p.pert = Some(r);
            }
            Err(_) => p.flag("error"),
        }
    }
    if let Some(ch2) = cfg.second_channel {
        let ch1 = ChannelSpec { omega_b: rp.omega_b, eta_b: rp.eta_b, e_a: rp.e_a };
        let shared = SharedConditions {
            omega: rp.omega,
            eta: rp.eta,
            omega_c: cs.omega_c,
            beta: cs.beta,
            n_molecules: cs.n_molecules,
            mode: cs.mode,
        };
        match (branching_ratio(&ch1, &ch2, &shared), selectivity_estimate(&ch1, &ch2, &shared)) {
            (Ok(phi), Ok(sel)) => {
                p.phi1 = Some(phi);
                p.selectivity = Some(sel);
            }
            _ => p.flag("error"),
        }
    }
    p
}

/// Evaluates one grid point into cells for `cfg.columns`.
pub fn evaluate_point(cfg: &RunConfig, x: f64) -> Vec<Cell> {
    let p = compute(cfg, x);
    let b = p.breakdown.as_ref();
    let r = p.pert.as_ref();
    cfg.columns
        .iter()
        .map(|c| match c {
            Column::Curve => cfg.curve.as_ref().map_or(Cell::Empty, |c| Cell::Text(c.name.clone())),
            Column::CurveValue => cfg.curve.as_ref().map_or(Cell::Empty, |c| c.value.clone()),
            Column::Param => Cell::Text(cfg.sweep.variable.name().to_string()),
            Column::Value => Cell::Num(x),
            Column::LambdaPlus => p.lambda_plus.into(),
            Column::LambdaMinus => p.lambda_minus.into(),
            Column::LambdaB1 => p.lambda_b1.into(),
            Column::LambdaB2 => p.lambda_b2.into(),
            Column::LambdaUnstable => p.lambda_unstable.into(),
            Column::S => b.map(|b| b.s_shift).into(),
            Column::Kappa => b.map(|b| b.kappa).into(),
            Column::KappaStar => b.map(|b| b.kappa_star).into(),
            Column::KappaGh => b.map(|b| b.kappa_gh).into(),
            Column::KappaZpe => b.map(|b| b.kappa_zpe).into(),
            Column::KappaInterp => b.map(|b| b.kappa_interp).into(),
            Column::KappaCentroid => b.and_then(|b| b.kappa_centroid).into(),
            Column::DeltaG => b.map(|b| b.delta_g).into(),
            Column::LambdaPlusP => r.and_then(|r| r.lambda_plus_p).into(),
            Column::LambdaMinusP => r.and_then(|r| r.lambda_minus_p).into(),
            Column::LambdaBP => r.map(|r| r.lambda_b_p).into(),
            Column::LambdaUnstableP => r.map(|r| r.lambda_unstable_p).into(),
            Column::SumWellP => r.map(|r| r.sum_well_p).into(),
            Column::SP => r.map(|r| r.s_shift_p).into(),
            Column::Phi1 => p.phi1.into(),
            Column::SelectivityEst => p.selectivity.into(),
            Column::Status => Cell::Text(if p.flags.is_empty() { "ok".to_string() } else { p.flags.join(";") }),
        })
        .collect()
}

fn rows(cfg: &RunConfig) -> Vec<Vec<Cell>> {
    // `collect` on an indexed parallel iterator keeps grid order.
    cfg.sweep.grid().par_iter().map(|&x| evaluate_point(cfg, x)).collect()
}

/// Evaluates every grid point, in parallel on the global thread pool.
pub fn run_sweep(cfg: &RunConfig) -> Result<Table, AppError> {
    cfg.validate()?;
    Ok(Table { preset: None, columns: cfg.columns.clone(), rows: rows(cfg) })
}

/// Runs several sweeps that share one column layout and concatenates
/// their rows. `threads = None` uses the global pool.
pub fn run_all(cfgs: &[RunConfig], threads: Option<usize>) -> Result<Table, AppError> {
    let first = cfgs.first().ok_or_else(|| AppError::usage("nothing to run"))?;
    for cfg in cfgs {
        cfg.validate()?;
        if cfg.columns != first.columns {
            return Err(AppError::usage("sweeps in one table must share their columns"));
        }
    }
    let body = || cfgs.iter().flat_map(rows).collect::<Vec<_>>();
    let rows = match threads {
        None => body(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| AppError::usage(format!("cannot start {n} worker threads: {e}")))?
            .install(body),
    };
    Ok(Table { preset: None, columns: first.columns.clone(), rows })
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(cfg: &RunConfig, threads: usize) -> Result<Table, AppError> {
    run_all(std::slice::from_ref(cfg), Some(threads))
}
