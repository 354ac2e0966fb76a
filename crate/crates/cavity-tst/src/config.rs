//! Run settings from a `key = value` file and the command line.
//!
//! File keys use the flag names with `_` for `-` (`omega_b`, `with_centroid`,
//! ...). Values given on the command line override the file.

use std::fs;
use std::path::{Path, PathBuf};

use cavity_tst_core::perturbation::{barrier_freqs_pert, well_freqs_pert, well_sum_pert, zpe_shift_pert};
use cavity_tst_core::spectrum::{barrier_spectrum, well_spectrum};
use cavity_tst_core::{CavitySetup, CorrectionBreakdown, CouplingMode, ReactionParams};

use crate::csv::format_number;
use crate::preset::{preset, Preset};
use crate::sweep::{Column, RunConfig, SweepSpec};
use crate::AppError;

pub const KEYS: [&str; 18] = [
    "preset",
    "omega",
    "omega_b",
    "eta",
    "eta_b",
    "e_a",
    "omega_c",
    "beta",
    "n",
    "mode",
    "sweep",
    "out",
    "plot_script",
    "with_perturbative",
    "with_centroid",
    "tie_eta",
    "columns",
    "threads",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub preset: Option<String>,
    pub omega: Option<f64>,
    pub omega_b: Option<f64>,
    pub eta: Option<f64>,
    pub eta_b: Option<f64>,
    pub e_a: Option<f64>,
    pub omega_c: Option<f64>,
    pub beta: Option<f64>,
    pub n: Option<u32>,
    pub mode: Option<CouplingMode>,
    pub sweep: Option<SweepSpec>,
    pub out: Option<PathBuf>,
    pub plot_script: Option<PathBuf>,
    pub with_perturbative: bool,
    pub with_centroid: bool,
    pub tie_eta: bool,
    pub columns: Option<Vec<Column>>,
    pub threads: Option<usize>,
}

/// What the tool should do once settings are merged.
#[derive(Debug, Clone, PartialEq)]
pub enum Plan {
    Preset(Box<Preset>),
    Sweep(Box<RunConfig>),
    Single { reaction: ReactionParams, cavity: CavitySetup, perturbative: bool, centroid: bool },
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, AppError> {
    v.parse().map_err(|_| AppError::usage(format!("{key}: cannot parse {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool, AppError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(AppError::usage(format!("{key}: expected true or false, got {v:?}"))),
    }
}

pub fn parse_mode(v: &str) -> Result<CouplingMode, AppError> {
    v.parse().map_err(|_| AppError::usage(format!("mode: expected incoherent or coherent, got {v:?}")))
}

pub fn parse_columns(v: &str) -> Result<Vec<Column>, AppError> {
    v.split(',').map(|c| c.trim().parse()).collect()
}

impl Settings {
    pub fn parse(text: &str) -> Result<Settings, AppError> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| AppError::usage(format!("config line {}: expected key = value", i + 1)))?;
            s.set(key.trim(), value.trim())
                .map_err(|e| AppError::usage(format!("config line {}: {}", i + 1, e.message())))?;
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Settings, AppError> {
        let text = fs::read_to_string(path).map_err(|source| AppError::Io { path: path.to_path_buf(), source })?;
        Settings::parse(&text)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<(), AppError> {
        match key {
            "preset" => self.preset = Some(v.to_string()),
            "omega" => self.omega = Some(parse_num(key, v)?),
            "omega_b" => self.omega_b = Some(parse_num(key, v)?),
            "eta" => self.eta = Some(parse_num(key, v)?),
            "eta_b" => self.eta_b = Some(parse_num(key, v)?),
            "e_a" => self.e_a = Some(parse_num(key, v)?),
            "omega_c" => self.omega_c = Some(parse_num(key, v)?),
            "beta" => self.beta = Some(parse_num(key, v)?),
            "n" => self.n = Some(parse_num(key, v)?),
            "mode" => self.mode = Some(parse_mode(v)?),
            "sweep" => self.sweep = Some(v.parse()?),
            "out" => self.out = Some(PathBuf::from(v)),
            "plot_script" => self.plot_script = Some(PathBuf::from(v)),
            "with_perturbative" => self.with_perturbative = parse_bool(key, v)?,
            "with_centroid" => self.with_centroid = parse_bool(key, v)?,
            "tie_eta" => self.tie_eta = parse_bool(key, v)?,
            "columns" => self.columns = Some(parse_columns(v)?),
            "threads" => self.threads = Some(parse_num(key, v)?),
            _ => return Err(AppError::usage(format!("unknown key {key:?}; valid keys: {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// `over` wins wherever it sets a value. Switches are on if either side
    /// turns them on.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            preset: over.preset.or(self.preset),
            omega: over.omega.or(self.omega),
            omega_b: over.omega_b.or(self.omega_b),
            eta: over.eta.or(self.eta),
            eta_b: over.eta_b.or(self.eta_b),
            e_a: over.e_a.or(self.e_a),
            omega_c: over.omega_c.or(self.omega_c),
            beta: over.beta.or(self.beta),
            n: over.n.or(self.n),
            mode: over.mode.or(self.mode),
            sweep: over.sweep.or(self.sweep),
            out: over.out.or(self.out),
            plot_script: over.plot_script.or(self.plot_script),
            with_perturbative: over.with_perturbative || self.with_perturbative,
            with_centroid: over.with_centroid || self.with_centroid,
            tie_eta: over.tie_eta || self.tie_eta,
            columns: over.columns.or(self.columns),
            threads: over.threads.or(self.threads),
        }
    }

    /// Physics settings that a preset fixes itself.
    fn physics_keys(&self) -> Vec<&'static str> {
        let set = [
            ("omega", self.omega.is_some()),
            ("omega_b", self.omega_b.is_some()),
            ("eta", self.eta.is_some()),
            ("eta_b", self.eta_b.is_some()),
            ("e_a", self.e_a.is_some()),
            ("omega_c", self.omega_c.is_some()),
            ("beta", self.beta.is_some()),
            ("n", self.n.is_some()),
            ("mode", self.mode.is_some()),
            ("sweep", self.sweep.is_some()),
            ("with_perturbative", self.with_perturbative),
            ("with_centroid", self.with_centroid),
            ("tie_eta", self.tie_eta),
            ("columns", self.columns.is_some()),
        ];
        set.into_iter().filter(|&(_, on)| on).map(|(k, _)| k).collect()
    }

    /// Defaults: `ω = 1`, `ω‡ = 0.5`, `η = η‡ = 0.1`, `E_a = 0`, `ω_c = 1`,
    /// `β = 10`, one molecule.
    pub fn reaction(&self) -> ReactionParams {
        ReactionParams {
            omega: self.omega.unwrap_or(1.0),
            omega_b: self.omega_b.unwrap_or(0.5),
            e_a: self.e_a.unwrap_or(0.0),
            eta: self.eta.unwrap_or(0.1),
            eta_b: self.eta_b.unwrap_or(0.1),
        }
    }

    pub fn cavity(&self) -> CavitySetup {
        CavitySetup {
            omega_c: self.omega_c.unwrap_or(1.0),
            n_molecules: self.n.unwrap_or(1),
            mode: self.mode.unwrap_or_default(),
            beta: self.beta.unwrap_or(10.0),
        }
    }

    pub fn plan(&self) -> Result<Plan, AppError> {
        if self.threads == Some(0) {
            return Err(AppError::usage("threads must be at least 1"));
        }
        if let Some(name) = &self.preset {
            let clash = self.physics_keys();
            if !clash.is_empty() {
                return Err(AppError::usage(format!("a preset fixes its own parameters; remove {}", clash.join(", "))));
            }
            return Ok(Plan::Preset(Box::new(preset(name)?)));
        }
        if self.plot_script.is_some() {
            return Err(AppError::usage("--plot-script needs --preset"));
        }
        let Some(sweep) = self.sweep else {
            if self.columns.is_some() || self.tie_eta {
                return Err(AppError::usage("--columns and --tie-eta need --sweep"));
            }
            return Ok(Plan::Single {
                reaction: self.reaction(),
                cavity: self.cavity(),
                perturbative: self.with_perturbative,
                centroid: self.with_centroid,
            });
        };
        let mut cfg = RunConfig::new(self.reaction(), self.cavity(), sweep);
        cfg.include_perturbative = self.with_perturbative;
        cfg.include_centroid = self.with_centroid;
        cfg.tie_eta_b = self.tie_eta;
        cfg.columns = match &self.columns {
            Some(c) => c.clone(),
            None => cfg.default_columns(),
        };
        cfg.validate()?;
        Ok(Plan::Sweep(Box::new(cfg)))
    }
}

impl AppError {
    fn message(&self) -> String {
        match self {
            AppError::Usage(m) => m.clone(),
            other => other.to_string(),
        }
    }
}

/// Labeled values for one parameter point. Quantities that cannot be
/// evaluated here (crossover, resonance) are errors rather than gaps.
pub fn single_point(
    rp: &ReactionParams,
    cs: &CavitySetup,
    perturbative: bool,
    centroid: bool,
) -> Result<Vec<(&'static str, String)>, AppError> {
    rp.validate()?;
    cs.validate()?;
    let ws = well_spectrum(rp, cs)?;
    let bs = barrier_spectrum(rp, cs)?;
    let b = CorrectionBreakdown::from_spectra(&ws, &bs, rp, cs.beta)?;
    let num = |v: f64| format_number(v);
    let mut out = vec![("lambda_plus", num(ws.lambda_plus)), ("lambda_minus", num(ws.lambda_minus))];
    out.push(("lambda_b1", num(bs.stable[0])));
    if let Some(&l2) = bs.stable.get(1) {
        out.push(("lambda_b2", num(l2)));
    }
    out.extend([
        ("lambda_unstable", num(bs.lambda_unstable)),
        ("S", num(b.s_shift)),
        ("kappa", num(b.kappa)),
        ("kappa_star", num(b.kappa_star)),
        ("kappa_gh", num(b.kappa_gh)),
        ("kappa_zpe", num(b.kappa_zpe)),
        ("kappa_interp", num(b.kappa_interp)),
    ]);
    if centroid {
        let k = match b.kappa_centroid {
            Some(k) => k,
            // Recompute through the core routine to surface its error.
            None => cavity_tst_core::rates::kappa_centroid(&ws, &bs, cs.beta, rp.omega, rp.omega_b)?,
        };
        out.push(("kappa_centroid", num(k)));
    }
    out.push(("delta_g", num(b.delta_g)));
    if perturbative {
        let (plus, minus) = well_freqs_pert(rp, cs)?;
        let (lb, lu) = barrier_freqs_pert(rp, cs)?;
        out.extend([
            ("lambda_plus_p", num(plus)),
            ("lambda_minus_p", num(minus)),
            ("lambda_b_p", num(lb)),
            ("lambda_unstable_p", num(lu)),
            ("sum_well_p", num(well_sum_pert(rp, cs)?)),
            ("S_p", num(zpe_shift_pert(rp, cs)?)),
        ]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_comments() {
        let s = Settings::parse(
            "# test point\nomega_c = 1.2   # detuned\nbeta=5\nmode = coherent\nn = 4\n\nwith_centroid = true\nsweep = omega_c:0.5:2:10\n",
        )
        .unwrap();
        assert_eq!(s.omega_c, Some(1.2));
        assert_eq!(s.beta, Some(5.0));
        assert_eq!(s.mode, Some(CouplingMode::Coherent));
        assert_eq!(s.n, Some(4));
        assert!(s.with_centroid);
        assert_eq!(s.sweep.unwrap().steps, 10);
    }

    #[test]
    fn rejects_bad_lines() {
        for bad in ["omega_d = 1", "omega", "beta = hot", "mode = both", "with_centroid = maybe"] {
            let err = Settings::parse(bad).unwrap_err();
            assert!(matches!(err, AppError::Usage(ref m) if m.starts_with("config line 1")), "{bad}: {err}");
        }
    }

    #[test]
    fn command_line_overrides_file() {
        let file = Settings::parse("beta = 5\nomega_c = 2\nwith_perturbative = true").unwrap();
        let cli = Settings { beta: Some(8.0), ..Settings::default() };
        let s = file.overlay(cli);
        assert_eq!((s.beta, s.omega_c, s.with_perturbative), (Some(8.0), Some(2.0), true));
    }

    #[test]
    fn preset_rejects_physics_overrides() {
        let s = Settings { preset: Some("fig1".into()), beta: Some(3.0), ..Settings::default() };
        assert!(matches!(s.plan(), Err(AppError::Usage(m)) if m.contains("beta")));
        let s = Settings { preset: Some("fig1".into()), threads: Some(2), ..Settings::default() };
        assert!(matches!(s.plan(), Ok(Plan::Preset(_))));
    }

    #[test]
    fn plans() {
        assert!(matches!(Settings::default().plan(), Ok(Plan::Single { .. })));
        let s = Settings { sweep: Some("beta:1:5:3".parse().unwrap()), ..Settings::default() };
        assert!(matches!(s.plan(), Ok(Plan::Sweep(_))));
        let s = Settings { plot_script: Some("p.py".into()), ..Settings::default() };
        assert!(matches!(s.plan(), Err(AppError::Usage(_))));
        let s = Settings {
            sweep: Some("beta:1:5:3".parse().unwrap()),
            columns: Some(vec![Column::SP]),
            ..Settings::default()
        };
        assert!(matches!(s.plan(), Err(AppError::Usage(_))));
    }

    #[test]
    fn single_point_at_default() {
        let s = Settings::default();
        let lines = single_point(&s.reaction(), &s.cavity(), false, false).unwrap();
        let kappa = &lines.iter().find(|(k, _)| *k == "kappa").unwrap().1;
        assert!(kappa.starts_with("9.704086341"), "{kappa}");
        assert!(!lines.iter().any(|(k, _)| *k == "lambda_b2"));
    }

    #[test]
    fn single_point_errors_are_domain() {
        let s = Settings::default();
        let mut cs = s.cavity();
        cs.beta = 13.0;
        assert!(matches!(single_point(&s.reaction(), &cs, false, true), Err(AppError::Domain(_))));
        assert!(matches!(single_point(&s.reaction(), &s.cavity(), true, false), Err(AppError::Domain(_))));
        let rp = ReactionParams { eta: -0.1, ..s.reaction() };
        assert!(matches!(single_point(&rp, &s.cavity(), false, false), Err(AppError::Domain(_))));
    }
}
