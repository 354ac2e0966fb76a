//! Named sweep configurations (`fig1` ... `s4`) with their plot layout.
//!
//! Shared defaults: `ω = 1` (all quantities in units of `ω`), `ω‡ = 0.5`,
//! `E_a = 0`, `η = η‡ = 0.1`, one molecule, and 151 linear points for
//! `ω_c ∈ [0.25, 4]`. Curve sets marked "chosen set" in a description
//! (temperature lists, coupling lists, molecule counts) are defaults picked
//! for coverage, not fixed values.

use cavity_tst_core::{CavitySetup, ChannelSpec, CouplingMode, ReactionParams};

use crate::sweep::{run_all, Cell, Column, Curve, RunConfig, Scale, SweepSpec, SweepVariable, Table};
use crate::AppError;

pub const NAMES: [&str; 15] = [
    "fig1", "fig2a", "fig2b", "fig2c", "fig2d", "fig3", "fig4a", "fig4b", "fig4c", "fig5", "s1a", "s1b", "s2", "s3",
    "s4",
];

/// How the plot script should draw a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x_label: &'static str,
    pub y_columns: Vec<Column>,
    pub log_x: bool,
    /// Horizontal reference line.
    pub guide: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// One sweep per curve.
    pub runs: Vec<RunConfig>,
    pub plot: PlotSpec,
}

impl Preset {
    pub fn run(&self, threads: Option<usize>) -> Result<Table, AppError> {
        let mut table = run_all(&self.runs, threads)?;
        table.preset = Some(self.name.to_string());
        Ok(table)
    }
}

fn reaction(omega_b: f64, eta: f64) -> ReactionParams {
    ReactionParams { omega: 1.0, omega_b, e_a: 0.0, eta, eta_b: eta }
}

fn cavity(omega_c: f64, beta: f64) -> CavitySetup {
    CavitySetup { omega_c, n_molecules: 1, mode: CouplingMode::Incoherent, beta }
}

fn omega_c_grid() -> SweepSpec {
    SweepSpec::linear(SweepVariable::OmegaC, 0.25, 4.0, 151)
}

#[derive(Clone, Copy)]
struct Builder {
    reaction: ReactionParams,
    cavity: CavitySetup,
    sweep: SweepSpec,
    perturbative: bool,
    centroid: bool,
    tie: bool,
    channel: Option<ChannelSpec>,
}

impl Builder {
    fn new(reaction: ReactionParams, cavity: CavitySetup, sweep: SweepSpec) -> Self {
        Builder { reaction, cavity, sweep, perturbative: false, centroid: false, tie: false, channel: None }
    }

    fn config(&self, curve: Option<Curve>) -> RunConfig {
        let mut cfg = RunConfig::new(self.reaction, self.cavity, self.sweep);
        cfg.include_perturbative = self.perturbative;
        cfg.include_centroid = self.centroid;
        cfg.tie_eta_b = self.tie;
        cfg.second_channel = self.channel;
        cfg.curve = curve;
        cfg.columns = cfg.default_columns();
        cfg
    }

    /// One sweep per value, each tweaked by `set`.
    fn curves(&self, name: &str, values: &[f64], set: impl Fn(&mut Builder, f64)) -> Vec<RunConfig> {
        values
            .iter()
            .map(|&v| {
                let mut b = Builder { ..*self };
                set(&mut b, v);
                b.config(Some(Curve { name: name.to_string(), value: Cell::Num(v) }))
            })
            .collect()
    }

    fn single(&self) -> Vec<RunConfig> {
        vec![self.config(None)]
    }
}

fn plot(x_label: &'static str, y_columns: &[Column]) -> PlotSpec {
    PlotSpec { x_label, y_columns: y_columns.to_vec(), log_x: false, guide: None }
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<Preset, AppError> {
    let base = Builder::new(reaction(0.5, 0.1), cavity(1.0, 10.0), omega_c_grid());
    let set_beta = |b: &mut Builder, v: f64| b.cavity.beta = v;
    let set_eta = |b: &mut Builder, v: f64| {
        b.reaction.eta = v;
        b.reaction.eta_b = v;
    };
    let set_n = |b: &mut Builder, v: f64| b.cavity.n_molecules = v as u32;
    let p = match name {
        "fig1" => Preset {
            name: "fig1",
            description: "kappa, kappa_GH and kappa_ZPE vs omega_c; curves beta in {1, 5, 10} (chosen set).",
            runs: base.curves("beta", &[1.0, 5.0, 10.0], set_beta),
            plot: plot("omega_c", &[Column::Kappa, Column::KappaGh, Column::KappaZpe]),
        },
        "fig2a" => Preset {
            name: "fig2a",
            description: "Well polariton frequencies lambda_+ and lambda_- vs omega_c at eta = 0.1, beta = 10.",
            runs: base.single(),
            plot: plot("omega_c", &[Column::LambdaPlus, Column::LambdaMinus]),
        },
        "fig2b" => Preset {
            name: "fig2b",
            description: "Exact and perturbative ZPE shift S vs omega_c at beta = 10; \
                          curves eta = eta_b in {0.05, 0.1, 0.15} (chosen set).",
            runs: Builder { perturbative: true, ..base }.curves("eta", &[0.05, 0.1, 0.15], set_eta),
            plot: plot("omega_c", &[Column::S, Column::SP]),
        },
        "fig2c" => Preset {
            name: "fig2c",
            description: "kappa vs omega_c at beta = 10; curves eta = eta_b in {0.05, 0.1, 0.15} (chosen set).",
            runs: base.curves("eta", &[0.05, 0.1, 0.15], set_eta),
            plot: plot("omega_c", &[Column::Kappa]),
        },
        "fig2d" => Preset {
            name: "fig2d",
            description: "kappa vs eta = eta_b in [0.01, 0.2] (151 points) at omega_c = 1, beta = 10.",
            runs: Builder { tie: true, sweep: SweepSpec::linear(SweepVariable::Eta, 0.01, 0.2, 151), ..base }.single(),
            plot: plot("eta", &[Column::Kappa]),
        },
        "fig3" => Preset {
            name: "fig3",
            description: "Branching ratio phi_1 vs omega_c in [0.1, 4] (151 points) at beta = 5. \
                          Channel 1: omega_b = 0.5, eta_b = 0.1; channel 2: omega_b = 1.2 with \
                          curves eta_b2 in {0.10, 0.11, 0.12}; eta = 0.1, equal activation energies.",
            runs: Builder {
                cavity: cavity(1.0, 5.0),
                sweep: SweepSpec::linear(SweepVariable::OmegaC, 0.1, 4.0, 151),
                channel: Some(ChannelSpec { omega_b: 1.2, eta_b: 0.1, e_a: 0.0 }),
                ..base
            }
            .curves("eta_b2", &[0.10, 0.11, 0.12], |b, v| {
                b.channel = Some(ChannelSpec { omega_b: 1.2, eta_b: v, e_a: 0.0 });
            }),
            plot: PlotSpec { guide: Some(0.5), ..plot("omega_c", &[Column::Phi1]) },
        },
        "fig4a" => Preset {
            name: "fig4a",
            description: "Incoherent kappa vs omega_c at beta = 10; curves N in {1, 4, 16, 64} (chosen set).",
            runs: base.curves("n_molecules", &[1.0, 4.0, 16.0, 64.0], set_n),
            plot: plot("omega_c", &[Column::Kappa]),
        },
        "fig4b" => Preset {
            name: "fig4b",
            description: "Coherent kappa vs omega_c at beta = 10 (effective coupling 0.1*sqrt(N)); \
                          curves N in {1, 2, 4, 8} (chosen set).",
            runs: Builder { cavity: CavitySetup { mode: CouplingMode::Coherent, ..base.cavity }, ..base }.curves(
                "n_molecules",
                &[1.0, 2.0, 4.0, 8.0],
                set_n,
            ),
            plot: plot("omega_c", &[Column::Kappa]),
        },
        "fig4c" => Preset {
            name: "fig4c",
            description: "kappa vs N in {1, 2, 4, 8, 16, 32} (chosen set) at omega_c = 1, beta = 10; \
                          one curve per coupling mode.",
            runs: [CouplingMode::Incoherent, CouplingMode::Coherent]
                .into_iter()
                .map(|mode| {
                    let b = Builder {
                        cavity: CavitySetup { mode, ..base.cavity },
                        sweep: SweepSpec {
                            scale: Scale::Log,
                            ..SweepSpec::linear(SweepVariable::NMolecules, 1.0, 32.0, 6)
                        },
                        ..base
                    };
                    b.config(Some(Curve { name: "mode".into(), value: Cell::Text(mode.name().into()) }))
                })
                .collect(),
            plot: PlotSpec { log_x: true, ..plot("N", &[Column::Kappa]) },
        },
        "fig5" => Preset {
            name: "fig5",
            description: "Centroid correction kappa_centroid vs omega_c; curves beta in {2, 5, 10, 12} (chosen set). \
                          Points at or below the crossover temperature are left empty.",
            runs: Builder { centroid: true, ..base }.curves("beta", &[2.0, 5.0, 10.0, 12.0], set_beta),
            plot: plot("omega_c", &[Column::KappaCentroid]),
        },
        "s1a" => Preset {
            name: "s1a",
            description: "kappa vs omega_c; curves beta in {0.1, 1, 10, 50} (chosen set).",
            runs: base.curves("beta", &[0.1, 1.0, 10.0, 50.0], set_beta),
            plot: plot("omega_c", &[Column::Kappa]),
        },
        "s1b" => Preset {
            name: "s1b",
            description: "kappa vs beta in [0.1, 50] (151 log-spaced points) at omega_c = 1.",
            runs: Builder {
                sweep: SweepSpec { scale: Scale::Log, ..SweepSpec::linear(SweepVariable::Beta, 0.1, 50.0, 151) },
                ..base
            }
            .single(),
            plot: PlotSpec { log_x: true, ..plot("beta", &[Column::Kappa]) },
        },
        "s2" => Preset {
            name: "s2",
            description: "Exact and perturbative S and lambda_unstable vs omega_c at beta = 10; \
                          curves eta = eta_b in {0.025, 0.05, 0.1} (chosen set).",
            runs: Builder { perturbative: true, ..base }.curves("eta", &[0.025, 0.05, 0.1], set_eta),
            plot: plot("omega_c", &[Column::S, Column::SP, Column::LambdaUnstable, Column::LambdaUnstableP]),
        },
        "s3" => Preset {
            name: "s3",
            description: "Barrier frequency omega_b = 1.5: exact and perturbative S and kappa vs omega_c; \
                          curves beta in {1, 5, 10} (chosen set).",
            runs: Builder { reaction: reaction(1.5, 0.1), perturbative: true, ..base }.curves(
                "beta",
                &[1.0, 5.0, 10.0],
                set_beta,
            ),
            plot: plot("omega_c", &[Column::S, Column::SP, Column::Kappa]),
        },
        "s4" => Preset {
            name: "s4",
            description: "Incoherent ensembles: exact and perturbative S and lambda_unstable vs omega_c at \
                          beta = 10; curves N in {1, 4, 16, 64} (chosen set).",
            runs: Builder { perturbative: true, ..base }.curves("n_molecules", &[1.0, 4.0, 16.0, 64.0], set_n),
            plot: plot("omega_c", &[Column::S, Column::SP, Column::LambdaUnstable, Column::LambdaUnstableP]),
        },
        _ => return Err(AppError::usage(format!("unknown preset {name:?}; valid presets: {}", NAMES.join(", ")))),
    };
    Ok(p)
}
