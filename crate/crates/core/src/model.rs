//! Reaction and cavity parameters, and conversions between the coupling
//! representations (`η`, `g`, Rabi frequency, `J²`, `B`).
//!
//! `η` is the invariant the experiments control: tuning the cavity length
//! changes `ω_c` at fixed `η`, so the dimensionless coupling
//! `g = 2η√(ω/ω_c)` has to be recomputed at every cavity frequency.

use crate::error::{non_negative, positive, Error, Result};
use crate::math::sqrt;

/// Bare molecular quantities of one reaction channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReactionParams {
    /// Vibrational frequency in the reactant well.
    pub omega: f64,
    /// Magnitude of the imaginary barrier frequency `ω‡`.
    pub omega_b: f64,
    /// Activation energy `E_a`. It is not modified by the cavity.
    pub e_a: f64,
    /// Well coupling strength `η`.
    pub eta: f64,
    /// Barrier coupling strength `η‡`, independent of `η`.
    pub eta_b: f64,
}

impl ReactionParams {
    pub fn new(omega: f64, omega_b: f64, e_a: f64, eta: f64, eta_b: f64) -> Result<Self> {
        let rp = ReactionParams { omega, omega_b, e_a, eta, eta_b };
        rp.validate()?;
        Ok(rp)
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        positive("omega_b", self.omega_b)?;
        non_negative("e_a", self.e_a)?;
        non_negative("eta", self.eta)?;
        non_negative("eta_b", self.eta_b)?;
        Ok(())
    }

    /// Copy of `self` with both couplings set to zero.
    pub fn uncoupled(&self) -> Self {
        ReactionParams { eta: 0.0, eta_b: 0.0, ..*self }
    }
}

/// How the barrier crossing of an `N`-molecule ensemble is described.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CouplingMode {
    /// One molecule crosses while the other `N − 1` stay in the well.
    #[default]
    Incoherent,
    /// The bright collective mode crosses, with couplings scaled by `√N`.
    Coherent,
}

impl CouplingMode {
    pub fn name(self) -> &'static str {
        match self {
            CouplingMode::Incoherent => "incoherent",
            CouplingMode::Coherent => "coherent",
        }
    }
}

impl core::str::FromStr for CouplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incoherent" => Ok(CouplingMode::Incoherent),
            "coherent" => Ok(CouplingMode::Coherent),
            _ => Err(Error::Domain { name: "mode", value: f64::NAN, requirement: "one of incoherent, coherent" }),
        }
    }
}

/// Cavity, ensemble size and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavitySetup {
    pub omega_c: f64,
    pub n_molecules: u32,
    pub mode: CouplingMode,
    /// Inverse temperature in inverse reference-frequency units (`ħ = 1`).
    pub beta: f64,
}

impl CavitySetup {
    pub fn new(omega_c: f64, n_molecules: u32, mode: CouplingMode, beta: f64) -> Result<Self> {
        let cs = CavitySetup { omega_c, n_molecules, mode, beta };
        cs.validate()?;
        Ok(cs)
    }

    /// Single molecule, incoherent mode.
    pub fn single(omega_c: f64, beta: f64) -> Result<Self> {
        Self::new(omega_c, 1, CouplingMode::Incoherent, beta)
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega_c", self.omega_c)?;
        positive("beta", self.beta)?;
        if self.n_molecules == 0 {
            return Err(Error::Domain { name: "n_molecules", value: 0.0, requirement: "an integer >= 1" });
        }
        Ok(())
    }

    pub fn with_omega_c(self, omega_c: f64) -> Self {
        CavitySetup { omega_c, ..self }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        CavitySetup { beta, ..self }
    }

    pub fn with_molecules(self, n_molecules: u32, mode: CouplingMode) -> Self {
        CavitySetup { n_molecules, mode, ..self }
    }
}

/// All coupling representations at one cavity frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    /// Well coupling `g = 2η√(ω/ω_c)`.
    pub g: f64,
    /// Barrier coupling `g‡ = 2η‡√(ω/ω_c)`.
    pub g_b: f64,
    /// `J² = g·ω_c²`.
    pub j_sq: f64,
    /// `B` defined by `g‡²ω_c² = B·ω_c`, i.e. `B = 4η‡²ω`.
    pub b_param: f64,
}

impl CouplingSet {
    pub fn new(rp: &ReactionParams, omega_c: f64) -> Result<Self> {
        rp.validate()?;
        let g = coupling_g(rp.eta, rp.omega, omega_c)?;
        let g_b = coupling_g(rp.eta_b, rp.omega, omega_c)?;
        Ok(CouplingSet { g, g_b, j_sq: g * omega_c * omega_c, b_param: barrier_b_param(rp.eta_b, rp.omega) })
    }
}

/// `g = 2η√(ω/ω_c)`.
pub fn coupling_g(eta: f64, omega: f64, omega_c: f64) -> Result<f64> {
    non_negative("eta", eta)?;
    positive("omega", omega)?;
    positive("omega_c", omega_c)?;
    Ok(2.0 * eta * sqrt(omega / omega_c))
}

/// Rabi frequency `Ω_R = 2ω_c·η`.
pub fn rabi_frequency(eta: f64, omega_c: f64) -> Result<f64> {
    non_negative("eta", eta)?;
    positive("omega_c", omega_c)?;
    Ok(2.0 * omega_c * eta)
}

/// Inverse of [`rabi_frequency`]: `η = Ω_R / (2ω_c)`.
pub fn eta_from_rabi(omega_r: f64, omega_c: f64) -> Result<f64> {
    non_negative("omega_r", omega_r)?;
    positive("omega_c", omega_c)?;
    Ok(omega_r / (2.0 * omega_c))
}

/// Collective coupling of `n` identical molecules, `g_N = √N·g`.
pub fn collective_coupling(g: f64, n: u32) -> Result<f64> {
    non_negative("g", g)?;
    if n == 0 {
        return Err(Error::Domain { name: "n", value: 0.0, requirement: "an integer >= 1" });
    }
    if n == 1 {
        return Ok(g);
    }
    Ok(g * sqrt(f64::from(n)))
}

/// `B = 4η‡²ω`, the `ω_c`-independent factor in `g‡²ω_c² = B·ω_c`.
pub fn barrier_b_param(eta_b: f64, omega: f64) -> f64 {
    4.0 * eta_b * eta_b * omega
}
