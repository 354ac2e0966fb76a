//! Rate constants and cavity correction factors.
//!
//! Correction factors compare the cavity-dressed TST rate with the bare
//! single-mode rate `k_TST = (1/πβ)·sinh(ωβ/2)·e^{−βE_a}`. Every sinh
//! product is assembled in the log domain. Frequencies that appear on both
//! sides of a ratio are cancelled before any transcendental function is
//! evaluated, so dark modes never cost precision and `κ = 1` is exact in
//! the uncoupled limit.

use alloc::vec::Vec;

use crate::error::{positive, Error, Result};
use crate::math::{exp, ln_one_minus_exp_neg, ln_sinh, log, sin, PI};
use crate::model::{CavitySetup, CouplingMode, ReactionParams};
use crate::perturbation::zpe_shift_pert;
use crate::spectrum::{barrier_spectrum, well_spectrum, BarrierSpectrum, WellSpectrum};

/// One reaction channel out of a shared reactant well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub omega_b: f64,
    pub eta_b: f64,
    pub e_a: f64,
}

impl ChannelSpec {
    /// Full parameter set of this channel in the shared well.
    pub fn reaction(&self, shared: &SharedConditions) -> Result<ReactionParams> {
        ReactionParams::new(shared.omega, self.omega_b, self.e_a, shared.eta, self.eta_b)
    }
}

/// Well, cavity and temperature shared by competing channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedConditions {
    pub omega: f64,
    pub eta: f64,
    pub omega_c: f64,
    pub beta: f64,
    pub n_molecules: u32,
    pub mode: CouplingMode,
}

impl SharedConditions {
    pub fn cavity(&self) -> Result<CavitySetup> {
        CavitySetup::new(self.omega_c, self.n_molecules, self.mode, self.beta)
    }
}

/// `(1/(πβ))·sinh(ωβ/2)·e^{−βE_a}`, with `ħ = 1` and `h = 2π`.
pub fn k_tst_single(omega: f64, e_a: f64, beta: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("beta", beta)?;
    crate::error::non_negative("e_a", e_a)?;
    Ok(exp(ln_sinh(0.5 * omega * beta) - beta * e_a) / (PI * beta))
}

/// Numerator (well) and denominator (barrier) frequencies of `κ` with
/// identical entries already removed from both lists.
fn ratio_frequencies(ws: &WellSpectrum, bs: &BarrierSpectrum, omega: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    // Well: λ₊, λ₋ and `dark_w` copies of ω. Barrier: stable modes,
    // `dark_b` copies of ω, and the bare ω of the reference rate.
    if ws.dark_count < bs.dark_count || 2 + ws.dark_count as usize != bs.stable.len() + bs.dark_count as usize + 1 {
        return Err(Error::InconsistentSpectra {
            well_dark: ws.dark_count,
            barrier_dark: bs.dark_count,
            barrier_stable: bs.stable.len(),
        });
    }
    let mut num = alloc::vec![ws.lambda_plus, ws.lambda_minus];
    let mut den = bs.stable.clone();
    if ws.dark_count == bs.dark_count {
        den.push(omega);
    }
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|&d| d == num[i]) {
            den.swap_remove(j);
            num.swap_remove(i);
        } else {
            i += 1;
        }
    }
    Ok((num, den))
}

/// Cavity ZPE shift `S = Σλ_well − Σλ_barrier,stable − ω`, dark modes
/// cancelled.
///
/// Single molecule and coherent ensembles give `λ₊ + λ₋ − λ_b − ω`; the
/// incoherent ensemble gives `λ₊ + λ₋ − λ_b+ − λ_b−`.
pub fn zpe_shift_exact(ws: &WellSpectrum, bs: &BarrierSpectrum, omega: f64) -> Result<f64> {
    positive("omega", omega)?;
    let (num, den) = ratio_frequencies(ws, bs, omega)?;
    Ok(num.iter().sum::<f64>() - den.iter().sum::<f64>())
}

/// `ln κ`, finite for any `β`.
pub fn ln_kappa(ws: &WellSpectrum, bs: &BarrierSpectrum, beta: f64, omega: f64) -> Result<f64> {
    positive("beta", beta)?;
    positive("omega", omega)?;
    let (num, den) = ratio_frequencies(ws, bs, omega)?;
    let half = 0.5 * beta;
    Ok(num.iter().map(|&l| ln_sinh(l * half)).sum::<f64>() - den.iter().map(|&l| ln_sinh(l * half)).sum::<f64>())
}

/// Correction factor `κ = Π sinh(λβ/2) / [sinh(ωβ/2) Π sinh(λ_bβ/2)]`.
pub fn kappa(ws: &WellSpectrum, bs: &BarrierSpectrum, beta: f64, omega: f64) -> Result<f64> {
    Ok(exp(ln_kappa(ws, bs, beta, omega)?))
}

/// `κ*`, the product of `(1 − e^{−λβ})` factors left after pulling the
/// ZPE exponent out of `κ`, so that `κ = κ*·e^{βS/2}`.
pub fn kappa_star(ws: &WellSpectrum, bs: &BarrierSpectrum, beta: f64, omega: f64) -> Result<f64> {
    positive("beta", beta)?;
    positive("omega", omega)?;
    let (num, den) = ratio_frequencies(ws, bs, omega)?;
    let ln = num.iter().map(|&l| ln_one_minus_exp_neg(l * beta)).sum::<f64>()
        - den.iter().map(|&l| ln_one_minus_exp_neg(l * beta)).sum::<f64>();
    Ok(exp(ln))
}

/// Grote–Hynes factor `λ‡/ω‡`, the high-temperature limit of `κ`.
pub fn kappa_gh(bs: &BarrierSpectrum, omega_b: f64) -> Result<f64> {
    positive("omega_b", omega_b)?;
    Ok(bs.lambda_unstable / omega_b)
}

/// `e^{βS/2}`, the low-temperature limit of `κ`.
pub fn kappa_zpe(s_shift: f64, beta: f64) -> Result<f64> {
    positive("beta", beta)?;
    Ok(exp(0.5 * beta * s_shift))
}

/// Free-energy shift `ΔG‡ = −ln κ / β`.
pub fn delta_g(kappa: f64, beta: f64) -> Result<f64> {
    positive("kappa", kappa)?;
    positive("beta", beta)?;
    Ok(-log(kappa) / beta)
}

fn below_crossover(name: &'static str, frequency: f64, beta: f64) -> Result<f64> {
    let x = 0.5 * frequency * beta;
    if x >= PI {
        return Err(Error::CrossoverTemperature { name, frequency, beta });
    }
    Ok(x)
}

/// Centroid-TST correction `(λ‡/ω‡)·sin(ω‡β/2)/sin(λ‡β/2)·κ`.
///
/// Fails with [`Error::CrossoverTemperature`] when `ω‡β/2` or `λ‡β/2`
/// reaches `π`.
pub fn kappa_centroid(ws: &WellSpectrum, bs: &BarrierSpectrum, beta: f64, omega: f64, omega_b: f64) -> Result<f64> {
    positive("beta", beta)?;
    positive("omega_b", omega_b)?;
    let xb = below_crossover("omega_b", omega_b, beta)?;
    let xl = below_crossover("lambda_unstable", bs.lambda_unstable, beta)?;
    let k = kappa(ws, bs, beta, omega)?;
    if bs.lambda_unstable == omega_b {
        return Ok(k);
    }
    Ok((bs.lambda_unstable / omega_b) * (sin(xb) / sin(xl)) * k)
}

/// Centroid TST rate `(ω‡/2π)·sinh(ωβ/2)/sin(ω‡β/2)·e^{−βE_a}`.
pub fn k_centroid_tst(omega: f64, omega_b: f64, e_a: f64, beta: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("omega_b", omega_b)?;
    positive("beta", beta)?;
    crate::error::non_negative("e_a", e_a)?;
    let xb = below_crossover("omega_b", omega_b, beta)?;
    Ok(omega_b / (2.0 * PI) * exp(ln_sinh(0.5 * omega * beta) - beta * e_a) / sin(xb))
}

/// `ln(k₂/k₁)` for two channels sharing one reactant well.
pub fn ln_rate_ratio(ch1: &ChannelSpec, ch2: &ChannelSpec, shared: &SharedConditions) -> Result<f64> {
    let cs = shared.cavity()?;
    let rp1 = ch1.reaction(shared)?;
    let rp2 = ch2.reaction(shared)?;
    let ws = well_spectrum(&rp1, &cs)?;
    let ln_k1 = ln_kappa(&ws, &barrier_spectrum(&rp1, &cs)?, cs.beta, shared.omega)?;
    let ln_k2 = ln_kappa(&ws, &barrier_spectrum(&rp2, &cs)?, cs.beta, shared.omega)?;
    Ok(ln_k2 - ln_k1 - cs.beta * (ch2.e_a - ch1.e_a))
}

/// Fraction of product formed through channel 1, `φ₁ = 1/(1 + k₂/k₁)`.
pub fn branching_ratio(ch1: &ChannelSpec, ch2: &ChannelSpec, shared: &SharedConditions) -> Result<f64> {
    let x = ln_rate_ratio(ch1, ch2, shared)?;
    // logistic of −x without overflow
    Ok(if x > 0.0 {
        let e = exp(-x);
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + exp(x))
    })
}

/// Perturbative estimate of `ln(k₂/k₁)/β`:
/// `(ω_c³/4)[g‡₁²/(ω_c² + ω‡₁²) − g‡₂²/(ω_c² + ω‡₂²)] + (E_a1 − E_a2)`.
///
/// Positive values favour channel 2.
pub fn selectivity_estimate(ch1: &ChannelSpec, ch2: &ChannelSpec, shared: &SharedConditions) -> Result<f64> {
    let cs = shared.cavity()?;
    let s1 = zpe_shift_pert(&ch1.reaction(shared)?, &cs)?;
    let s2 = zpe_shift_pert(&ch2.reaction(shared)?, &cs)?;
    Ok(0.5 * (s2 - s1) + (ch1.e_a - ch2.e_a))
}

/// Every correction factor at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionBreakdown {
    pub kappa: f64,
    pub kappa_star: f64,
    /// Exact ZPE shift `S`.
    pub s_shift: f64,
    pub kappa_gh: f64,
    pub kappa_zpe: f64,
    /// `κ_GH·e^{βS/2}`, a diagnostic interpolation between the two limits.
    pub kappa_interp: f64,
    /// `None` at or below the crossover temperature.
    pub kappa_centroid: Option<f64>,
    pub delta_g: f64,
}

impl CorrectionBreakdown {
    pub fn from_spectra(ws: &WellSpectrum, bs: &BarrierSpectrum, rp: &ReactionParams, beta: f64) -> Result<Self> {
        let ln_k = ln_kappa(ws, bs, beta, rp.omega)?;
        let s_shift = zpe_shift_exact(ws, bs, rp.omega)?;
        let kappa_gh = kappa_gh(bs, rp.omega_b)?;
        let kappa_zpe = kappa_zpe(s_shift, beta)?;
        let kappa_centroid = match kappa_centroid(ws, bs, beta, rp.omega, rp.omega_b) {
            Ok(v) => Some(v),
            Err(Error::CrossoverTemperature { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(CorrectionBreakdown {
            kappa: exp(ln_k),
            kappa_star: kappa_star(ws, bs, beta, rp.omega)?,
            s_shift,
            kappa_gh,
            kappa_zpe,
            kappa_interp: kappa_gh * kappa_zpe,
            kappa_centroid,
            delta_g: -ln_k / beta,
        })
    }

    pub fn compute(rp: &ReactionParams, cs: &CavitySetup) -> Result<Self> {
        let ws = well_spectrum(rp, cs)?;
        let bs = barrier_spectrum(rp, cs)?;
        Self::from_spectra(&ws, &bs, rp, cs.beta)
    }
}
