//! Leading-order (`g²`) expansions of the polariton frequencies and of the
//! ZPE shift, and the closed-form optimum of the unstable frequency.
//!
//! Expansion intermediates used below: the dressed molecular frequency
//! `ω_e = √(ω² + g²ω_c²)` and `J² = gω_c²`. The individual well frequencies
//! diverge at `ω = ω_c`; their sum and the ZPE shift do not.

use crate::error::{non_negative, positive, Error, Result};
use crate::math::{fabs, sqrt};
use crate::model::{collective_coupling, CavitySetup, CouplingMode, CouplingSet, ReactionParams};

/// Relative width of the excluded band around `ω = ω_c`, in units of `ω²`.
pub const RESONANCE_GUARD: f64 = 1e-3;

/// Region the three-mode expansion is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Well,
    Barrier,
}

/// All perturbative quantities at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeReport {
    /// `None` inside the resonance band.
    pub lambda_plus_p: Option<f64>,
    /// `None` inside the resonance band.
    pub lambda_minus_p: Option<f64>,
    pub lambda_b_p: f64,
    pub lambda_unstable_p: f64,
    pub sum_well_p: f64,
    pub s_shift_p: f64,
    /// False when the resonance guard suppressed the well frequencies.
    pub valid: bool,
}

fn resonance_guard(omega: f64, omega_c: f64) -> Result<()> {
    let detuning = fabs(omega * omega - omega_c * omega_c);
    let guard = RESONANCE_GUARD * omega * omega;
    if detuning < guard {
        return Err(Error::ResonanceDivergence { pair: "omega/omega_c", detuning, guard });
    }
    Ok(())
}

/// Well coupling for `cs`: collective `g√N` for `N > 1`.
fn well_g(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    cs.validate()?;
    collective_coupling(CouplingSet::new(rp, cs.omega_c)?.g, cs.n_molecules)
}

/// Barrier coupling of the two-mode barrier: `g‡√N` in coherent mode,
/// the single-molecule `g‡` otherwise.
fn barrier_g(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    cs.validate()?;
    let g_b = CouplingSet::new(rp, cs.omega_c)?.g_b;
    match cs.mode {
        CouplingMode::Coherent => collective_coupling(g_b, cs.n_molecules),
        CouplingMode::Incoherent => Ok(g_b),
    }
}

/// `(λ₊ᵖ, λ₋ᵖ)`:
///
/// ```text
/// λ₊ᵖ = ω_e + (gω_c)²ω_c² / (2ω(ω² − ω_c²))
/// λ₋ᵖ = ω_c − (gω_c)²ω_c  / (2(ω² − ω_c²))
/// ```
///
/// `λ₊ᵖ` follows the molecular branch and `λ₋ᵖ` the cavity branch, so for
/// `ω_c > ω` the first value is the lower one.
pub fn well_freqs_pert(rp: &ReactionParams, cs: &CavitySetup) -> Result<(f64, f64)> {
    let g = well_g(rp, cs)?;
    let (w, wc) = (rp.omega, cs.omega_c);
    resonance_guard(w, wc)?;
    let gwc2 = g * g * wc * wc;
    let detuning = w * w - wc * wc;
    let omega_e = sqrt(w * w + gwc2);
    Ok((omega_e + gwc2 * wc * wc / (2.0 * w * detuning), wc - gwc2 * wc / (2.0 * detuning)))
}

/// `ω + ω_c + g²ω_c²/(2(ω + ω_c))`, regular at resonance.
pub fn well_sum_pert(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    let g = well_g(rp, cs)?;
    let (w, wc) = (rp.omega, cs.omega_c);
    Ok(w + wc + g * g * wc * wc / (2.0 * (w + wc)))
}

/// `(λ_bᵖ, λ‡ᵖ)` of the two-mode barrier:
///
/// ```text
/// λ_bᵖ = ω_c + g‡²ω_c³ / (2(ω‡² + ω_c²))
/// λ‡ᵖ  = ω‡  − (g‡ω_c)²ω‡ / (2(ω‡² + ω_c²))
/// ```
pub fn barrier_freqs_pert(rp: &ReactionParams, cs: &CavitySetup) -> Result<(f64, f64)> {
    let g_b = barrier_g(rp, cs)?;
    let (wb, wc) = (rp.omega_b, cs.omega_c);
    let denom = 2.0 * (wb * wb + wc * wc);
    let gwc2 = g_b * g_b * wc * wc;
    Ok((wc + gwc2 * wc / denom, wb - gwc2 * wb / denom))
}

fn s_leading(g: f64, g_b: f64, rp: &ReactionParams, omega_c: f64) -> f64 {
    let wc = omega_c;
    let c2 = wc * wc;
    0.5 * c2 * wc * (g * g / (c2 + wc * rp.omega) - g_b * g_b / (c2 + rp.omega_b * rp.omega_b))
}

/// Leading-order ZPE shift
/// `S ≈ (ω_c³/2)[g²/(ω_c² + ω_cω) − g‡²/(ω_c² + ω‡²)]`.
///
/// In coherent mode both couplings carry the `√N` factor. In incoherent
/// mode the leading order does not depend on `N` and `S(1)` is returned.
pub fn zpe_shift_pert(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    cs.validate()?;
    let c = CouplingSet::new(rp, cs.omega_c)?;
    let (g, g_b) = match cs.mode {
        CouplingMode::Coherent => {
            (collective_coupling(c.g, cs.n_molecules)?, collective_coupling(c.g_b, cs.n_molecules)?)
        }
        CouplingMode::Incoherent => (c.g, c.g_b),
    };
    Ok(s_leading(g, g_b, rp, cs.omega_c))
}

/// Incoherent-ensemble ZPE shift to leading order. The `N`-dependence only
/// enters at `O(Ng⁴)`, so this is `S(1)` for every `N`.
pub fn zpe_shift_pert_n(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    zpe_shift_pert(rp, &cs.with_molecules(1, CouplingMode::Incoherent))
}

/// Leading-order frequencies of the three-mode model (reactive molecule,
/// bright mode of the other `N − 1` molecules, cavity), `N ≥ 2`.
///
/// Well region returns `(λ₁, λ_c, λ_{N−1})`; barrier region returns
/// `(λ‡, λ_b+, λ_b−)`. Both carry `1/(ω_c² − ω²)` terms from the bright
/// mode and are refused inside the resonance band.
pub fn three_mode_pert(rp: &ReactionParams, cs: &CavitySetup, region: Region) -> Result<(f64, f64, f64)> {
    cs.validate()?;
    if cs.n_molecules < 2 {
        return Err(Error::Domain {
            name: "n_molecules",
            value: f64::from(cs.n_molecules),
            requirement: "an integer >= 2 for the three-mode model",
        });
    }
    let c = CouplingSet::new(rp, cs.omega_c)?;
    let g_rest = collective_coupling(c.g, cs.n_molecules - 1)?;
    let (w, wc) = (rp.omega, cs.omega_c);
    resonance_guard(w, wc)?;
    let c2 = wc * wc;
    let rest_d = c2 - w * w;
    // Bright-mode frequency shift, identical in both regions.
    let lambda_rest = w + (c2 / (2.0 * w)) * (g_rest * w) * (g_rest * w) / (w * w - c2);
    match region {
        Region::Well => {
            let (w1, g1) = (w, c.g);
            let lambda_1 = w1 + (c2 / (2.0 * w1)) * (g1 * w1) * (g1 * w1) / (w1 * w1 - c2);
            let lambda_c =
                wc + 0.5 * wc * ((g1 * wc) * (g1 * wc) / (c2 - w1 * w1) + (g_rest * wc) * (g_rest * wc) / rest_d);
            Ok((lambda_1, lambda_c, lambda_rest))
        }
        Region::Barrier => {
            let (wb, g1) = (rp.omega_b, c.g_b);
            let lambda_u = wb - (c2 / (2.0 * wb)) * (g1 * wb) * (g1 * wb) / (wb * wb + c2);
            let lambda_bp = wc + 0.5 * c2 * wc * (g1 * g1 / (c2 + wb * wb) + g_rest * g_rest / rest_d);
            Ok((lambda_u, lambda_bp, lambda_rest))
        }
    }
}

/// Cavity frequency minimising `λ‡`: positive root of
/// `2ω_c² + Bω_c − 2ω‡² = 0` with `B = 4η‡²ω`, written as
/// `4ω‡²/(B + √(B² + 16ω‡²))` to avoid cancellation for small `B`.
pub fn optimal_cavity_frequency(rp: &ReactionParams) -> Result<f64> {
    positive("omega_b", rp.omega_b)?;
    non_negative("eta_b", rp.eta_b)?;
    let b = crate::model::barrier_b_param(rp.eta_b, rp.omega);
    let wb = rp.omega_b;
    Ok(4.0 * wb * wb / (b + sqrt(b * b + 16.0 * wb * wb)))
}

/// Exact unstable frequency of the two-mode barrier from the quadratic
/// `λ‡² = ½√(Ω⁴ + 4ω‡²ω_c²) − Ω²/2`, `Ω² = ω_c² − ω‡² + Bω_c`.
///
/// Coherent mode uses `N·B`; incoherent mode ignores `N`.
pub fn lambda_unstable_exact_form(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    cs.validate()?;
    rp.validate()?;
    let mut b = crate::model::barrier_b_param(rp.eta_b, rp.omega);
    if cs.mode == CouplingMode::Coherent {
        b *= f64::from(cs.n_molecules);
    }
    let (wb, wc) = (rp.omega_b, cs.omega_c);
    let big_sq = wc * wc - wb * wb + b * wc;
    let root = sqrt(big_sq * big_sq + 4.0 * wb * wb * wc * wc);
    let lambda_sq = if big_sq >= 0.0 { 2.0 * wb * wb * wc * wc / (root + big_sq) } else { 0.5 * (root - big_sq) };
    Ok(sqrt(lambda_sq))
}

/// Collects every perturbative quantity; the guarded well frequencies are
/// left empty inside the resonance band.
pub fn perturbative_report(rp: &ReactionParams, cs: &CavitySetup) -> Result<PerturbativeReport> {
    let (plus, minus, valid) = match well_freqs_pert(rp, cs) {
        Ok((p, m)) => (Some(p), Some(m), true),
        Err(Error::ResonanceDivergence { .. }) => (None, None, false),
        Err(e) => return Err(e),
    };
    let (lambda_b_p, lambda_unstable_p) = barrier_freqs_pert(rp, cs)?;
    Ok(PerturbativeReport {
        lambda_plus_p: plus,
        lambda_minus_p: minus,
        lambda_b_p,
        lambda_unstable_p,
        sum_well_p: well_sum_pert(rp, cs)?,
        s_shift_p: zpe_shift_pert(rp, cs)?,
        valid,
    })
}
