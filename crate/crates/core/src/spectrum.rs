//! Normal-mode frequencies of the well and barrier Hessians.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hessian::{barrier_hessian, well_hessian, SymmetricMatrix};
use crate::math::{fabs, hypot, sqrt};
use crate::model::{collective_coupling, CavitySetup, CouplingSet, ReactionParams};

/// Relative off-diagonal tolerance used by [`eig_symmetric`] callers in this crate.
pub const DEFAULT_TOL: f64 = 1e-14;
/// Sweep budget of the Jacobi solver.
pub const MAX_SWEEPS: usize = 100;

/// Stable modes of the reactant well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpectrum {
    /// Upper polariton frequency.
    pub lambda_plus: f64,
    /// Lower polariton frequency.
    pub lambda_minus: f64,
    /// Frequency of the dark modes, always the bare `ω`.
    pub dark_freq: f64,
    pub dark_count: u32,
}

/// Modes at the barrier top.
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierSpectrum {
    /// Stable frequencies, descending. One entry for a 2×2 barrier, two for
    /// the incoherent 3×3.
    pub stable: Vec<f64>,
    /// Magnitude `λ‡` of the imaginary frequency.
    pub lambda_unstable: f64,
    pub dark_freq: f64,
    pub dark_count: u32,
}

/// Eigenvalues of a 2×2 symmetric matrix, descending.
///
/// The root with the larger magnitude comes from `m ± r`; the other one is
/// `det / that`, which avoids the cancellation in `m ∓ r`.
pub fn eigvals_2x2(m: &SymmetricMatrix) -> Result<(f64, f64)> {
    if m.dim() != 2 {
        return Err(Error::Dimension { expected: 2, found: m.dim() });
    }
    let (a, b, c) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
    if b == 0.0 {
        return Ok((a.max(c), a.min(c)));
    }
    let mean = 0.5 * (a + c);
    let r = hypot(0.5 * (a - c), b);
    let det = a * c - b * b;
    if mean >= 0.0 {
        let big = mean + r;
        if big == 0.0 {
            return Ok((0.0, 0.0));
        }
        Ok((big, det / big))
    } else {
        let low = mean - r;
        Ok((det / low, low))
    }
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending.
///
/// Iterates until the off-diagonal Frobenius norm is at most `tol·‖m‖_F`.
/// Shares no code with [`eigvals_2x2`], so the two can check each other.
pub fn eig_symmetric(m: &SymmetricMatrix, tol: f64) -> Result<Vec<f64>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain { name: "tol", value: tol, requirement: "a finite value > 0" });
    }
    let n = m.dim();
    let mut a = m.to_vec();
    let target = tol * m.frobenius_norm();
    let off = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        sqrt(s)
    };

    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence { sweeps, off_diagonal: off(&a) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t =
                    if theta >= 0.0 { 1.0 / (theta + hypot(1.0, theta)) } else { -1.0 / (-theta + hypot(1.0, theta)) };
                let c = 1.0 / hypot(1.0, t);
                let s = t * c;
                // A ← JᵀAJ, touching rows/columns p and q only.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Polariton frequencies of the well for the configuration in `cs`.
pub fn well_spectrum(rp: &ReactionParams, cs: &CavitySetup) -> Result<WellSpectrum> {
    let (m, kind) = well_hessian(rp, cs)?;
    let (hi, lo) = eigvals_2x2(&m)?;
    Ok(WellSpectrum { lambda_plus: sqrt(hi), lambda_minus: sqrt(lo), dark_freq: rp.omega, dark_count: kind.dark_modes })
}

/// Stable and unstable frequencies at the barrier for the configuration in `cs`.
pub fn barrier_spectrum(rp: &ReactionParams, cs: &CavitySetup) -> Result<BarrierSpectrum> {
    let (m, kind) = barrier_hessian(rp, cs)?;
    let eig = match m.dim() {
        2 => {
            let (hi, lo) = eigvals_2x2(&m)?;
            alloc::vec![hi, lo]
        }
        _ => eig_symmetric(&m, DEFAULT_TOL)?,
    };
    let negative = eig.iter().filter(|&&v| v < 0.0).count();
    if negative != 1 {
        return Err(Error::Structural { negative_eigenvalues: negative });
    }
    // `eig` is descending, so the negative eigenvalue is last.
    let (unstable, stable) = eig.split_last().expect("non-empty spectrum");
    Ok(BarrierSpectrum {
        stable: stable.iter().map(|&v| sqrt(v)).collect(),
        lambda_unstable: sqrt(-unstable),
        dark_freq: rp.omega,
        dark_count: kind.dark_modes,
    })
}

/// `λ₊ + λ₋ = √(ω_e² + ω_c² + 2√(ω_e²ω_c² − J⁴))` with `ω_e² = ω² + g²ω_c²`
/// and `J² = gω_c²`, where `g` is the collective coupling for `N > 1`.
pub fn frequency_sum_exact(rp: &ReactionParams, cs: &CavitySetup) -> Result<f64> {
    cs.validate()?;
    let c = CouplingSet::new(rp, cs.omega_c)?;
    let g = collective_coupling(c.g, cs.n_molecules)?;
    let c2 = cs.omega_c * cs.omega_c;
    let omega_e_sq = rp.omega * rp.omega + g * g * c2;
    let j_sq = g * c2;
    let inner = omega_e_sq * c2 - j_sq * j_sq;
    Ok(sqrt(omega_e_sq + c2 + 2.0 * sqrt(inner.max(0.0))))
}

/// Largest absolute deviation between sorted eigenvalue lists.
#[doc(hidden)]
pub fn max_abs_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| fabs(x - y)).fold(0.0, f64::max)
}
