//! Mass-weighted Hessians of the cavity-dressed well and barrier.
//!
//! Entries are squared frequencies. Dark modes (molecular combinations that
//! do not couple to the cavity and keep the bare frequency `ω`) are never
//! stored as rows; [`HessianKind::dark_modes`] counts them instead.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{fabs, sqrt};
use crate::model::{collective_coupling, CavitySetup, CouplingMode, CouplingSet, ReactionParams};

/// Dense real symmetric matrix. Symmetry is enforced on construction: only
/// the upper triangle is taken from the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds an `n × n` matrix from `f(i, j)` evaluated for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        SymmetricMatrix { dim: n, entries }
    }

    /// `[[a, b], [b, c]]`.
    pub fn new_2x2(a: f64, b: f64, c: f64) -> Self {
        SymmetricMatrix { dim: 2, entries: alloc::vec![a, b, b, c] }
    }

    /// From the upper triangle of a 3×3 array; the lower triangle is ignored.
    pub fn new_3x3(rows: [[f64; 3]; 3]) -> Self {
        Self::from_fn(3, |i, j| rows[i][j])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major copy of all entries.
    pub fn to_vec(&self) -> Vec<f64> {
        self.entries.clone()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.entries.iter().map(|v| v * v).sum::<f64>())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn determinant(&self) -> f64 {
        let m = |i, j| self.get(i, j);
        match self.dim {
            0 => 1.0,
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            n => {
                // Gaussian elimination with partial pivoting.
                let mut a = self.entries.clone();
                let mut det = 1.0;
                for col in 0..n {
                    let pivot =
                        (col..n).max_by(|&r, &s| fabs(a[r * n + col]).total_cmp(&fabs(a[s * n + col]))).unwrap_or(col);
                    if a[pivot * n + col] == 0.0 {
                        return 0.0;
                    }
                    if pivot != col {
                        for k in 0..n {
                            a.swap(pivot * n + k, col * n + k);
                        }
                        det = -det;
                    }
                    let p = a[col * n + col];
                    det *= p;
                    for r in col + 1..n {
                        let factor = a[r * n + col] / p;
                        for k in col..n {
                            a[r * n + k] -= factor * a[col * n + k];
                        }
                    }
                }
                det
            }
        }
    }
}

/// Which configuration a Hessian describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HessianTag {
    WellSingle,
    BarrierSingle,
    WellCollective,
    BarrierIncoherent,
    BarrierCoherent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HessianKind {
    pub tag: HessianTag,
    /// Uncoupled modes at the bare frequency `ω` left out of the matrix.
    pub dark_modes: u32,
}

fn couplings(rp: &ReactionParams, cs: &CavitySetup) -> Result<CouplingSet> {
    cs.validate()?;
    CouplingSet::new(rp, cs.omega_c)
}

fn two_mode(first_sq: f64, g: f64, omega_c: f64) -> SymmetricMatrix {
    let c2 = omega_c * omega_c;
    SymmetricMatrix::new_2x2(first_sq + g * g * c2, g * c2, c2)
}

/// Single-molecule well: `[[ω² + g²ω_c², gω_c²], [gω_c², ω_c²]]`.
/// The molecule count in `cs` is ignored.
pub fn well_hessian_single(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    let c = couplings(rp, cs)?;
    Ok((two_mode(rp.omega * rp.omega, c.g, cs.omega_c), HessianKind { tag: HessianTag::WellSingle, dark_modes: 0 }))
}

/// Single-molecule barrier: `[[−ω‡² + g‡²ω_c², g‡ω_c²], [g‡ω_c², ω_c²]]`.
pub fn barrier_hessian_single(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    let c = couplings(rp, cs)?;
    Ok((
        two_mode(-rp.omega_b * rp.omega_b, c.g_b, cs.omega_c),
        HessianKind { tag: HessianTag::BarrierSingle, dark_modes: 0 },
    ))
}

/// Well of `N` molecules reduced to the bright mode: the single-molecule
/// matrix with `g → √N·g`, plus `N − 1` dark modes.
pub fn well_hessian_collective(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    let c = couplings(rp, cs)?;
    let g_n = collective_coupling(c.g, cs.n_molecules)?;
    Ok((
        two_mode(rp.omega * rp.omega, g_n, cs.omega_c),
        HessianKind { tag: HessianTag::WellCollective, dark_modes: cs.n_molecules - 1 },
    ))
}

/// Incoherent transition state. Molecule 1 sits on the barrier while the
/// bright mode of the other `N − 1` molecules (coupling `g√(N−1)`) stays in
/// its well. Rows: reactive mode, bright mode, cavity. `N − 2` dark modes.
///
/// For `N = 1` this delegates to [`barrier_hessian_single`].
pub fn barrier_hessian_incoherent(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    if cs.n_molecules < 2 {
        return barrier_hessian_single(rp, cs);
    }
    let c = couplings(rp, cs)?;
    let g1 = c.g_b;
    let gr = collective_coupling(c.g, cs.n_molecules - 1)?;
    let c2 = cs.omega_c * cs.omega_c;
    let m = SymmetricMatrix::new_3x3([
        [-rp.omega_b * rp.omega_b + g1 * g1 * c2, g1 * gr * c2, g1 * c2],
        [0.0, rp.omega * rp.omega + gr * gr * c2, gr * c2],
        [0.0, 0.0, c2],
    ]);
    Ok((m, HessianKind { tag: HessianTag::BarrierIncoherent, dark_modes: cs.n_molecules - 2 }))
}

/// Coherent transition state: the bright mode crosses, so the
/// single-molecule barrier matrix applies with `g‡ → √N·g‡`. `N − 1` dark
/// modes.
pub fn barrier_hessian_coherent(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    let c = couplings(rp, cs)?;
    let g_bn = collective_coupling(c.g_b, cs.n_molecules)?;
    Ok((
        two_mode(-rp.omega_b * rp.omega_b, g_bn, cs.omega_c),
        HessianKind { tag: HessianTag::BarrierCoherent, dark_modes: cs.n_molecules - 1 },
    ))
}

/// Well Hessian for the configuration in `cs`.
pub fn well_hessian(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    if cs.n_molecules <= 1 {
        well_hessian_single(rp, cs)
    } else {
        well_hessian_collective(rp, cs)
    }
}

/// Barrier Hessian for the configuration in `cs`.
pub fn barrier_hessian(rp: &ReactionParams, cs: &CavitySetup) -> Result<(SymmetricMatrix, HessianKind)> {
    match (cs.n_molecules, cs.mode) {
        (0, _) => Err(Error::Domain { name: "n_molecules", value: 0.0, requirement: "an integer >= 1" }),
        (1, _) => barrier_hessian_single(rp, cs),
        (_, CouplingMode::Incoherent) => barrier_hessian_incoherent(rp, cs),
        (_, CouplingMode::Coherent) => barrier_hessian_coherent(rp, cs),
    }
}
