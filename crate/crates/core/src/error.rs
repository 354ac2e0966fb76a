use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the rate engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its physical domain.
    Domain { name: &'static str, value: f64, requirement: &'static str },
    /// A perturbative formula was asked to evaluate too close to a resonance.
    ResonanceDivergence { pair: &'static str, detuning: f64, guard: f64 },
    /// The centroid tunneling prefactor diverges: `frequency·β/2 ≥ π`.
    CrossoverTemperature { name: &'static str, frequency: f64, beta: f64 },
    /// The iterative eigensolver did not converge within its sweep budget.
    Convergence { sweeps: usize, off_diagonal: f64 },
    /// A barrier Hessian did not have exactly one negative eigenvalue.
    Structural { negative_eigenvalues: usize },
    /// An operation received a matrix of the wrong size.
    Dimension { expected: usize, found: usize },
    /// Well and barrier spectra do not describe the same system.
    InconsistentSpectra { well_dark: u32, barrier_dark: u32, barrier_stable: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { name, value, requirement } => {
                write!(f, "{name} = {value} is out of domain (requires {requirement})")
            }
            Error::ResonanceDivergence { pair, detuning, guard } => write!(
                f,
                "perturbative expansion diverges near the {pair} resonance \
                 (|detuning| = {detuning:e} < guard {guard:e})"
            ),
            Error::CrossoverTemperature { name, frequency, beta } => write!(
                f,
                "centroid prefactor diverges: {name} = {frequency} with beta = {beta} \
                 gives {name}*beta/2 >= pi (at or below the crossover temperature)"
            ),
            Error::Convergence { sweeps, off_diagonal } => write!(
                f,
                "symmetric eigensolver did not converge after {sweeps} sweeps \
                 (off-diagonal norm {off_diagonal:e})"
            ),
            Error::Structural { negative_eigenvalues } => {
                write!(f, "barrier Hessian must have exactly one negative eigenvalue, found {negative_eigenvalues}")
            }
            Error::Dimension { expected, found } => {
                write!(f, "expected a {expected}x{expected} matrix, found {found}x{found}")
            }
            Error::InconsistentSpectra { well_dark, barrier_dark, barrier_stable } => write!(
                f,
                "well and barrier spectra are inconsistent (well dark modes {well_dark}, \
                 barrier dark modes {barrier_dark}, barrier stable modes {barrier_stable})"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain { name, value, requirement: "a finite value > 0" })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain { name, value, requirement: "a finite value >= 0" })
    }
}
