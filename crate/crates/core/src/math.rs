//! Thin `libm` wrappers plus the log-domain hyperbolic helpers.

pub(crate) use libm::{exp, expm1, fabs, hypot, log, sin, sqrt};

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;
pub(crate) const PI: f64 = core::f64::consts::PI;

/// `ln(1 − e^{−y})` for `y > 0`, accurate at both ends of the range.
#[inline]
pub(crate) fn ln_one_minus_exp_neg(y: f64) -> f64 {
    log(-expm1(-y))
}

/// `ln sinh(x)` for `x > 0` without overflow: `x − ln 2 + ln(1 − e^{−2x})`.
#[inline]
pub(crate) fn ln_sinh(x: f64) -> f64 {
    x - LN_2 + ln_one_minus_exp_neg(2.0 * x)
}
