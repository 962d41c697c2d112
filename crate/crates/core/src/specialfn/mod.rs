//! Self-contained special-function core: Γ, integer-order Bessel J, erf/erfc
//! (and the scaled complement), Gauss ₂F₁, Hurwitz and Barnes zeta.
//!
//! All functions are pure; anything that sums a series takes its limits from
//! [`EvalConfig`].

pub(crate) mod bessel;
mod erf;
mod gamma;
mod hyp2f1;
mod zeta;

pub use bessel::{bessel_j, bessel_j_orders, bessel_j_prime, bessel_j_ratio};
pub use erf::{erf, erfc, erfcx};
pub use gamma::gamma_fn;
pub use hyp2f1::{
    hyp2f1, hyp2f1_pfaff_series, hyp2f1_series, hyp2f1_with, terminating_order,
};
pub use zeta::{barnes_coefficients, barnes_residue, barnes_zeta, hurwitz_zeta};

/// Truncation and iteration limits shared by the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Relative truncation tolerance for convergent series.
    pub series_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Relative tolerance handed to adaptive quadrature.
    pub quadrature_tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            series_tol: 1e-17,
            max_terms: 200_000,
            quadrature_tol: 1e-13,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.series_tol > 0.0 && self.series_tol <= 1e-10) {
            return Err(crate::Error::Parameter {
                function: "EvalConfig",
                detail: format!("series_tol must lie in (0, 1e-10], got {}", self.series_tol),
            });
        }
        if self.max_terms < 1000 {
            return Err(crate::Error::Parameter {
                function: "EvalConfig",
                detail: format!("max_terms must be at least 1000, got {}", self.max_terms),
            });
        }
        if !(self.quadrature_tol > 0.0) {
            return Err(crate::Error::Parameter {
                function: "EvalConfig",
                detail: "quadrature_tol must be positive".into(),
            });
        }
        Ok(())
    }
}

/// Returns `Some(k)` when `x` is within 1e-12 of the non-positive integer `-k`.
pub(crate) fn non_positive_integer(x: f64) -> Option<u64> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= 1e-12 {
        Some((-r) as u64)
    } else {
        None
    }
}
