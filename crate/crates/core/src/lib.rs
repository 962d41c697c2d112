pub mod ball_spectrum;
pub mod clifford;
pub mod coefficients;
pub mod cylinder;
pub mod error;
pub mod extended;
pub mod identities;
pub mod quadrature;
pub mod specialfn;
pub mod summation;

pub use error::{Error, Result};

/// |a − b| / max(1, |a|, |b|): absolute below unit scale, relative above.
pub fn scaled_residual(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}
