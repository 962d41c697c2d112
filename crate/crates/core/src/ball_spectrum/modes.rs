//! Normalisation and chirality expectation of single ball eigenmodes.
//!
//! On-shell (J_{p+1} = r J_p) the radial integrals reduce to
//!   1/C² = J_p²(μ) (μ(1+r²) − (2p+1) r)/μ,
//!   ⟨γ̃⟩ = −σ r/(μ(1+r²) − (2p+1) r),
//! with σ = +1 on the (+) branch and −1 on the (−) branch.

use serde::Serialize;

use super::{Chirality, EigenvalueFamily, Sign};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::specialfn::bessel::orders_unchecked;

const ON_SHELL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeIntegralCheck {
    pub mu: f64,
    /// |∫₀¹ r (J_{p+1}² + J_p²) dr − ½{J_p² + J_{p+1}² − J_{p−1}J_{p+1} − J_pJ_{p+2}}|.
    pub norm_residual: f64,
    /// |C² σ ∫₀¹ r (J_{p+1}² − J_p²) dr − ⟨γ̃⟩ closed form|, C² from quadrature.
    pub gamma5_residual: f64,
    pub gamma5: f64,
}

/// ⟨γ̃⟩ in the branch-resolved closed form ∓1/(2 cosh θ) · 1/(μ ∓ (p+½)/cosh θ).
pub fn gamma5_closed_form(family: EigenvalueFamily, theta: f64, mu: f64) -> f64 {
    let c = theta.cosh();
    let q = (family.p() as f64 + 0.5) / c;
    let half = 0.5 / c;
    match (family.sign, family.chirality) {
        (Sign::Pos, Chirality::Plus) => -half / (mu - q),
        (Sign::Pos, Chirality::Minus) => -half / (mu + q),
        (Sign::Neg, Chirality::Plus) => half / (mu + q),
        (Sign::Neg, Chirality::Minus) => half / (mu - q),
    }
}

pub fn verify_mode_integrals(family: EigenvalueFamily, theta: f64, mu: f64) -> Result<ModeIntegralCheck> {
    let p = family.p() as usize;
    let r = family.ratio(theta);
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain {
            function: "verify_mode_integrals",
            detail: format!("μ must be positive, got {mu}"),
        });
    }
    let js = orders_unchecked(p + 2, mu);
    let residual = (js[p + 1] - r * js[p]).abs();
    if residual > ON_SHELL_TOL {
        return Err(Error::OffShell { mu, residual });
    }
    let j_prev = if p == 0 { -js[1] } else { js[p - 1] };
    let norm_closed =
        0.5 * (js[p] * js[p] + js[p + 1] * js[p + 1] - j_prev * js[p + 1] - js[p] * js[p + 2]);

    let radial = |sign: f64| {
        move |x: f64| {
            let j = orders_unchecked(p + 1, mu * x);
            x * (j[p + 1] * j[p + 1] + sign * j[p] * j[p])
        }
    };
    let norm_quad = integrate(radial(1.0), 0.0, 1.0, 1e-15, 1e-14)?;
    let diff_quad = integrate(radial(-1.0), 0.0, 1.0, 1e-15, 1e-14)?;
    let sigma = match family.chirality {
        Chirality::Plus => 1.0,
        Chirality::Minus => -1.0,
    };
    let gamma5 = sigma * diff_quad / norm_quad;
    Ok(ModeIntegralCheck {
        mu,
        norm_residual: (norm_quad - norm_closed).abs(),
        gamma5_residual: (gamma5 - gamma5_closed_form(family, theta, mu)).abs(),
        gamma5,
    })
}

#[cfg(test)]
mod tests {
    use super::super::find_roots_all;
    use super::*;

    #[test]
    fn disc_ground_state_expectation() {
        let sets = find_roots_all(0, 2, 0.0, 10.0).unwrap();
        let mu = sets[0].roots[0];
        let check = verify_mode_integrals(sets[0].family, 0.0, mu).unwrap();
        assert!((check.gamma5 - (-0.5 / (mu - 0.5))).abs() < 1e-10);
        assert!((check.gamma5 + 0.5350).abs() < 1e-4);
        assert!(check.norm_residual < 1e-10 && check.gamma5_residual < 1e-10);
    }

    #[test]
    fn on_shell_simplification_matches_bracket_form() {
        for set in find_roots_all(1, 4, 0.6, 20.0).unwrap() {
            let p = set.family.p() as usize;
            let r = set.family.ratio(0.6);
            for &mu in &set.roots {
                let js = orders_unchecked(p + 2, mu);
                let bracket =
                    0.5 * (js[p] * js[p] + js[p + 1] * js[p + 1] - js[p - 1] * js[p + 1] - js[p] * js[p + 2]);
                let simple = js[p] * js[p] * (mu * (1.0 + r * r) - (2.0 * p as f64 + 1.0) * r) / mu;
                assert!((bracket - simple).abs() < 1e-12);
                let g = -((set.family.chirality == Chirality::Plus) as i32 * 2 - 1) as f64 * r
                    / (mu * (1.0 + r * r) - (2.0 * p as f64 + 1.0) * r);
                assert!((g - gamma5_closed_form(set.family, 0.6, mu)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn third_root_four_dimensions() {
        for set in find_roots_all(1, 4, 0.6, 30.0).unwrap() {
            let check = verify_mode_integrals(set.family, 0.6, set.roots[2]).unwrap();
            assert!(check.norm_residual < 1e-10 && check.gamma5_residual < 1e-10, "{check:?}");
        }
    }

    #[test]
    fn off_shell_is_rejected() {
        let sets = find_roots_all(0, 2, 0.3, 10.0).unwrap();
        let err = verify_mode_integrals(sets[0].family, 0.3, sets[0].roots[0] + 0.1).unwrap_err();
        assert!(matches!(err, Error::OffShell { .. }));
    }
}
