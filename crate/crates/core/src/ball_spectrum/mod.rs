//! Spectrum of the Dirac operator on the unit m-ball under chiral bag
//! conditions, the truncated heat trace built from it, and the small-t fit
//! of its expansion coefficients.
//!
//! Eigenvalues μ solve J_{p+1}(μ) = r J_p(μ) with p = n + m/2 − 1 and one of
//! four ratios r ∈ {+e^θ, −e^θ, −e^{−θ}, +e^{−θ}}.

mod fit;
mod modes;
mod roots;
mod trace;

use serde::Serialize;

pub use fit::{fit_heat_coefficients, AsymptoticFit, MAX_CONDITION};
pub use modes::{gamma5_closed_form, verify_mode_integrals, ModeIntegralCheck};
pub use roots::{find_roots, find_roots_all, RootSet};
pub use trace::{
    fit_ball, geometric_grid, heat_trace, root_sets, BallFitConfig, BallFitReport, HeatTraceSample,
    Spectrum,
};

use crate::coefficients::check_m;
use crate::error::Result;

/// The (±) superscript of the eigenspinor: which chirality block carries
/// J_{p+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    Plus,
    Minus,
}

/// The ± subscript: sign of the eigenvalue ±μ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Pos,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EigenvalueFamily {
    pub chirality: Chirality,
    pub sign: Sign,
    pub n: u32,
    pub m: u32,
}

impl EigenvalueFamily {
    /// The four families sharing angular momentum n, in fixed order.
    pub fn all(n: u32, m: u32) -> [EigenvalueFamily; 4] {
        let f = |chirality, sign| EigenvalueFamily {
            chirality,
            sign,
            n,
            m,
        };
        [
            f(Chirality::Plus, Sign::Pos),
            f(Chirality::Plus, Sign::Neg),
            f(Chirality::Minus, Sign::Pos),
            f(Chirality::Minus, Sign::Neg),
        ]
    }

    /// Bessel order p = n + m/2 − 1.
    pub fn p(&self) -> u32 {
        self.n + self.m / 2 - 1
    }

    /// r in J_{p+1}(μ) = r J_p(μ).
    pub fn ratio(&self, theta: f64) -> f64 {
        match (self.chirality, self.sign) {
            (Chirality::Plus, Sign::Pos) => theta.exp(),
            (Chirality::Plus, Sign::Neg) => -theta.exp(),
            (Chirality::Minus, Sign::Pos) => -(-theta).exp(),
            (Chirality::Minus, Sign::Neg) => (-theta).exp(),
        }
    }

    /// The family whose roots at −θ coincide with this one's at θ.
    pub fn mirror(&self) -> EigenvalueFamily {
        let flip_c = match self.chirality {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        };
        let flip_s = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        EigenvalueFamily {
            chirality: flip_c,
            sign: flip_s,
            ..*self
        }
    }
}

/// d_n(m) = ½ d_s C(m+n−2, n).
pub fn degeneracy(n: u32, m: u32) -> Result<u128> {
    check_m(m)?;
    let k = (m - 2) as u128;
    let mut binom: u128 = 1;
    for i in 1..=k {
        binom = binom * (n as u128 + i) / i;
    }
    Ok(binom << (m / 2 - 1))
}
