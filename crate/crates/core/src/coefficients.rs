//! Closed forms of the universal constants c₁..c₇, the eta constants d₁..d₄
//! and the global ball coefficients.
//!
//! Notation: s = sinh θ, ch = cosh θ, th = tanh θ, F = ₂F₁.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scaled_residual;
use crate::specialfn::{gamma_fn, hyp2f1};

/// Tolerance for the internal cross-route assertions.
const CONSISTENCY_TOL: f64 = 1e-12;

pub(crate) fn check_m(m: u32) -> Result<f64> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::Dimension {
            m: m as i64,
            detail: "closed forms need an even m ≥ 2",
        });
    }
    Ok(m as f64)
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::Domain {
            function: "coefficients",
            detail: format!("θ must be finite, got {theta}"),
        });
    }
    Ok(())
}

/// Spinor dimension 2^{m/2}.
pub fn spinor_dim(m: u32) -> f64 {
    2f64.powi(m as i32 / 2)
}

/// vol(S^{m−1}) = 2π^{m/2}/Γ(m/2).
pub fn sphere_volume(m: u32) -> f64 {
    2.0 * PI.powf(m as f64 / 2.0) / gamma_fn(m as f64 / 2.0).expect("m/2 > 0")
}

/// F(1, (m−1)/2; 3/2; tanh²θ).
fn f_tanh(theta: f64, m: f64) -> Result<f64> {
    hyp2f1(1.0, (m - 1.0) / 2.0, 1.5, theta.tanh().powi(2))
}

/// F(1, 1−m/2; c; −sinh²θ), terminating for even m.
fn f_sinh(c: f64, theta: f64, m: f64) -> Result<f64> {
    hyp2f1(1.0, 1.0 - m / 2.0, c, -theta.sinh().powi(2))
}

/// F(½, (m+1)/2; 3/2; −sinh²θ).
fn g_cyl(theta: f64, m: f64) -> Result<f64> {
    hyp2f1(0.5, (m + 1.0) / 2.0, 1.5, -theta.sinh().powi(2))
}

/// The constants multiplying the boundary invariants of a₁ and a₂ (f the
/// smearing function, ψ the potential, L_aa the extrinsic-curvature trace).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniversalConstants {
    pub theta: f64,
    pub m: u32,
    /// Coefficient of f in a₁.
    pub c1: f64,
    /// Coefficient of f L_aa in a₂.
    pub c2: f64,
    /// Coefficient of f ψ γ̃ γ_m in a₂.
    pub c3: f64,
    /// Coefficient of f ψ γ_m in a₂; vanishes identically.
    pub c4: f64,
    /// Coefficient of f ψ γ̃ in a₂.
    pub c5: f64,
    /// Coefficient of f ψ in a₂.
    pub c6: f64,
    /// Coefficient of f_{;m} in a₂.
    pub c7: f64,
}

impl UniversalConstants {
    pub fn as_array(&self) -> [f64; 7] {
        [self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7]
    }
}

pub fn universal_constants(theta: f64, m: u32) -> Result<UniversalConstants> {
    let mf = check_m(m)?;
    check_theta(theta)?;
    let (s, ch) = (theta.sinh(), theta.cosh());
    let ft = f_tanh(theta, mf)?;
    let d4 = eta_constants(theta, m, EtaSource::Cylinder)?.d4()?;
    Ok(UniversalConstants {
        theta,
        m,
        c1: 0.25 * (ch.powi(m as i32 - 1) - 1.0),
        c2: ((2.0 * mf - 5.0) / 3.0 + (2.0 - mf) * ft) / (2.0 * (mf - 1.0)),
        c3: -2.0 * d4,
        c4: 0.0,
        c5: ch * f_sinh(0.5, theta, mf)?,
        c6: (mf - 1.0) * s * f_sinh(1.5, theta, mf)?,
        c7: -0.5 * (1.0 - ft),
    })
}

/// Which calculation the eta constants come from. The ball yields d₁, d₂,
/// d₃ only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaSource {
    Ball,
    Cylinder,
}

/// Constants of a₁^η = ∫ tr(d₁ f + d₂ f γ̃ + d₃ f γ_m + d₄ f γ̃γ_m) over the
/// boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaConstants {
    pub theta: f64,
    pub m: u32,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    d4: Option<f64>,
    pub source: EtaSource,
}

impl EtaConstants {
    pub fn d4(&self) -> Result<f64> {
        self.d4.ok_or(Error::Unavailable {
            name: "d4",
            source_form: "ball",
        })
    }
}

pub fn eta_constants(theta: f64, m: u32, source: EtaSource) -> Result<EtaConstants> {
    let mf = check_m(m)?;
    check_theta(theta)?;
    let (s, ch) = (theta.sinh(), theta.cosh());
    let k = (mf - 1.0) / 2.0;
    let (d1, d2, d4) = match source {
        EtaSource::Ball => (
            -k * s * f_sinh(1.5, theta, mf)?,
            -0.5 * ch * f_sinh(0.5, theta, mf)?,
            None,
        ),
        EtaSource::Cylinder => {
            let g = g_cyl(theta, mf)?;
            let chm2 = ch.powi(m as i32 - 2);
            (
                -k * s * chm2 * ch * g,
                -0.5 / ch - k * s * s * chm2 * g,
                Some(-0.5 * theta.tanh() + k * s * chm2 * g),
            )
        }
    };
    Ok(EtaConstants {
        theta,
        m,
        d1,
        d2,
        d3: 0.0,
        d4,
        source,
    })
}

/// Global (f = 1, ψ = 0) heat coefficients of the unit m-ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallCoefficients {
    pub a1: f64,
    pub a2: f64,
}

/// (4π)^{−m/2} vol(B^m) d_s, the leading interior coefficient of the ball.
pub fn ball_a0(m: u32) -> Result<f64> {
    let mf = check_m(m)?;
    let vol = PI.powf(mf / 2.0) / gamma_fn(mf / 2.0 + 1.0)?;
    Ok((4.0 * PI).powf(-mf / 2.0) * vol * spinor_dim(m))
}

fn assert_close(what: &'static str, a: f64, b: f64) -> Result<()> {
    let residual = scaled_residual(a, b);
    if residual > CONSISTENCY_TOL {
        return Err(Error::Assertion { what, residual });
    }
    Ok(())
}

pub fn ball_heat_coefficients(theta: f64, m: u32) -> Result<BallCoefficients> {
    let mf = check_m(m)?;
    check_theta(theta)?;
    let ds = spinor_dim(m);
    let pref = ds / (2f64.powi(m as i32) * gamma_fn(mf / 2.0)?);
    let a1 = PI.sqrt() * pref * (theta.cosh().powi(m as i32 - 1) - 1.0);
    let a2 = pref * ((2.0 * mf - 5.0) / 3.0 + (2.0 - mf) * f_tanh(theta, mf)?);

    let uc = universal_constants(theta, m)?;
    let vol = sphere_volume(m);
    let a1_general = (4.0 * PI).powf(-(mf - 1.0) / 2.0) * vol * ds * uc.c1;
    let a2_general = (4.0 * PI).powf(-mf / 2.0) * vol * ds * (mf - 1.0) * uc.c2;
    assert_close("ball a1 vs c1", a1, a1_general)?;
    assert_close("ball a2 vs c2", a2, a2_general)?;
    Ok(BallCoefficients { a1, a2 })
}

/// Global ball eta coefficient a₁^η for f = 1.
pub fn a1_eta_ball(theta: f64, m: u32) -> Result<f64> {
    let mf = check_m(m)?;
    check_theta(theta)?;
    let ds = spinor_dim(m);
    let pref = ds / (2f64.powi(m as i32) * gamma_fn(mf / 2.0)?);
    let value = -theta.sinh() * (mf - 1.0) * pref * f_sinh(1.5, theta, mf)?;
    let d1 = eta_constants(theta, m, EtaSource::Ball)?.d1;
    assert_close("a1_eta vs d1", value, 2.0 * pref * d1)?;
    Ok(value)
}
