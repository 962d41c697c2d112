//! Consistency web between the closed forms: ball vs cylinder eta constants,
//! the c-d relations, the c₇-c₂ quotient relation, and alternative
//! hypergeometric representations.
//!
//! Identities between closed forms are absolute residuals |a − b| with both
//! sides in double-double arithmetic; the constants reach 1e7 at m = 12, where
//! one f64 ulp already exceeds 1e−9. `check_f64_agreement` ties the public f64
//! constants to those extended values. Comparisons of two f64 evaluation paths
//! return the scaled residual |a − b| / max(1, |a|, |b|).

use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{check_m, eta_constants, universal_constants, EtaSource};
use crate::error::{Error, Result};
use crate::extended::{extended_constants, gap};
use crate::scaled_residual;
use crate::specialfn::{hyp2f1, hyp2f1_pfaff_series, hyp2f1_series, EvalConfig};

/// |d₁(ball) − d₁(cylinder)|.
pub fn check_ball_cylinder_d1(theta: f64, m: u32) -> Result<f64> {
    let e = extended_constants(theta, m)?;
    Ok(gap(e.d1_ball, e.d1_cyl))
}

/// cosh²θ F(1, 1−m/2; ½; −sinh²θ) = 1 + (m−1) sinh²θ cosh^{m−1}θ F(½, (m+1)/2; 3/2; −sinh²θ).
pub fn transformation_residual(theta: f64, m: u32) -> Result<f64> {
    let e = extended_constants(theta, m)?;
    Ok(gap(e.transformation_lhs, e.transformation_rhs))
}

/// Larger of the transformation residual and |d₂(ball) − d₂(cylinder)|.
pub fn check_ball_cylinder_d2(theta: f64, m: u32) -> Result<f64> {
    let e = extended_constants(theta, m)?;
    Ok(gap(e.transformation_lhs, e.transformation_rhs).max(gap(e.d2_ball, e.d2_cyl)))
}

/// |c₇ + (m−1)/(m−2) (c₂ + 1/6)|, for m ≥ 4.
pub fn check_c7_relation(theta: f64, m: u32) -> Result<f64> {
    let mf = check_m(m)?;
    let e = extended_constants(theta, m)?;
    match (e.c2, e.c7) {
        (Some(c2), Some(c7)) => {
            let sixth = twofloat::TwoFloat::from(1.0) / 6.0;
            Ok(gap(c7, (c2 + sixth) * (1.0 - mf) / (mf - 2.0)))
        }
        _ => Err(Error::Domain {
            function: "check_c7_relation",
            detail: "the quotient form needs m ≥ 4".into(),
        }),
    }
}

/// c₂, c₇ via tanh²θ against their cosh²θ F(1, 2−m/2; 3/2; −sinh²θ) forms.
pub fn check_alternative_forms(theta: f64, m: u32) -> Result<f64> {
    let mf = check_m(m)?;
    let uc = universal_constants(theta, m)?;
    let ch2 = theta.cosh().powi(2);
    let h = ch2 * hyp2f1(1.0, 2.0 - mf / 2.0, 1.5, -theta.sinh().powi(2))?;
    let c2 = ((2.0 * mf - 5.0) / 3.0 + (2.0 - mf) * h) / (2.0 * (mf - 1.0));
    let c7 = -0.5 * (1.0 - h);
    Ok(scaled_residual(uc.c2, c2).max(scaled_residual(uc.c7, c7)))
}

/// max of |c₃ + 2d₄|, |c₅ + 2d₂|, |c₆ + 2d₁|, |c₄ + 2d₃| with cylinder d's;
/// c₄ and d₃ vanish identically.
pub fn check_c_d_relations(theta: f64, m: u32) -> Result<f64> {
    let e = extended_constants(theta, m)?;
    Ok(gap(e.c3, e.d4_cyl * -2.0)
        .max(gap(e.c5, e.d2_cyl * -2.0))
        .max(gap(e.c6, e.d1_cyl * -2.0)))
}

/// Largest scaled gap between the public f64 constants and their
/// double-double values.
pub fn check_f64_agreement(theta: f64, m: u32) -> Result<f64> {
    let e = extended_constants(theta, m)?;
    let uc = universal_constants(theta, m)?;
    let ball = eta_constants(theta, m, EtaSource::Ball)?;
    let cyl = eta_constants(theta, m, EtaSource::Cylinder)?;
    let mut pairs = vec![
        (uc.c1, e.c1),
        (uc.c3, e.c3),
        (uc.c5, e.c5),
        (uc.c6, e.c6),
        (ball.d1, e.d1_ball),
        (ball.d2, e.d2_ball),
        (cyl.d1, e.d1_cyl),
        (cyl.d2, e.d2_cyl),
        (cyl.d4()?, e.d4_cyl),
    ];
    if let (Some(c2), Some(c7)) = (e.c2, e.c7) {
        pairs.extend([(uc.c2, c2), (uc.c7, c7)]);
    }
    let mut worst = 0.0f64;
    for (a, b) in pairs {
        let r = scaled_residual(a, f64::from(b));
        if r.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Terminating hypergeometrics evaluated as polynomials against summed
/// non-terminating series: F(1, 1−m/2; c; −sinh²θ) for c ∈ {½, 3/2} through
/// the Pfaff series, and F(½, 1−m/2; 3/2; tanh²θ) against its Euler
/// transform (1 − tanh²θ)^{m/2} F(1, (m+1)/2; 3/2; tanh²θ).
pub fn check_terminating_paths(theta: f64, m: u32) -> Result<f64> {
    let mf = check_m(m)?;
    let cfg = EvalConfig::default();
    let z = -theta.sinh().powi(2);
    let mut worst = 0.0f64;
    if z < 0.0 {
        for c in [0.5, 1.5] {
            let poly = hyp2f1(1.0, 1.0 - mf / 2.0, c, z)?;
            let series = hyp2f1_pfaff_series(&cfg, 1.0, 1.0 - mf / 2.0, c, z)?;
            worst = worst.max(scaled_residual(poly, series));
        }
    }
    let w = theta.tanh().powi(2);
    let poly = hyp2f1(0.5, 1.0 - mf / 2.0, 1.5, w)?;
    let euler = (1.0 - w).powf(mf / 2.0) * hyp2f1_series(&cfg, 1.0, (mf + 1.0) / 2.0, 1.5, w)?;
    Ok(worst.max(scaled_residual(poly, euler)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityRow {
    pub theta: f64,
    pub m: u32,
    pub c_d_relations: f64,
    pub ball_cylinder_d1: f64,
    pub ball_cylinder_d2: f64,
    /// Absent for m = 2, where the quotient form is undefined.
    pub c7_relation: Option<f64>,
    pub alternative_forms: f64,
    pub terminating_paths: f64,
    pub f64_agreement: f64,
}

impl IdentityRow {
    pub fn max(&self) -> f64 {
        [
            self.c_d_relations,
            self.ball_cylinder_d1,
            self.ball_cylinder_d2,
            self.c7_relation.unwrap_or(0.0),
            self.alternative_forms,
            self.terminating_paths,
            self.f64_agreement,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn identity_row(theta: f64, m: u32) -> Result<IdentityRow> {
    Ok(IdentityRow {
        theta,
        m,
        c_d_relations: check_c_d_relations(theta, m)?,
        ball_cylinder_d1: check_ball_cylinder_d1(theta, m)?,
        ball_cylinder_d2: check_ball_cylinder_d2(theta, m)?,
        c7_relation: if m >= 4 {
            Some(check_c7_relation(theta, m)?)
        } else {
            None
        },
        alternative_forms: check_alternative_forms(theta, m)?,
        terminating_paths: check_terminating_paths(theta, m)?,
        f64_agreement: check_f64_agreement(theta, m)?,
    })
}

/// All identities over θ × m, in grid order (θ outer, m inner).
pub fn identity_grid(thetas: &[f64], ms: &[u32]) -> Result<Vec<IdentityRow>> {
    let points: Vec<(f64, u32)> = thetas
        .iter()
        .flat_map(|&t| ms.iter().map(move |&m| (t, m)))
        .collect();
    points.par_iter().map(|&(t, m)| identity_row(t, m)).collect()
}
