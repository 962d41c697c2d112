//! Gauss hypergeometric function ₂F₁(a, b; c; z) for real z < 1.
//!
//! Routing: a non-positive integer numerator parameter gives a polynomial,
//! evaluated exactly; negative z goes through the Pfaff transform
//!
//!   ₂F₁(a, b; c; z) = (1 − z)^{−a} ₂F₁(a, c − b; c; z/(z − 1)),
//!
//! which puts the argument in [0, 1) (and often makes the transformed
//! function terminate); the remaining case is the plain power series.

use super::{non_positive_integer, EvalConfig};
use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Degree of the terminating polynomial, if `a` or `b` is a non-positive
/// integer (to within 1e-12).
pub fn terminating_order(a: f64, b: f64) -> Option<u64> {
    match (non_positive_integer(a), non_positive_integer(b)) {
        (Some(j), Some(k)) => Some(j.min(k)),
        (Some(j), None) => Some(j),
        (None, Some(k)) => Some(k),
        (None, None) => None,
    }
}

fn check_params(a: f64, b: f64, c: f64, z: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::Domain {
            function: "hyp2f1",
            detail: "non-finite argument".into(),
        });
    }
    if non_positive_integer(c).is_some() {
        return Err(Error::Parameter {
            function: "hyp2f1",
            detail: format!("c = {c} is a non-positive integer"),
        });
    }
    Ok(())
}

fn polynomial(a: f64, b: f64, c: f64, z: f64, degree: u64) -> f64 {
    let mut term = 1.0;
    let mut sum = NeumaierSum::new();
    sum.add(term);
    for n in 0..degree {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum.add(term);
    }
    sum.value()
}

/// Sum of the power series in `z`, stopping once a geometric bound on the
/// tail falls below `series_tol · |sum|`. Exactly-zero terms (a terminating
/// parameter hit exactly) end the sum.
fn power_series(cfg: &EvalConfig, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let az = z.abs();
    // Beyond this index |(a+n)(b+n)/((c+n)(n+1))| is monotone in n.
    let settle = 2.0 * (a.abs() + b.abs() + c.abs()) + 10.0;
    let mut term = 1.0f64;
    let mut sum = NeumaierSum::new();
    sum.add(term);
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let factor = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term *= factor * z;
        sum.add(term);
        if term == 0.0 {
            return Ok(sum.value());
        }
        if nf > settle {
            let rho = (factor.abs() * az).max(az);
            if rho < 1.0 {
                let tail = term.abs() * rho / (1.0 - rho);
                if tail <= cfg.series_tol * sum.value().abs() {
                    return Ok(sum.value());
                }
            }
        }
    }
    Err(Error::NonConvergence {
        function: "hyp2f1",
        terms: cfg.max_terms,
    })
}

/// ₂F₁(a, b; c; z) with the default [`EvalConfig`].
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    hyp2f1_with(&EvalConfig::default(), a, b, c, z)
}

/// ₂F₁(a, b; c; z) for z < 1.
pub fn hyp2f1_with(cfg: &EvalConfig, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_params(a, b, c, z)?;
    if let Some(degree) = terminating_order(a, b) {
        return Ok(polynomial(a, b, c, z, degree));
    }
    if z >= 1.0 {
        return Err(Error::Domain {
            function: "hyp2f1",
            detail: format!("z = {z} outside (-inf, 1)"),
        });
    }
    if z < 0.0 {
        let w = z / (z - 1.0);
        let scale = (1.0 - z).powf(-a);
        return Ok(scale * hyp2f1_with(cfg, a, c - b, c, w)?);
    }
    power_series(cfg, a, b, c, z)
}

/// The raw power series in `z` (no transformation, no polynomial shortcut).
/// Requires |z| < 1 unless a parameter terminates the series exactly.
pub fn hyp2f1_series(cfg: &EvalConfig, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_params(a, b, c, z)?;
    if z.abs() >= 1.0 && terminating_order(a, b).is_none() {
        return Err(Error::Domain {
            function: "hyp2f1_series",
            detail: format!("|z| = {} not below 1", z.abs()),
        });
    }
    power_series(cfg, a, b, c, z)
}

/// Forces the Pfaff route for z < 0 and sums the transformed power series,
/// bypassing the terminating-polynomial shortcut. Gives an independent
/// evaluation path for terminating cases.
pub fn hyp2f1_pfaff_series(cfg: &EvalConfig, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_params(a, b, c, z)?;
    if z >= 0.0 {
        return Err(Error::Domain {
            function: "hyp2f1_pfaff_series",
            detail: format!("Pfaff route needs z < 0, got {z}"),
        });
    }
    let w = z / (z - 1.0);
    Ok((1.0 - z).powf(-a) * power_series(cfg, a, c - b, c, w)?)
}
