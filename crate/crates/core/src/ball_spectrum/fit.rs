//! Least-squares extraction of a₁..a_K from heat-trace samples, with a₀
//! pinned.
//!
//! Model: value(t) = Σ_{n=0}^{K} a_n t^{(n−m)/2}. Rows are multiplied by
//! t^{m/2}, which turns the fit into a polynomial in √t.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::trace::HeatTraceSample;
use crate::coefficients::{ball_a0, check_m};
use crate::error::{Error, Result};

/// Largest accepted ratio of extreme singular values of the column-scaled
/// design matrix.
pub const MAX_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticFit {
    /// a₀..a_K; a₀ is the pinned interior value.
    pub coeffs: Vec<f64>,
    /// RMS of the scaled residuals t^{m/2}(value − model).
    pub residual: f64,
    pub condition_estimate: f64,
    /// Per-coefficient uncertainty: the larger of the least-squares standard
    /// error and the shift |a_n(K) − a_n(K+1)| when the samples allow K+1.
    /// Zero for a₀.
    pub uncertainties: Vec<f64>,
}

struct Solved {
    coeffs: Vec<f64>,
    std_errors: Vec<f64>,
    rms: f64,
    condition: f64,
}

fn solve(ts: &[f64], ys: &[f64], k: usize) -> Result<Solved> {
    let rows = ts.len();
    let mut a = DMatrix::<f64>::zeros(rows, k);
    for (i, &t) in ts.iter().enumerate() {
        for j in 0..k {
            a[(i, j)] = t.powf((j + 1) as f64 / 2.0);
        }
    }
    let scales: Vec<f64> = (0..k).map(|j| a.column(j).norm()).collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = smax / smin;
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned {
            condition,
            limit: MAX_CONDITION,
        });
    }
    let y = DVector::from_column_slice(ys);
    let x = svd.solve(&y, 0.0).map_err(|e| Error::FitInput {
        detail: e.to_string(),
    })?;
    let resid = &y - &a * &x;
    let rss = resid.norm_squared();
    let dof = (rows - k) as f64;
    let sigma2 = rss / dof;
    // (AᵀA)^{-1} = V Σ^{-2} Vᵀ
    let v_t = svd.v_t.as_ref().expect("V requested");
    let std_errors = (0..k)
        .map(|j| {
            let var: f64 = (0..k).map(|i| (v_t[(i, j)] / sv[i]).powi(2)).sum();
            (sigma2 * var).sqrt() / scales[j]
        })
        .collect();
    Ok(Solved {
        coeffs: (0..k).map(|j| x[j] / scales[j]).collect(),
        std_errors,
        rms: (rss / rows as f64).sqrt(),
        condition,
    })
}

/// Fits a₁..a_K with a₀ = (4π)^{−m/2} vol(B^m) d_s held fixed.
pub fn fit_heat_coefficients(samples: &[HeatTraceSample], m: u32, k: usize) -> Result<AsymptoticFit> {
    let mf = check_m(m)?;
    if k == 0 {
        return Err(Error::FitInput {
            detail: "K must be at least 1".into(),
        });
    }
    if samples.len() < k + 3 {
        return Err(Error::FitInput {
            detail: format!("{} samples cannot support K = {k} (need K + 3)", samples.len()),
        });
    }
    if let Some(s) = samples.iter().find(|s| !(s.t > 0.0 && s.t <= 0.5) || !s.value.is_finite()) {
        return Err(Error::FitInput {
            detail: format!("sample at t = {} is outside (0, 0.5] or not finite", s.t),
        });
    }
    let a0 = ball_a0(m)?;
    let ts: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let ys: Vec<f64> = samples
        .iter()
        .map(|s| s.value * s.t.powf(mf / 2.0) - a0)
        .collect();
    let base = solve(&ts, &ys, k)?;
    let deeper = if samples.len() >= k + 4 {
        solve(&ts, &ys, k + 1).ok()
    } else {
        None
    };
    let mut coeffs = vec![a0];
    coeffs.extend(&base.coeffs);
    let mut uncertainties = vec![0.0];
    for j in 0..k {
        let shift = deeper.as_ref().map_or(0.0, |d| (d.coeffs[j] - base.coeffs[j]).abs());
        uncertainties.push(base.std_errors[j].max(shift));
    }
    Ok(AsymptoticFit {
        coeffs,
        residual: base.rms,
        condition_estimate: base.condition,
        uncertainties,
    })
}
