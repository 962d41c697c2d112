use rayon::prelude::*;
use serde::Serialize;

use super::fit::{fit_heat_coefficients, AsymptoticFit};
use super::roots::find_roots_all;
use super::{degeneracy, EigenvalueFamily};
use crate::coefficients::{ball_heat_coefficients, check_m};
use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Required ratio of truncation bound to trace value.
pub const TRUNCATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatTraceSample {
    pub t: f64,
    pub value: f64,
    /// Upper bound on the omitted part of the trace.
    pub truncation_bound: f64,
}

/// Eigenvalues of the ball below a cutoff with their multiplicities, sorted
/// by μ.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub theta: f64,
    pub m: u32,
    pub mu_max: f64,
    /// Angular momenta 0..n_included carry all their roots below mu_max.
    pub n_included: u32,
    /// (μ, d_n) in ascending μ; ties keep (n, family) order.
    levels: Vec<(f64, f64)>,
}

/// No root of angular momentum n lies below (p + ½)/cosh θ.
fn root_floor(n: u32, m: u32, theta: f64) -> f64 {
    (n as f64 + m as f64 / 2.0 - 0.5) / theta.cosh()
}

/// Σ_{k≥0} e^{−t(L+k)²} ≤ e^{−tL²}/(1 − e^{−t(2L+1)}).
fn gaussian_tail(t: f64, l: f64) -> f64 {
    (-t * l * l).exp() / -(-t * (2.0 * l + 1.0)).exp_m1()
}

impl Spectrum {
    /// All roots below mu_max for n = 0, 1, … up to the first n whose root
    /// floor exceeds mu_max, or up to `n_max` if smaller.
    pub fn compute(theta: f64, m: u32, mu_max: f64, n_max: Option<u32>) -> Result<Spectrum> {
        check_m(m)?;
        let mut n_exhaust = 0u32;
        while root_floor(n_exhaust + 1, m, theta) <= mu_max {
            n_exhaust += 1;
        }
        let n_included = n_max.map_or(n_exhaust, |cap| cap.min(n_exhaust));
        let per_n: Vec<Vec<(f64, f64)>> = (0..=n_included)
            .into_par_iter()
            .map(|n| -> Result<Vec<(f64, f64)>> {
                let d = degeneracy(n, m)? as f64;
                let sets = find_roots_all(n, m, theta, mu_max)?;
                Ok(sets
                    .iter()
                    .flat_map(|s| s.roots.iter().map(move |&mu| (mu, d)))
                    .collect())
            })
            .collect::<Result<_>>()?;
        let mut levels: Vec<(f64, f64)> = per_n.into_iter().flatten().collect();
        levels.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Spectrum {
            theta,
            m,
            mu_max,
            n_included,
            levels,
        })
    }

    pub fn levels(&self) -> &[(f64, f64)] {
        &self.levels
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn weighted_count(&self) -> f64 {
        self.levels.iter().map(|l| l.1).sum()
    }

    /// Bound on Σ d_n e^{−tμ²} over roots above mu_max (n ≤ n_included) and
    /// over all roots of larger n. Each family has at most two roots in any
    /// unit window.
    pub fn truncation_bound(&self, t: f64) -> Result<f64> {
        let per_family = 2.0 * 4.0;
        let mut bound = NeumaierSum::new();
        for n in 0..=self.n_included {
            bound.add(per_family * degeneracy(n, self.m)? as f64 * gaussian_tail(t, self.mu_max));
        }
        let mut n = self.n_included + 1;
        loop {
            let l = root_floor(n, self.m, self.theta);
            let term = per_family * degeneracy(n, self.m)? as f64 * gaussian_tail(t, l);
            bound.add(term);
            if term == 0.0 || (t * l * l > 50.0 && term < 1e-30 * bound.value()) {
                break;
            }
            n += 1;
        }
        Ok(bound.value())
    }

    pub fn heat_trace(&self, t: f64) -> Result<HeatTraceSample> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain {
                function: "heat_trace",
                detail: format!("t must be positive, got {t}"),
            });
        }
        let mut sum = NeumaierSum::new();
        for &(mu, d) in &self.levels {
            sum.add(d * (-t * mu * mu).exp());
        }
        let value = sum.value();
        let truncation_bound = self.truncation_bound(t)?;
        let limit = TRUNCATION_TOL * value;
        if !(truncation_bound <= limit) {
            return Err(Error::InsufficientCutoff {
                bound: truncation_bound,
                limit,
                value,
            });
        }
        Ok(HeatTraceSample {
            t,
            value,
            truncation_bound,
        })
    }
}

/// Truncated heat trace at one t.
pub fn heat_trace(
    theta: f64,
    m: u32,
    t: f64,
    mu_max: f64,
    n_max: Option<u32>,
) -> Result<HeatTraceSample> {
    Spectrum::compute(theta, m, mu_max, n_max)?.heat_trace(t)
}

/// n points t_min·(t_max/t_min)^{i/(n−1)}.
pub fn geometric_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![t_min];
    }
    let ratio = t_max / t_min;
    (0..n)
        .map(|i| t_min * ratio.powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallFitConfig {
    pub mu_max: f64,
    pub n_max: Option<u32>,
    pub t_min: f64,
    pub t_max: f64,
    pub n_samples: usize,
    pub k: usize,
}

impl Default for BallFitConfig {
    fn default() -> Self {
        Self {
            mu_max: 100.0,
            n_max: None,
            t_min: 0.02,
            t_max: 0.3,
            n_samples: 20,
            k: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallFitReport {
    pub theta: f64,
    pub m: u32,
    pub config: BallFitConfig,
    pub n_included: u32,
    pub eigenvalue_count: f64,
    pub fit: AsymptoticFit,
    pub a1_fit: f64,
    pub a2_fit: f64,
    pub a1_expected: f64,
    pub a2_expected: f64,
    pub samples: Vec<HeatTraceSample>,
}

impl BallFitReport {
    pub fn a1_uncertainty(&self) -> f64 {
        self.fit.uncertainties[1]
    }

    pub fn a2_uncertainty(&self) -> f64 {
        self.fit.uncertainties[2]
    }
}

/// Roots, heat trace on a geometric t-grid, and the fitted a₁, a₂ next to
/// their closed forms.
pub fn fit_ball(theta: f64, m: u32, cfg: &BallFitConfig) -> Result<BallFitReport> {
    if cfg.k < 2 {
        return Err(Error::FitInput {
            detail: format!("K = {} cannot resolve a2", cfg.k),
        });
    }
    if !(cfg.t_min > 0.0 && cfg.t_min < cfg.t_max) {
        return Err(Error::FitInput {
            detail: format!("need 0 < t_min < t_max, got [{}, {}]", cfg.t_min, cfg.t_max),
        });
    }
    let spectrum = Spectrum::compute(theta, m, cfg.mu_max, cfg.n_max)?;
    let samples = geometric_grid(cfg.t_min, cfg.t_max, cfg.n_samples)
        .into_iter()
        .map(|t| spectrum.heat_trace(t))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_heat_coefficients(&samples, m, cfg.k)?;
    let expected = ball_heat_coefficients(theta, m)?;
    Ok(BallFitReport {
        theta,
        m,
        config: *cfg,
        n_included: spectrum.n_included,
        eigenvalue_count: spectrum.weighted_count(),
        a1_fit: fit.coeffs[1],
        a2_fit: fit.coeffs[2],
        fit,
        a1_expected: expected.a1,
        a2_expected: expected.a2,
        samples,
    })
}

/// The family-resolved root sets behind a spectrum, for reporting.
pub fn root_sets(
    theta: f64,
    m: u32,
    n: u32,
    mu_max: f64,
) -> Result<Vec<(EigenvalueFamily, Vec<f64>)>> {
    Ok(find_roots_all(n, m, theta, mu_max)?
        .into_iter()
        .map(|s| (s.family, s.roots))
        .collect())
}
