//! Roots of J_{p+1}(μ) = r J_p(μ).
//!
//! y = J_{p+1}/J_p obeys y′ = 1 − (2p+1) y/μ + y² and increases strictly on
//! (0, j_{p,1}) and between consecutive zeros of J_p, running from −∞ to
//! +∞ on each such interval (from 0 on the first). Hence exactly one root
//! per interval, plus one in (0, j_{p,1}) iff r > 0.

use serde::Serialize;

use super::EigenvalueFamily;
use crate::error::{Error, Result};
use crate::specialfn::bessel::{j_unchecked, orders_unchecked, ratio_unchecked};

/// Scan step for zeros of J_p; zeros are more than π apart.
const ZERO_SCAN_STEP: f64 = 0.5;
/// Grid step of the independent sign-change audit.
const AUDIT_STEP: f64 = 0.05;
/// Required on-shell accuracy |J_{p+1} − r J_p|.
pub(crate) const ROOT_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub family: EigenvalueFamily,
    pub theta: f64,
    /// Strictly increasing, all in (0, mu_max].
    pub roots: Vec<f64>,
    pub mu_max: f64,
}

/// Safeguarded Newton on a bracket where `f(lo) < 0 < f(hi)`; `f` returns
/// (value, derivative). Endpoints are never evaluated.
fn solve_bracketed<F: Fn(f64) -> (f64, f64)>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, d) = f(x);
        if v == 0.0 {
            return x;
        }
        if v < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / d;
        let next = if d.is_finite() && d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs() || hi - lo <= 4.0 * f64::EPSILON * hi {
            return next;
        }
        x = next;
    }
    x
}

/// Zeros of J_p in (0, limit], polished to full precision.
pub(crate) fn bessel_zeros(p: usize, limit: f64) -> Vec<f64> {
    // j_{p,1} > p, and J_p(p) > 0 for all p.
    let start = (p as f64).max(ZERO_SCAN_STEP);
    let mut zeros = Vec::new();
    let mut a = start;
    let mut fa = j_unchecked(p, a);
    while a < limit {
        let b = (a + ZERO_SCAN_STEP).min(limit);
        let fb = j_unchecked(p, b);
        if fb == 0.0 {
            zeros.push(b);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            let s = if fa < 0.0 { 1.0 } else { -1.0 };
            let z = solve_bracketed(
                |x| {
                    let js = orders_unchecked(p + 1, x);
                    let d = p as f64 / x * js[p] - js[p + 1];
                    (s * js[p], s * d)
                },
                a,
                b,
            );
            zeros.push(z);
        }
        a = b;
        fa = fb;
    }
    zeros
}

/// Roots for ratio r given the zeros of J_p up to mu_max.
fn roots_for_ratio(p: usize, r: f64, zeros: &[f64], mu_max: f64) -> Vec<f64> {
    let q = |mu: f64| {
        let y = ratio_unchecked(p, mu);
        let dy = 1.0 - (2.0 * p as f64 + 1.0) * y / mu + y * y;
        (y - r, dy)
    };
    let mut out = Vec::new();
    let mut left = 0.0;
    if r > 0.0 {
        match zeros.first() {
            Some(&z) => out.push(solve_bracketed(q, 0.0, z)),
            None if q(mu_max).0 >= 0.0 => out.push(solve_bracketed(q, 0.0, mu_max)),
            None => {}
        }
    }
    for &z in zeros {
        if left > 0.0 {
            out.push(solve_bracketed(q, left, z));
        }
        left = z;
    }
    if left > 0.0 && left < mu_max && q(mu_max).0 >= 0.0 {
        out.push(solve_bracketed(q, left, mu_max));
    }
    out.retain(|&mu| mu <= mu_max);
    out
}

fn check_inputs(theta: f64, mu_max: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::Domain {
            function: "find_roots",
            detail: format!("θ must be finite, got {theta}"),
        });
    }
    if !(mu_max > 0.0 && mu_max.is_finite()) {
        return Err(Error::Domain {
            function: "find_roots",
            detail: format!("mu_max must be positive, got {mu_max}"),
        });
    }
    Ok(())
}

/// Sign changes of J_{p+1} − r J_p on a uniform grid over (0, mu_max],
/// for each ratio; exact zeros (including underflow) carry no sign.
fn audit_counts(p: usize, ratios: &[f64], mu_max: f64) -> Vec<usize> {
    let steps = (mu_max / AUDIT_STEP).ceil() as usize;
    let mut last = vec![0.0f64; ratios.len()];
    let mut counts = vec![0usize; ratios.len()];
    for k in 1..=steps {
        let x = (k as f64 * AUDIT_STEP).min(mu_max);
        let js = orders_unchecked(p + 1, x);
        for (i, &r) in ratios.iter().enumerate() {
            let g = js[p + 1] - r * js[p];
            if g == 0.0 {
                continue;
            }
            if last[i] != 0.0 && (last[i] < 0.0) != (g < 0.0) {
                counts[i] += 1;
            }
            last[i] = g;
        }
    }
    counts
}

/// Root sets for all four families of angular momentum n, sharing one zero
/// scan and one audit sweep.
pub fn find_roots_all(n: u32, m: u32, theta: f64, mu_max: f64) -> Result<[RootSet; 4]> {
    check_inputs(theta, mu_max)?;
    crate::coefficients::check_m(m)?;
    let families = EigenvalueFamily::all(n, m);
    let p = families[0].p() as usize;
    let zeros = bessel_zeros(p, mu_max);
    let ratios: Vec<f64> = families.iter().map(|f| f.ratio(theta)).collect();
    let scanned = audit_counts(p, &ratios, mu_max);
    let mut sets = Vec::with_capacity(4);
    for (i, family) in families.into_iter().enumerate() {
        let r = ratios[i];
        let roots = roots_for_ratio(p, r, &zeros, mu_max);
        if roots.len() != scanned[i] {
            return Err(Error::RootCount {
                p,
                ratio: r,
                bracketed: roots.len(),
                scanned: scanned[i],
            });
        }
        for &mu in &roots {
            let js = orders_unchecked(p + 1, mu);
            let residual = (js[p + 1] - r * js[p]).abs();
            if residual >= ROOT_TOL {
                return Err(Error::OffShell { mu, residual });
            }
        }
        sets.push(RootSet {
            family,
            theta,
            roots,
            mu_max,
        });
    }
    Ok(sets.try_into().expect("four families"))
}

/// All roots of one family in (0, mu_max].
pub fn find_roots(family: EigenvalueFamily, theta: f64, mu_max: f64) -> Result<RootSet> {
    let all = find_roots_all(family.n, family.m, theta, mu_max)?;
    Ok(all.into_iter().find(|s| s.family == family).expect("family is one of the four"))
}

#[cfg(test)]
mod tests {
    use super::super::{Chirality, Sign};
    use super::*;
    use proptest::prelude::*;

    fn fam(chirality: Chirality, sign: Sign, n: u32, m: u32) -> EigenvalueFamily {
        EigenvalueFamily {
            chirality,
            sign,
            n,
            m,
        }
    }

    /// Dense scan plus plain bisection on g = J_{p+1} − r J_p.
    fn oracle_roots(p: usize, r: f64, mu_max: f64) -> Vec<f64> {
        let g = |x: f64| {
            let js = orders_unchecked(p + 1, x);
            js[p + 1] - r * js[p]
        };
        let mut out = Vec::new();
        let h = 1e-3;
        let mut a = h;
        while a < mu_max {
            let b = a + h;
            let (ga, gb) = (g(a), g(b));
            if ga != 0.0 && gb != 0.0 && (ga < 0.0) != (gb < 0.0) {
                let (mut lo, mut hi) = (a, b);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if (g(mid) < 0.0) == (ga < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            a = b;
        }
        out
    }

    #[test]
    fn first_disc_root() {
        let set = find_roots(fam(Chirality::Plus, Sign::Pos, 0, 2), 0.0, 20.0).unwrap();
        let oracle = oracle_roots(0, 1.0, 20.0);
        assert_eq!(set.roots.len(), oracle.len());
        for (a, b) in set.roots.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((set.roots[0] - 1.4347).abs() < 1e-4);
    }

    #[test]
    fn untwisted_families_interlace_with_zeros() {
        let zeros = bessel_zeros(0, 30.0);
        assert!((zeros[0] - 2.404_825_557_695_773).abs() < 1e-13);
        assert!((zeros[1] - 5.520_078_110_286_311).abs() < 1e-13);
        let pos = find_roots(fam(Chirality::Plus, Sign::Pos, 0, 2), 0.0, 30.0).unwrap().roots;
        let neg = find_roots(fam(Chirality::Plus, Sign::Neg, 0, 2), 0.0, 30.0).unwrap().roots;
        // r = +1 has a root below j_{0,1}; r = −1 does not.
        assert!(pos[0] < zeros[0] && neg[0] > zeros[0]);
        for (k, w) in zeros.windows(2).enumerate() {
            assert!(pos[k + 1] > w[0] && pos[k + 1] < w[1]);
            assert!(neg[k] > w[0] && neg[k] < w[1]);
        }
    }

    #[test]
    fn roots_respect_the_norm_floor() {
        // 1/C² > 0 forces μ > (p + ½)/cosh θ.
        for &theta in &[0.0, 0.8, -1.6, 2.0] {
            for n in [0, 3, 10] {
                for set in find_roots_all(n, 4, theta, 40.0).unwrap() {
                    let floor = (set.family.p() as f64 + 0.5) / theta.cosh();
                    assert!(set.roots.iter().all(|&mu| mu > floor));
                }
            }
        }
    }

    #[test]
    fn theta_reflection_maps_families() {
        for n in [0, 2, 7] {
            let a = find_roots_all(n, 2, 0.9, 50.0).unwrap();
            let b = find_roots_all(n, 2, -0.9, 50.0).unwrap();
            for set in &a {
                let other = b.iter().find(|s| s.family == set.family.mirror()).unwrap();
                assert_eq!(set.roots, other.roots);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = fam(Chirality::Plus, Sign::Pos, 0, 2);
        assert!(find_roots(f, f64::NAN, 10.0).is_err());
        assert!(find_roots(f, 0.1, 0.0).is_err());
        assert!(find_roots(fam(Chirality::Plus, Sign::Pos, 0, 3), 0.1, 10.0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn roots_match_dense_oracle(n in 0u32..12, theta in -2.0f64..2.0, m in prop::sample::select(vec![2u32, 4, 6])) {
            let sets = find_roots_all(n, m, theta, 25.0).unwrap();
            for set in sets {
                let p = set.family.p() as usize;
                let r = set.family.ratio(theta);
                let oracle = oracle_roots(p, r, 25.0);
                prop_assert_eq!(set.roots.len(), oracle.len());
                for (a, b) in set.roots.iter().zip(&oracle) {
                    prop_assert!((a - b).abs() < 1e-10);
                }
                prop_assert!(set.roots.windows(2).all(|w| w[0] < w[1]));
                for &mu in &set.roots {
                    let js = orders_unchecked(p + 1, mu);
                    prop_assert!((js[p + 1] - r * js[p]).abs() < ROOT_TOL);
                }
            }
        }
    }
}
