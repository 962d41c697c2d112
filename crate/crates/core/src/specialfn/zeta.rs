//! Hurwitz zeta ζ_H(s, a) = Σ_{n≥0} (n + a)^{−s} and the Barnes-type zeta
//! ζ_B(s, a) = Σ_{n≥0} C(m+n−2, n) (n + a)^{−s} built on it.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma_fn;
use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Euler–Maclaurin shift.
const EM_SHIFT: usize = 25;

/// B₂, B₄, …, B₂₄.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
];

fn bernoulli_number(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => -0.5,
        k if k % 2 == 1 => 0.0,
        k => BERNOULLI_EVEN[k / 2 - 1],
    }
}

/// Euler–Maclaurin evaluation with shift N = 25 and twelve Bernoulli
/// corrections. Accurate for s ≥ 0 (s ≠ 1), where no cancellation occurs.
fn hurwitz_em(s: f64, a: f64) -> f64 {
    let mut sum = NeumaierSum::new();
    for n in 0..EM_SHIFT {
        sum.add((n as f64 + a).powf(-s));
    }
    let x = EM_SHIFT as f64 + a;
    let xs = x.powf(-s);
    sum.add(x * xs / (s - 1.0));
    sum.add(0.5 * xs);
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · x^{−s−2k+1}
    let mut rising = s; // s(s+1)…(s+2k−2)
    let mut fact = 2.0; // (2k)!
    let mut pow = xs / x; // x^{−s−2k+1}
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        sum.add(b / fact * rising * pow);
        let k = (k + 1) as f64;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        pow /= x * x;
    }
    sum.value()
}

/// Riemann ζ(x) for non-integer or positive x ≠ 1; negative arguments go
/// through the reflection formula.
fn riemann_zeta(x: f64) -> f64 {
    if x >= 0.0 {
        hurwitz_em(x, 1.0)
    } else {
        let g = gamma_fn(1.0 - x).expect("1 - x > 1 is not a pole");
        2f64.powf(x) * PI.powf(x - 1.0) * (0.5 * PI * x).sin() * g * hurwitz_em(1.0 - x, 1.0)
    }
}

/// ζ(−n, a) = −B_{n+1}(a)/(n+1).
fn hurwitz_negative_integer(n: usize, a: f64) -> f64 {
    let deg = n + 1;
    let mut binom = 1.0;
    let mut sum = NeumaierSum::new();
    for k in 0..=deg {
        sum.add(binom * bernoulli_number(k) * a.powi((deg - k) as i32));
        binom *= (deg - k) as f64 / (k + 1) as f64;
    }
    -sum.value() / deg as f64
}

/// Polylogarithm Li_q(e^μ) for non-integer q and |μ| ≤ π via
/// Li_q(e^μ) = Γ(1−q)(−μ)^{q−1} + Σ_k ζ(q−k) μ^k / k!.
fn polylog_exp(q: f64, mu: Complex64) -> Complex64 {
    let g = gamma_fn(1.0 - q).expect("q is not a positive integer");
    let mut out = if mu.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        (-mu).powf(q - 1.0) * g
    };
    let mut term = Complex64::new(1.0, 0.0); // μ^k / k!
    for k in 0..160 {
        let contrib = term * riemann_zeta(q - k as f64);
        out += contrib;
        if k > 8 && contrib.norm() <= 1e-18 * out.norm() {
            break;
        }
        term *= mu / (k as f64 + 1.0);
    }
    out
}

/// Hurwitz's Fourier formula, valid for s < 0 and 0 < a ≤ 1:
/// ζ(s, a) = 2Γ(1−s)/(2π)^{1−s} Σ_{n≥1} sin(2πna + πs/2)/n^{1−s}.
fn hurwitz_fourier(s: f64, a: f64) -> f64 {
    let q = 1.0 - s;
    let frac = a - a.round();
    let li = polylog_exp(q, Complex64::new(0.0, 2.0 * PI * frac));
    let phase = Complex64::from_polar(1.0, 0.5 * PI * s);
    let pref = 2.0 * gamma_fn(q).expect("q > 1") / (2.0 * PI).powf(q);
    pref * (phase * li).im
}

/// Hurwitz zeta ζ_H(s, a) for real s ≠ 1 and a > 0.
///
/// s ≥ 0 uses Euler–Maclaurin; s < 0 uses the Bernoulli-polynomial closed
/// form at integers and Hurwitz's Fourier formula otherwise, after shifting
/// a into (0, 1].
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s.is_finite() && a.is_finite()) {
        return Err(Error::Domain {
            function: "hurwitz_zeta",
            detail: "non-finite argument".into(),
        });
    }
    if a <= 0.0 {
        return Err(Error::Domain {
            function: "hurwitz_zeta",
            detail: format!("a must be positive, got {a}"),
        });
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: s,
        });
    }
    if s >= 0.0 {
        return Ok(hurwitz_em(s, a));
    }
    if s == s.round() {
        return Ok(hurwitz_negative_integer((-s) as usize, a));
    }
    // ζ(s, a) = ζ(s, a − k) − Σ_{j<k} (a − k + j)^{−s} with a − k ∈ (0, 1].
    let shift = (a.ceil() - 1.0).max(0.0);
    let base = a - shift;
    let mut acc = NeumaierSum::new();
    acc.add(hurwitz_fourier(s, base));
    for j in 0..shift as usize {
        acc.add(-(base + j as f64).powf(-s));
    }
    Ok(acc.value())
}

fn check_barnes_m(m: u32) -> Result<()> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::Dimension {
            m: m as i64,
            detail: "Barnes zeta needs an even m ≥ 2",
        });
    }
    Ok(())
}

/// Coefficients e_j(a), j = 0..=m−2, with
/// C(m+n−2, n) = Σ_j e_j(a) (n + a)^j.
///
/// C(m+n−2, n) = Π_{i=1}^{m−2} (n + i)/(m−2)!, and n + i = x − a + i with
/// x = n + a, so the product is expanded one linear factor at a time.
pub fn barnes_coefficients(a: f64, m: u32) -> Result<Vec<f64>> {
    check_barnes_m(m)?;
    let deg = (m - 2) as usize;
    let mut poly = vec![0.0; deg + 1];
    poly[0] = 1.0;
    let mut fact = 1.0;
    for i in 1..=deg {
        let shift = i as f64 - a;
        for k in (0..=i).rev() {
            let lower = if k > 0 { poly[k - 1] } else { 0.0 };
            poly[k] = lower + shift * poly[k];
        }
        fact *= i as f64;
    }
    Ok(poly.into_iter().map(|c| c / fact).collect())
}

/// Barnes-type zeta ζ_B(s, a) = Σ_j e_j(a) ζ_H(s − j, a).
pub fn barnes_zeta(s: f64, a: f64, m: u32) -> Result<f64> {
    let coeffs = barnes_coefficients(a, m)?;
    let scale = coeffs.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    let mut acc = NeumaierSum::new();
    for (j, e) in coeffs.iter().enumerate() {
        if e.abs() <= 1e-15 * scale {
            continue;
        }
        let arg = s - j as f64;
        if arg == 1.0 {
            return Err(Error::Pole {
                function: "barnes_zeta",
                at: s,
            });
        }
        acc.add(e * hurwitz_zeta(arg, a)?);
    }
    Ok(acc.value())
}

/// Residue of ζ_B(s, a) at s = s0 ∈ {1, …, m−1}: the Hurwitz pole of the
/// j = s0 − 1 term has unit residue, leaving e_{s0−1}(a).
pub fn barnes_residue(s0: u32, a: f64, m: u32) -> Result<f64> {
    check_barnes_m(m)?;
    if s0 < 1 || s0 > m - 1 {
        return Err(Error::Domain {
            function: "barnes_residue",
            detail: format!("s0 = {s0} is not in 1..={}", m - 1),
        });
    }
    Ok(barnes_coefficients(a, m)?[(s0 - 1) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// Partial sum to N plus the integral tail and the first two
    /// Euler–Maclaurin boundary terms, for s > 1.
    fn brute_hurwitz(s: f64, a: f64, n: usize) -> f64 {
        let mut acc = NeumaierSum::new();
        for k in 0..n {
            acc.add((k as f64 + a).powf(-s));
        }
        let x = n as f64 + a;
        acc.add(x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s) + s / 12.0 * x.powf(-s - 1.0));
        acc.value()
    }

    #[test]
    fn basel_and_half_shift() {
        let z2 = PI * PI / 6.0;
        assert!(rel(hurwitz_zeta(2.0, 1.0).unwrap(), z2) < 1e-14);
        assert!(rel(brute_hurwitz(2.0, 1.0, 100_000), z2) < 1e-14);
        let h = hurwitz_zeta(2.0, 0.5).unwrap();
        assert!(rel(h, PI * PI / 2.0) < 1e-14);
        assert!(rel(brute_hurwitz(2.0, 0.5, 100_000), PI * PI / 2.0) < 1e-14);
    }

    #[test]
    fn value_at_zero() {
        assert!((hurwitz_zeta(0.0, 1.3).unwrap() - (-0.8)).abs() < 1e-14);
    }

    #[test]
    fn pole_and_domain() {
        assert!(matches!(hurwitz_zeta(1.0, 1.0), Err(Error::Pole { .. })));
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }

    #[test]
    fn negative_arguments_match_known_values() {
        // ζ(−1) = −1/12, ζ(−3) = 1/120, ζ(−2) = 0
        assert!(rel(hurwitz_zeta(-1.0, 1.0).unwrap(), -1.0 / 12.0) < 1e-14);
        assert!(rel(hurwitz_zeta(-3.0, 1.0).unwrap(), 1.0 / 120.0) < 1e-14);
        assert!(hurwitz_zeta(-2.0, 1.0).unwrap().abs() < 1e-15);
        // ζ(−1/2) = −0.20788622497735457 (reference value)
        assert!(rel(hurwitz_zeta(-0.5, 1.0).unwrap(), -0.207_886_224_977_354_57) < 1e-12);
        // ζ(−19.5, 0.45) = −21.295356716784175 (reference value)
        assert!(rel(hurwitz_zeta(-19.5, 0.45).unwrap(), -21.295_356_716_784_175) < 1e-11);
    }

    #[test]
    fn fourier_route_is_continuous_with_integer_route() {
        // Approaching a negative integer from either side.
        for &(n, a) in &[(3.0, 0.7), (6.0, 2.3), (11.0, 1.0)] {
            let exact = hurwitz_zeta(-n, a).unwrap();
            let near = hurwitz_zeta(-n + 1e-9, a).unwrap();
            assert!((near - exact).abs() < 1e-6 * exact.abs().max(1.0), "n={n} a={a}");
        }
    }

    #[test]
    fn shift_relation_holds_for_negative_s() {
        // ζ(s, a) − ζ(s, a + 1) = a^{−s}
        for &(s, a) in &[(-0.5, 0.3), (-2.5, 0.8), (-7.25, 1.6), (-19.5, 0.45)] {
            let z = hurwitz_zeta(s, a).unwrap();
            let d = z - hurwitz_zeta(s, a + 1.0).unwrap();
            let want = a.powf(-s);
            assert!((d - want).abs() < 1e-11 * want.max(z.abs()), "s={s} a={a}");
        }
    }

    #[test]
    fn coefficients_reproduce_binomials() {
        for m in (2..=12).step_by(2) {
            for &a in &[1.0, 0.7, 4.0] {
                let e = barnes_coefficients(a, m).unwrap();
                for n in 0..20u64 {
                    let x = n as f64 + a;
                    let poly: f64 = e.iter().enumerate().map(|(j, c)| c * x.powi(j as i32)).sum();
                    let mut binom = 1.0;
                    for i in 1..=(m as u64 - 2) {
                        binom *= (n + i) as f64 / i as f64;
                    }
                    assert!(rel(poly, binom) < 1e-12, "m={m} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn barnes_reduces_to_hurwitz_for_m2() {
        let b = barnes_zeta(2.5, 0.7, 2).unwrap();
        let h = hurwitz_zeta(2.5, 0.7).unwrap();
        assert!(rel(b, h) < 1e-15);
    }

    #[test]
    fn barnes_top_residue() {
        assert!((barnes_residue(3, 1.0, 4).unwrap() - 0.5).abs() < 1e-15);
        for m in (4..=12).step_by(2) {
            let mut fact = 1.0;
            for i in 1..=(m - 2) {
                fact *= i as f64;
            }
            assert!((barnes_residue(m - 1, 0.37, m).unwrap() - 1.0 / fact).abs() < 1e-15);
        }
        assert!(barnes_residue(4, 1.0, 4).is_err());
        assert!(barnes_residue(0, 1.0, 4).is_err());
    }

    #[test]
    fn barnes_pole_and_dimension_errors() {
        assert!(matches!(barnes_zeta(3.0, 1.0, 4), Err(Error::Pole { .. })));
        assert!(matches!(barnes_zeta(3.0, 1.0, 3), Err(Error::Dimension { .. })));
    }

    /// Direct partial sum of Σ C(m+n−2, n)(n+a)^{−s} with an integral tail
    /// Σ_{n≥N} ≈ ∫_{N−½}^∞ x^{m−2−s}/(m−2)! dx.
    fn brute_barnes(s: f64, a: f64, m: u32, n_terms: usize) -> f64 {
        let mut acc = NeumaierSum::new();
        let mut fact = 1.0;
        for i in 1..=(m as usize - 2) {
            fact *= i as f64;
        }
        for n in 0..n_terms {
            let mut binom = 1.0;
            for i in 1..=(m as usize - 2) {
                binom *= (n + i) as f64 / i as f64;
            }
            acc.add(binom * (n as f64 + a).powf(-s));
        }
        let lo = n_terms as f64 + a - 0.5 + (m as f64 - 2.0) / 2.0;
        let k = s - (m as f64 - 2.0);
        acc.add(lo.powf(1.0 - k) / ((k - 1.0) * fact));
        acc.value()
    }

    #[test]
    fn barnes_matches_direct_sum_example() {
        let got = barnes_zeta(4.0, 1.0, 4).unwrap();
        // ζ_B(s, 1, 4) = (ζ(s−2) + ζ(s−1))/2
        let closed = 0.5 * (hurwitz_zeta(2.0, 1.0).unwrap() + hurwitz_zeta(3.0, 1.0).unwrap());
        assert!(rel(got, closed) < 1e-14);
        assert!((got - 1.423_495_5).abs() < 1e-7);
        assert!(rel(brute_barnes(4.0, 1.0, 4, 200_000), got) < 1e-9);
    }

    proptest! {
        #[test]
        fn euler_maclaurin_matches_partial_sums(s in 1.5f64..20.0, a in 0.2f64..5.0) {
            let got = hurwitz_zeta(s, a).unwrap();
            let oracle = brute_hurwitz(s, a, 20_000);
            prop_assert!(rel(got, oracle) < 1e-11);
        }

        #[test]
        fn recurrence_in_a(s in -20.0f64..20.0, a in 0.1f64..4.0) {
            prop_assume!((s - 1.0).abs() > 1e-3);
            let d = hurwitz_zeta(s, a).unwrap() - hurwitz_zeta(s, a + 1.0).unwrap();
            let want = a.powf(-s);
            prop_assert!((d - want).abs() < 1e-10 * want.abs().max(hurwitz_zeta(s, a).unwrap().abs()).max(1.0));
        }

        #[test]
        fn barnes_matches_partial_sums(m in prop::sample::select(vec![2u32, 4, 6]), a in 0.3f64..3.0, ds in 1.5f64..4.0) {
            let s = m as f64 - 1.0 + ds;
            let got = barnes_zeta(s, a, m).unwrap();
            let oracle = brute_barnes(s, a, m, 20_000);
            prop_assert!(rel(got, oracle) < 1e-6, "got {} oracle {}", got, oracle);
        }
    }
}
