//! Integer-order Bessel functions of the first kind.
//!
//! Values come from Miller's backward recurrence normalised with
//! `J₀ + 2 Σ J₂ₖ = 1`; ratios `J_{p+1}/J_p` come from the same recurrence
//! without normalisation, which keeps them accurate where both functions
//! underflow.

use crate::error::{Error, Result};

/// Starting order for the backward recurrence: beyond the turning point by
/// a margin of a dozen Airy widths.
fn start_order(nmax: usize, x: f64) -> usize {
    let top = (nmax as f64).max(x);
    let n = top + 30.0 + 12.0 * x.max(1.0).cbrt() + (40.0 * nmax as f64).sqrt();
    let n = n.ceil() as usize;
    n + (n & 1)
}

fn check_x(function: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            function,
            detail: format!("x must be finite and non-negative, got {x}"),
        });
    }
    Ok(())
}

/// `[J₀(x), …, J_nmax(x)]`. Caller guarantees finite x ≥ 0.
pub(crate) fn orders_unchecked(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let n_start = start_order(nmax, x);
    let mut next = 0.0f64; // J_{k+1}
    let mut curr = 1e-300f64; // J_k
    let mut norm = 0.0f64;
    for k in (0..=n_start).rev() {
        if k <= nmax {
            out[k] = curr;
        }
        if k % 2 == 0 {
            norm += if k == 0 { curr } else { 2.0 * curr };
        }
        if k == 0 {
            break;
        }
        let prev = 2.0 * k as f64 / x * curr - next;
        next = curr;
        curr = prev;
        if curr.abs() > 1e250 {
            let s = 1e-250;
            curr *= s;
            next *= s;
            norm *= s;
            for v in out.iter_mut().skip(k - 1) {
                *v *= s;
            }
        }
    }
    let inv = 1.0 / norm;
    for v in &mut out {
        *v *= inv;
    }
    out
}

pub(crate) fn j_unchecked(p: usize, x: f64) -> f64 {
    orders_unchecked(p, x)[p]
}

/// `J_{p+1}(x)/J_p(x)` by the backward continued fraction. Infinite at
/// zeros of `J_p`.
pub(crate) fn ratio_unchecked(p: usize, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let n_start = start_order(p, x);
    let mut r = x / (2.0 * (n_start as f64 + 1.0));
    for n in (p..n_start).rev() {
        r = x / (2.0 * (n as f64 + 1.0) - x * r);
    }
    r
}

/// `J_p(x)` for integer `p ≥ 0` and `x ≥ 0`.
pub fn bessel_j(p: u32, x: f64) -> Result<f64> {
    check_x("bessel_j", x)?;
    Ok(j_unchecked(p as usize, x))
}

/// `J_p′(x)`, using `J₀′ = −J₁` and `J_p′ = (J_{p−1} − J_{p+1})/2`.
pub fn bessel_j_prime(p: u32, x: f64) -> Result<f64> {
    check_x("bessel_j_prime", x)?;
    let js = orders_unchecked(p as usize + 1, x);
    let p = p as usize;
    Ok(if p == 0 {
        -js[1]
    } else {
        0.5 * (js[p - 1] - js[p + 1])
    })
}

/// `J₀(x), …, J_nmax(x)` from a single recurrence sweep.
pub fn bessel_j_orders(nmax: u32, x: f64) -> Result<Vec<f64>> {
    check_x("bessel_j_orders", x)?;
    Ok(orders_unchecked(nmax as usize, x))
}

/// `J_{p+1}(x)/J_p(x)`.
pub fn bessel_j_ratio(p: u32, x: f64) -> Result<f64> {
    check_x("bessel_j_ratio", x)?;
    Ok(ratio_unchecked(p as usize, x))
}
