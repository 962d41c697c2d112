//! The closed forms of the boundary constants in double-double arithmetic.
//!
//! Every form is a polynomial in s = sinh θ, c = cosh θ and 1/c once the
//! hypergeometric factors are written as terminating sums (directly, or after
//! a Pfaff or Euler transformation). Evaluating at the point (s, √(1+s²))
//! keeps c² − s² = 1 exact to double-double precision, so identities between
//! the forms hold to roughly 1e−30 relative, far below one f64 ulp of the
//! constants themselves.

use twofloat::TwoFloat;

use crate::coefficients::check_m;
use crate::error::Result;

type R = TwoFloat;

fn r(x: f64) -> R {
    R::from(x)
}

/// 1/x by one Newton step from the f64 reciprocal. The crate's
/// double-by-double division forms its residual 1 − x·y₀ without FMA and
/// keeps only f64 accuracy.
fn recip(x: R) -> R {
    let y0 = 1.0 / x.hi();
    let e = r(1.0) - x * y0;
    e * y0 + y0
}

/// ₂F₁(a, b; c; z) for b a non-positive integer, summed term by term.
fn terminating(a: f64, b: f64, c: f64, z: R) -> R {
    let n = (-b).round() as u32;
    debug_assert!(b <= 0.0 && (b + n as f64).abs() < 1e-12);
    let mut term = r(1.0);
    let mut sum = r(1.0);
    for k in 0..n {
        let k = k as f64;
        // Numerator and denominator are exact in f64 for half-integer a, b, c.
        term = term * z * ((a + k) * (b + k)) / ((c + k) * (k + 1.0));
        sum += term;
    }
    sum
}

#[derive(Debug, Clone, Copy)]
pub struct ExtendedConstants {
    pub m: u32,
    pub sinh: R,
    pub cosh: R,
    pub c1: R,
    /// c₂ and c₇ need m ≥ 4 for a terminating form.
    pub c2: Option<R>,
    pub c3: R,
    pub c5: R,
    pub c6: R,
    pub c7: Option<R>,
    pub d1_ball: R,
    pub d2_ball: R,
    pub d1_cyl: R,
    pub d2_cyl: R,
    pub d4_cyl: R,
    /// c² F(1, 1−m/2; ½; −s²).
    pub transformation_lhs: R,
    /// 1 + (m−1) s² c^{m−1} F(½, (m+1)/2; 3/2; −s²).
    pub transformation_rhs: R,
}

pub fn extended_constants(theta: f64, m: u32) -> Result<ExtendedConstants> {
    let mf = check_m(m)?;
    let s = r(theta.sinh());
    let s2 = s * s;
    let ch = (s2 + 1.0).sqrt();
    let inv_ch = recip(ch);
    let th = s * inv_ch;
    let th2 = th * th;
    let k = (mf - 1.0) / 2.0;
    let b = 1.0 - mf / 2.0;
    let p_half = terminating(1.0, b, 0.5, -s2);
    let p_3half = terminating(1.0, b, 1.5, -s2);
    // F(½, (m+1)/2; 3/2; −s²) = (1/c) F(½, 1−m/2; 3/2; tanh²θ) by Pfaff.
    let g = terminating(0.5, b, 1.5, th2) * inv_ch;
    let chm2 = ch.powi(m as i32 - 2);
    let d4_cyl = -th * 0.5 + s * chm2 * g * k;
    // F(1, (m−1)/2; 3/2; tanh²θ) = c^{m−2} F(½, 2−m/2; 3/2; tanh²θ) by Euler.
    let ft = (m >= 4).then(|| chm2 * terminating(0.5, 2.0 - mf / 2.0, 1.5, th2));
    Ok(ExtendedConstants {
        m,
        sinh: s,
        cosh: ch,
        c1: (chm2 * ch - 1.0) * 0.25,
        c2: ft.map(|ft| (r(2.0 * mf - 5.0) / 3.0 + ft * (2.0 - mf)) / (2.0 * (mf - 1.0))),
        c3: d4_cyl * -2.0,
        c5: ch * p_half,
        c6: s * p_3half * (mf - 1.0),
        c7: ft.map(|ft| (r(1.0) - ft) * -0.5),
        d1_ball: -(s * p_3half * k),
        d2_ball: -(ch * p_half * 0.5),
        d1_cyl: -(s * chm2 * ch * g * k),
        d2_cyl: -(inv_ch * 0.5) - s2 * chm2 * g * k,
        d4_cyl,
        transformation_lhs: ch * ch * p_half,
        transformation_rhs: r(1.0) + s2 * chm2 * ch * g * (mf - 1.0),
    })
}

/// |a − b| rounded to f64.
pub fn gap(a: R, b: R) -> f64 {
    f64::from(a - b).abs()
}
