//! Per-mode heat kernel on the half-line x ≥ 0 for one eigenvalue ω of the
//! tangential operator, and the x- and t-integrals built from it.
//!
//! With ξ = x − x′, η = x + x′, c = cosh θ, T = tanh θ, Q = Π₊Π₊† and
//! u = η/√(4t) − √t ω T, the kernel (mode weight e^{−ω²t}/√(4πt) removed) is
//!
//!   e^{−ξ²/4t} − e^{−η²/4t} + (2Q/c²) h(η),
//!   h(η) = [1 + √(πt) ω T e^{u²} erfc(u)] e^{−η²/4t}.
//!
//! The Dirac operator acts per mode as P = γ_m ∂_x − γ̃γ_m ω. This is the
//! sign for which Π₋ P U vanishes on the boundary.

use std::f64::consts::PI;

use serde::Serialize;

use crate::clifford::{build_gamma, max_abs, pi_plus_product, CMatrix, GammaRep};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_composite, integrate};
use crate::specialfn::{erf, erfc, erfcx, gamma_fn, hyp2f1};

/// Central-difference step for the derivative audit.
pub const FD_STEP: f64 = 1e-5;
/// Allowed mismatch between analytic and finite-difference derivatives.
pub const FD_TOL: f64 = 1e-7;
/// Largest tolerated bound on a truncated semi-infinite tail.
pub const TAIL_TOL: f64 = 1e-13;

fn c(re: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeParams {
    pub omega: f64,
    pub theta: f64,
    pub t: f64,
    pub rep: GammaRep,
}

impl ModeParams {
    pub fn new(omega: f64, theta: f64, t: f64, m: u32) -> Result<ModeParams> {
        if !(t > 0.0 && t.is_finite()) || !omega.is_finite() || !theta.is_finite() {
            return Err(Error::Domain {
                function: "ModeParams",
                detail: format!("need finite ω, θ and t > 0, got ({omega}, {theta}, {t})"),
            });
        }
        Ok(ModeParams {
            omega,
            theta,
            t,
            rep: build_gamma(m)?,
        })
    }

    fn with_t(&self, t: f64) -> ModeParams {
        ModeParams { t, ..self.clone() }
    }
}

/// erfcx(u) e^{−η²/4t} without forming e^{u²} separately when u < 0.
fn scaled_gauss(u: f64, eta: f64, t: f64) -> Result<f64> {
    let g = eta * eta / (4.0 * t);
    let v = if u >= 0.0 {
        erfcx(u) * (-g).exp()
    } else {
        2.0 * (u * u - g).exp() - erfcx(-u) * (-g).exp()
    };
    if !v.is_finite() {
        return Err(Error::Overflow { u });
    }
    Ok(v)
}

/// The kernel of one mode, split into free, image and boundary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeKernel {
    pub params: ModeParams,
    /// Π₊Π₊†.
    pub q: CMatrix,
    pub pi_minus: CMatrix,
}

/// Matrix values of the three parts at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelParts {
    pub free: CMatrix,
    pub image: CMatrix,
    pub boundary: CMatrix,
}

impl KernelParts {
    pub fn total(&self) -> CMatrix {
        &self.free + &self.image + &self.boundary
    }
}

pub fn mode_kernel(params: &ModeParams) -> Result<ModeKernel> {
    let q = pi_plus_product(&params.rep, params.theta)?;
    let pi_minus = crate::clifford::chiral_projectors(&params.rep, params.theta).pi_minus;
    Ok(ModeKernel {
        params: params.clone(),
        q,
        pi_minus,
    })
}

impl ModeKernel {
    fn wt(&self) -> f64 {
        self.params.omega * self.params.theta.tanh()
    }

    fn u(&self, eta: f64) -> f64 {
        let t = self.params.t;
        eta / (4.0 * t).sqrt() - t.sqrt() * self.wt()
    }

    /// h(η).
    pub fn h(&self, eta: f64) -> Result<f64> {
        let t = self.params.t;
        let k = scaled_gauss(self.u(eta), eta, t)?;
        Ok((-eta * eta / (4.0 * t)).exp() + (PI * t).sqrt() * self.wt() * k)
    }

    /// h′(η) = −(η/2t + ωT) e^{−η²/4t} − √(πt) ω²T² erfcx(u) e^{−η²/4t}.
    pub fn h_prime(&self, eta: f64) -> Result<f64> {
        let t = self.params.t;
        let wt = self.wt();
        let k = scaled_gauss(self.u(eta), eta, t)?;
        Ok(-(eta / (2.0 * t) + wt) * (-eta * eta / (4.0 * t)).exp() - (PI * t).sqrt() * wt * wt * k)
    }

    fn boundary_weight(&self) -> f64 {
        2.0 / self.params.theta.cosh().powi(2)
    }

    pub fn evaluate(&self, x: f64, xp: f64) -> Result<KernelParts> {
        let t = self.params.t;
        let (xi, eta) = (x - xp, x + xp);
        let id = self.params.rep.identity();
        Ok(KernelParts {
            free: &id * c((-xi * xi / (4.0 * t)).exp()),
            image: &id * c(-(-eta * eta / (4.0 * t)).exp()),
            boundary: &self.q * c(self.boundary_weight() * self.h(eta)?),
        })
    }

    /// Full kernel with the mode weight e^{−ω²t}/√(4πt) restored.
    pub fn weighted(&self, x: f64, xp: f64) -> Result<CMatrix> {
        let t = self.params.t;
        let w = (-self.params.omega.powi(2) * t).exp() / (4.0 * PI * t).sqrt();
        Ok(self.evaluate(x, xp)?.total() * c(w))
    }

    /// ∂_x of each part.
    pub fn derivative(&self, x: f64, xp: f64) -> Result<KernelParts> {
        let t = self.params.t;
        let (xi, eta) = (x - xp, x + xp);
        let id = self.params.rep.identity();
        Ok(KernelParts {
            free: &id * c(-xi / (2.0 * t) * (-xi * xi / (4.0 * t)).exp()),
            image: &id * c(eta / (2.0 * t) * (-eta * eta / (4.0 * t)).exp()),
            boundary: &self.q * c(self.boundary_weight() * self.h_prime(eta)?),
        })
    }

    /// Largest entry of Π₋ U(0, x′).
    pub fn boundary_condition_residual(&self, xp: f64) -> Result<f64> {
        Ok(max_abs(&(&self.pi_minus * self.evaluate(0.0, xp)?.total())))
    }
}

/// P_x applied to the kernel: γ_m ∂_x U − ω γ̃γ_m U.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracKernel {
    pub kernel: ModeKernel,
    gamma_m: CMatrix,
    tilde_gamma_m: CMatrix,
}

impl DiracKernel {
    pub fn evaluate(&self, x: f64, xp: f64) -> Result<KernelParts> {
        let u = self.kernel.evaluate(x, xp)?;
        let du = self.kernel.derivative(x, xp)?;
        let w = c(self.kernel.params.omega);
        let apply = |d: &CMatrix, v: &CMatrix| &self.gamma_m * d - &self.tilde_gamma_m * v * w;
        Ok(KernelParts {
            free: apply(&du.free, &u.free),
            image: apply(&du.image, &u.image),
            boundary: apply(&du.boundary, &u.boundary),
        })
    }

    /// Largest entry of Π₋ (P_x U)(0, x′).
    pub fn boundary_condition_residual(&self, xp: f64) -> Result<f64> {
        Ok(max_abs(&(&self.kernel.pi_minus * self.evaluate(0.0, xp)?.total())))
    }
}

/// Largest entrywise gap between the analytic x-derivative and a central
/// difference with step h, relative to max(1, |derivative|).
pub fn derivative_audit(kernel: &ModeKernel, x: f64, xp: f64, h: f64) -> Result<f64> {
    let d = kernel.derivative(x, xp)?.total();
    let fd = (kernel.evaluate(x + h, xp)?.total() - kernel.evaluate(x - h, xp)?.total()) * c(0.5 / h);
    Ok(max_abs(&(&d - fd)) / max_abs(&d).max(1.0))
}

/// Builds P_x U after auditing the analytic derivative against central
/// differences at a few points scaled to the heat length √t.
pub fn apply_dirac(kernel: &ModeKernel) -> Result<DiracKernel> {
    let s = kernel.params.t.sqrt();
    let mut worst = 0.0f64;
    for &(x, xp) in &[(0.4, 0.4), (0.1, 0.7), (1.0, 0.3), (0.05, 0.05)] {
        worst = worst.max(derivative_audit(kernel, x * s, xp * s, FD_STEP * s)?);
    }
    if worst > FD_TOL {
        return Err(Error::DerivativeMismatch { residual: worst });
    }
    Ok(DiracKernel {
        kernel: kernel.clone(),
        gamma_m: kernel.params.rep.gamma_m().clone(),
        tilde_gamma_m: kernel.params.rep.tilde_gamma_m(),
    })
}

/// Residual of (∂_t + ω² − ∂_x²) on the weighted per-mode kernel by central
/// differences, relative to max(1, |kernel|).
pub fn heat_equation_residual(params: &ModeParams, x: f64, xp: f64, h: f64) -> Result<f64> {
    let at = |p: &ModeParams, x: f64| -> Result<CMatrix> { mode_kernel(p)?.weighted(x, xp) };
    let k0 = at(params, x)?;
    let dt = (at(&params.with_t(params.t + h), x)? - at(&params.with_t(params.t - h), x)?) * c(0.5 / h);
    let dxx = (at(params, x + h)? - &k0 * c(2.0) + at(params, x - h)?) * c(1.0 / (h * h));
    let r = dt + &k0 * c(params.omega.powi(2)) - dxx;
    Ok(max_abs(&r) / max_abs(&k0).max(1.0))
}

/// How E = e^{tω²T²} erfc(−√t ω T) is evaluated on the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErfcPath {
    Erfc,
    OnePlusErf,
}

fn e_factor(params: &ModeParams, path: ErfcPath) -> f64 {
    let x = params.t.sqrt() * params.omega * params.theta.tanh();
    let pre = (x * x).exp();
    match path {
        ErfcPath::Erfc => pre * erfc(-x),
        ErfcPath::OnePlusErf => pre * (1.0 + erf(x)),
    }
}

/// Integration cut X = 12√t + 2|ω|t and the bound on the neglected tail of
/// ∫ (|a| x/t + |b|) e^{−x²/t} dx beyond it.
fn cut_and_tail(params: &ModeParams, a: f64, b: f64) -> (f64, f64) {
    let t = params.t;
    let x = 12.0 * t.sqrt() + 2.0 * params.omega.abs() * t;
    let g = (-x * x / t).exp();
    (x, a.abs() * 0.5 * g + b.abs() * t / (2.0 * x) * g)
}

fn check_tail(bound: f64) -> Result<()> {
    if bound > TAIL_TOL {
        return Err(Error::TailBound {
            bound,
            tol: TAIL_TOL,
        });
    }
    Ok(())
}

/// Scalar coefficients of P_x U at coincidence x = x′ on the fixed matrices
/// γ_m, γ̃γ_m (image part) and γ_m Q, γ̃γ_m Q (boundary part).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Coincidence {
    image_d: f64,
    image_0: f64,
    boundary_d: f64,
    boundary_0: f64,
}

fn coincidence(k: &ModeKernel, x: f64) -> Result<Coincidence> {
    let t = k.params.t;
    let eta = 2.0 * x;
    let g = (-eta * eta / (4.0 * t)).exp();
    let w = k.params.omega;
    let bw = k.boundary_weight();
    Ok(Coincidence {
        image_d: eta / (2.0 * t) * g,
        image_0: w * g,
        boundary_d: bw * k.h_prime(eta)?,
        boundary_0: -w * bw * k.h(eta)?,
    })
}

/// Quadrature of one coincidence coefficient over (0, X).
fn integrate_part<F: Fn(&Coincidence) -> f64>(k: &ModeKernel, pick: F, x_cut: f64) -> Result<f64> {
    integrate(
        |x| coincidence(k, x).map(|v| pick(&v)).unwrap_or(f64::NAN),
        0.0,
        x_cut,
        1e-15,
        1e-13,
    )
}

/// Largest entry of f·[∫₀^∞ P_x U₁ dx]/√(4πt) − f(½γ_m/√(4πt) − ¼γ_mγ̃ω),
/// U₁ the image part.
pub fn check_u1_integral(params: &ModeParams, f: &CMatrix) -> Result<f64> {
    let k = mode_kernel(params)?;
    apply_dirac(&k)?;
    let t = params.t;
    let norm = 1.0 / (4.0 * PI * t).sqrt();
    let (x_cut, tail) = cut_and_tail(params, 1.0, params.omega);
    check_tail(tail * norm * max_abs(f))?;
    let d = integrate_part(&k, |v| v.image_d, x_cut)?;
    let z = integrate_part(&k, |v| v.image_0, x_cut)?;
    let rep = &params.rep;
    let gm = rep.gamma_m();
    let tgm = rep.tilde_gamma_m();
    let lhs = f * (gm * c(d * norm) - &tgm * c(-z * norm));
    // P(−e^{−η²/4t}) = γ_m (η/2t) e^{−η²/4t} + ω γ̃γ_m e^{−η²/4t}
    let gm_gt = gm * &rep.gamma_tilde;
    let rhs = f * (gm * c(0.5 * norm) - &gm_gt * c(0.25 * params.omega));
    Ok(max_abs(&(lhs - rhs)))
}

/// Right-hand side for the boundary part:
/// −(1/2c²) f γ_m Q [1/√(πt) + ωT E] + (1/2c²) f γ_m γ̃ Q ω E.
pub fn u2_rhs(params: &ModeParams, f: &CMatrix, path: ErfcPath) -> Result<CMatrix> {
    let rep = &params.rep;
    let q = pi_plus_product(rep, params.theta)?;
    let ch2 = params.theta.cosh().powi(2);
    let e = e_factor(params, path);
    let w = params.omega;
    let first = rep.gamma_m() * &q * c(-(1.0 / (PI * params.t).sqrt() + w * params.theta.tanh() * e) / (2.0 * ch2));
    let second = rep.gamma_m() * &rep.gamma_tilde * &q * c(w * e / (2.0 * ch2));
    Ok(f * (first + second))
}

fn u2_lhs(k: &ModeKernel, f: &CMatrix) -> Result<CMatrix> {
    let params = &k.params;
    let norm = 1.0 / (4.0 * PI * params.t).sqrt();
    let wt = (params.omega * params.theta.tanh()).abs();
    let a = k.boundary_weight();
    let b = k.boundary_weight()
        * (wt + (PI * params.t).sqrt() * wt * wt + params.omega.abs() * (1.0 + (PI * params.t).sqrt() * wt));
    let (x_cut, tail) = cut_and_tail(params, a, b);
    check_tail(tail * norm * max_abs(f) * max_abs(&k.q))?;
    let d = integrate_part(k, |v| v.boundary_d, x_cut)?;
    let z = integrate_part(k, |v| v.boundary_0, x_cut)?;
    let rep = &params.rep;
    let gq = rep.gamma_m() * &k.q;
    let tq = rep.tilde_gamma_m() * &k.q;
    Ok(f * (gq * c(d * norm) + tq * c(z * norm)))
}

/// Largest entry of the gap between the x-quadrature of f·P_x U₂ and its
/// closed form, U₂ the boundary part, with E taken along `path`.
pub fn check_u2_integral_with(params: &ModeParams, f: &CMatrix, path: ErfcPath) -> Result<f64> {
    let k = mode_kernel(params)?;
    apply_dirac(&k)?;
    Ok(max_abs(&(u2_lhs(&k, f)? - u2_rhs(params, f, path)?)))
}

pub fn check_u2_integral(params: &ModeParams, f: &CMatrix) -> Result<f64> {
    check_u2_integral_with(params, f, ErfcPath::Erfc)
}

/// Errors of the boundary-part x-integral under the fixed-panel Gauss rule
/// on (0, X), one per panel count.
pub fn u2_refinement_errors(params: &ModeParams, panels: &[usize]) -> Result<Vec<f64>> {
    let k = mode_kernel(params)?;
    let (x_cut, _) = cut_and_tail(params, 1.0, 1.0);
    // ∫₀^∞ h(2x) dx = ½√(πt) E
    let exact = 0.5 * (PI * params.t).sqrt() * e_factor(params, ErfcPath::Erfc);
    Ok(panels
        .iter()
        .map(|&n| {
            let approx = gauss_legendre_composite(|x| k.h(2.0 * x).unwrap_or(f64::NAN), 0.0, x_cut, n);
            (approx - exact).abs()
        })
        .collect())
}

/// (c^{s+1}/|ω|^{s+1}) [Γ((s+1)/2) + (2/√π) Γ(1+s/2) sinh θ sgn ω F(½, 1+s/2; 3/2; −sinh²θ)].
pub fn t_integral_closed_form(s: f64, omega: f64, theta: f64) -> Result<f64> {
    let ch = theta.cosh();
    let f = hyp2f1(0.5, 1.0 + s / 2.0, 1.5, -theta.sinh().powi(2))?;
    let bracket = gamma_fn((s + 1.0) / 2.0)?
        + 2.0 / PI.sqrt() * gamma_fn(1.0 + s / 2.0)? * theta.sinh() * omega.signum() * f;
    Ok((ch / omega.abs()).powf(s + 1.0) * bracket)
}

/// |∫₀^∞ t^{(s−1)/2} e^{−tω²/c²} erfc(−√t ω T) dt − closed form| / |closed form|.
pub fn check_t_integral(s: f64, omega: f64, theta: f64) -> Result<f64> {
    if !(s > -1.0) || omega == 0.0 || !omega.is_finite() || !theta.is_finite() {
        return Err(Error::Domain {
            function: "check_t_integral",
            detail: format!("need s > −1 and ω ≠ 0, got s = {s}, ω = {omega}"),
        });
    }
    let a = (omega / theta.cosh()).powi(2);
    let wt = omega * theta.tanh();
    // t = v²: 2 v^s e^{−a v²} erfc(−v ωT) dv; the integrand is below 4 v^s e^{−a v²}.
    let mut v_cut = (40.0 / a).sqrt();
    let tail = |v: f64| 4.0 * v.powf(s) * (-a * v * v).exp() / (2.0 * a * v - s / v);
    while 2.0 * a * v_cut * v_cut <= s.max(0.0) + 1.0 || tail(v_cut) > 1e-17 {
        v_cut *= 1.25;
    }
    let closed = t_integral_closed_form(s, omega, theta)?;
    check_tail(tail(v_cut) / closed.abs())?;
    let numeric = if s >= 0.0 {
        integrate(|v| 2.0 * v.powf(s) * (-a * v * v).exp() * erfc(-v * wt), 0.0, v_cut, 0.0, 1e-14)?
    } else {
        // v = w^{1/(s+1)} absorbs the v^s singularity.
        let k = 1.0 / (s + 1.0);
        let w_cut = v_cut.powf(s + 1.0);
        integrate(
            |w| {
                let v = w.powf(k);
                2.0 * k * (-a * v * v).exp() * erfc(-v * wt)
            },
            0.0,
            w_cut,
            0.0,
            1e-14,
        )?
    };
    Ok((numeric - closed).abs() / closed.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CylinderRow {
    pub m: u32,
    pub omega: f64,
    pub theta: f64,
    pub t: f64,
    pub u1_residual: f64,
    pub u2_residual: f64,
    /// |RHS via erfc − RHS via 1 + erf|.
    pub erfc_path_gap: f64,
}

/// The x-integral checks for one parameter tuple with f = 1.
pub fn cylinder_row(m: u32, omega: f64, theta: f64, t: f64) -> Result<CylinderRow> {
    let params = ModeParams::new(omega, theta, t, m)?;
    let f = params.rep.identity();
    let gap = max_abs(&(u2_rhs(&params, &f, ErfcPath::Erfc)? - u2_rhs(&params, &f, ErfcPath::OnePlusErf)?));
    Ok(CylinderRow {
        m,
        omega,
        theta,
        t,
        u1_residual: check_u1_integral(&params, &f)?,
        u2_residual: check_u2_integral(&params, &f)?,
        erfc_path_gap: gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(omega: f64, theta: f64, t: f64) -> ModeParams {
        ModeParams::new(omega, theta, t, 2).unwrap()
    }

    #[test]
    fn bracket_reduces_without_twist_or_mode() {
        let k = mode_kernel(&params(1.7, 0.0, 0.3)).unwrap();
        let k0 = mode_kernel(&params(0.0, 0.9, 0.3)).unwrap();
        for &eta in &[0.0, 0.4, 2.0] {
            let g = (-eta * eta / 1.2f64).exp();
            assert!((k.h(eta).unwrap() - g).abs() < 1e-16);
            assert!((k0.h(eta).unwrap() - g).abs() < 1e-16);
        }
        // At θ = 0, Q = Π₊ is an orthogonal projector.
        assert!(max_abs(&(&k.q - crate::clifford::chiral_projectors(&k.params.rep, 0.0).pi_plus)) < 1e-15);
    }

    #[test]
    fn scaled_product_overflow_is_reported() {
        // u² − η²/4t = tω²T² − ηωT: e^{2620} at η = 0, harmless far out.
        let k = mode_kernel(&params(40.0, 1.5, 2.0)).unwrap();
        assert!(matches!(k.h(0.0), Err(Error::Overflow { .. })));
        assert!(k.h(500.0).unwrap().is_finite());
        let k = mode_kernel(&params(3.0, 1.0, 1.0)).unwrap();
        assert!(k.h(0.0).unwrap().is_finite());
    }

    #[test]
    fn boundary_conditions() {
        for &(w, th, t) in &[(1.3, 0.7, 0.25), (0.5, -1.2, 0.1), (2.0, 0.4, 0.1)] {
            for m in [2, 4] {
                let p = ModeParams::new(w, th, t, m).unwrap();
                let k = mode_kernel(&p).unwrap();
                let d = apply_dirac(&k).unwrap();
                for &xp in &[0.0, 0.2, 0.9] {
                    assert!(k.boundary_condition_residual(xp).unwrap() < 1e-10);
                    assert!(d.boundary_condition_residual(xp).unwrap() < 1e-10, "m={m} {w} {th} {t}");
                }
            }
        }
    }

    #[test]
    fn heat_equation_holds_in_the_interior() {
        for &(w, th, t) in &[(1.3, 0.7, 0.25), (0.5, -1.2, 0.4)] {
            let p = params(w, th, t);
            for &(x, xp) in &[(0.3, 0.5), (0.8, 0.2), (0.1, 0.1)] {
                let r = heat_equation_residual(&p, x, xp, 1e-4).unwrap();
                assert!(r < 1e-6, "({w}, {th}, {t}) at ({x}, {xp}): {r}");
            }
        }
    }

    #[test]
    fn derivative_audit_examples() {
        let k = mode_kernel(&params(1.1, 0.5, 0.2)).unwrap();
        assert!(derivative_audit(&k, 0.4, 0.4, 1e-5).unwrap() < 1e-7);
        // θ = 0 image part: P(−e^{−η²/4t}) = γ_m (η/2t) e^{−η²/4t} + ω γ̃γ_m e^{−η²/4t}
        let p = params(0.8, 0.0, 0.3);
        let d = apply_dirac(&mode_kernel(&p).unwrap()).unwrap();
        let (x, xp) = (0.3, 0.2);
        let eta = x + xp;
        let g = (-eta * eta / (4.0 * p.t)).exp();
        let want = p.rep.gamma_m() * c(eta / (2.0 * p.t) * g) + p.rep.tilde_gamma_m() * c(p.omega * g);
        assert!(max_abs(&(d.evaluate(x, xp).unwrap().image - want)) < 1e-15);
        // ω = 0 boundary part: pure Gaussian derivative times 2Q/c².
        let p = params(0.0, 0.6, 0.3);
        let k = mode_kernel(&p).unwrap();
        let want = &k.q * c(2.0 / 0.6f64.cosh().powi(2) * (-eta / (2.0 * p.t) * g));
        assert!(max_abs(&(k.derivative(x, xp).unwrap().boundary - want)) < 1e-15);
    }

    #[test]
    fn integral_identities_examples() {
        let id2 = CMatrix::identity(2, 2);
        let p = params(1.3, 0.7, 0.25);
        assert!(check_u1_integral(&p, &id2).unwrap() < 1e-8);
        assert!(check_u2_integral(&p, &id2).unwrap() < 1e-8);
        assert!(check_u1_integral(&params(0.0, 0.7, 0.25), &id2).unwrap() < 1e-10);
        let p = params(2.0, 0.4, 0.1);
        assert!(check_u1_integral(&p, &p.rep.gamma_tilde).unwrap() < 1e-8);
        assert!(check_u2_integral(&params(1.3, 0.0, 0.25), &id2).unwrap() < 1e-9);
    }

    #[test]
    fn untwisted_u2_right_hand_side() {
        let p = params(1.3, 0.0, 0.25);
        let rep = &p.rep;
        let q = pi_plus_product(rep, 0.0).unwrap();
        let id = rep.identity();
        let want = rep.gamma_m() * &q * c(-0.5 / (PI * p.t).sqrt()) + rep.gamma_m() * &rep.gamma_tilde * &q * c(0.5 * p.omega);
        assert!(max_abs(&(u2_rhs(&p, &id, ErfcPath::Erfc).unwrap() - want)) < 1e-15);
    }

    #[test]
    fn paired_sign_flip_and_erfc_paths() {
        let id2 = CMatrix::identity(2, 2);
        let a = check_u2_integral(&params(1.3, 0.7, 0.25), &id2).unwrap();
        let b = check_u2_integral(&params(-1.3, -0.7, 0.25), &id2).unwrap();
        assert!(a < 1e-8 && b < 1e-8);
        for &(w, th) in &[(1.3, 0.7), (-2.0, 1.2), (0.5, -0.4)] {
            let p = params(w, th, 0.1);
            let gap = max_abs(
                &(u2_rhs(&p, &id2, ErfcPath::Erfc).unwrap() - u2_rhs(&p, &id2, ErfcPath::OnePlusErf).unwrap()),
            );
            assert!(gap < 1e-12);
            let r = check_u2_integral_with(&p, &id2, ErfcPath::OnePlusErf).unwrap();
            assert!(r < 1e-8);
        }
    }

    #[test]
    fn refinement_converges_with_high_order() {
        let errs = u2_refinement_errors(&params(1.3, 0.7, 0.25), &[4, 8, 16]).unwrap();
        for w in errs.windows(2) {
            assert!(w[1] < w[0]);
            assert!((w[0] / w[1]).log2() >= 4.0, "{errs:?}");
        }
    }

    #[test]
    fn t_integral_examples() {
        let closed = t_integral_closed_form(2.0, 1.5, 0.0).unwrap();
        assert!((closed - gamma_fn(1.5).unwrap() / 1.5f64.powi(3)).abs() < 1e-15);
        assert!(check_t_integral(2.0, 1.5, 0.0).unwrap() < 1e-10);
        assert!(check_t_integral(2.5, 1.7, 0.6).unwrap() < 1e-8);
        assert!(check_t_integral(2.5, -1.7, 0.6).unwrap() < 1e-8);
        assert!(check_t_integral(-0.5, 1.1, 1.2).unwrap() < 1e-8);
        assert!(check_t_integral(-1.0, 1.0, 0.0).is_err());
        assert!(check_t_integral(1.0, 0.0, 0.0).is_err());
    }
}
