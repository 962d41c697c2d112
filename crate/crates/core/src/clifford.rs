//! Skew-adjoint Clifford generators in even dimension, the chirality matrix
//! and the chiral bag projectors Π∓ = ½(1 ± e^{θγ̃} γ̃ γ_m).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Entrywise tolerance for the algebraic identities.
pub const MATRIX_TOL: f64 = 1e-13;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

fn pauli() -> [CMatrix; 3] {
    let z = c(0.0);
    let one = c(1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        CMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

/// γ-matrices with γ_iγ_j + γ_jγ_i = −2δ_ij and γ̃ = i^{m/2} γ₁⋯γ_m.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRep {
    pub m: u32,
    pub d_s: usize,
    /// γ₁, …, γ_m; `gammas[m-1]` is the normal direction.
    pub gammas: Vec<CMatrix>,
    pub gamma_tilde: CMatrix,
}

/// Jordan–Wigner construction γ_j = i e_j with Hermitian
/// e_{2k−1} = σ_z^{⊗(k−1)} ⊗ σ_x ⊗ 1, e_{2k} = σ_z^{⊗(k−1)} ⊗ σ_y ⊗ 1.
/// For m = 2 this gives γ̃ = diag(1, −1).
pub fn build_gamma(m: u32) -> Result<GammaRep> {
    if !(2..=12).contains(&m) || m % 2 == 1 {
        return Err(Error::Dimension {
            m: m as i64,
            detail: "Clifford representation needs an even m in [2, 12]",
        });
    }
    let k = (m / 2) as usize;
    let [sx, sy, sz] = pauli();
    let id2 = identity(2);
    let mut gammas = Vec::with_capacity(m as usize);
    for j in 0..k {
        for s in [&sx, &sy] {
            let mut e = CMatrix::identity(1, 1);
            for slot in 0..k {
                let factor = match slot.cmp(&j) {
                    std::cmp::Ordering::Less => &sz,
                    std::cmp::Ordering::Equal => s,
                    std::cmp::Ordering::Greater => &id2,
                };
                e = e.kronecker(factor);
            }
            gammas.push(e * I);
        }
    }
    let d_s = 1usize << k;
    let mut prod = identity(d_s);
    for g in &gammas {
        prod *= g;
    }
    let gamma_tilde = prod * I.powu(k as u32);
    Ok(GammaRep {
        m,
        d_s,
        gammas,
        gamma_tilde,
    })
}

/// Maximum entrywise residual of each representation invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepResiduals {
    pub clifford: f64,
    pub skew_adjoint: f64,
    pub tilde_square: f64,
    pub tilde_trace: f64,
    pub tilde_anticommutes: f64,
    pub chi_square: f64,
    /// |Tr γ_m| and |Tr γ̃γ_m|.
    pub traces: f64,
}

impl RepResiduals {
    pub fn max(&self) -> f64 {
        [
            self.clifford,
            self.skew_adjoint,
            self.tilde_square,
            self.tilde_trace,
            self.tilde_anticommutes,
            self.chi_square,
            self.traces,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl GammaRep {
    pub fn identity(&self) -> CMatrix {
        identity(self.d_s)
    }

    /// γ_m, the generator along the normal.
    pub fn gamma_m(&self) -> &CMatrix {
        &self.gammas[self.m as usize - 1]
    }

    /// γ̃γ_m; Hermitian and squares to one.
    pub fn tilde_gamma_m(&self) -> CMatrix {
        &self.gamma_tilde * self.gamma_m()
    }

    /// χ = −γ̃γ_m.
    pub fn chi(&self) -> CMatrix {
        -self.tilde_gamma_m()
    }

    /// e^{θγ̃} = cosh θ + sinh θ γ̃.
    pub fn exp_tilde(&self, theta: f64) -> CMatrix {
        self.identity() * c(theta.cosh()) + &self.gamma_tilde * c(theta.sinh())
    }

    pub fn residuals(&self) -> RepResiduals {
        let id = self.identity();
        let mut clifford = 0.0f64;
        let mut skew = 0.0f64;
        let mut anti = 0.0f64;
        for (i, gi) in self.gammas.iter().enumerate() {
            for (j, gj) in self.gammas.iter().enumerate() {
                let delta = if i == j { 2.0 } else { 0.0 };
                let r = gi * gj + gj * gi + &id * c(delta);
                clifford = clifford.max(max_abs(&r));
            }
            skew = skew.max(max_abs(&(gi.adjoint() + gi)));
            anti = anti.max(max_abs(&(&self.gamma_tilde * gi + gi * &self.gamma_tilde)));
        }
        let gt = &self.gamma_tilde;
        let tgm = self.tilde_gamma_m();
        RepResiduals {
            clifford,
            skew_adjoint: skew,
            tilde_square: max_abs(&(gt * gt - &id)),
            tilde_trace: gt.trace().norm(),
            tilde_anticommutes: anti,
            chi_square: max_abs(&(&tgm * &tgm - &id)),
            traces: self.gamma_m().trace().norm().max(tgm.trace().norm()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiralProjectors {
    pub theta: f64,
    pub pi_plus: CMatrix,
    pub pi_minus: CMatrix,
}

/// Maximum entrywise residuals of the projector invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorResiduals {
    pub idempotent: f64,
    pub complementary: f64,
}

impl ChiralProjectors {
    pub fn residuals(&self) -> ProjectorResiduals {
        let p = &self.pi_plus;
        let q = &self.pi_minus;
        let n = p.nrows();
        ProjectorResiduals {
            idempotent: max_abs(&(p * p - p)).max(max_abs(&(q * q - q))),
            complementary: max_abs(&(p + q - identity(n))),
        }
    }
}

pub fn chiral_projectors(rep: &GammaRep, theta: f64) -> ChiralProjectors {
    let half = c(0.5);
    let ea = rep.exp_tilde(theta) * rep.tilde_gamma_m();
    let id = rep.identity();
    ChiralProjectors {
        theta,
        pi_plus: (&id - &ea) * half,
        pi_minus: (&id + &ea) * half,
    }
}

/// ½ cosh θ (cosh θ + sinh θ γ̃ − γ̃γ_m).
pub fn pi_plus_product_closed_form(rep: &GammaRep, theta: f64) -> CMatrix {
    (rep.exp_tilde(theta) - rep.tilde_gamma_m()) * c(0.5 * theta.cosh())
}

/// Π₊Π₊†, checked entrywise against its closed form.
pub fn pi_plus_product(rep: &GammaRep, theta: f64) -> Result<CMatrix> {
    let p = chiral_projectors(rep, theta).pi_plus;
    let prod = &p * p.adjoint();
    let residual = max_abs(&(&prod - pi_plus_product_closed_form(rep, theta)));
    if residual > MATRIX_TOL {
        return Err(Error::Assertion {
            what: "Π₊Π₊† closed form",
            residual,
        });
    }
    Ok(prod)
}
