use chiralbag::ball_spectrum::{fit_ball, BallFitConfig};
use chiralbag::coefficients::{
    a1_eta_ball, ball_heat_coefficients, eta_constants, universal_constants, EtaSource,
};
use chiralbag::cylinder::{check_t_integral, cylinder_row};
use chiralbag::identities::identity_grid;
use rayon::prelude::*;

use crate::report::{fmt_g, Cell, Table};

/// A finished report, whether every residual beat its tolerance, and a one
/// line summary for stderr.
pub struct Outcome {
    pub table: Table,
    pub pass: bool,
    pub summary: String,
}

fn grid(thetas: &[f64], ms: &[u32]) -> Vec<(f64, u32)> {
    thetas
        .iter()
        .flat_map(|&t| ms.iter().map(move |&m| (t, m)))
        .collect()
}

pub const TABLE_COLUMNS: [&str; 16] = [
    "theta", "m", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "d1", "d2", "d3", "d4", "a1_ball",
    "a2_ball", "a1_eta",
];

fn coefficient_row(theta: f64, m: u32, ball_forms: bool) -> chiralbag::Result<Vec<Cell>> {
    let uc = universal_constants(theta, m)?;
    let cyl = eta_constants(theta, m, EtaSource::Cylinder)?;
    let ball = ball_heat_coefficients(theta, m)?;
    let mut row: Vec<Cell> = vec![theta.into(), m.into()];
    row.extend(uc.as_array().map(Cell::from));
    row.extend([cyl.d1, cyl.d2, cyl.d3, cyl.d4()?].map(Cell::from));
    row.extend([ball.a1, ball.a2, a1_eta_ball(theta, m)?].map(Cell::from));
    if ball_forms {
        let b = eta_constants(theta, m, EtaSource::Ball)?;
        row.extend([b.d1, b.d2, b.d3].map(Cell::from));
    }
    Ok(row)
}

/// One row per (θ, m). With `ball_forms` the ball-derived d₁..d₃ follow the
/// stable columns.
pub fn coefficients(thetas: &[f64], ms: &[u32], ball_forms: bool) -> chiralbag::Result<Outcome> {
    let mut columns = TABLE_COLUMNS.to_vec();
    if ball_forms {
        columns.extend(["d1_ball", "d2_ball", "d3_ball"]);
    }
    let points = grid(thetas, ms);
    let rows = points
        .par_iter()
        .map(|&(t, m)| coefficient_row(t, m, ball_forms))
        .collect::<chiralbag::Result<Vec<_>>>()?;
    let n = rows.len();
    Ok(Outcome {
        table: Table { columns, rows },
        pass: true,
        summary: format!("{n} rows"),
    })
}

pub fn verify_identities(thetas: &[f64], ms: &[u32], tol: f64) -> chiralbag::Result<Outcome> {
    let rows = identity_grid(thetas, ms)?;
    let mut table = Table::new(vec![
        "theta",
        "m",
        "c_d_relations",
        "ball_cylinder_d1",
        "ball_cylinder_d2",
        "c7_relation",
        "alternative_forms",
        "terminating_paths",
        "f64_agreement",
        "max_residual",
        "pass",
    ]);
    let mut worst = 0.0f64;
    let mut pass = true;
    for r in &rows {
        let max = r.max();
        worst = worst.max(max);
        // f64::max skips NaN, so each residual is compared on its own.
        let ok = [
            r.c_d_relations,
            r.ball_cylinder_d1,
            r.ball_cylinder_d2,
            r.c7_relation.unwrap_or(0.0),
            r.alternative_forms,
            r.terminating_paths,
            r.f64_agreement,
        ]
        .iter()
        .all(|&v| v < tol);
        pass &= ok;
        table.push(vec![
            r.theta.into(),
            r.m.into(),
            r.c_d_relations.into(),
            r.ball_cylinder_d1.into(),
            r.ball_cylinder_d2.into(),
            r.c7_relation.into(),
            r.alternative_forms.into(),
            r.terminating_paths.into(),
            r.f64_agreement.into(),
            max.into(),
            ok.into(),
        ]);
    }
    Ok(Outcome {
        table,
        pass,
        summary: format!(
            "{} rows, max residual {} (tolerance {})",
            rows.len(),
            fmt_g(worst),
            fmt_g(tol)
        ),
    })
}

pub struct BallTolerances {
    pub a1_rel: f64,
    pub a2_abs: f64,
    /// Multiple of the fit uncertainty that bounds |a₁| when its closed form
    /// vanishes.
    pub a1_null_factor: f64,
}

pub fn verify_ball(
    thetas: &[f64],
    ms: &[u32],
    cfg: &BallFitConfig,
    tol: &BallTolerances,
) -> chiralbag::Result<Outcome> {
    let reports = grid(thetas, ms)
        .par_iter()
        .map(|&(t, m)| fit_ball(t, m, cfg))
        .collect::<chiralbag::Result<Vec<_>>>()?;
    let mut table = Table::new(vec![
        "theta",
        "m",
        "mu_max",
        "n_included",
        "eigenvalue_count",
        "fit_rms",
        "condition",
        "a1_fit",
        "a1_expected",
        "a1_uncertainty",
        "a1_residual",
        "a2_fit",
        "a2_expected",
        "a2_uncertainty",
        "a2_residual",
        "pass",
    ]);
    let mut pass = true;
    for r in &reports {
        // Relative a₁ residual, or |a₁|/uncertainty when the closed form vanishes.
        let (a1_res, a1_ok) = if r.a1_expected != 0.0 {
            let rel = (r.a1_fit - r.a1_expected).abs() / r.a1_expected.abs();
            (rel, rel < tol.a1_rel)
        } else {
            let ratio = r.a1_fit.abs() / r.a1_uncertainty();
            (ratio, ratio < tol.a1_null_factor)
        };
        let a2_res = (r.a2_fit - r.a2_expected).abs();
        let ok = a1_ok && a2_res < tol.a2_abs;
        pass &= ok;
        table.push(vec![
            r.theta.into(),
            r.m.into(),
            r.config.mu_max.into(),
            r.n_included.into(),
            r.eigenvalue_count.into(),
            r.fit.residual.into(),
            r.fit.condition_estimate.into(),
            r.a1_fit.into(),
            r.a1_expected.into(),
            r.a1_uncertainty().into(),
            a1_res.into(),
            r.a2_fit.into(),
            r.a2_expected.into(),
            r.a2_uncertainty().into(),
            a2_res.into(),
            ok.into(),
        ]);
    }
    Ok(Outcome {
        summary: format!(
            "{} fits, {} within tolerance",
            reports.len(),
            table.rows.iter().filter(|r| r.last() == Some(&Cell::Bool(true))).count()
        ),
        table,
        pass,
    })
}

pub struct CylinderGrid {
    pub ms: Vec<u32>,
    pub omegas: Vec<f64>,
    pub thetas: Vec<f64>,
    pub ts: Vec<f64>,
    pub ss: Vec<f64>,
}

/// x-integral checks over m × ω × θ × t, then t-integral checks over
/// s × ω × θ, one residual per row.
pub fn verify_cylinder(g: &CylinderGrid, tol: f64) -> chiralbag::Result<Outcome> {
    let x_points: Vec<(u32, f64, f64, f64)> = g
        .ms
        .iter()
        .flat_map(|&m| {
            g.omegas.iter().flat_map(move |&w| {
                g.thetas
                    .iter()
                    .flat_map(move |&th| g.ts.iter().map(move |&t| (m, w, th, t)))
            })
        })
        .collect();
    let x_rows = x_points
        .par_iter()
        .map(|&(m, w, th, t)| cylinder_row(m, w, th, t))
        .collect::<chiralbag::Result<Vec<_>>>()?;
    let t_points: Vec<(f64, f64, f64)> = g
        .ss
        .iter()
        .flat_map(|&s| {
            g.omegas
                .iter()
                .flat_map(move |&w| g.thetas.iter().map(move |&th| (s, w, th)))
        })
        .collect();
    let t_rows = t_points
        .par_iter()
        .map(|&(s, w, th)| check_t_integral(s, w, th))
        .collect::<chiralbag::Result<Vec<_>>>()?;

    let mut table = Table::new(vec![
        "check", "m", "omega", "theta", "t", "s", "residual", "tolerance", "pass",
    ]);
    let mut worst = 0.0f64;
    let mut pass = true;
    let mut push = |check: &str, m: Cell, w: f64, th: f64, t: Cell, s: Cell, r: f64, tol: f64| {
        worst = worst.max(r / tol);
        pass &= r < tol;
        table.push(vec![
            check.into(),
            m,
            w.into(),
            th.into(),
            t,
            s,
            r.into(),
            tol.into(),
            (r < tol).into(),
        ]);
    };
    // The two evaluations of e^{x²} erfc(−x) differ only by rounding.
    let path_tol = 1e-12;
    for r in &x_rows {
        let (m, t) = (Cell::from(r.m), Cell::from(r.t));
        push("u1", m.clone(), r.omega, r.theta, t.clone(), Cell::Empty, r.u1_residual, tol);
        push("u2", m.clone(), r.omega, r.theta, t.clone(), Cell::Empty, r.u2_residual, tol);
        push("erfc_paths", m, r.omega, r.theta, t, Cell::Empty, r.erfc_path_gap, path_tol);
    }
    for (&(s, w, th), &r) in t_points.iter().zip(&t_rows) {
        push("t_integral", Cell::Empty, w, th, Cell::Empty, s.into(), r, tol);
    }
    let n = table.rows.len();
    Ok(Outcome {
        table,
        pass,
        summary: format!("{n} checks, worst residual/tolerance {}", fmt_g(worst)),
    })
}
