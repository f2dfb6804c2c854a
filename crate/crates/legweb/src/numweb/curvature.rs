//! Blaschke curvature by finite differences.
//!
//! For a 3-web given by 1-forms `ω₁, ω₂, ω₃` one picks scalings `λᵢ` with
//! `Σ λᵢωᵢ = 0` (the null vector of the 2×3 coefficient matrix, i.e. its
//! signed minors), sets `ηᵢ = λᵢωᵢ`, and solves the two-equation linear
//! system `dηᵢ = γ ∧ ηᵢ (i = 1, 2)` for the connection form
//! `γ = g·dp + h·dq`; the third equation then holds identically because
//! `η₃ = −η₁ − η₂`.  The curvature is `K = dγ = (∂_p h − ∂_q g) dp∧dq`,
//! and the 4-web curvature is the sum over its four 3-subwebs.
//!
//! All derivatives are second-order central differences with a real step
//! in each chart coordinate; the sampled data is holomorphic in `(p, q)`,
//! so real-direction differences converge to the complex derivatives at
//! order `h²`.  That holomorphy is a contract on [`DirectionField`]: a
//! field must return representatives that vary holomorphically over the
//! stencil (a fixed gauge), which is why the tangency-branch and pencil
//! fields built here pin their normalization to the stencil center rather
//! than re-normalizing at every point.
//!
//! Tangency branches are tracked across the stencil by nearest-neighbor
//! matching against the center roots, rejected as ambiguous unless the
//! best match is 10× closer than the second best.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{CurvatureSample, DualPoint, EmbeddedWeb, WebDirection};
use crate::error::NumericError;

/// Minimum relative margin between the best and second-best root match.
const TRACKING_RATIO: f64 = 10.0;

// ---- Direction fields ----

/// A web member presented as an evaluable direction field.
///
/// Contract: over the small stencils used here the returned `(u, v)` must
/// vary *holomorphically* in `(p, q)` — no per-point re-normalization by
/// moduli — and errors abort the whole curvature evaluation.
pub trait DirectionField: Sync {
    fn at(&self, z: DualPoint) -> Result<WebDirection, NumericError>;
}

impl<F> DirectionField for F
where
    F: Fn(DualPoint) -> Result<WebDirection, NumericError> + Sync,
{
    fn at(&self, z: DualPoint) -> Result<WebDirection, NumericError> {
        self(z)
    }
}

/// One tangency branch: matches the cubic's roots at a queried point
/// against the root this branch had at the stencil center.
struct BranchField<'w> {
    web: &'w EmbeddedWeb,
    center_root: Complex64,
    /// Divide `(x, −1)` by the gauge component chosen at the center:
    /// `true` → divide by `x` (center root had modulus ≥ 1).
    gauge_by_root: bool,
}

impl BranchField<'_> {
    fn tracked_root(&self, z: DualPoint) -> Result<Complex64, NumericError> {
        let roots = self.web.slopes(z)?;
        let mut best = 0usize;
        for k in 1..3 {
            if (roots[k] - self.center_root).norm() < (roots[best] - self.center_root).norm() {
                best = k;
            }
        }
        let d_best = (roots[best] - self.center_root).norm();
        let d_second = (0..3)
            .filter(|&k| k != best)
            .map(|k| (roots[k] - self.center_root).norm())
            .fold(f64::INFINITY, f64::min);
        if d_best * TRACKING_RATIO > d_second {
            return Err(NumericError::RootTrackingFailure);
        }
        Ok(roots[best])
    }
}

impl DirectionField for BranchField<'_> {
    fn at(&self, z: DualPoint) -> Result<WebDirection, NumericError> {
        let x = self.tracked_root(z)?;
        let one = Complex64::new(1.0, 0.0);
        Ok(if self.gauge_by_root {
            WebDirection { u: one, v: -one / x }
        } else {
            WebDirection { u: -x, v: one }
        })
    }
}

/// The pencil member with its gauge pinned at the stencil center.
struct PencilField<'w> {
    web: &'w EmbeddedWeb,
    /// `true` → divide by the `u` component.
    gauge_by_u: bool,
}

impl DirectionField for PencilField<'_> {
    fn at(&self, z: DualPoint) -> Result<WebDirection, NumericError> {
        let (u, v) = self.web.pencil_raw(z);
        let w = if self.gauge_by_u { u } else { v };
        if w.norm() == 0.0 {
            return Err(NumericError::NearDiscriminant);
        }
        Ok(WebDirection { u: u / w, v: v / w })
    }
}

// ---- Connection and curvature ----

/// `η`-data at one stencil point: `(fᵢ, gᵢ)` with `ηᵢ = fᵢ·dp + gᵢ·dq`.
type EtaRow = [(Complex64, Complex64); 3];

/// Scaled member forms at `z`: `λ` from the signed 2×2 minors of the
/// direction matrix, so `Σ ηᵢ = 0` holds exactly (up to rounding).
fn eta_at(fields: &[&dyn DirectionField; 3], z: DualPoint) -> Result<EtaRow, NumericError> {
    let d: Vec<WebDirection> = fields
        .iter()
        .map(|f| f.at(z))
        .collect::<Result<_, _>>()?;
    let minor = |i: usize, j: usize| d[i].u * d[j].v - d[i].v * d[j].u;
    let lambda = [minor(1, 2), -minor(0, 2), minor(0, 1)];
    let scale = lambda.iter().map(|l| l.norm()).fold(0.0_f64, f64::max);
    if lambda.iter().any(|l| l.norm() <= 1e-9 * scale.max(1e-300)) {
        // a vanishing minor means two members are parallel here
        return Err(NumericError::NearDiscriminant);
    }
    Ok([
        (lambda[0] * d[0].u, lambda[0] * d[0].v),
        (lambda[1] * d[1].u, lambda[1] * d[1].v),
        (lambda[2] * d[2].u, lambda[2] * d[2].v),
    ])
}

/// Memoized η evaluation on the grid `z + (i·h, j·h)`.
struct EtaGrid<'a> {
    fields: &'a [&'a dyn DirectionField; 3],
    center: DualPoint,
    h: f64,
    memo: HashMap<(i32, i32), EtaRow>,
}

impl EtaGrid<'_> {
    fn get(&mut self, i: i32, j: i32) -> Result<EtaRow, NumericError> {
        if let Some(row) = self.memo.get(&(i, j)) {
            return Ok(*row);
        }
        let row = eta_at(self.fields, self.center.offset(self.h * i as f64, self.h * j as f64))?;
        self.memo.insert((i, j), row);
        Ok(row)
    }

    /// `γ = g·dp + h·dq` at grid node `(i, j)`, from the first two member
    /// equations, together with the residual of the third (which is zero
    /// up to rounding and truncation).
    fn gamma(&mut self, i: i32, j: i32) -> Result<(Complex64, Complex64, f64), NumericError> {
        let two_h = 2.0 * self.h;
        let e_pp = self.get(i + 1, j)?;
        let e_pm = self.get(i - 1, j)?;
        let e_qp = self.get(i, j + 1)?;
        let e_qm = self.get(i, j - 1)?;
        let here = self.get(i, j)?;
        // dηₖ = (∂_p gₖ − ∂_q fₖ) dp∧dq by central differences
        let r: Vec<Complex64> = (0..3)
            .map(|k| (e_pp[k].1 - e_pm[k].1) / two_h - (e_qp[k].0 - e_qm[k].0) / two_h)
            .collect();
        // γ∧ηₖ = (g·gₖ − h·fₖ) dp∧dq: solve the k = 0, 1 pair
        let (f0, g0) = here[0];
        let (f1, g1) = here[1];
        let det = f0 * g1 - f1 * g0;
        let scale = f0.norm().max(g0.norm()).max(f1.norm()).max(g1.norm());
        if det.norm() <= 1e-12 * scale * scale {
            return Err(NumericError::NearDiscriminant);
        }
        let g = (f0 * r[1] - f1 * r[0]) / det;
        let h = (g0 * r[1] - g1 * r[0]) / det;
        let (f2, g2) = here[2];
        let residual = (r[2] - (g * g2 - h * f2)).norm();
        Ok((g, h, residual))
    }
}

/// Blaschke curvature of the 3-web spanned by `fields` at `z`: the
/// coefficient of `dp∧dq` in `dγ`, by central differences with step `h`.
pub fn web3_curvature(
    fields: [&dyn DirectionField; 3],
    z: DualPoint,
    h: f64,
) -> Result<Complex64, NumericError> {
    assert!(h > 0.0, "step must be positive");
    let mut grid = EtaGrid { fields: &fields, center: z, h, memo: HashMap::new() };
    let (_, h_pp, _) = grid.gamma(1, 0)?;
    let (_, h_pm, _) = grid.gamma(-1, 0)?;
    let (g_qp, _, _) = grid.gamma(0, 1)?;
    let (g_qm, _, _) = grid.gamma(0, -1)?;
    let two_h = 2.0 * h;
    Ok((h_pp - h_pm) / two_h - (g_qp - g_qm) / two_h)
}

/// Residual of the redundant third connection equation at `z`, relative
/// to the scale of its right-hand side.  Identically zero in exact
/// arithmetic; in floating point it measures the health of the sample.
pub fn connection_residual(
    fields: [&dyn DirectionField; 3],
    z: DualPoint,
    h: f64,
) -> Result<f64, NumericError> {
    let mut grid = EtaGrid { fields: &fields, center: z, h, memo: HashMap::new() };
    let (g, hh, residual) = grid.gamma(0, 0)?;
    Ok(residual / g.norm().max(hh.norm()).max(1.0))
}

/// Curvature of the full 4-web of `web` at `z`: the four 3-subweb
/// curvatures (triples in lexicographic order over member indices
/// `0..4`, the pencil last) and their sum.
pub fn web4_curvature(
    web: &EmbeddedWeb,
    z: DualPoint,
    h: f64,
) -> Result<CurvatureSample, NumericError> {
    // center evaluation fixes branch identities and gauges for the stencil
    let slopes = web.slopes(z)?;
    web.directions(z)?; // member-collision guards, pencil included
    let branch = |k: usize| BranchField {
        web,
        center_root: slopes[k],
        gauge_by_root: slopes[k].norm() >= 1.0,
    };
    let branches = [branch(0), branch(1), branch(2)];
    let (u0, v0) = web.pencil_raw(z);
    let pencil = PencilField { web, gauge_by_u: u0.norm() >= v0.norm() };
    let members: [&dyn DirectionField; 4] =
        [&branches[0], &branches[1], &branches[2], &pencil];
    const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut triple_ks = [Complex64::new(0.0, 0.0); 4];
    for (slot, t) in TRIPLES.iter().enumerate() {
        triple_ks[slot] = web3_curvature([members[t[0]], members[t[1]], members[t[2]]], z, h)?;
    }
    let k = triple_ks.iter().sum();
    Ok(CurvatureSample { point: z, k, triple_ks })
}
