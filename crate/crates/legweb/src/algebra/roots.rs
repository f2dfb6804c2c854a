//! Root extraction: floating-point root finding and exact roots of
//! polynomials over number fields.
//!
//! [`complex_roots`] is the f64 workhorse (simultaneous iteration plus a
//! Newton polish), used for embeddings and by the numeric curvature oracle.
//!
//! [`roots_in_field`] and [`binary_form_roots`] find the roots that exist
//! in the coefficient field *exactly*: candidates are reconstructed from
//! floating approximations (continued fractions for the rational
//! coordinates, an embedding-matching linear solve over genuine number
//! fields) and then verified by exact evaluation, so a reported root is
//! always correct.  Factors whose roots do not lie in the field — or that
//! reconstruction missed — are returned unsolved rather than guessed;
//! downstream analysis treats them as unsplit conjugate clusters, which is
//! sound either way.

use num_complex::Complex64;

use super::bipoly::BiPoly;
use super::numberfield::{embed, AlgebraicNumber};
use super::rat::Rat;
use super::unipoly::UniPoly;
use super::Scalar;
use crate::error::AlgebraError;

// ---- Floating-point roots ----

/// All complex roots of `Σ coeffs[k]·z^k` (ascending), sorted by
/// (real, imaginary) part.  Exact leading zeros are trimmed; the zero
/// polynomial and constants yield no roots.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while matches!(c.last(), Some(z) if z.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let lead = *c.last().expect("nonempty");
    for z in &mut c {
        *z /= lead;
    }
    let n = c.len() - 1;
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (0..c.len()).rev() {
            acc = acc * z + c[k];
        }
        acc
    };
    let eval_d = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (1..c.len()).rev() {
            acc = acc * z + c[k] * (k as f64);
        }
        acc
    };
    // Simultaneous (Weierstrass) iteration from the standard spiral start.
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates: nudge and continue
                z[k] += Complex64::new(1e-6, 1e-6);
                max_step = f64::MAX;
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Newton polish sharpens simple roots to machine precision.
    for r in &mut z {
        for _ in 0..4 {
            let d = eval_d(*r);
            if d.norm() > 1e-12 {
                *r -= eval(*r) / d;
            }
        }
    }
    z.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("roots are finite")
    });
    z
}

// ---- Rational reconstruction ----

/// Nearest rational with denominator ≤ `max_den`, by continued fractions;
/// `None` when no convergent lands within `tol`.
pub fn rat_from_f64_bounded(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() <= tol {
            return Some(Rat::new((p1 as i64).into(), (q1 as i64).into()));
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let (p2, q2) = (a as i128 * p1 + p0, a as i128 * q1 + q0);
        if q2 > max_den as i128 || p2.abs() > i64::MAX as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

// ---- Exact roots over a number field ----

/// Roots of `u` that lie in its coefficient field, with multiplicities,
/// plus the leftover factors (squarefree, degree ≥ 2, no roots found in
/// the field) with the multiplicity each carried.
pub fn roots_in_field(
    u: &UniPoly<AlgebraicNumber>,
) -> Result<(Vec<(AlgebraicNumber, usize)>, Vec<(UniPoly<AlgebraicNumber>, usize)>), AlgebraError>
{
    let mut roots = Vec::new();
    let mut unsplit = Vec::new();
    if u.degree().unwrap_or(0) == 0 {
        return Ok((roots, unsplit));
    }
    for (factor, mult) in u.squarefree_decomposition()? {
        let (mut fr, rest) = field_roots_squarefree(&factor)?;
        roots.extend(fr.drain(..).map(|x| (x, mult)));
        if let Some(r) = rest {
            unsplit.push((r, mult));
        }
    }
    Ok((roots, unsplit))
}

/// Roots in the field of a squarefree polynomial, plus the unsolved
/// cofactor (monic, degree ≥ 2) if any.
fn field_roots_squarefree(
    w: &UniPoly<AlgebraicNumber>,
) -> Result<(Vec<AlgebraicNumber>, Option<UniPoly<AlgebraicNumber>>), AlgebraError> {
    let field = w.ctx().clone();
    let mut rem = w.clone().into_monic()?;
    let mut found = Vec::new();
    loop {
        match rem.degree() {
            None | Some(0) => return Ok((found, None)),
            Some(1) => {
                // monic t + c: root −c
                found.push(Scalar::neg(&rem.coeff(0)));
                return Ok((found, None));
            }
            Some(_) => {}
        }
        let candidates = candidate_roots(&rem);
        let mut progressed = false;
        for x in candidates {
            if rem.eval(&x).is_zero() {
                let lin = UniPoly::from_coeffs(&field, vec![Scalar::neg(&x), AlgebraicNumber::one(&field)]);
                rem = rem.exact_div(&lin)?;
                found.push(x);
                progressed = true;
                break;
            }
        }
        if !progressed {
            let leftover = if rem.degree().unwrap_or(0) >= 2 { Some(rem) } else { None };
            return Ok((found, leftover));
        }
    }
}

/// Floating-point-guided candidate roots (verified by the caller).
fn candidate_roots(w: &UniPoly<AlgebraicNumber>) -> Vec<AlgebraicNumber> {
    let field = w.ctx().clone();
    let m = field.degree();
    let embed_poly = |k: usize| -> Vec<Complex64> {
        w.coeffs().iter().map(|c| embed(c, k, 15)).collect()
    };
    let mut out = Vec::new();
    if m == 1 {
        // rational coordinates directly from the real float roots
        for r in complex_roots(&embed_poly(0)) {
            if r.im.abs() < 1e-7 {
                if let Some(q) = rat_from_f64_bounded(r.re, 100_000_000, 1e-7) {
                    out.push(AlgebraicNumber::from_rat(&field, q));
                }
            }
        }
        return out;
    }
    // Match one float root per embedding and solve for power-basis
    // coordinates: Σ_j q_j · ζ_k^j = ρ_k over all embeddings k.
    let per_embedding: Vec<Vec<Complex64>> = (0..m).map(|k| complex_roots(&embed_poly(k))).collect();
    if per_embedding.iter().any(|v| v.is_empty()) {
        return out;
    }
    let zeta: Vec<Complex64> = field.embedding_roots().to_vec();
    let deg_w = per_embedding[0].len();
    let mut choice = vec![0usize; m];
    'tuples: loop {
        // Vandermonde solve for this tuple of root choices
        let mut mat: Vec<Vec<Complex64>> = (0..m)
            .map(|k| {
                let mut row: Vec<Complex64> = (0..m).map(|j| zeta[k].powu(j as u32)).collect();
                row.push(per_embedding[k][choice[k].min(per_embedding[k].len() - 1)]);
                row
            })
            .collect();
        if let Some(sol) = gauss_solve(&mut mat) {
            let mut coords = Vec::with_capacity(m);
            let mut plausible = true;
            for q in &sol {
                if q.im.abs() > 1e-6 {
                    plausible = false;
                    break;
                }
                match rat_from_f64_bounded(q.re, 1_000_000, 1e-6) {
                    Some(r) => coords.push(r),
                    None => {
                        plausible = false;
                        break;
                    }
                }
            }
            if plausible {
                out.push(AlgebraicNumber::from_coords(&field, coords));
            }
        }
        // next tuple
        for k in 0..m {
            choice[k] += 1;
            if choice[k] < per_embedding[k].len().min(deg_w) {
                continue 'tuples;
            }
            choice[k] = 0;
        }
        break;
    }
    out
}

/// Gaussian elimination on an augmented complex matrix; `None` if singular.
fn gauss_solve(mat: &mut [Vec<Complex64>]) -> Option<Vec<Complex64>> {
    let n = mat.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| {
            mat[a][col]
                .norm()
                .partial_cmp(&mat[b][col].norm())
                .expect("finite")
        })?;
        if mat[pivot][col].norm() < 1e-12 {
            return None;
        }
        mat.swap(col, pivot);
        let p = mat[col][col];
        for r in 0..n {
            if r != col {
                let f = mat[r][col] / p;
                for c in col..=n {
                    let sub = mat[col][c] * f;
                    mat[r][c] -= sub;
                }
            }
        }
    }
    Some((0..n).map(|r| mat[r][n] / mat[r][r]).collect())
}

// ---- Binary forms ----

/// Point of the projective line over a number field, normalized so the
/// second coordinate is 1, or exactly `[1 : 0]`.
#[derive(Clone, PartialEq)]
pub struct ProjPoint {
    a: AlgebraicNumber,
    b: AlgebraicNumber,
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} : {}]", Scalar::render(&self.a), Scalar::render(&self.b))
    }
}

impl ProjPoint {
    /// Builds `[a : b]`, normalizing.  Panics on `[0 : 0]`.
    pub fn new(a: AlgebraicNumber, b: AlgebraicNumber) -> Result<Self, AlgebraError> {
        if b.is_zero() {
            assert!(!a.is_zero(), "[0 : 0] is not a projective point");
            let f = a.field().clone();
            return Ok(ProjPoint {
                a: AlgebraicNumber::one(&f),
                b: AlgebraicNumber::zero(&f),
            });
        }
        let binv = b.invert()?;
        let f = b.field().clone();
        Ok(ProjPoint { a: a.mul(&binv), b: AlgebraicNumber::one(&f) })
    }

    pub fn infinity(field: &std::sync::Arc<super::numberfield::NumberField>) -> Self {
        ProjPoint {
            a: AlgebraicNumber::one(field),
            b: AlgebraicNumber::zero(field),
        }
    }

    pub fn from_affine(a: AlgebraicNumber) -> Self {
        let f = a.field().clone();
        ProjPoint { a, b: AlgebraicNumber::one(&f) }
    }

    pub fn a(&self) -> &AlgebraicNumber {
        &self.a
    }

    pub fn b(&self) -> &AlgebraicNumber {
        &self.b
    }

    pub fn is_infinite(&self) -> bool {
        self.b.is_zero()
    }

    /// The affine value `a/b` (already normalized), `None` at `[1 : 0]`.
    pub fn affine(&self) -> Option<&AlgebraicNumber> {
        if self.is_infinite() {
            None
        } else {
            Some(&self.a)
        }
    }
}

/// Roots of a binary form with multiplicities, separating what was solved
/// in the field from the unsplit factors.
#[derive(Debug, Clone)]
pub struct BinaryRoots {
    /// `([x : y], multiplicity)` pairs found in the coefficient field,
    /// including `[1 : 0]` when the `x`-degree drops.
    pub points: Vec<(ProjPoint, usize)>,
    /// Monic squarefree factors of the dehomogenization with no roots in
    /// the field, each with the multiplicity it carries in the form.
    pub unsplit: Vec<(UniPoly<AlgebraicNumber>, usize)>,
}

impl BinaryRoots {
    /// Total root count with multiplicity (= degree of the form).
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum::<usize>()
            + self.unsplit.iter().map(|(f, m)| f.degree_or0() * m).sum::<usize>()
    }

    pub fn multiplicity_of(&self, p: &ProjPoint) -> usize {
        self.points
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }
}

/// Splits a nonzero binary form into its projective roots over the
/// coefficient field.  Roots are points `[x₀ : y₀]` with `f(x₀, y₀) = 0`;
/// the point `[1 : 0]` appears with multiplicity = degree drop of
/// `f(x, 1)`.  Factors that do not split stay in `unsplit`.
pub fn binary_form_roots(f: &BiPoly<AlgebraicNumber>) -> Result<BinaryRoots, AlgebraError> {
    let degree = f.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)? as usize;
    let u = f.dehomogenize_x();
    let mut points = Vec::new();
    let inf_mult = degree - u.degree_or0();
    if inf_mult > 0 {
        let field = u.ctx().clone();
        points.push((ProjPoint::infinity(&field), inf_mult));
    }
    let (affine, unsplit) = roots_in_field(&u)?;
    for (x, m) in affine {
        points.push((ProjPoint::from_affine(x), m));
    }
    Ok(BinaryRoots { points, unsplit })
}
