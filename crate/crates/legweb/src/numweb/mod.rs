//! Floating-point curvature oracle for the dual 4-web.
//!
//! The dual plane is charted by `(p, q) ↔ the line {y = px − q}`.  A
//! pre-foliation `ℓ ⊠ H` transforms into a 4-web on that chart: the three
//! tangency slopes of `H` — at `(p, q)` these are the roots `x` of the cubic
//!
//! ```text
//!     A(x, px − q) + p·B(x, px − q) = 0
//! ```
//!
//! each contributing the direction `dq = x·dp` — plus one pencil member from
//! the line: for `ℓ = {αx + βy = 0}` the leaves are `q = t(βp + α)`, and for
//! `ℓ∞` the member is vertical, `dp = 0`.  Everything here is `f64`-complex
//! and entirely independent of the exact criteria in [`crate::flatness`]:
//! the two pillars cross-validate each other.
//!
//! Representation invariants:
//!
//! * [`EmbeddedWeb`] holds the coefficient arrays of one fixed complex
//!   embedding of the coefficient field (entries with algebraic parameters
//!   are checked once per embedding index);
//! * the cubic's leading coefficient is `C_H(1, p)` for the cone form
//!   `C = xA + yB`, so sample points where it nearly vanishes sit near the
//!   slope-collision locus and are rejected as [`NumericError::NearDiscriminant`],
//!   as are points where two slopes come within `1e−3` of each other;
//! * direction vectors returned to callers are normalized so the component
//!   of largest modulus is exactly `1`; fields built for finite-difference
//!   stencils instead pin that gauge at the stencil center to stay
//!   holomorphic across the stencil (see [`curvature`]).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::NumericError;
use crate::foliation::{LineChoice, PreFoliation};

mod curvature;
mod sample;

pub use curvature::{connection_residual, web3_curvature, web4_curvature, DirectionField};
pub use sample::{flatness_sample, FlatnessReport, SampleConfig};

/// Pairwise slope separation below which a sample counts as on the
/// discriminant, relative to the ambient scale.
pub(crate) const SEPARATION: f64 = 1e-3;

// ---- Chart points and directions ----

/// Point of the dual affine chart: `(p, q)` names the line `{y = px − q}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualPoint {
    pub p: Complex64,
    pub q: Complex64,
}

impl DualPoint {
    pub fn new(p: Complex64, q: Complex64) -> Self {
        DualPoint { p, q }
    }

    /// Chart point with real coordinates.
    pub fn real(p: f64, q: f64) -> Self {
        DualPoint {
            p: Complex64::new(p, 0.0),
            q: Complex64::new(q, 0.0),
        }
    }

    /// Translate by real steps in each coordinate (the finite-difference
    /// stencil moves along real directions; the data is holomorphic, so
    /// that determines the complex derivatives).
    pub(crate) fn offset(&self, dp: f64, dq: f64) -> Self {
        DualPoint {
            p: self.p + Complex64::new(dp, 0.0),
            q: self.q + Complex64::new(dq, 0.0),
        }
    }
}

/// A web member's local direction: the 1-form `u·dp + v·dq`.
///
/// `(u, v) ≠ (0, 0)`; [`WebDirection::new`] rescales so the component of
/// larger modulus becomes exactly `1`.  The vector is projective — only the
/// ratio matters — but a tame representative keeps the downstream linear
/// algebra well-conditioned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WebDirection {
    pub u: Complex64,
    pub v: Complex64,
}

impl WebDirection {
    /// Builds and normalizes a direction.  Panics on `(0, 0)` — callers
    /// guard degenerate configurations with [`NumericError::NearDiscriminant`].
    pub fn new(u: Complex64, v: Complex64) -> Self {
        assert!(
            u.norm() > 0.0 || v.norm() > 0.0,
            "(0, 0) is not a direction"
        );
        let w = if u.norm() >= v.norm() { u } else { v };
        WebDirection { u: u / w, v: v / w }
    }

    /// The leaf slope `dq/dp = −u/v`; `None` for the vertical member.
    pub fn slope(&self) -> Option<Complex64> {
        if self.v.norm() == 0.0 {
            None
        } else {
            Some(-self.u / self.v)
        }
    }
}

/// Curvature of the 4-web at one sample point: the coefficient of
/// `dp ∧ dq` in the curvature form, with the four 3-subweb contributions.
///
/// Invariant: `k` is the sum of `triple_ks`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvatureSample {
    pub point: DualPoint,
    #[serde(rename = "K")]
    pub k: Complex64,
    #[serde(rename = "triple_Ks")]
    pub triple_ks: [Complex64; 4],
}

// ---- Embedded webs ----

/// One complex embedding of a pre-foliation, reduced to the data the
/// numeric pipeline needs: the eight `f64`-complex coefficients of the
/// defining cubic forms (ascending powers of `x` against `y^(3−i)`), and
/// the embedded line.
#[derive(Debug, Clone)]
pub struct EmbeddedWeb {
    /// `A = Σ a[i]·x^i·y^(3−i)`.
    a: [Complex64; 4],
    /// `B = Σ b[i]·x^i·y^(3−i)`.
    b: [Complex64; 4],
    /// `(α, β)` of an origin line; `None` for `ℓ∞`.
    line: Option<(Complex64, Complex64)>,
}

impl EmbeddedWeb {
    /// Embeds `pf` under the `embedding`-th complex root of the field
    /// modulus.  The numeric pipeline is specific to 4-webs, so the
    /// foliation must have degree 3; `embedding` must be a valid index.
    pub fn new(pf: &PreFoliation, embedding: usize) -> Self {
        use crate::algebra::embed;
        assert_eq!(pf.h.degree(), 3, "numeric webs require a degree-3 foliation");
        assert!(
            embedding < pf.h.field().degree(),
            "embedding index {embedding} out of range"
        );
        let form = |f: &crate::algebra::BiPoly<crate::algebra::AlgebraicNumber>| {
            let mut c = [Complex64::new(0.0, 0.0); 4];
            for i in 0..4u32 {
                c[i as usize] = embed(&f.coeff(i, 3 - i), embedding, 15);
            }
            c
        };
        let line = match &pf.line {
            LineChoice::Infinity => None,
            LineChoice::Origin(l) => Some((
                embed(l.alpha(), embedding, 15),
                embed(l.beta(), embedding, 15),
            )),
        };
        EmbeddedWeb {
            a: form(pf.h.a()),
            b: form(pf.h.b()),
            line,
        }
    }

    /// Builds a web directly from embedded coefficients (ascending powers
    /// of `x` against `y^(3−i)`) and an embedded line; `None` means `ℓ∞`.
    pub(crate) fn from_parts(
        a: [Complex64; 4],
        b: [Complex64; 4],
        line: Option<(Complex64, Complex64)>,
    ) -> Self {
        EmbeddedWeb { a, b, line }
    }

    /// Ascending `x`-coefficients of `A(x, px − q) + p·B(x, px − q)`; the
    /// top one equals `C_H(1, p)`.
    pub fn tangency_cubic(&self, z: DualPoint) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        // x^i (px − q)^(3−i) = Σ_j binom(3−i, j) p^j (−q)^(3−i−j) x^(i+j)
        const BINOM: [[f64; 4]; 4] = [
            [1.0, 3.0, 3.0, 1.0],
            [1.0, 2.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ];
        for i in 0..4usize {
            let c = self.a[i] + z.p * self.b[i];
            let mut y_pow = Complex64::new(1.0, 0.0); // p^j
            for j in 0..=(3 - i) {
                let neg_q = (-z.q).powu((3 - i - j) as u32);
                out[i + j] += c * BINOM[i][j] * y_pow * neg_q;
                y_pow *= z.p;
            }
        }
        out
    }

    /// The pencil member's raw (un-normalized) direction at `z`, and the
    /// scale its components live on.
    fn pencil_raw(&self, z: DualPoint) -> (Complex64, Complex64) {
        match self.line {
            // Leg ℓ∞ is the vertical foliation dp = 0.
            None => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            // leaves q = t(βp + α): (βp + α) dq − βq dp
            Some((alpha, beta)) => (-beta * z.q, beta * z.p + alpha),
        }
    }

    /// The three tangency slopes at `z`, guarded: leading coefficient
    /// bounded away from zero and roots pairwise separated, else
    /// [`NumericError::NearDiscriminant`].
    pub fn slopes(&self, z: DualPoint) -> Result<[Complex64; 3], NumericError> {
        let cubic = self.tangency_cubic(z);
        let scale = cubic.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
        if !(scale > 0.0) || cubic[3].norm() <= SEPARATION * scale {
            return Err(NumericError::NearDiscriminant);
        }
        let roots = crate::algebra::complex_roots(&cubic);
        if roots.len() != 3 {
            return Err(NumericError::RootFindingFailure);
        }
        let sep = 1.0_f64.max(roots.iter().map(|r| r.norm()).fold(0.0, f64::max));
        for i in 0..3 {
            for j in (i + 1)..3 {
                if (roots[i] - roots[j]).norm() <= SEPARATION * sep {
                    return Err(NumericError::NearDiscriminant);
                }
            }
        }
        Ok([roots[0], roots[1], roots[2]])
    }

    /// The four member directions at `z`: three tangency slopes (as
    /// `x·dp − dq`), then the pencil member.  Errors where members collide.
    pub fn directions(&self, z: DualPoint) -> Result<Vec<WebDirection>, NumericError> {
        let slopes = self.slopes(z)?;
        let (u0, v0) = self.pencil_raw(z);
        let pencil_scale = u0.norm().max(v0.norm());
        if pencil_scale <= f64::EPSILON {
            // the pencil's singular point: every member of Leg ℓ passes here
            return Err(NumericError::NearDiscriminant);
        }
        let minus_one = Complex64::new(-1.0, 0.0);
        let mut dirs: Vec<WebDirection> = slopes
            .iter()
            .map(|&x| WebDirection::new(x, minus_one))
            .collect();
        // a tangency slope colliding with the pencil slope is just as
        // degenerate as two tangency slopes colliding
        for &x in &slopes {
            let cross = u0 * minus_one - x * v0;
            if cross.norm() <= SEPARATION * pencil_scale * x.norm().max(1.0) {
                return Err(NumericError::NearDiscriminant);
            }
        }
        dirs.push(WebDirection::new(u0, v0));
        Ok(dirs)
    }
}

/// The four member directions of `pf`'s dual web at `z`, under the chosen
/// complex embedding of the coefficient field.
pub fn legendre_directions(
    pf: &PreFoliation,
    embedding: usize,
    z: DualPoint,
) -> Result<Vec<WebDirection>, NumericError> {
    EmbeddedWeb::new(pf, embedding).directions(z)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{nf_rational, rat, AlgebraicNumber, BiPoly, Scalar};
    use crate::foliation::{HomogeneousFoliation, OriginLine};

    pub(crate) fn qnum(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rat(&nf_rational(), rat(n, d))
    }

    fn qform(terms: &[(u32, u32, i64)]) -> BiPoly<AlgebraicNumber> {
        let q = nf_rational();
        BiPoly::from_terms(
            &q,
            terms
                .iter()
                .map(|&(i, j, n)| (i, j, AlgebraicNumber::from_int(&q, n))),
        )
    }

    /// ω = y³ dx − x³ dy.
    pub(crate) fn monomial_web() -> HomogeneousFoliation {
        HomogeneousFoliation::new(qform(&[(0, 3, 1)]), qform(&[(3, 0, -1)])).unwrap()
    }

    /// ω = y³ dx + x²(2x − 3y) dy: three radial tangencies.
    pub(crate) fn all_radial() -> HomogeneousFoliation {
        HomogeneousFoliation::new(qform(&[(0, 3, 1)]), qform(&[(3, 0, 2), (2, 1, -3)])).unwrap()
    }

    /// ω = λ(2y³ − 3y²x) dx + x³ dy.
    pub(crate) fn two_radial(ln: i64, ld: i64) -> HomogeneousFoliation {
        let lambda = qnum(ln, ld);
        let two_l = lambda.mul(&qnum(2, 1));
        let m3_l = lambda.mul(&qnum(-3, 1));
        let q = nf_rational();
        let a = BiPoly::from_terms(&q, [(0u32, 3u32, two_l), (1, 2, m3_l)]);
        HomogeneousFoliation::new(a, qform(&[(3, 0, 1)])).unwrap()
    }

    /// The pre-foliation with line `{y = (n/d)·x}`.
    pub(crate) fn with_slope(h: HomogeneousFoliation, n: i64, d: i64) -> PreFoliation {
        PreFoliation::new(h, LineChoice::Origin(OriginLine::new(qnum(-n, d), qnum(1, 1))))
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_web_under_the_infinity_line_has_three_slopes_and_a_vertical() {
        let pf = PreFoliation::new(monomial_web(), LineChoice::Infinity);
        let z = DualPoint::new(c(0.7, 0.3), c(-1.1, 0.4));
        let dirs = legendre_directions(&pf, 0, z).unwrap();
        assert_eq!(dirs.len(), 4);
        // three finite tangency slopes: roots of (px − q)³ − p·x³
        let web = EmbeddedWeb::new(&pf, 0);
        let cubic = web.tangency_cubic(z);
        for d in &dirs[..3] {
            let x = d.slope().expect("tangency members are non-vertical");
            let mut val = c(0.0, 0.0);
            for k in (0..4).rev() {
                val = val * x + cubic[k];
            }
            assert!(val.norm() < 1e-9, "slope solves the tangency cubic");
        }
        // the ℓ∞ pencil member is exactly vertical
        assert_eq!(dirs[3].u, c(1.0, 0.0));
        assert_eq!(dirs[3].v, c(0.0, 0.0));
        assert!(dirs[3].slope().is_none());
    }

    #[test]
    fn pencil_member_slope_and_its_singular_point() {
        // ℓ = {y − 2x = 0}: leaves q = t(p − 2), slope q/(p − 2)
        let pf = with_slope(monomial_web(), 2, 1);
        let z = DualPoint::new(c(0.4, 0.0), c(1.2, 0.0));
        let dirs = legendre_directions(&pf, 0, z).unwrap();
        let expect = z.q / (z.p - c(2.0, 0.0));
        let got = dirs[3].slope().expect("finite away from p = 2");
        assert!((got - expect).norm() < 1e-12);
        // at (2, 0) every leaf passes through the point: rejected
        let singular = DualPoint::real(2.0, 0.0);
        assert_eq!(
            legendre_directions(&pf, 0, singular).unwrap_err(),
            NumericError::NearDiscriminant
        );
    }

    #[test]
    fn vanishing_leading_coefficient_is_near_discriminant() {
        // for the monomial web C_H(1, p) = p − p³ vanishes at p = 1: a
        // tangency slope escapes to infinity there
        let pf = PreFoliation::new(monomial_web(), LineChoice::Infinity);
        let z = DualPoint::real(1.0, 0.37);
        assert_eq!(
            legendre_directions(&pf, 0, z).unwrap_err(),
            NumericError::NearDiscriminant
        );
    }

    #[test]
    fn colliding_tangency_slopes_are_near_discriminant() {
        // q = 0 puts a double root at x = 0 for the monomial web's cubic
        let pf = PreFoliation::new(monomial_web(), LineChoice::Infinity);
        let z = DualPoint::real(0.5, 0.0);
        assert_eq!(
            legendre_directions(&pf, 0, z).unwrap_err(),
            NumericError::NearDiscriminant
        );
    }

    #[test]
    fn directions_are_normalized_to_unit_max_modulus() {
        let d = WebDirection::new(c(3.0, 4.0), c(1.0, 0.0));
        assert_eq!(d.u, c(1.0, 0.0));
        assert!((d.v.norm() - 0.2).abs() < 1e-15);
        let e = WebDirection::new(c(0.1, 0.0), c(0.0, -2.0));
        assert_eq!(e.v, c(1.0, 0.0));
        assert!(e.u.norm() <= 1.0);
    }

    #[test]
    fn tangency_cubic_matches_direct_evaluation() {
        let pf = with_slope(all_radial(), 2, 1);
        let web = EmbeddedWeb::new(&pf, 0);
        let z = DualPoint::new(c(0.3, -0.2), c(0.8, 0.5));
        let cubic = web.tangency_cubic(z);
        // A(x, y) + p·B(x, y) at y = px − q, x = 1.7 − 0.4i
        let x = c(1.7, -0.4);
        let y = z.p * x - z.q;
        let a = y.powu(3);
        let b = x.powu(3) * 2.0 - x.powu(2) * y * 3.0;
        let direct = a + z.p * b;
        let mut horner = c(0.0, 0.0);
        for k in (0..4).rev() {
            horner = horner * x + cubic[k];
        }
        assert!((horner - direct).norm() < 1e-12 * direct.norm().max(1.0));
    }
}
