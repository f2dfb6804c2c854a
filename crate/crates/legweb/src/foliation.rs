//! Homogeneous foliations of the plane, their Gauss maps, and the
//! ramification data that drives the web analysis.
//!
//! A foliation here is the pair of coprime binary forms `(A, B)` of common
//! degree `d` defining `ω_H = A dx + B dy`.  Directions through the origin
//! are *source points* `[a : b]` (slope `a/b`, planar representative
//! `(x, y) = (b, a)`); the Gauss map sends a direction to the slope of the
//! tangent line field along it,
//!
//! ```text
//! G([a : b]) = [−A(b, a) : B(b, a)],
//! ```
//!
//! a degree-`d` self-map of the projective line.  Its fixed points are the
//! roots of the cone form `C = xA + yB`; its critical points are the roots
//! of the Jacobian `D = A_x B_y − A_y B_x` (multiplicity = local branching
//! order ν minus one, so Σ(ν−1) = 2d−2).  Critical points split into
//! *radial* (fixed) and *transverse* (non-fixed) ones, and the multiset of
//! `(ν, radial?)` pairs is the foliation's ramification type.
//!
//! Representation invariants: `A`, `B` homogeneous of equal degree ≥ 1,
//! coprime, with a nonzero Jacobian; all coefficients in one number field.

use std::sync::Arc;

use crate::algebra::{
    binary_form_roots, AlgebraicNumber, BiPoly, BinaryRoots, NumberField, ProjPoint, Scalar,
    UniPoly,
};
use crate::error::FoliationError;

// ---- Lines through the origin ----

/// The line `αx + βy = 0` through the origin, remembered with the caller's
/// representative `(α, β)`.
///
/// Equality and display normalize (first nonzero coordinate scaled to 1),
/// but the stored representative is returned as-is by the accessors: the
/// flatness criteria are scale-*covariant*, and family-identity tests rely
/// on polynomial representatives staying polynomial.
#[derive(Clone)]
pub struct OriginLine {
    alpha: AlgebraicNumber,
    beta: AlgebraicNumber,
}

impl OriginLine {
    /// Builds `αx + βy = 0`; panics on `α = β = 0` (not a line).
    pub fn new(alpha: AlgebraicNumber, beta: AlgebraicNumber) -> Self {
        assert!(
            !(alpha.is_zero() && beta.is_zero()),
            "0·x + 0·y = 0 is not a line"
        );
        OriginLine { alpha, beta }
    }

    pub fn alpha(&self) -> &AlgebraicNumber {
        &self.alpha
    }

    pub fn beta(&self) -> &AlgebraicNumber {
        &self.beta
    }

    /// Scale-invariant canonical representative (first nonzero coordinate 1).
    pub fn normalized(&self) -> (AlgebraicNumber, AlgebraicNumber) {
        let inv = if !self.alpha.is_zero() {
            self.alpha.invert()
        } else {
            self.beta.invert()
        }
        .expect("a nonzero field element inverts");
        (self.alpha.mul(&inv), self.beta.mul(&inv))
    }

    /// The direction the line consists of, as a source point: `[−α : β]`
    /// (slope `−α/β`).
    pub fn direction(&self) -> ProjPoint {
        ProjPoint::new(Scalar::neg(&self.alpha), self.beta.clone())
            .expect("line coordinates are not both zero")
    }
}

impl PartialEq for OriginLine {
    fn eq(&self, other: &Self) -> bool {
        // [α : β] = [α' : β'] projectively: αβ' − βα' = 0
        self.alpha.mul(&other.beta).sub(&self.beta.mul(&other.alpha)).is_zero()
    }
}

impl std::fmt::Debug for OriginLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = self.normalized();
        write!(f, "{{({})x + ({})y = 0}}", Scalar::render(&a), Scalar::render(&b))
    }
}

/// The distinguished line of a pre-foliation: through the origin, or the
/// line at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum LineChoice {
    Origin(OriginLine),
    Infinity,
}

// ---- The foliation ----

/// Degree-`d` homogeneous foliation `ω_H = A dx + B dy`.
pub struct HomogeneousFoliation {
    a: BiPoly<AlgebraicNumber>,
    b: BiPoly<AlgebraicNumber>,
    degree: usize,
    field: Arc<NumberField>,
}

impl Clone for HomogeneousFoliation {
    fn clone(&self) -> Self {
        HomogeneousFoliation {
            a: self.a.clone(),
            b: self.b.clone(),
            degree: self.degree,
            field: self.field.clone(),
        }
    }
}

impl std::fmt::Debug for HomogeneousFoliation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ω = ({}) dx + ({}) dy",
            self.a.render("x", "y"),
            self.b.render("x", "y")
        )
    }
}

impl HomogeneousFoliation {
    /// Validates and wraps the defining forms: equal homogeneous degree
    /// ≥ 1, coprime, nondegenerate Gauss map.
    pub fn new(
        a: BiPoly<AlgebraicNumber>,
        b: BiPoly<AlgebraicNumber>,
    ) -> Result<Self, FoliationError> {
        let da = a
            .homogeneous_degree()
            .ok_or(crate::error::AlgebraError::NotHomogeneous)?;
        let db = b
            .homogeneous_degree()
            .ok_or(crate::error::AlgebraError::NotHomogeneous)?;
        if da != db || da == 0 {
            return Err(FoliationError::DegenerateGauss);
        }
        let gcd = a.form_gcd(&b)?;
        if gcd.homogeneous_degree() != Some(0) {
            return Err(FoliationError::NotSaturated);
        }
        let field = match a.terms().next() {
            Some((_, _, c)) => c.field().clone(),
            None => return Err(FoliationError::DegenerateGauss),
        };
        let h = HomogeneousFoliation { a, b, degree: da as usize, field };
        if h.jacobian_form().is_zero() {
            return Err(FoliationError::DegenerateGauss);
        }
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// The `dx` component.
    pub fn a(&self) -> &BiPoly<AlgebraicNumber> {
        &self.a
    }

    /// The `dy` component.
    pub fn b(&self) -> &BiPoly<AlgebraicNumber> {
        &self.b
    }

    // ---- Derived forms ----

    /// Cone form `C = xA + yB` (degree d+1): its directions are the Gauss
    /// fixed points, equivalently the invariant lines through the origin.
    pub fn cone_form(&self) -> BiPoly<AlgebraicNumber> {
        let x = BiPoly::monomial(&self.field, AlgebraicNumber::one(&self.field), 1, 0);
        let y = BiPoly::monomial(&self.field, AlgebraicNumber::one(&self.field), 0, 1);
        x.mul(&self.a).add(&y.mul(&self.b))
    }

    /// Jacobian `D = A_x B_y − A_y B_x` (degree 2d−2), in the planar
    /// variables.
    pub fn jacobian_form(&self) -> BiPoly<AlgebraicNumber> {
        let axby = self.a.partial_x().mul(&self.b.partial_y());
        let aybx = self.a.partial_y().mul(&self.b.partial_x());
        axby.sub(&aybx)
    }

    /// Evaluates a planar form at the planar representative `(b, a)` of a
    /// source point `[a : b]`.
    fn eval_at_point(form: &BiPoly<AlgebraicNumber>, p: &ProjPoint) -> AlgebraicNumber {
        form.eval(p.b(), p.a())
    }

    // ---- Gauss map ----

    /// `G([a : b]) = [−A(b, a) : B(b, a)]`.
    pub fn gauss(&self, p: &ProjPoint) -> Result<ProjPoint, FoliationError> {
        let u = Scalar::neg(&Self::eval_at_point(&self.a, p));
        let v = Self::eval_at_point(&self.b, p);
        if u.is_zero() && v.is_zero() {
            // impossible for coprime forms at a genuine point
            return Err(FoliationError::DegenerateGauss);
        }
        Ok(ProjPoint::new(u, v).map_err(crate::error::AlgebraError::from)?)
    }

    /// Whether the direction is a Gauss fixed point (root of the cone form).
    pub fn is_fixed(&self, p: &ProjPoint) -> bool {
        Self::eval_at_point(&self.cone_form(), p).is_zero()
    }

    /// Whether the line is invariant: its direction is a Gauss fixed point.
    /// The line at infinity is invariant for every homogeneous foliation.
    pub fn is_invariant_line(&self, line: &LineChoice) -> bool {
        match line {
            LineChoice::Infinity => true,
            LineChoice::Origin(l) => self.is_fixed(&l.direction()),
        }
    }

    /// The fiber form over a target slope `[a₀ : b₀]`: the binary form in
    /// the source point `[a : b]` whose roots are `G⁻¹([a₀ : b₀])`,
    /// namely `b₀·A(b, a) + a₀·B(b, a)`.
    pub fn fiber_form(&self, target: &ProjPoint) -> BiPoly<AlgebraicNumber> {
        let asw = self.a.swap_vars().scale(target.b());
        let bsw = self.b.swap_vars().scale(target.a());
        asw.add(&bsw)
    }

    /// Fiber `G⁻¹(target)` with multiplicities (= tangency orders); total
    /// multiplicity is always `d`.
    pub fn fiber(&self, target: &ProjPoint) -> Result<BinaryRoots, FoliationError> {
        Ok(binary_form_roots(&self.fiber_form(target))?)
    }

    /// Critical locus of the Gauss map, split into points resolved over the
    /// field and unsplit conjugate clusters.
    pub fn critical_locus(&self) -> Result<CriticalLocus, FoliationError> {
        let w = self.jacobian_form().swap_vars();
        let br = binary_form_roots(&w)?;
        let mut points = Vec::new();
        for (p, m) in br.points {
            let fixed = self.is_fixed(&p);
            points.push(CriticalPoint { nu: m + 1, fixed, point: p });
        }
        let mut clusters = Vec::new();
        // the cone form along affine slopes: C(1, t) in the slope variable
        let cone_line = self.cone_form().swap_vars().dehomogenize_x();
        for (factor, m) in br.unsplit {
            // split off the part of the cluster consisting of fixed points
            let shared = factor.gcd(&cone_line)?;
            if shared.degree_or0() >= 1 {
                let rest = factor.exact_div(&shared)?;
                clusters.push(CriticalCluster { slopes: shared, nu: m + 1, fixed: true });
                if rest.degree_or0() >= 1 {
                    clusters.push(CriticalCluster { slopes: rest, nu: m + 1, fixed: false });
                }
            } else {
                clusters.push(CriticalCluster { slopes: factor, nu: m + 1, fixed: false });
            }
        }
        Ok(CriticalLocus { points, clusters })
    }

    /// The ramification type realized by this foliation.
    pub fn ramification_type(&self) -> Result<RamificationType, FoliationError> {
        let locus = self.critical_locus()?;
        let mut parts = std::collections::BTreeMap::new();
        for cp in &locus.points {
            *parts.entry((cp.nu, cp.fixed)).or_insert(0) += 1;
        }
        for cl in &locus.clusters {
            *parts.entry((cl.nu, cl.fixed)).or_insert(0) += cl.slopes.degree_or0();
        }
        Ok(RamificationType { degree: self.degree, parts })
    }

    // ---- Coordinate changes ----

    /// Exchanges the affine chart: `(x, y) ↦ (y, x)`, sending `[a : b]` to
    /// `[b : a]` and slopes to their reciprocals.
    pub fn swap_chart(&self) -> Self {
        HomogeneousFoliation {
            a: self.b.swap_vars(),
            b: self.a.swap_vars(),
            degree: self.degree,
            field: self.field.clone(),
        }
    }

    /// Pulls the 1-form back under `(x, y) = (m00·x' + m01·y', m10·x' + m11·y')`:
    /// `A' = m00·(A∘M) + m10·(B∘M)`, `B' = m01·(A∘M) + m11·(B∘M)`.
    pub fn transform(
        &self,
        m00: &AlgebraicNumber,
        m01: &AlgebraicNumber,
        m10: &AlgebraicNumber,
        m11: &AlgebraicNumber,
    ) -> Result<Self, FoliationError> {
        let det = m00.mul(m11).sub(&m01.mul(m10));
        if det.is_zero() {
            return Err(FoliationError::SingularMatrix);
        }
        let am = self.a.apply_linear(m00, m01, m10, m11);
        let bm = self.b.apply_linear(m00, m01, m10, m11);
        let a2 = am.scale(m00).add(&bm.scale(m10));
        let b2 = am.scale(m01).add(&bm.scale(m11));
        HomogeneousFoliation::new(a2, b2)
    }

    /// Transforms a line alongside [`transform`](Self::transform):
    /// `αx + βy` pulls back to `(αm00 + βm10)x' + (αm01 + βm11)y'`.
    pub fn transform_line(
        line: &OriginLine,
        m00: &AlgebraicNumber,
        m01: &AlgebraicNumber,
        m10: &AlgebraicNumber,
        m11: &AlgebraicNumber,
    ) -> OriginLine {
        let alpha = line.alpha.mul(m00).add(&line.beta.mul(m10));
        let beta = line.alpha.mul(m01).add(&line.beta.mul(m11));
        OriginLine::new(alpha, beta)
    }
}

// ---- Critical locus ----

/// A critical point resolved over the working field.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub point: ProjPoint,
    /// Local branching order of the Gauss map (ν ≥ 2).
    pub nu: usize,
    /// Radial: the point is also a Gauss fixed point.
    pub fixed: bool,
}

/// A conjugate cluster of critical points that did not split over the
/// field: the roots of `slopes` (monic, degree ≥ 2, all affine) share the
/// branching order and fixedness.
#[derive(Clone, Debug)]
pub struct CriticalCluster {
    pub slopes: UniPoly<AlgebraicNumber>,
    pub nu: usize,
    pub fixed: bool,
}

/// All critical points of the Gauss map.
#[derive(Clone, Debug)]
pub struct CriticalLocus {
    pub points: Vec<CriticalPoint>,
    pub clusters: Vec<CriticalCluster>,
}

impl CriticalLocus {
    /// Σ(ν−1) over all critical points; must equal 2d−2.
    pub fn ramification_weight(&self) -> usize {
        self.points.iter().map(|p| p.nu - 1).sum::<usize>()
            + self
                .clusters
                .iter()
                .map(|c| (c.nu - 1) * c.slopes.degree_or0())
                .sum::<usize>()
    }

    /// Total number of critical points (clusters count each root).
    pub fn point_count(&self) -> usize {
        self.points.len() + self.clusters.iter().map(|c| c.slopes.degree_or0()).sum::<usize>()
    }
}

// ---- Ramification types ----

/// Abstract ramification type: how many critical points of each branching
/// order ν, radial (`R`) or transverse (`T`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RamificationType {
    degree: usize,
    /// `(ν, radial?) → count`
    parts: std::collections::BTreeMap<(usize, bool), usize>,
}

impl std::fmt::Debug for RamificationType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl RamificationType {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of critical points.
    pub fn point_count(&self) -> usize {
        self.parts.values().sum()
    }

    /// Number of radial (fixed) critical points.
    pub fn radial_count(&self) -> usize {
        self.parts.iter().filter(|((_, r), _)| *r).map(|(_, c)| c).sum()
    }

    /// Label like `2·R₁ + 1·R₂`: grouped parts `count·Kind_order` with the
    /// subscript the ramification order ν−1, radial kinds first, orders
    /// ascending within each kind.
    pub fn label(&self) -> String {
        fn subscript(k: usize) -> String {
            k.to_string()
                .chars()
                .map(|c| char::from_u32(0x2080 + c.to_digit(10).expect("digit")).expect("subscript"))
                .collect()
        }
        let mut parts: Vec<(bool, usize, usize)> =
            self.parts.iter().map(|(&(nu, r), &c)| (!r, nu - 1, c)).collect();
        parts.sort();
        parts
            .iter()
            .map(|&(t, k, c)| format!("{}·{}{}", c, if t { 'T' } else { 'R' }, subscript(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All ramification types a degree-`d` homogeneous foliation can have:
/// multisets of `(ν, radial?)` parts with 2 ≤ ν ≤ d (the Gauss map has
/// degree `d`), Σ(ν−1) = 2d−2, and at most `d` radial points.
pub fn enumerate_types(d: usize) -> Vec<RamificationType> {
    assert!(d >= 2, "degree must be at least 2 for a nontrivial type count");
    let total = 2 * d - 2;
    let mut out = Vec::new();
    // parts (k = ν−1, radial?) in a fixed order for canonical recursion
    let mut kinds = Vec::new();
    for k in (1..=d - 1).rev() {
        kinds.push((k, true));
        kinds.push((k, false));
    }
    fn recurse(
        kinds: &[(usize, bool)],
        idx: usize,
        remaining: usize,
        radial_left: usize,
        current: &mut Vec<((usize, bool), usize)>,
        out: &mut Vec<RamificationType>,
        d: usize,
    ) {
        if remaining == 0 {
            let parts = current
                .iter()
                .filter(|(_, c)| *c > 0)
                .map(|&((k, r), c)| ((k + 1, r), c))
                .collect();
            out.push(RamificationType { degree: d, parts });
            return;
        }
        if idx == kinds.len() {
            return;
        }
        let (k, radial) = kinds[idx];
        let max_count = {
            let by_weight = remaining / k;
            if radial {
                by_weight.min(radial_left)
            } else {
                by_weight
            }
        };
        for count in 0..=max_count {
            current.push(((k, radial), count));
            recurse(
                kinds,
                idx + 1,
                remaining - count * k,
                if radial { radial_left - count } else { radial_left },
                current,
                out,
                d,
            );
            current.pop();
        }
    }
    let mut current = Vec::new();
    recurse(&kinds, 0, total, d, &mut current, &mut out, d);
    out.sort_by_key(|t| (t.point_count(), t.label()));
    out.dedup();
    out
}

// ---- Pre-foliations ----

/// A pre-foliation of co-degree one: a homogeneous foliation together with
/// a distinguished line (through the origin, or at infinity).  Its
/// Legendre transform is the 4-web the crate analyzes.
#[derive(Clone, Debug)]
pub struct PreFoliation {
    pub h: HomogeneousFoliation,
    pub line: LineChoice,
}

impl PreFoliation {
    pub fn new(h: HomogeneousFoliation, line: LineChoice) -> Self {
        PreFoliation { h, line }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nf_rational, rat};

    fn qnum(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_int(&nf_rational(), n)
    }

    fn qform(terms: &[(u32, u32, i64)]) -> BiPoly<AlgebraicNumber> {
        BiPoly::from_terms(
            &nf_rational(),
            terms.iter().map(|&(i, j, n)| (i, j, qnum(n))),
        )
    }

    fn pt(a: i64, b: i64) -> ProjPoint {
        ProjPoint::new(qnum(a), qnum(b)).unwrap()
    }

    /// ω = y³ dx − x³ dy.
    fn h_monomial() -> HomogeneousFoliation {
        HomogeneousFoliation::new(qform(&[(0, 3, 1)]), qform(&[(3, 0, -1)])).unwrap()
    }

    /// ω = λ(2y³ − 3y²x) dx + x³ dy with λ = −7/5.
    fn h_two_radial_one_transverse() -> HomogeneousFoliation {
        let q = nf_rational();
        let lam = AlgebraicNumber::from_rat(&q, rat(-7, 5));
        let a = BiPoly::from_terms(
            &q,
            [
                (0u32, 3u32, lam.mul(&qnum(2))),
                (1, 2, lam.mul(&qnum(-3))),
            ],
        );
        HomogeneousFoliation::new(a, qform(&[(3, 0, 1)])).unwrap()
    }

    /// ω = y³ dx + (2x³ − 3x²y) dy.
    fn h_three_radial() -> HomogeneousFoliation {
        HomogeneousFoliation::new(qform(&[(0, 3, 1)]), qform(&[(3, 0, 2), (2, 1, -3)])).unwrap()
    }

    #[test]
    fn gauss_map_of_the_monomial_foliation_cubes_slopes() {
        let h = h_monomial();
        // G([a : b]) = [a³ : b³]
        assert_eq!(h.gauss(&pt(1, 1)).unwrap(), pt(1, 1));
        assert_eq!(h.gauss(&pt(2, 1)).unwrap(), pt(8, 1));
        assert_eq!(h.gauss(&pt(1, 0)).unwrap(), pt(1, 0));
        let locus = h.critical_locus().unwrap();
        assert_eq!(locus.ramification_weight(), 4);
        assert_eq!(locus.points.len(), 2);
        for cp in &locus.points {
            assert_eq!(cp.nu, 3);
            assert!(cp.fixed);
        }
        assert_eq!(h.ramification_type().unwrap().label(), "2·R₂");
    }

    #[test]
    fn critical_structure_with_a_transverse_point() {
        let h = h_two_radial_one_transverse();
        let locus = h.critical_locus().unwrap();
        assert_eq!(locus.ramification_weight(), 4);
        // [1:0] radial ν=3, [0:1] radial ν=2, [1:1] transverse ν=2
        let find = |p: &ProjPoint| locus.points.iter().find(|c| &c.point == p).unwrap();
        let inf = find(&pt(1, 0));
        assert!(inf.fixed && inf.nu == 3);
        let zero = find(&pt(0, 1));
        assert!(zero.fixed && zero.nu == 2);
        let diag = find(&pt(1, 1));
        assert!(!diag.fixed && diag.nu == 2);
        assert_eq!(h.ramification_type().unwrap().label(), "1·R₁ + 1·R₂ + 1·T₁");
        // G([1:1]) = [λ:1]
        let q = nf_rational();
        let lam = AlgebraicNumber::from_rat(&q, rat(-7, 5));
        let img = h.gauss(&pt(1, 1)).unwrap();
        assert_eq!(img, ProjPoint::from_affine(lam.clone()));
        // fiber over [λ:1] = λ(a−b)²(2a+b): [1:1] with ν=2, [−1:2] simple
        let fiber = h.fiber(&img).unwrap();
        assert_eq!(fiber.multiplicity_of(&pt(1, 1)), 2);
        assert_eq!(
            fiber.multiplicity_of(&ProjPoint::new(qnum(-1), qnum(2)).unwrap()),
            1
        );
        assert_eq!(fiber.total_multiplicity(), 3);
    }

    #[test]
    fn fiber_over_a_radial_value_contains_the_radial_point() {
        let h = h_three_radial();
        // critical points: [0:1] ν3, [1:0] ν2, [1:1] ν2, all radial
        assert_eq!(h.ramification_type().unwrap().label(), "2·R₁ + 1·R₂");
        // fiber over [1:0]: B(b,a) = 2b³ − 3b²a = b²(2b − 3a):
        // [1:0] doubly, [2:3] simply
        let fiber = h.fiber(&pt(1, 0)).unwrap();
        assert_eq!(fiber.multiplicity_of(&pt(1, 0)), 2);
        assert_eq!(fiber.multiplicity_of(&pt(2, 3)), 1);
    }

    #[test]
    fn invariant_lines_are_cone_directions() {
        let h = h_two_radial_one_transverse();
        // x = 0 has direction [1:0] (a fixed point): invariant
        let vertical = LineChoice::Origin(OriginLine::new(qnum(1), qnum(0)));
        assert!(h.is_invariant_line(&vertical));
        // y = x has direction [1:1]: critical but NOT fixed
        let diag = LineChoice::Origin(OriginLine::new(qnum(1), qnum(-1)));
        assert!(!h.is_invariant_line(&diag));
        assert!(h.is_invariant_line(&LineChoice::Infinity));
    }

    #[test]
    fn chart_swap_inverts_points_and_preserves_type() {
        let h = h_three_radial();
        let s = h.swap_chart();
        // points invert: [0:1]↔[1:0], [1:1] stays put
        let locus = s.critical_locus().unwrap();
        let find = |p: &ProjPoint| locus.points.iter().find(|c| &c.point == p).unwrap();
        assert_eq!(find(&pt(1, 0)).nu, 3);
        assert_eq!(find(&pt(0, 1)).nu, 2);
        assert_eq!(find(&pt(1, 1)).nu, 2);
        assert_eq!(s.ramification_type().unwrap(), h.ramification_type().unwrap());
    }

    #[test]
    fn linear_changes_preserve_the_type() {
        let h = h_two_radial_one_transverse();
        let t = h
            .transform(&qnum(1), &qnum(1), &qnum(0), &qnum(1))
            .unwrap();
        assert_eq!(t.ramification_type().unwrap(), h.ramification_type().unwrap());
        let sing = h.transform(&qnum(1), &qnum(2), &qnum(2), &qnum(4));
        assert!(matches!(sing, Err(FoliationError::SingularMatrix)));
    }

    #[test]
    fn type_enumeration_for_cubics() {
        let types = enumerate_types(3);
        assert_eq!(types.len(), 13);
        let by_points = |n: usize| types.iter().filter(|t| t.point_count() == n).count();
        assert_eq!(by_points(2), 3);
        assert_eq!(by_points(3), 6);
        assert_eq!(by_points(4), 4);
        // the all-radial 4-point type is excluded (at most d radial points)
        assert!(types.iter().all(|t| t.radial_count() <= 3));
        let labels: Vec<String> = types.iter().map(|t| t.label()).collect();
        assert!(labels.contains(&"2·R₂".to_string()));
        assert!(labels.contains(&"1·R₁ + 1·R₂ + 1·T₁".to_string()));
        assert!(labels.contains(&"4·T₁".to_string()));
        assert!(!labels.contains(&"4·R₁".to_string()));
        // every type respects the total ramification weight
        for t in &types {
            assert_eq!(t.degree(), 3);
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        // common factor x
        let a = qform(&[(1, 2, 1)]);
        let b = qform(&[(3, 0, 1)]);
        assert!(matches!(
            HomogeneousFoliation::new(a, b),
            Err(FoliationError::NotSaturated)
        ));
        // mixed degrees
        let a = qform(&[(0, 2, 1)]);
        let b = qform(&[(3, 0, 1)]);
        assert!(HomogeneousFoliation::new(a, b).is_err());
    }
}
