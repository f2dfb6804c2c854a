//! The local form pair `(P, Q)` every exact flatness criterion evaluates.
//!
//! Fix a direction with planar representative `(b₀, a₀)` (the source point
//! `[a₀ : b₀]`) at which the Gauss map branches with order ν (ν = 1 allowed
//! for line anchors).  `P` is the exact quotient
//!
//! ```text
//! P = (A·B(b₀,a₀) − A(b₀,a₀)·B) / (b₀·y − a₀·x)^ν ,
//! ```
//!
//! a form of degree d − ν: the numerator always vanishes on the anchor line
//! once, and ν times exactly when the anchor is critical of branching order
//! ≥ ν — so [`build_p`] doubles as an exact criticality test, surfacing
//! [`AlgebraError::NotDivisible`] otherwise.  `Q` is the weighted combination
//!
//! ```text
//! Q = w·(B_x − A_y)·P + c·(P_x·B − P_y·A) ,
//! ```
//!
//! of degree d + 2 − ν, where the integer weights `(w, c)` depend on how the
//! anchor meets the component under study ([`WeightRule`]).
//!
//! Representation invariant of [`PQPair`]: `p` and `q` were produced by
//! [`build_p`]/[`build_q`] from one foliation at the stored anchor, order,
//! and rule; `P` never vanishes at its own anchor.

use crate::algebra::{AlgebraicNumber, BiPoly, ProjPoint, Scalar};
use crate::error::{AlgebraError, CriterionError};
use crate::foliation::HomogeneousFoliation;

/// Which weight profile `Q` uses.
///
/// `Sum` is the profile of anchors contributing a term to a fiber-residue
/// sum: `w = (ν−1)(ν−2)/2`, `c = 2(ν+1)`.  `Transverse` is the profile of a
/// line anchored at its own tangency direction: `w = ν−1`, `c = 2ν+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightRule {
    Sum,
    Transverse,
}

impl WeightRule {
    /// The weight pair `(w, c)` at branching order ν.
    pub fn weights(self, nu: usize) -> (i64, i64) {
        let n = nu as i64;
        match self {
            WeightRule::Sum => ((n - 1) * (n - 2) / 2, 2 * (n + 1)),
            WeightRule::Transverse => (n - 1, 2 * n + 1),
        }
    }
}

/// `P` at the anchor with planar representative `rep = (b₀, a₀)`, quotient
/// of order `nu`.
///
/// Errors with `NotDivisible` (via [`CriterionError::Algebra`]) when the
/// anchor is not critical of branching order ≥ ν — for ν ≥ 2 this is the
/// exact criticality test.
pub fn build_p<S: Scalar>(
    a: &BiPoly<S>,
    b: &BiPoly<S>,
    rep: (&S, &S),
    nu: usize,
) -> Result<BiPoly<S>, CriterionError> {
    let ctx = a.ctx().clone();
    let aval = a.eval(rep.0, rep.1);
    let bval = b.eval(rep.0, rep.1);
    if aval.is_zero() && bval.is_zero() {
        // coprime forms cannot both vanish at a genuine direction
        return Err(CriterionError::HypothesisViolated(
            "defining forms both vanish at the anchor".into(),
        ));
    }
    let numer = a.scale(&bval).sub(&b.scale(&aval));
    if numer.is_zero() {
        return Err(CriterionError::HypothesisViolated(
            "defining forms are proportional".into(),
        ));
    }
    // b₀·y − a₀·x vanishes exactly on the anchor direction
    let lin = BiPoly::from_terms(
        &ctx,
        [(1u32, 0u32, rep.1.neg()), (0u32, 1u32, rep.0.clone())],
    );
    let mut p = numer;
    for _ in 0..nu {
        p = p.divide_exact(&lin).map_err(CriterionError::Algebra)?;
    }
    Ok(p)
}

/// `Q` from an already-built `P` at branching order `nu` under `rule`.
pub fn build_q<S: Scalar>(
    a: &BiPoly<S>,
    b: &BiPoly<S>,
    p: &BiPoly<S>,
    nu: usize,
    rule: WeightRule,
) -> BiPoly<S> {
    let ctx = a.ctx().clone();
    let (w, c) = rule.weights(nu);
    let trace = b.partial_x().sub(&a.partial_y());
    let swirl = p.partial_x().mul(b).sub(&p.partial_y().mul(a));
    trace
        .mul(p)
        .scale(&S::from_i64(&ctx, w))
        .add(&swirl.scale(&S::from_i64(&ctx, c)))
}

/// `(P, Q)` of a foliation at a source-point anchor, with provenance.
#[derive(Clone, Debug)]
pub struct PQPair {
    pub p: BiPoly<AlgebraicNumber>,
    pub q: BiPoly<AlgebraicNumber>,
    pub nu: usize,
    pub anchor: ProjPoint,
    pub rule: WeightRule,
}

/// Builds the pair for `h` anchored at the source point `anchor` with
/// branching order `nu` under `rule`.
pub fn build_pq(
    h: &HomogeneousFoliation,
    anchor: &ProjPoint,
    nu: usize,
    rule: WeightRule,
) -> Result<PQPair, CriterionError> {
    let p = build_p(h.a(), h.b(), (anchor.b(), anchor.a()), nu)?;
    let q = build_q(h.a(), h.b(), &p, nu, rule);
    Ok(PQPair { p, q, nu, anchor: anchor.clone(), rule })
}

/// Convenience: `NotDivisible` as a criterion error, for tests and guards.
pub fn not_divisible() -> CriterionError {
    CriterionError::Algebra(AlgebraError::NotDivisible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nf_rational, rat, AlgebraicNumber};

    fn qnum(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_int(&nf_rational(), n)
    }

    fn qq(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rat(&nf_rational(), rat(n, d))
    }

    fn qform(terms: &[(u32, u32, i64)]) -> BiPoly<AlgebraicNumber> {
        BiPoly::from_terms(&nf_rational(), terms.iter().map(|&(i, j, n)| (i, j, qnum(n))))
    }

    /// ω = λ(2y³ − 3y²x) dx + x³ dy with λ left symbolic as a rational.
    fn family_two_radial(lam: AlgebraicNumber) -> HomogeneousFoliation {
        let q = nf_rational();
        let a = BiPoly::from_terms(
            &q,
            [(0u32, 3u32, lam.mul(&qnum(2))), (1, 2, lam.mul(&qnum(-3)))],
        );
        HomogeneousFoliation::new(a, qform(&[(3, 0, 1)])).unwrap()
    }

    #[test]
    fn weights_match_their_profiles() {
        assert_eq!(WeightRule::Sum.weights(1), (0, 4));
        assert_eq!(WeightRule::Sum.weights(2), (0, 6));
        assert_eq!(WeightRule::Sum.weights(3), (1, 8));
        assert_eq!(WeightRule::Transverse.weights(2), (1, 5));
        assert_eq!(WeightRule::Transverse.weights(3), (2, 7));
    }

    #[test]
    fn p_divides_exactly_at_a_critical_anchor_and_not_elsewhere() {
        let h = family_two_radial(qnum(1));
        // [1:1] is critical of order 1 (ν = 2)
        let one = qnum(1);
        let p = build_p(h.a(), h.b(), (&one, &one), 2).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(1));
        // P(1,1) ≠ 0 always
        assert!(!p.eval(&one, &one).is_zero());
        // ν = 3 exceeds the branching order there
        assert!(matches!(
            build_p(h.a(), h.b(), (&one, &one), 3),
            Err(CriterionError::Algebra(AlgebraError::NotDivisible))
        ));
        // a non-critical anchor fails already at ν = 2
        let two = qnum(2);
        assert!(matches!(
            build_p(h.a(), h.b(), (&one, &two), 2),
            Err(CriterionError::Algebra(AlgebraError::NotDivisible))
        ));
        // ...but divides once, like every direction
        assert!(build_p(h.a(), h.b(), (&one, &two), 1).is_ok());
    }

    #[test]
    fn transverse_q_reproduces_the_known_line_value() {
        // At λ = −7/5 the line y = x is tangent at its own direction with
        // ν = 2 and the transverse-rule Q vanishes on it: Q(1,1) = 2λ(7+5λ).
        for lam in [qq(-7, 5), qnum(1), qq(3, 2)] {
            let h = family_two_radial(lam.clone());
            let one = qnum(1);
            let p = build_p(h.a(), h.b(), (&one, &one), 2).unwrap();
            let q = build_q(h.a(), h.b(), &p, 2, WeightRule::Transverse);
            let expect = qnum(2)
                .mul(&lam)
                .mul(&qnum(7).add(&qnum(5).mul(&lam)));
            assert_eq!(q.eval(&one, &one), expect);
        }
    }
}
