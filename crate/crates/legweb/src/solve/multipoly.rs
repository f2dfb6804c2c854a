//! Sparse multivariate polynomials over ℚ in at most four named unknowns.
//!
//! `MultiPoly` is the elimination workhorse: parameter systems are lists of
//! these, resultant chains view them univariately in one unknown at a time
//! (with the remaining unknowns pushed into the coefficients), and exact
//! back-substitution partially evaluates them over a constructed number
//! field.  Representation: a `BTreeMap` from exponent vectors (fixed width
//! [`MAX_ARITY`], unused slots zero) to non-zero rational coefficients, plus
//! the ambient arity.  The map's lexicographic key order doubles as the
//! monomial order used by exact division and by the sign normalization.
//!
//! Arithmetic is plain ring arithmetic; the only non-trivial operation is
//! [`MultiPoly::exact_div`], which runs lex-greedy long division and reports
//! honestly when the quotient does not exist in the ring — that exactness is
//! what saturation by side conditions leans on.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraicNumber, NumberField, Rat, Scalar, UniPoly};
use crate::error::AlgebraError;

use std::sync::Arc;

/// Maximum number of unknowns an elimination handles at once.
pub const MAX_ARITY: usize = 4;

/// Exponent vector: one slot per unknown, unused slots zero.
pub type Exps = [u16; MAX_ARITY];

/// Sparse multivariate polynomial over ℚ with a fixed ambient arity.
///
/// The context of the [`Scalar`] instance is the arity, so that generic
/// polynomial code (notably the subresultant chain in
/// [`crate::algebra::resultant`]) can manufacture constants of the right
/// width.  Zero is the empty term map.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exps, Rat>,
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MultiPoly({})", self.render_default())
    }
}

// ---- Constructors ----

impl MultiPoly {
    /// The zero polynomial of the given arity.
    pub fn new(arity: usize) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} exceeds {MAX_ARITY}");
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    /// A single term `c · x₀^e₀ ⋯ x₃^e₃`; collapses to zero when `c = 0`.
    pub fn monomial(arity: usize, exps: Exps, coeff: Rat) -> Self {
        let mut p = MultiPoly::new(arity);
        for (i, &e) in exps.iter().enumerate() {
            assert!(i < arity || e == 0, "exponent outside arity");
        }
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// The constant polynomial `c`.
    pub fn constant(arity: usize, c: Rat) -> Self {
        Self::monomial(arity, [0; MAX_ARITY], c)
    }

    /// The unknown `x_i` as a polynomial.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index {i} outside arity {arity}");
        let mut exps = [0; MAX_ARITY];
        exps[i] = 1;
        Self::monomial(arity, exps, Rat::one())
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exps, Rat)>,
    {
        let mut p = MultiPoly::new(arity);
        for (e, c) in terms {
            p = p.add(&MultiPoly::monomial(arity, e, c));
        }
        p
    }
}

// ---- Structure queries ----

impl MultiPoly {
    /// Ambient number of unknowns.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Iterates the terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    /// Number of (non-zero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational if the polynomial is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&[0; MAX_ARITY]).cloned(),
            _ => None,
        }
    }

    /// Degree in the unknown `var` (zero for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    /// Total degree (zero for constants and the zero polynomial).
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Whether the unknown `var` occurs with positive exponent.
    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Lexicographically largest term (the "leading" term of the order used
    /// by exact division and sign normalization); `None` for zero.
    fn lex_leading(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next_back()
    }
}

// ---- Extra ring operations beyond the Scalar surface ----

impl MultiPoly {
    /// `self · c` for a rational scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::new(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: usize) -> Self {
        let mut acc = MultiPoly::constant(self.arity, Rat::one());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients; `1` for zero.
    fn content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rat::one();
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Content-free, sign-normalized copy: integer coprime coefficients with
    /// the lexicographically leading one positive.  Zero stays zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lex_leading().map(|(_, v)| v.is_negative()).unwrap_or(false) {
            c = -c;
        }
        self.scale(&c.recip())
    }
}

// ---- Univariate views ----

impl MultiPoly {
    /// Rewrites as a univariate polynomial in `var` whose coefficients are
    /// `var`-free `MultiPoly`s of the same arity.  This is the bridge into
    /// the generic subresultant machinery.
    pub fn to_uni(&self, var: usize) -> UniPoly<MultiPoly> {
        let deg = self.degree_in(var);
        let mut coeffs: Vec<MultiPoly> = vec![MultiPoly::new(self.arity); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut rest = *e;
            rest[var] = 0;
            coeffs[k] = coeffs[k].add(&MultiPoly::monomial(self.arity, rest, c.clone()));
        }
        UniPoly::from_coeffs(&self.arity, coeffs)
    }

    /// Inverse of [`MultiPoly::to_uni`].
    pub fn from_uni(poly: &UniPoly<MultiPoly>, var: usize) -> Self {
        let arity = *poly.ctx();
        let mut acc = MultiPoly::new(arity);
        for (k, c) in poly.coeffs().iter().enumerate() {
            let mut shift = [0u16; MAX_ARITY];
            shift[var] = u16::try_from(k).expect("exponent fits u16");
            acc = acc.add(&c.mul(&MultiPoly::monomial(arity, shift, Rat::one())));
        }
        acc
    }

    /// The polynomial as a rational univariate in `var`, if no other unknown
    /// occurs (constants qualify).
    pub fn as_unipoly_rat(&self, var: usize) -> Option<UniPoly<Rat>> {
        let mut coeffs = vec![Rat::zero(); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if i != var && x > 0 {
                    return None;
                }
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(&(), coeffs))
    }

    /// Partial evaluation over a number field: every unknown except `keep`
    /// must be assigned; the result is univariate in `keep`.
    pub fn eval_partial(
        &self,
        field: &Arc<NumberField>,
        values: &[Option<AlgebraicNumber>],
        keep: usize,
    ) -> UniPoly<AlgebraicNumber> {
        let deg = self.degree_in(keep);
        let mut coeffs = vec![AlgebraicNumber::zero(field); deg + 1];
        for (e, c) in &self.terms {
            let mut term = AlgebraicNumber::from_rat(field, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if i == keep || x == 0 {
                    continue;
                }
                let v = values[i].as_ref().expect("unknown assigned before use");
                for _ in 0..x {
                    term = term.mul(v);
                }
            }
            coeffs[e[keep] as usize] = coeffs[e[keep] as usize].add(&term);
        }
        UniPoly::from_coeffs(field, coeffs)
    }

    /// Full evaluation over a number field.
    pub fn eval_full(&self, field: &Arc<NumberField>, values: &[AlgebraicNumber]) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero(field);
        for (e, c) in &self.terms {
            let mut term = AlgebraicNumber::from_rat(field, c.clone());
            for (i, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    term = term.mul(&values[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

// ---- Rendering ----

impl MultiPoly {
    /// Renders with the given unknown names, highest lex term first.
    pub fn render_named(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let name = names.get(i).copied().unwrap_or("?");
                    if x == 1 { name.to_string() } else { format!("{name}^{x}") }
                })
                .collect();
            let sign = if c.is_negative() { " - " } else { " + " };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            let mag = c.abs();
            if mono.is_empty() {
                out.push_str(&crate::algebra::rat_to_string(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&crate::algebra::rat_to_string(&mag));
                    out.push('·');
                }
                out.push_str(&mono.join("·"));
            }
        }
        out
    }

    fn render_default(&self) -> String {
        self.render_named(&["x0", "x1", "x2", "x3"])
    }
}

// ---- Scalar instance ----

impl Scalar for MultiPoly {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.arity
    }
    fn zero(ctx: &usize) -> Self {
        MultiPoly::new(*ctx)
    }
    fn one(ctx: &usize) -> Self {
        MultiPoly::constant(*ctx, Rat::one())
    }
    fn from_i64(ctx: &usize, n: i64) -> Self {
        MultiPoly::constant(*ctx, crate::algebra::rat_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.arity, rhs.arity);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly { arity: self.arity, terms }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.arity, rhs.arity);
        let mut terms: BTreeMap<Exps, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (i, x) in e.iter_mut().enumerate() {
                    *x = x.checked_add(eb[i]).expect("exponent overflow");
                }
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        MultiPoly { arity: self.arity, terms }
    }

    fn neg(&self) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    /// Units of ℚ[x₀..] are the non-zero constants.
    fn invert(&self) -> Result<Self, AlgebraError> {
        match self.as_rat() {
            Some(c) if c.is_zero() => Err(AlgebraError::DivisionByZero),
            Some(c) => Ok(MultiPoly::constant(self.arity, c.recip())),
            None => Err(AlgebraError::ZeroDivisor),
        }
    }

    /// Lex-greedy exact division: because the lexicographic order is
    /// multiplicative and ℚ[x₀..] is an integral domain, an exact quotient
    /// forces `lead(rem) = lead(quot)·lead(divisor)` at every step, so a
    /// single greedy pass either terminates at zero or proves
    /// indivisibility.
    fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (dexp, dcoeff) = rhs.lex_leading().expect("non-zero divisor");
        let mut rem = self.clone();
        let mut quot = MultiPoly::new(self.arity);
        while let Some((rexp, rcoeff)) = rem.lex_leading() {
            let mut qexp = [0u16; MAX_ARITY];
            for i in 0..MAX_ARITY {
                match rexp[i].checked_sub(dexp[i]) {
                    Some(d) => qexp[i] = d,
                    None => return Err(AlgebraError::NotDivisible),
                }
            }
            let qterm = MultiPoly::monomial(self.arity, qexp, rcoeff / dcoeff);
            rem = rem.sub(&qterm.mul(rhs));
            quot = quot.add(&qterm);
        }
        Ok(quot)
    }

    fn render(&self) -> String {
        self.render_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, resultant};

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn k(n: i64, d: i64) -> MultiPoly {
        MultiPoly::constant(2, rat(n, d))
    }

    #[test]
    fn ring_arithmetic_and_normal_form() {
        // (x + y)² = x² + 2xy + y²
        let s = x().add(&y());
        let sq = s.mul(&s);
        assert_eq!(sq.term_count(), 3);
        assert_eq!(sq.degree_in(0), 2);
        assert_eq!(sq.total_degree(), 2);
        // cancellation collapses to the empty map
        assert!(sq.sub(&sq).is_zero());
        // content/sign normalization
        let p = x().scale(&rat(-4, 6)).add(&y().scale(&rat(-2, 6)));
        let n = p.normalized();
        assert_eq!(n, x().scale(&rat(2, 1)).add(&y())); // lex leader x > y, positive
    }

    #[test]
    fn exact_division_round_trips_and_rejects() {
        let f = x().add(&y()).mul(&x().sub(&k(1, 1))).mul(&x().mul(&y()).add(&k(3, 7)));
        let d = x().add(&y());
        let q = f.exact_div(&d).expect("exact");
        assert_eq!(q.mul(&d), f);
        assert_eq!(
            f.add(&k(1, 1)).exact_div(&d).unwrap_err(),
            AlgebraError::NotDivisible
        );
        assert_eq!(f.exact_div(&MultiPoly::new(2)).unwrap_err(), AlgebraError::DivisionByZero);
    }

    #[test]
    fn univariate_views_round_trip() {
        let f = x().pow(2).mul(&y()).add(&x().scale(&rat(3, 1))).add(&k(5, 1));
        let u = f.to_uni(0);
        assert_eq!(u.degree(), Some(2));
        assert_eq!(MultiPoly::from_uni(&u, 0), f);
        assert!(f.as_unipoly_rat(0).is_none()); // y occurs
        let g = x().pow(3).sub(&k(2, 1));
        let gu = g.as_unipoly_rat(0).expect("x-only");
        assert_eq!(gu.degree(), Some(3));
    }

    #[test]
    fn resultant_over_multipoly_coefficients_eliminates() {
        // res_x(x − 2, x·y − 4) = 2y − 4 up to sign: vanishes exactly on the
        // projection {y = 2}
        let f = x().sub(&k(2, 1));
        let g = x().mul(&y()).sub(&k(4, 1));
        let r = resultant(&f.to_uni(0), &g.to_uni(0)).expect("resultant");
        let n = r.normalized();
        assert_eq!(n, y().sub(&k(2, 1)).normalized());
    }

    #[test]
    fn scalar_inversion_is_constants_only() {
        assert!(k(3, 4).invert().is_ok());
        assert_eq!(x().invert().unwrap_err(), AlgebraError::ZeroDivisor);
        assert_eq!(MultiPoly::new(2).invert().unwrap_err(), AlgebraError::DivisionByZero);
    }
}
