//! Sparse bivariate polynomials, used mainly as binary forms.
//!
//! Exponent pairs `(i, j)` map to the monomial `x^i y^j`.  Zero
//! coefficients are never stored; the zero polynomial has an empty term
//! map.  Most callers work with homogeneous forms (foliation components,
//! fiber forms, discriminants); [`BiPoly::homogeneous_degree`] checks the
//! invariant, and form-level division/gcd go through dehomogenization with
//! explicit bookkeeping of the multiplicity at `[1:0]` (the `y`-root lost
//! by setting `y = 1`).

use std::collections::BTreeMap;

use super::unipoly::UniPoly;
use super::Scalar;
use crate::error::AlgebraError;

/// Sparse polynomial in two variables over `T`.
pub struct BiPoly<T: Scalar> {
    ctx: T::Ctx,
    /// `(x-exponent, y-exponent) → coefficient`, no zero entries.
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> Clone for BiPoly<T> {
    fn clone(&self) -> Self {
        BiPoly { ctx: self.ctx.clone(), terms: self.terms.clone() }
    }
}

impl<T: Scalar> PartialEq for BiPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<T: Scalar> std::fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render("x", "y"))
    }
}

impl<T: Scalar> BiPoly<T> {
    // ---- Constructors ----

    pub fn zero(ctx: &T::Ctx) -> Self {
        BiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(ctx: &T::Ctx, coeff: T, xe: u32, ye: u32) -> Self {
        let mut p = BiPoly::zero(ctx);
        p.insert(xe, ye, coeff);
        p
    }

    pub fn constant(ctx: &T::Ctx, coeff: T) -> Self {
        BiPoly::monomial(ctx, coeff, 0, 0)
    }

    pub fn from_terms(ctx: &T::Ctx, terms: impl IntoIterator<Item = (u32, u32, T)>) -> Self {
        let mut p: BiPoly<T> = BiPoly::zero(ctx);
        for (xe, ye, c) in terms {
            let cur = p.coeff(xe, ye).add(&c);
            p.set(xe, ye, cur);
        }
        p
    }

    /// Homogenizes a univariate `u(x)` to a form of the given degree:
    /// `y^degree · u(x/y)`.  Errors when `deg u > degree`.
    pub fn homogenize(u: &UniPoly<T>, degree: u32) -> Result<Self, AlgebraError> {
        if u.degree_or0() as u32 > degree {
            return Err(AlgebraError::DegreeOutOfRange(u.degree_or0()));
        }
        let mut p = BiPoly::zero(u.ctx());
        for (i, c) in u.coeffs().iter().enumerate() {
            if !c.is_zero() {
                p.insert(i as u32, degree - i as u32, c.clone());
            }
        }
        Ok(p)
    }

    // ---- Term access ----

    fn insert(&mut self, xe: u32, ye: u32, c: T) {
        if !c.is_zero() {
            self.terms.insert((xe, ye), c);
        }
    }

    fn set(&mut self, xe: u32, ye: u32, c: T) {
        if c.is_zero() {
            self.terms.remove(&(xe, ye));
        } else {
            self.terms.insert((xe, ye), c);
        }
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn coeff(&self, xe: u32, ye: u32) -> T {
        self.terms.get(&(xe, ye)).cloned().unwrap_or_else(|| T::zero(&self.ctx))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &T)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// `Some(d)` when every term has total degree `d` (zero is not
    /// homogeneous of any degree here).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(i, j)| i + j);
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    // ---- Arithmetic ----

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            let cur = out.coeff(i, j).add(c);
            out.set(i, j, cur);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, Scalar::neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return BiPoly::zero(&self.ctx);
        }
        BiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out: BiPoly<T> = BiPoly::zero(&self.ctx);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                let cur = out.coeff(i, j).add(&c1.mul(c2));
                out.set(i, j, cur);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = BiPoly::constant(&self.ctx, T::one(&self.ctx));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> U) -> BiPoly<U> {
        let mut out = BiPoly::zero(ctx);
        for (&(i, j), c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert((i, j), v);
            }
        }
        out
    }

    // ---- Calculus ----

    pub fn partial_x(&self) -> Self {
        let mut out = BiPoly::zero(&self.ctx);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.insert(i - 1, j, c.mul(&T::from_i64(&self.ctx, i as i64)));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = BiPoly::zero(&self.ctx);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.insert(i, j - 1, c.mul(&T::from_i64(&self.ctx, j as i64)));
            }
        }
        out
    }

    // ---- Evaluation and substitution ----

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.eval_with(&self.ctx, x, y, |c| c.clone())
    }

    /// Evaluates in any scalar ring `R` through the coefficient map `φ`.
    pub fn eval_with<R: Scalar>(
        &self,
        ctx: &R::Ctx,
        x: &R,
        y: &R,
        phi: impl Fn(&T) -> R,
    ) -> R {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let xp = power_table(ctx, x, dx);
        let yp = power_table(ctx, y, dy);
        let mut acc = R::zero(ctx);
        for (&(i, j), c) in &self.terms {
            acc = acc.add(&phi(c).mul(&xp[i as usize]).mul(&yp[j as usize]));
        }
        acc
    }

    /// Substitutes `x ↦ a·x + b·y`, `y ↦ c·x + d·y`.
    pub fn apply_linear(&self, a: &T, b: &T, c: &T, d: &T) -> Self {
        let xs = BiPoly::from_terms(&self.ctx, [(1, 0, a.clone()), (0, 1, b.clone())]);
        let ys = BiPoly::from_terms(&self.ctx, [(1, 0, c.clone()), (0, 1, d.clone())]);
        let mut out = BiPoly::zero(&self.ctx);
        for (&(i, j), coef) in &self.terms {
            let term = xs.pow(i).mul(&ys.pow(j)).scale(coef);
            out = out.add(&term);
        }
        out
    }

    /// Exchanges the variables: `p(x, y) ↦ p(y, x)`.
    pub fn swap_vars(&self) -> Self {
        BiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// `p(x, 1)` as a univariate polynomial in `x`.
    pub fn dehomogenize_x(&self) -> UniPoly<T> {
        let n = self.degree_x().map(|d| d as usize + 1).unwrap_or(0);
        let mut coeffs = vec![T::zero(&self.ctx); n];
        for (&(i, _), c) in &self.terms {
            coeffs[i as usize] = coeffs[i as usize].add(c);
        }
        UniPoly::from_coeffs(&self.ctx, coeffs)
    }

    /// `p(1, y)` as a univariate polynomial in `y`.
    pub fn dehomogenize_y(&self) -> UniPoly<T> {
        self.swap_vars().dehomogenize_x()
    }

    // ---- Form division ----

    /// Exact division of homogeneous forms.  `NotDivisible` when the
    /// divisor does not divide exactly (including a deficit of `y`-factors
    /// that dehomogenization alone would hide).
    pub fn divide_exact(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(BiPoly::zero(&self.ctx));
        }
        let df = self.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?;
        let dg = rhs.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?;
        if dg > df {
            return Err(AlgebraError::NotDivisible);
        }
        let fu = self.dehomogenize_x();
        let gu = rhs.dehomogenize_x();
        let qu = fu.exact_div(&gu)?;
        // q must homogenize to degree df − dg; a larger dehomogenized
        // degree means rhs carried more y-factors than self.
        BiPoly::homogenize(&qu, df - dg).map_err(|_| AlgebraError::NotDivisible)
    }

    /// Monic-normalized gcd of homogeneous forms (zero for two zeros).
    pub fn form_gcd(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        let df = self.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?;
        let dg = rhs.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)?;
        let fu = self.dehomogenize_x();
        let gu = rhs.dehomogenize_x();
        let g = fu.gcd(&gu)?;
        // multiplicity of the root [1:0] (pure y-factors) in each form
        let ef = df as usize - fu.degree_or0();
        let eg = dg as usize - gu.degree_or0();
        let gh = BiPoly::homogenize(&g, g.degree_or0() as u32)?;
        let ymul = BiPoly::monomial(&self.ctx, T::one(&self.ctx), 0, ef.min(eg) as u32);
        Ok(gh.mul(&ymul))
    }

    // ---- Display ----

    pub fn render(&self, xv: &str, yv: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mono = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let mut parts = Vec::new();
        // highest x-degree first: reverse of the BTreeMap order
        for (&(i, j), c) in self.terms.iter().rev() {
            let vars = match (mono(xv, i), mono(yv, j)) {
                (a, b) if a.is_empty() && b.is_empty() => String::new(),
                (a, b) if a.is_empty() => b,
                (a, b) if b.is_empty() => a,
                (a, b) => format!("{a}*{b}"),
            };
            let cs = c.render();
            // Parenthesize compound coefficients: anything with a '+', a
            // space, or a '-' that is not the leading sign.
            let compound = cs.contains('+')
                || cs.contains(' ')
                || cs.char_indices().any(|(pos, ch)| ch == '-' && pos > 0);
            let term = if vars.is_empty() {
                cs
            } else if cs == "1" {
                vars
            } else if cs == "-1" {
                format!("-{vars}")
            } else if compound {
                format!("({cs})*{vars}")
            } else {
                format!("{cs}*{vars}")
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for t in &parts[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

fn power_table<R: Scalar>(ctx: &R::Ctx, x: &R, n: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(R::one(ctx));
    for k in 0..n {
        let next = out[k].mul(x);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat_i64, Rat};

    fn form(terms: &[(u32, u32, i64)]) -> BiPoly<Rat> {
        BiPoly::from_terms(&(), terms.iter().map(|&(i, j, n)| (i, j, rat_i64(n))))
    }

    #[test]
    fn homogeneity_detection() {
        let f = form(&[(3, 0, 1), (1, 2, -2)]);
        assert_eq!(f.homogeneous_degree(), Some(3));
        let g = form(&[(1, 0, 1), (0, 2, 1)]);
        assert_eq!(g.homogeneous_degree(), None);
        assert_eq!(BiPoly::<Rat>::zero(&()).homogeneous_degree(), None);
    }

    #[test]
    fn partials_and_euler_identity() {
        // x·f_x + y·f_y = d·f for homogeneous f of degree d
        let f = form(&[(3, 0, 2), (2, 1, -1), (0, 3, 5)]);
        let x = BiPoly::monomial(&(), rat_i64(1), 1, 0);
        let y = BiPoly::monomial(&(), rat_i64(1), 0, 1);
        let euler = x.mul(&f.partial_x()).add(&y.mul(&f.partial_y()));
        assert_eq!(euler, f.scale(&rat_i64(3)));
    }

    #[test]
    fn form_division_tracks_y_multiplicity() {
        // (x²y)/(y) = x², but (x²)/(y) is not divisible
        let f = form(&[(2, 1, 1)]);
        let y = form(&[(0, 1, 1)]);
        assert_eq!(f.divide_exact(&y).unwrap(), form(&[(2, 0, 1)]));
        let g = form(&[(2, 0, 1)]);
        assert_eq!(g.divide_exact(&y), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn form_division_round_trip() {
        let f = form(&[(2, 0, 1), (1, 1, 3), (0, 2, -4)]); // (x+4y)(x−y)
        let g = form(&[(1, 0, 1), (0, 1, 4)]);
        let q = f.divide_exact(&g).unwrap();
        assert_eq!(q.mul(&g), f);
    }

    #[test]
    fn gcd_of_forms_keeps_shared_y_factors() {
        // gcd(x·y², y·(x+y)) = y
        let f = form(&[(1, 2, 1)]);
        let g = form(&[(1, 1, 1), (0, 2, 1)]);
        let d = f.form_gcd(&g).unwrap();
        assert_eq!(d, form(&[(0, 1, 1)]));
    }

    #[test]
    fn linear_substitution_composes() {
        // f(x, y) = xy under x↦x+y, y↦x−y gives x² − y²
        let f = form(&[(1, 1, 1)]);
        let one = rat_i64(1);
        let m1 = rat_i64(-1);
        let g = f.apply_linear(&one, &one, &one, &m1);
        assert_eq!(g, form(&[(2, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn dehomogenize_round_trip() {
        let f = form(&[(3, 0, 2), (1, 2, -7), (0, 3, 1)]);
        let u = f.dehomogenize_x();
        assert_eq!(BiPoly::homogenize(&u, 3).unwrap(), f);
        // swap sends [a:b] roots to [b:a]: check on evaluation
        let s = f.swap_vars();
        assert_eq!(s.eval(&rat_i64(2), &rat_i64(5)), f.eval(&rat_i64(5), &rat_i64(2)));
    }

    #[test]
    fn render_is_reasonable() {
        let f = form(&[(2, 0, 1), (1, 1, -3), (0, 2, 1)]);
        assert_eq!(f.render("x", "y"), "x^2 - 3*x*y + y^2");
    }
}
