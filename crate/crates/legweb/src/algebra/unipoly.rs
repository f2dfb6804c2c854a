//! Dense univariate polynomials over any [`Scalar`] domain.
//!
//! Coefficients are stored in ascending degree order; the vector is either
//! empty (the zero polynomial) or ends in a nonzero coefficient.  The same
//! type serves rational polynomials, number-field polynomials, étale-tower
//! polynomials, and (through a multivariate scalar) the solver's elimination
//! stack.
//!
//! Division comes in three flavors: [`UniPoly::divrem`] over fields,
//! [`UniPoly::exact_div`] over any ring with exact coefficient division, and
//! [`UniPoly::pseudo_rem`] (fraction-free) feeding the subresultant
//! [`resultant`].

use super::Scalar;
use crate::error::AlgebraError;

/// Univariate polynomial; see module docs for representation invariants.
#[derive(Clone, PartialEq)]
pub struct UniPoly<T: Scalar> {
    ctx: T::Ctx,
    c: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UniPoly({})", self.render("Z"))
    }
}

impl<T: Scalar> UniPoly<T> {
    // ---- Constructors ----

    pub fn zero(ctx: &T::Ctx) -> Self {
        UniPoly { ctx: ctx.clone(), c: Vec::new() }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(ctx: &T::Ctx, coeffs: Vec<T>) -> Self {
        let mut p = UniPoly { ctx: ctx.clone(), c: coeffs };
        p.trim();
        p
    }

    pub fn constant(ctx: &T::Ctx, value: T) -> Self {
        Self::from_coeffs(ctx, vec![value])
    }

    /// The variable `Z`.
    pub fn var(ctx: &T::Ctx) -> Self {
        Self::from_coeffs(ctx, vec![T::zero(ctx), T::one(ctx)])
    }

    /// `value * Z^k`.
    pub fn monomial(ctx: &T::Ctx, value: T, k: usize) -> Self {
        let mut c = vec![T::zero(ctx); k];
        c.push(value);
        Self::from_coeffs(ctx, c)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|t| t.is_zero()) {
            self.c.pop();
        }
    }

    // ---- Inspection ----

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0` (meaningful only when the
    /// caller has excluded the zero polynomial).
    pub fn degree_or0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Coefficient of `Z^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(|| T::zero(&self.ctx))
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn leading(&self) -> &T {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    // ---- Ring operations ----

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        Self::from_coeffs(&self.ctx, c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k).sub(&rhs.coeff(k)));
        }
        Self::from_coeffs(&self.ctx, c)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(&self.ctx, self.c.iter().map(|t| t.neg()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut c = vec![T::zero(&self.ctx); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.ctx, c)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_coeffs(&self.ctx, self.c.iter().map(|t| t.mul(s)).collect())
    }

    /// `self * s * Z^k` — the inner step of pseudo-division.
    fn mul_monomial(&self, s: &T, k: usize) -> Self {
        let mut c = vec![T::zero(&self.ctx); k];
        c.extend(self.c.iter().map(|t| t.mul(s)));
        Self::from_coeffs(&self.ctx, c)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.ctx, T::one(&self.ctx));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    // ---- Evaluation and calculus ----

    /// Horner evaluation at a scalar.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero(&self.ctx);
        for t in self.c.iter().rev() {
            acc = acc.mul(x).add(t);
        }
        acc
    }

    /// Horner evaluation at a polynomial: `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        for t in self.c.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(&self.ctx, t.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero(&self.ctx);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, t)| t.mul(&T::from_i64(&self.ctx, k as i64)))
            .collect();
        Self::from_coeffs(&self.ctx, c)
    }

    /// Maps coefficients into another scalar domain (e.g. rationals into a
    /// number field, base field into an étale layer).
    pub fn map_coeffs<U: Scalar>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::from_coeffs(ctx, self.c.iter().map(f).collect())
    }

    // ---- Division ----

    /// Quotient and remainder over a field (inverts the divisor's leading
    /// coefficient; étale scalars may surface `ZeroDivisor`).
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self), AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let db = rhs.degree_or0();
        let lb_inv = rhs.leading().invert()?;
        let mut q = Self::zero(&self.ctx);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_or0() >= db {
            let k = r.degree_or0() - db;
            let s = r.leading().mul(&lb_inv);
            q = q.add(&Self::monomial(&self.ctx, s.clone(), k));
            r = r.sub(&rhs.mul_monomial(&s, k));
        }
        Ok((q, r))
    }

    /// Exact division over any ring: fails with `NotDivisible` when the
    /// quotient does not exist with coefficients in the ring.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let db = rhs.degree_or0();
        if self.degree_or0() < db {
            return Err(AlgebraError::NotDivisible);
        }
        let mut q = Self::zero(&self.ctx);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_or0() >= db {
            let k = r.degree_or0() - db;
            let s = r.leading().exact_div(rhs.leading())?;
            q = q.add(&Self::monomial(&self.ctx, s.clone(), k));
            r = r.sub(&rhs.mul_monomial(&s, k));
        }
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    /// Fraction-free pseudo-remainder: `lc(rhs)^(deg self - deg rhs + 1) * self  mod  rhs`.
    pub fn pseudo_rem(&self, rhs: &Self) -> Self {
        let db = rhs.degree_or0();
        let lb = rhs.leading().clone();
        let mut r = self.clone();
        let mut e = (self.degree_or0() + 1).saturating_sub(db);
        while !r.is_zero() && r.degree_or0() >= db {
            let k = r.degree_or0() - db;
            let lead = r.leading().clone();
            r = r.scale(&lb).sub(&rhs.mul_monomial(&lead, k));
            e -= 1;
        }
        // Top up so the total factor is exactly lc^(delta+1) even when the
        // degree dropped by more than one in a step.
        let mut factor = T::one(&self.ctx);
        for _ in 0..e {
            factor = factor.mul(&lb);
        }
        r.scale(&factor)
    }

    // ---- GCD and squarefree structure (field scalars) ----

    /// Monic greatest common divisor via Euclid's algorithm.
    pub fn gcd(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Scales to leading coefficient 1 (zero polynomial passes through).
    pub fn into_monic(self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(self);
        }
        let inv = self.leading().invert()?;
        Ok(self.scale(&inv))
    }

    /// `self / gcd(self, self')` — the radical of a nonzero polynomial.
    pub fn squarefree_part(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let g = self.gcd(&self.derivative())?;
        if g.is_constant() {
            return Ok(self.clone());
        }
        self.exact_div(&g)
    }

    pub fn is_squarefree(&self) -> Result<bool, AlgebraError> {
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    /// Yun's squarefree decomposition (characteristic zero):
    /// returns `[(g_1, 1), (g_2, 2), ...]` with `self = lc * prod g_i^i` and
    /// the `g_i` monic, squarefree, pairwise coprime (constant `g_i` omitted).
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let f = self.clone().into_monic()?;
        if f.is_constant() {
            return Ok(Vec::new());
        }
        let df = f.derivative();
        let a = f.gcd(&df)?;
        let mut out = Vec::new();
        let mut b = f.exact_div(&a)?;
        let mut c = df.exact_div(&a)?;
        let mut i = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            if b.is_constant() {
                break;
            }
            let g = b.gcd(&d)?;
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g)?;
            c = d.exact_div(&g)?;
            i += 1;
        }
        Ok(out)
    }

    // ---- Rendering ----

    /// Renders with the given variable name, descending degree, e.g.
    /// `3Z^2 - 3Z + 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, t) in self.c.iter().enumerate().rev() {
            if t.is_zero() {
                continue;
            }
            let coeff = t.render();
            let body = match k {
                0 => coeff,
                _ => {
                    let pow = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if coeff == "1" {
                        pow
                    } else if coeff == "-1" {
                        format!("-{pow}")
                    } else if coeff.contains(['+', ' ']) {
                        format!("({coeff}){pow}")
                    } else {
                        format!("{coeff}{pow}")
                    }
                }
            };
            if parts.is_empty() {
                parts.push(body);
            } else if let Some(stripped) = body.strip_prefix('-') {
                parts.push(format!("- {stripped}"));
            } else {
                parts.push(format!("+ {body}"));
            }
        }
        parts.join(" ")
    }
}

/// Resultant of `f` and `g`, normalized so that for monic `g`,
/// `resultant(f, g) = prod f(beta)` over the roots `beta` of `g`
/// (e.g. `resultant(Z^2 - 1, Z - 2) = 3`).  Zero iff `f` and `g` share a
/// root in the algebraic closure.  Subresultant PRS: only ring operations
/// and exact divisions, so multivariate coefficient domains work too.
pub fn resultant<T: Scalar>(f: &UniPoly<T>, g: &UniPoly<T>) -> Result<T, AlgebraError> {
    let ctx = f.ctx().clone();
    let one = T::one(&ctx);
    if f.is_zero() || g.is_zero() {
        return Ok(T::zero(&ctx));
    }
    // Cohen-style subresultant chain on (g, f): the argument order realizes
    // the "evaluate f over roots of g" normalization documented above.
    let mut a = g.clone();
    let mut b = f.clone();
    let mut s = one.clone();
    if a.degree_or0() < b.degree_or0() {
        if a.degree_or0() % 2 == 1 && b.degree_or0() % 2 == 1 {
            s = s.neg();
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_constant() {
        // resultant(f, const c) after the swap bookkeeping
        let mut acc = one;
        for _ in 0..a.degree_or0() {
            acc = acc.mul(b.leading());
        }
        return Ok(acc.mul(&s));
    }
    let mut g_c = one.clone();
    let mut h_c = one.clone();
    loop {
        let (da, db) = (a.degree_or0(), b.degree_or0());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = a.pseudo_rem(&b);
        a = b;
        // b = r / (g * h^delta), exact by the subresultant theorem
        let mut denom = g_c.clone();
        for _ in 0..delta {
            denom = denom.mul(&h_c);
        }
        b = r.exact_div(&UniPoly::constant(&ctx, denom))?;
        g_c = a.leading().clone();
        // h = g^delta / h^(delta-1), exact
        h_c = match delta {
            0 => h_c,
            1 => g_c.clone(),
            _ => {
                let mut num = one.clone();
                for _ in 0..delta {
                    num = num.mul(&g_c);
                }
                let mut den = one.clone();
                for _ in 0..delta - 1 {
                    den = den.mul(&h_c);
                }
                num.exact_div(&den)?
            }
        };
        if b.is_zero() {
            return Ok(T::zero(&ctx));
        }
        if b.degree_or0() == 0 {
            // h' = lc(b)^(deg a) / h^(deg a - 1)
            let q = a.degree_or0();
            let mut num = one.clone();
            for _ in 0..q {
                num = num.mul(b.leading());
            }
            let mut den = one.clone();
            for _ in 0..q.saturating_sub(1) {
                den = den.mul(&h_c);
            }
            return Ok(num.exact_div(&den)?.mul(&s));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rat_i64, Rat};

    fn p(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_coeffs(&(), coeffs.iter().map(|&n| rat_i64(n)).collect())
    }

    #[test]
    fn representation_trims_trailing_zeros() {
        let f = p(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn divrem_round_trip() {
        let f = p(&[-1, 0, 0, 0, 1]); // Z^4 - 1
        let g = p(&[-1, 1]); // Z - 1
        let (q, r) = f.divrem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.mul(&g), f);
    }

    #[test]
    fn exact_div_detects_nondivisibility() {
        let f = p(&[1, 0, 1]); // Z^2 + 1
        let g = p(&[1, 1]); // Z + 1
        assert_eq!(f.exact_div(&g), Err(AlgebraError::NotDivisible));
        assert_eq!(f.mul(&g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn resultant_matches_evaluation_convention() {
        // resultant(Z^2 - 1, Z - 2) = value of Z^2 - 1 at 2 = 3
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])).unwrap(), rat_i64(3));
        // resultant(Z - a, Z - b) = b - a
        let a = rat_i64(5);
        let b = rat_i64(11);
        let f = UniPoly::from_coeffs(&(), vec![-a, rat_i64(1)]);
        let g = UniPoly::from_coeffs(&(), vec![-b, rat_i64(1)]);
        assert_eq!(resultant(&f, &g).unwrap(), rat_i64(6));
        // shared roots -> 0
        let m = p(&[1, -3, 3]);
        assert_eq!(resultant(&m, &m).unwrap(), rat_i64(0));
    }

    #[test]
    fn resultant_degree_two_pair() {
        // res(Z^2 - 2, Z^2 - 3) over the evaluation convention:
        // prod (beta^2 - 2) over beta = ±sqrt(3) -> (3-2)(3-2)... = 1
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap(), rat_i64(1));
    }

    #[test]
    fn squarefree_decomposition_yun() {
        // (Z-1)^2 (Z-2) = Z^3 - 4Z^2 + 5Z - 2
        let f = p(&[-2, 5, -4, 1]);
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (p(&[-2, 1]), 1));
        assert_eq!(dec[1], (p(&[-1, 1]), 2));
        assert!(!f.is_squarefree().unwrap());
        assert_eq!(f.squarefree_part().unwrap(), p(&[-2, 1]).mul(&p(&[-1, 1])));
    }

    #[test]
    fn compose_and_derivative() {
        let f = p(&[0, 0, 1]); // Z^2
        let g = p(&[1, 1]); // Z + 1
        assert_eq!(f.compose(&g), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
    }

    #[test]
    fn renders_descending() {
        let f = UniPoly::from_coeffs(&(), vec![rat_i64(1), rat_i64(-3), rat_i64(3)]);
        assert_eq!(f.render("Z"), "3Z^2 - 3Z + 1");
        assert_eq!(UniPoly::<Rat>::zero(&()).render("Z"), "0");
        assert_eq!(p(&[0, -1]).render("t"), "-t");
        let h = UniPoly::from_coeffs(&(), vec![rat(1, 2), rat_i64(1)]);
        assert_eq!(h.render("Z"), "Z + 1/2");
    }
}
