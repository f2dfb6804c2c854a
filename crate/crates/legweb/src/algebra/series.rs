//! Truncated Laurent series in one local parameter μ.
//!
//! A [`Series`] knows its coefficients on the exponent window
//! `off .. prec`: exponents below `off` are exactly zero, exponents at or
//! above `prec` are *unknown* (truncated).  Every operation propagates the
//! tightest window it can honestly claim, so reading a coefficient beyond
//! the window is a hard error rather than a silent zero — the polar-part
//! engine sizes its precision budget up front and must never run out.
//!
//! Representation invariants: storage `c` covers exponents
//! `off .. off + c.len()`; exponents from there up to `prec` are known
//! zeros (kept implicit, so an exact constant with a huge window costs no
//! memory); `off + c.len() ≤ prec` .

use super::Scalar;
use crate::error::AlgebraError;

/// Relative-precision cap for inversion: exactly known inputs (huge
/// windows) would otherwise demand unbounded storage.  Far above the
/// engine's budget of a few dozen terms.
const INVERT_REL_CAP: i64 = 256;

/// Truncated Laurent series `Σ c_k μ^k`, known for `off ≤ k < prec`.
pub struct Series<T: Scalar> {
    ctx: T::Ctx,
    off: i64,
    prec: i64,
    c: Vec<T>,
}

impl<T: Scalar> Clone for Series<T> {
    fn clone(&self) -> Self {
        Series { ctx: self.ctx.clone(), off: self.off, prec: self.prec, c: self.c.clone() }
    }
}

impl<T: Scalar> std::fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("({})μ^{}", v.render(), self.off + i as i64))
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{} + O(μ^{})", body, self.prec)
    }
}

impl<T: Scalar> Series<T> {
    /// Zero on the window `[off, prec)` — exactly zero there, unknown after.
    pub fn zero(ctx: &T::Ctx, off: i64, prec: i64) -> Self {
        assert!(off <= prec, "empty window: off {off} > prec {prec}");
        Series { ctx: ctx.clone(), off, prec, c: Vec::new() }
    }

    /// Constant `v`, known up to `prec`.
    pub fn constant(ctx: &T::Ctx, v: T, prec: i64) -> Self {
        Series::monomial(ctx, v, 0, prec)
    }

    /// The monomial `v·μ^k`, known up to `prec`.
    pub fn monomial(ctx: &T::Ctx, v: T, k: i64, prec: i64) -> Self {
        if k >= prec {
            return Series::zero(ctx, prec, prec);
        }
        Series { ctx: ctx.clone(), off: k, prec, c: vec![v] }
    }

    /// Series with the given consecutive coefficients starting at μ^off,
    /// known up to `prec` (the tail after the storage is known zero).
    pub fn from_coeffs(ctx: &T::Ctx, off: i64, coeffs: Vec<T>, prec: i64) -> Self {
        assert!(off + coeffs.len() as i64 <= prec, "storage exceeds window");
        Series { ctx: ctx.clone(), off, prec, c: coeffs }
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    /// First exponent of the window (everything below is exactly zero).
    pub fn window_start(&self) -> i64 {
        self.off
    }

    /// Truncation order: coefficients at exponents ≥ this are unknown.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// One past the last stored exponent; `[support_end, prec)` is known zero.
    /// Empty storage contributes nothing anywhere: a sentinel far below any
    /// window, so unions of content ranges never inflate allocations.
    fn support_end(&self) -> i64 {
        if self.c.is_empty() {
            i64::MIN / 4
        } else {
            self.off + self.c.len() as i64
        }
    }

    /// Coefficient of μ^k.  Panics when `k ≥ prec` (unknown territory) —
    /// callers are expected to budget precision correctly.
    pub fn coefficient(&self, k: i64) -> T {
        assert!(k < self.prec, "coefficient μ^{k} beyond precision {}", self.prec);
        if k < self.off || k >= self.support_end() {
            T::zero(&self.ctx)
        } else {
            self.c[(k - self.off) as usize].clone()
        }
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.c.iter().position(|v| !v.is_zero()).map(|i| self.off + i as i64)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.valuation().is_none()
    }

    /// Restricts the window to end at `new_prec`.
    pub fn truncate(&self, new_prec: i64) -> Self {
        assert!(new_prec <= self.prec, "cannot extend precision by truncating");
        let off = self.off.min(new_prec);
        let keep = (new_prec - off).min(self.c.len() as i64).max(0) as usize;
        Series { ctx: self.ctx.clone(), off, prec: new_prec, c: self.c[..keep].to_vec() }
    }

    /// Drops known leading zeros, raising the floor (no information change).
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            None => Series::zero(&self.ctx, self.prec, self.prec),
            Some(v) => {
                let skip = (v - self.off) as usize;
                Series {
                    ctx: self.ctx.clone(),
                    off: v,
                    prec: self.prec,
                    c: self.c[skip..].to_vec(),
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let off = self.off.min(rhs.off).min(prec);
        let end = self.support_end().max(rhs.support_end()).clamp(off, prec);
        let mut c = Vec::with_capacity((end - off) as usize);
        for k in off..end {
            c.push(self.coefficient_or_zero(k).add(&rhs.coefficient_or_zero(k)));
        }
        Series { ctx: self.ctx.clone(), off, prec, c }
    }

    /// Like [`coefficient`](Self::coefficient) but treats the unknown tail
    /// as zero — only for internal use where the window was already clamped.
    fn coefficient_or_zero(&self, k: i64) -> T {
        if k < self.off || k >= self.support_end() {
            T::zero(&self.ctx)
        } else {
            self.c[(k - self.off) as usize].clone()
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            ctx: self.ctx.clone(),
            off: self.off,
            prec: self.prec,
            c: self.c.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Series {
            ctx: self.ctx.clone(),
            off: self.off,
            prec: self.prec,
            c: self.c.iter().map(|v| v.mul(s)).collect(),
        }
    }

    /// Multiplication by μ^k (window shifts with the content).
    pub fn shift(&self, k: i64) -> Self {
        Series {
            ctx: self.ctx.clone(),
            off: self.off + k,
            prec: self.prec + k,
            c: self.c.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // The factors' unknown tails pollute exponents ≥ min of the two
        // cross sums; their known-zero floors keep everything below off+off
        // exactly zero.
        let a = self.normalized();
        let b = rhs.normalized();
        let prec = (a.prec + b.off).min(b.prec + a.off);
        let off = (a.off + b.off).min(prec);
        let end = (a.support_end() + b.support_end())
            .saturating_sub(1)
            .clamp(off, prec);
        let mut c = vec![T::zero(&self.ctx); (end - off) as usize];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                let k = a.off + i as i64 + b.off + j as i64;
                if k >= end {
                    break;
                }
                let idx = (k - off) as usize;
                c[idx] = c[idx].add(&x.mul(y));
            }
        }
        Series { ctx: self.ctx.clone(), off, prec, c }
    }

    /// Multiplicative inverse: requires the lowest known coefficient to be
    /// a unit.  `DivisionByZero` when the series is zero to precision; the
    /// base ring's error (e.g. `ZeroDivisor`) when the lead is not a unit.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        let a = self.normalized();
        let v = match a.valuation() {
            Some(v) => v,
            None => return Err(AlgebraError::DivisionByZero),
        };
        let lead_inv = a.c[0].invert()?;
        let rel = (a.prec - v).min(INVERT_REL_CAP);
        // b = inverse of the unit part u = Σ a_{v+i} μ^i:
        // b_0 = 1/a_v, b_k = −(1/a_v) Σ_{i=1..k} a_{v+i} b_{k−i}
        let mut b = vec![T::zero(&self.ctx); rel as usize];
        b[0] = lead_inv.clone();
        for k in 1..rel as usize {
            let mut acc = T::zero(&self.ctx);
            for i in 1..=k {
                let ai = if (i as i64) < a.c.len() as i64 {
                    a.c[i].clone()
                } else {
                    T::zero(&self.ctx)
                };
                if !ai.is_zero() {
                    acc = acc.add(&ai.mul(&b[k - i]));
                }
            }
            b[k] = acc.mul(&lead_inv).neg();
        }
        Ok(Series { ctx: self.ctx.clone(), off: -v, prec: -v + rel, c: b })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&rhs.invert()?))
    }

    /// Term-wise derivative d/dμ.
    pub fn derivative(&self) -> Self {
        let mut c = Vec::with_capacity(self.c.len());
        for (i, v) in self.c.iter().enumerate() {
            let k = self.off + i as i64;
            c.push(v.mul(&T::from_i64(&self.ctx, k)));
        }
        Series { ctx: self.ctx.clone(), off: self.off - 1, prec: self.prec - 1, c }
    }

    /// Logarithmic derivative (d/dμ) / self.
    pub fn dlog(&self) -> Result<Self, AlgebraError> {
        self.derivative().div(self)
    }

    /// Evaluates a polynomial with coefficients `coeffs` (ascending) at
    /// this series, by Horner.  Coefficients are treated as exactly known.
    pub fn eval_poly(&self, coeffs: &[T]) -> Self {
        const EXACT: i64 = 1 << 40;
        let mut acc = Series::zero(&self.ctx, EXACT, EXACT);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Series::constant(&self.ctx, c.clone(), EXACT));
        }
        acc
    }
}
