//! Exact sums of a rational function over the roots of a polynomial.
//!
//! `Σ g(β)/h(β)` over the roots β of `f` (with multiplicity) equals the
//! trace of multiplication by `g·h⁻¹` on the quotient algebra `K[Z]/(f)`.
//! That trace is computed without ever touching a root: the traces of the
//! basis powers `Z^k` are the power sums of the roots, which Newton's
//! identities produce from the coefficients of `f`.  Everything stays in
//! the coefficient field, and the roots may live in any extension —
//! including ones that don't split — without affecting the result.

use super::numberfield::egcd;
use super::unipoly::UniPoly;
use super::Scalar;
use crate::error::AlgebraError;

/// Power sums `p_0 .. p_{count-1}` of the roots of monic `f` (with
/// multiplicity), by Newton's identities.
fn power_sums<T: Scalar>(f: &UniPoly<T>, count: usize) -> Vec<T> {
    let ctx = f.ctx().clone();
    let n = f.degree_or0();
    let mut p = Vec::with_capacity(count);
    if count == 0 {
        return p;
    }
    p.push(T::from_i64(&ctx, n as i64));
    for k in 1..count {
        // p_k + Σ_{i=1..k-1} a_{n-i} p_{k-i} + k·a_{n-k} = 0,  a_j = coeff(j)
        let mut acc = if k <= n {
            f.coeff(n - k).mul(&T::from_i64(&ctx, k as i64))
        } else {
            T::zero(&ctx)
        };
        for i in 1..k {
            if i <= n {
                acc = acc.add(&f.coeff(n - i).mul(&p[k - i]));
            }
        }
        p.push(acc.neg());
    }
    p
}

/// `Σ g(β)/h(β)` over all roots β of `f`, counted with multiplicity.
///
/// Errors: `NotCoprime` when `h` shares a root with `f` (the sum has a
/// pole), `DivisionByZero` for `h = 0`; zero-divisor failures propagate
/// when the coefficients live in a reducible étale quotient.  A constant
/// (or zero) `f` has no roots: the empty sum is zero.
pub fn sum_over_roots<T: Scalar>(
    f: &UniPoly<T>,
    g: &UniPoly<T>,
    h: &UniPoly<T>,
) -> Result<T, AlgebraError> {
    let ctx = f.ctx().clone();
    if h.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    let n = match f.degree() {
        None | Some(0) => return Ok(T::zero(&ctx)),
        Some(n) => n,
    };
    let fm = f.clone().into_monic()?;
    let (_, hr) = h.divrem(&fm)?;
    let (gcd, s, _) = egcd(&hr, &fm)?;
    if !gcd.is_constant() {
        return Err(AlgebraError::NotCoprime);
    }
    // s·h ≡ 1 (mod f) after egcd's monic normalization of the gcd
    let (_, e) = g.mul(&s).divrem(&fm)?;
    let p = power_sums(&fm, n);
    let mut acc = T::zero(&ctx);
    for (k, ek) in e.coeffs().iter().enumerate() {
        acc = acc.add(&ek.mul(&p[k]));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rat_i64, Rat};

    fn qpoly(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_coeffs(&(), coeffs.iter().map(|&n| rat_i64(n)).collect())
    }

    #[test]
    fn power_sums_match_known_roots() {
        // roots 1, 2: p = [2, 3, 5, 9]
        let f = qpoly(&[2, -3, 1]);
        assert_eq!(power_sums(&f, 4), vec![rat_i64(2), rat_i64(3), rat_i64(5), rat_i64(9)]);
    }

    #[test]
    fn sums_over_simple_roots() {
        let f = qpoly(&[2, -3, 1]); // roots 1, 2
        let one = qpoly(&[1]);
        let z = qpoly(&[0, 1]);
        // Σ β = 3, Σ 1/β = 3/2
        assert_eq!(sum_over_roots(&f, &z, &one).unwrap(), rat_i64(3));
        assert_eq!(sum_over_roots(&f, &one, &z).unwrap(), rat(3, 2));
        // Σ β over roots of Z² − 2 is 0
        assert_eq!(sum_over_roots(&qpoly(&[-2, 0, 1]), &z, &one).unwrap(), rat_i64(0));
    }

    #[test]
    fn multiplicity_counts() {
        // (Z−1)²: Σ 1/β = 2
        let f = qpoly(&[1, -2, 1]);
        assert_eq!(
            sum_over_roots(&f, &qpoly(&[1]), &qpoly(&[0, 1])).unwrap(),
            rat_i64(2)
        );
    }

    #[test]
    fn pole_on_a_root_is_rejected() {
        let f = qpoly(&[0, -3, 1]); // Z(Z − 3): h = Z shares the root 0
        let r = sum_over_roots(&f, &qpoly(&[1]), &qpoly(&[0, 1]));
        assert_eq!(r, Err(AlgebraError::NotCoprime));
        let z = sum_over_roots(&f, &qpoly(&[1]), &qpoly(&[]));
        assert_eq!(z, Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn nonmonic_and_shifted_rational_function() {
        // f = 2Z² − 2 (roots ±1), Σ (β+3)/(β+2): 4/3 + 2/1 = 10/3
        let f = qpoly(&[-2, 0, 2]);
        let g = qpoly(&[3, 1]);
        let h = qpoly(&[2, 1]);
        assert_eq!(sum_over_roots(&f, &g, &h).unwrap(), rat(10, 3));
    }

    #[test]
    fn constant_f_has_no_roots() {
        assert_eq!(
            sum_over_roots(&qpoly(&[7]), &qpoly(&[1]), &qpoly(&[1])).unwrap(),
            rat_i64(0)
        );
    }
}
