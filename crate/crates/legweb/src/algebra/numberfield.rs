//! Small number fields `Q[ζ]/(m)` and their elements.
//!
//! A [`NumberField`] is described by a squarefree modulus; irreducibility is
//! *not* required — the quotient is used as an étale algebra, and inversion
//! surfaces [`AlgebraError::ZeroDivisor`] lazily when a reducible modulus is
//! hit.  [`try_invert_split`] additionally hands back the witness factor so
//! the solver can split the modulus and retry per factor.
//!
//! Elements ([`AlgebraicNumber`]) are coordinate vectors in the power basis
//! `1, ζ, ζ², …`; all arithmetic happens modulo the monic-normalized modulus.
//! Elements of different fields never mix, except that a degree-1 field
//! (canonically [`nf_rational`]) coerces into anything.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::rat::{rat_i64, Rat};
use super::roots::complex_roots;
use super::unipoly::UniPoly;
use super::Scalar;
use crate::error::AlgebraError;

/// Field descriptor.  Equality compares the monic modulus, so two
/// independently built descriptors of the same field are interchangeable.
pub struct NumberField {
    /// Monic squarefree modulus, ascending coefficients.
    minpoly: UniPoly<Rat>,
    /// As supplied by the caller (for display: `3Z² − 3Z + 1` is nicer than
    /// its monic normalization).
    given: UniPoly<Rat>,
    label: String,
    degree: usize,
    roots: OnceLock<Vec<Complex64>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}
impl Eq for NumberField {}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumberField({}: {})", self.label, self.given.render("Z"))
    }
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic modulus (ascending coefficients).
    pub fn minpoly(&self) -> &UniPoly<Rat> {
        &self.minpoly
    }

    /// Modulus as originally supplied (not necessarily monic).
    pub fn minpoly_as_given(&self) -> &UniPoly<Rat> {
        &self.given
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// Complex roots of the modulus, sorted by (real, imaginary) part —
    /// the canonical embedding order.  Computed once, then cached.
    pub fn embedding_roots(&self) -> &[Complex64] {
        self.roots.get_or_init(|| {
            let coeffs: Vec<Complex64> = self
                .minpoly
                .coeffs()
                .iter()
                .map(|r| Complex64::new(rat_to_f64(r), 0.0))
                .collect();
            let mut rs = complex_roots(&coeffs);
            rs.sort_by(|a, b| {
                (a.re, a.im)
                    .partial_cmp(&(b.re, b.im))
                    .expect("root coordinates are finite")
            });
            rs
        })
    }
}

/// Best-effort float value of a rational (plenty for embeddings of the
/// small moduli used here).
pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("rational out of f64 range")
}

fn build_field(minpoly: UniPoly<Rat>, label: &str) -> Result<Arc<NumberField>, AlgebraError> {
    let degree = match minpoly.degree() {
        None | Some(0) => return Err(AlgebraError::DegreeOutOfRange(0)),
        Some(d) => d,
    };
    let monic = minpoly.clone().into_monic()?;
    if !monic.is_squarefree()? {
        return Err(AlgebraError::NotSquarefree);
    }
    let label = if label.is_empty() {
        format!("Q[Z]/({})", minpoly.render("Z"))
    } else {
        label.to_string()
    };
    Ok(Arc::new(NumberField {
        minpoly: monic,
        given: minpoly,
        label,
        degree,
        roots: OnceLock::new(),
    }))
}

/// Builds the field `Q[Z]/(m)` for squarefree `m` of degree 1..=8.
pub fn nf_make(minpoly: UniPoly<Rat>, label: &str) -> Result<Arc<NumberField>, AlgebraError> {
    let degree = minpoly.degree().unwrap_or(0);
    if !(1..=8).contains(&degree) {
        return Err(AlgebraError::DegreeOutOfRange(degree));
    }
    build_field(minpoly, label)
}

/// Like [`nf_make`] without the degree cap — for internally constructed
/// étale moduli (iterated-resultant eliminants), which may exceed degree 8
/// before splitting.
pub fn nf_make_unbounded(minpoly: UniPoly<Rat>, label: &str) -> Result<Arc<NumberField>, AlgebraError> {
    build_field(minpoly, label)
}

/// The canonical degree-1 field (`Q[Z]/(Z)`, ζ = 0): plain rationals.
pub fn nf_rational() -> Arc<NumberField> {
    static QQ: OnceLock<Arc<NumberField>> = OnceLock::new();
    QQ.get_or_init(|| {
        build_field(UniPoly::from_coeffs(&(), vec![Rat::zero(&()), Rat::one(&())]), "Q")
            .expect("Z is squarefree")
    })
    .clone()
}

/// Element of a [`NumberField`] in the power basis.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    /// Length = field degree.
    coords: Vec<Rat>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field {
            // Degree-1 elements are plain rationals: compare across fields.
            if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
                return a == b;
            }
            return false;
        }
        self.coords == other.coords
    }
}

impl std::fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl AlgebraicNumber {
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate vector length");
        AlgebraicNumber { field: field.clone(), coords }
    }

    pub fn from_rat(field: &Arc<NumberField>, value: Rat) -> Self {
        let mut coords = vec![Rat::zero(&()); field.degree()];
        coords[0] = value;
        AlgebraicNumber { field: field.clone(), coords }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rat(field, rat_i64(n))
    }

    /// The generator ζ of the field (zero in a degree-1 field, where the
    /// modulus is `Z`).
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree() == 1 {
            // ζ is the unique root of the degree-1 monic modulus Z + c.
            let c = field.minpoly().coeff(0);
            return Self::from_rat(field, c.neg());
        }
        let mut coords = vec![Rat::zero(&()); field.degree()];
        coords[1] = Rat::one(&());
        AlgebraicNumber { field: field.clone(), coords }
    }

    /// Reduces an arbitrary-degree polynomial in ζ into the power basis.
    pub fn from_polynomial(field: &Arc<NumberField>, poly: &UniPoly<Rat>) -> Self {
        let (_, rem) = poly.divrem(field.minpoly()).expect("monic modulus");
        let mut coords = vec![Rat::zero(&()); field.degree()];
        for (k, c) in rem.coeffs().iter().enumerate() {
            coords[k] = c.clone();
        }
        AlgebraicNumber { field: field.clone(), coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// The element as a rational, when it is one (degree-1 field, or all
    /// higher coordinates zero).
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Lift into `Q[Z]` (degree < field degree).
    pub fn lift(&self) -> UniPoly<Rat> {
        UniPoly::from_coeffs(&(), self.coords.clone())
    }

    /// Re-expresses the element in `other` when legal: same field, or this
    /// element is rational.
    pub fn coerce(&self, other: &Arc<NumberField>) -> Result<Self, AlgebraError> {
        if &self.field == other {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(r) => Ok(Self::from_rat(other, r)),
            None => Err(AlgebraError::FieldMismatch),
        }
    }

    fn same_field(&self, rhs: &Self) -> (Self, Self) {
        if self.field == rhs.field {
            return (self.clone(), rhs.clone());
        }
        if self.field.degree() == 1 {
            let v = self.coords[0].clone();
            return (Self::from_rat(&rhs.field, v), rhs.clone());
        }
        if rhs.field.degree() == 1 {
            let v = rhs.coords[0].clone();
            return (self.clone(), Self::from_rat(&self.field, v));
        }
        panic!(
            "cannot combine elements of different fields: {} vs {}",
            self.field.label(),
            rhs.field.label()
        );
    }
}

impl Scalar for AlgebraicNumber {
    type Ctx = Arc<NumberField>;

    fn ctx(&self) -> Self::Ctx {
        self.field.clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_rat(ctx, Rat::zero(&()))
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_rat(ctx, Rat::one(&()))
    }
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, n)
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = self.same_field(rhs);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        AlgebraicNumber { field: a.field, coords }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let (a, b) = self.same_field(rhs);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        AlgebraicNumber { field: a.field, coords }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.same_field(rhs);
        let prod = a.lift().mul(&b.lift());
        Self::from_polynomial(&a.field, &prod)
    }
    fn neg(&self) -> Self {
        AlgebraicNumber { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
    fn invert(&self) -> Result<Self, AlgebraError> {
        alg_invert(self)
    }
    fn render(&self) -> String {
        if self.field.degree() == 1 {
            return Scalar::render(&self.coords[0]);
        }
        self.lift().render("ζ")
    }
}

/// Extended Euclid in `Q[Z]` (or any field-coefficient polynomials):
/// returns `(g, s, t)` with `s·a + t·b = g`, `g` monic (or zero).
pub(crate) fn egcd<T: Scalar>(
    a: &UniPoly<T>,
    b: &UniPoly<T>,
) -> Result<(UniPoly<T>, UniPoly<T>, UniPoly<T>), AlgebraError> {
    let ctx = a.ctx().clone();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (
        UniPoly::constant(&ctx, T::one(&ctx)),
        UniPoly::zero(&ctx),
    );
    let (mut t0, mut t1) = (
        UniPoly::zero(&ctx),
        UniPoly::constant(&ctx, T::one(&ctx)),
    );
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    if r0.is_zero() {
        return Ok((r0, s0, t0));
    }
    let lead_inv = r0.leading().invert()?;
    let scale = |p: UniPoly<T>| p.scale(&lead_inv);
    Ok((scale(r0), scale(s0), scale(t0)))
}

/// Multiplicative inverse in the quotient.  `ZeroDivisor` when a reducible
/// modulus is hit (gcd of the lift with the modulus is a proper factor).
pub fn alg_invert(u: &AlgebraicNumber) -> Result<AlgebraicNumber, AlgebraError> {
    match try_invert_split(u) {
        Ok(v) => Ok(v),
        Err(Some(_)) => Err(AlgebraError::ZeroDivisor),
        Err(None) => Err(AlgebraError::DivisionByZero),
    }
}

/// Inversion that reports *why* it failed: `Err(None)` for zero,
/// `Err(Some(factor))` with a monic proper factor of the modulus when `u`
/// is a zero divisor — the solver splits the field there and retries.
pub fn try_invert_split(
    u: &AlgebraicNumber,
) -> Result<AlgebraicNumber, Option<UniPoly<Rat>>> {
    if Scalar::is_zero(u) {
        return Err(None);
    }
    let m = u.field.minpoly();
    let (g, s, _) = egcd(&u.lift(), m).expect("rational arithmetic cannot fail");
    if g.is_constant() {
        // s·u ≡ g (mod m) with g = 1 after monic normalization
        Ok(AlgebraicNumber::from_polynomial(&u.field, &s))
    } else {
        Err(Some(g))
    }
}

/// Numeric image of `u` under the embedding sending ζ to the
/// `root_index`-th canonical root of the modulus.  Accuracy saturates at
/// f64 (~1e−15 relative); `precision` beyond that is accepted but cannot
/// tighten the result.
pub fn embed(u: &AlgebraicNumber, root_index: usize, _precision: u32) -> Complex64 {
    let roots = u.field.embedding_roots();
    assert!(
        root_index < roots.len(),
        "root index {root_index} out of range for degree {}",
        u.field.degree()
    );
    let z = roots[root_index];
    let mut acc = Complex64::new(0.0, 0.0);
    for c in u.coords.iter().rev() {
        acc = acc * z + Complex64::new(rat_to_f64(c), 0.0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn qpoly(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_coeffs(&(), coeffs.iter().map(|&n| rat_i64(n)).collect())
    }

    #[test]
    fn nf_make_validates() {
        assert!(nf_make(qpoly(&[-6, 0, 1]), "sqrt6").is_ok());
        assert!(nf_make(qpoly(&[1, -3, 3]), "").is_ok());
        // (Z-1)^2 is not squarefree
        assert_eq!(nf_make(qpoly(&[1, -2, 1]), ""), Err(AlgebraError::NotSquarefree));
        assert_eq!(nf_make(qpoly(&[7]), ""), Err(AlgebraError::DegreeOutOfRange(0)));
    }

    #[test]
    fn inversion_in_quadratic_field() {
        // (1+ζ)⁻¹ = (−1+ζ)/5 in Q[ζ]/(ζ²−6), since (1+ζ)(−1+ζ) = ζ²−1 = 5
        let f = nf_make(qpoly(&[-6, 0, 1]), "sqrt6").unwrap();
        let u = AlgebraicNumber::from_coords(&f, vec![rat_i64(1), rat_i64(1)]);
        let inv = alg_invert(&u).unwrap();
        assert_eq!(inv.coords(), &[rat(-1, 5), rat(1, 5)]);
        assert_eq!(u.mul(&inv), AlgebraicNumber::one(&f));
    }

    #[test]
    fn zero_divisor_surfaces_with_witness() {
        // ζ − 1 divides ζ² − 3ζ + 2 = (ζ−1)(ζ−2)
        let f = nf_make(qpoly(&[2, -3, 1]), "").unwrap();
        let u = AlgebraicNumber::from_coords(&f, vec![rat_i64(-1), rat_i64(1)]);
        assert_eq!(alg_invert(&u), Err(AlgebraError::ZeroDivisor));
        let witness = try_invert_split(&u).unwrap_err().unwrap();
        assert_eq!(witness, qpoly(&[-1, 1]));
    }

    #[test]
    fn rational_field_coercion() {
        let q = nf_rational();
        let two = AlgebraicNumber::from_int(&q, 2);
        assert_eq!(alg_invert(&two).unwrap().as_rational().unwrap(), rat(1, 2));
        // 2 (in Q) combines with elements of a quadratic field
        let f = nf_make(qpoly(&[-6, 0, 1]), "sqrt6").unwrap();
        let z = AlgebraicNumber::generator(&f);
        let sum = two.add(&z);
        assert_eq!(sum.coords(), &[rat_i64(2), rat_i64(1)]);
        assert_eq!(two, AlgebraicNumber::from_int(&f, 2));
    }

    #[test]
    fn embedding_orders_roots_canonically() {
        // ζ² − 6: roots −√6 < √6, so index 1 is +2.449...
        let f = nf_make(qpoly(&[-6, 0, 1]), "sqrt6").unwrap();
        let z = AlgebraicNumber::generator(&f);
        let v = embed(&z, 1, 15);
        assert!((v.re - 2.449489742783178).abs() < 1e-12 && v.im.abs() < 1e-12);
        // 3ζ² − 3ζ + 1: roots (3 ± i√3)/6, index 0 has negative imaginary part
        let g = nf_make(qpoly(&[1, -3, 3]), "").unwrap();
        let w = embed(&AlgebraicNumber::generator(&g), 0, 15);
        assert!((w.re - 0.5).abs() < 1e-12);
        assert!((w.im + 0.28867513459481287).abs() < 1e-12);
    }

    #[test]
    fn generator_of_degree_one_field_is_its_root() {
        // Q[Z]/(Z − 5): ζ = 5
        let f = nf_make(qpoly(&[-5, 1]), "").unwrap();
        let z = AlgebraicNumber::generator(&f);
        assert_eq!(z.as_rational().unwrap(), rat_i64(5));
    }
}
