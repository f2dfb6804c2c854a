//! Étale quotient layers `R[w]/(m)` over an arbitrary scalar ring.
//!
//! The polar-part engine works over towers such as
//! `K → K[w]/(w²+w+1) → (…)[γ]/(γ^ν − r)`: each step is one [`Ext`] layer
//! with an [`ExtElem`] element type, so a two-step tower is
//! `ExtElem<ExtElem<AlgebraicNumber>>`.  Moduli need not be irreducible —
//! inversion fails with `ZeroDivisor` exactly when a proper factor is hit,
//! which callers treat as an unsupported configuration (the engine never
//! splits layers the way the solver splits number fields).
//!
//! Invariants: the modulus is monic of degree ≥ 1 over the base ring, and
//! every element's coordinate vector has length = modulus degree.

use std::sync::Arc;

use super::unipoly::UniPoly;
use super::Scalar;
use crate::error::AlgebraError;

/// One quotient layer `base[w]/(modulus)`.
pub struct Ext<T: Scalar> {
    base: T::Ctx,
    /// Monic, degree ≥ 1, ascending coefficients over the base.
    modulus: UniPoly<T>,
    label: String,
}

impl<T: Scalar> PartialEq for Ext<T> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.modulus == other.modulus
    }
}

impl<T: Scalar> std::fmt::Debug for Ext<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ext({}: {})", self.label, self.modulus.render("w"))
    }
}

impl<T: Scalar> Ext<T> {
    /// Builds the layer; the modulus is normalized monic (its leading
    /// coefficient must be invertible in the base).
    pub fn new(modulus: UniPoly<T>, label: &str) -> Result<Arc<Self>, AlgebraError> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(AlgebraError::DegreeOutOfRange(0));
        }
        let base = modulus.ctx().clone();
        let monic = modulus.into_monic()?;
        Ok(Arc::new(Ext { base, modulus: monic, label: label.to_string() }))
    }

    /// Degree-1 layer `base[w]/(w)`: the base itself, wrapped.  Used to keep
    /// tower types uniform when a step is not needed.
    pub fn trivial(base: &T::Ctx, label: &str) -> Arc<Self> {
        let modulus = UniPoly::from_coeffs(base, vec![T::zero(base), T::one(base)]);
        Ext::new(modulus, label).expect("w is a valid modulus")
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus has degree >= 1")
    }

    pub fn modulus(&self) -> &UniPoly<T> {
        &self.modulus
    }

    pub fn base(&self) -> &T::Ctx {
        &self.base
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1 && self.modulus.coeff(0).is_zero()
    }
}

/// Element of an [`Ext`] layer, in the power basis of its generator.
pub struct ExtElem<T: Scalar> {
    ring: Arc<Ext<T>>,
    /// Length = layer degree.
    coords: Vec<T>,
}

impl<T: Scalar> Clone for ExtElem<T> {
    fn clone(&self) -> Self {
        ExtElem { ring: self.ring.clone(), coords: self.coords.clone() }
    }
}

impl<T: Scalar> PartialEq for ExtElem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coords == other.coords
    }
}

impl<T: Scalar> std::fmt::Debug for ExtElem<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", Scalar::render(self))
    }
}

impl<T: Scalar> ExtElem<T> {
    pub fn from_coords(ring: &Arc<Ext<T>>, coords: Vec<T>) -> Self {
        assert_eq!(coords.len(), ring.degree(), "coordinate vector length");
        ExtElem { ring: ring.clone(), coords }
    }

    pub fn from_base(ring: &Arc<Ext<T>>, value: T) -> Self {
        let mut coords = vec![T::zero(ring.base()); ring.degree()];
        coords[0] = value;
        ExtElem { ring: ring.clone(), coords }
    }

    /// The layer generator w (zero in a trivial layer).
    pub fn generator(ring: &Arc<Ext<T>>) -> Self {
        if ring.degree() == 1 {
            let c = ring.modulus().coeff(0);
            return Self::from_base(ring, Scalar::neg(&c));
        }
        let mut coords = vec![T::zero(ring.base()); ring.degree()];
        coords[1] = T::one(ring.base());
        ExtElem { ring: ring.clone(), coords }
    }

    /// Reduces a polynomial in the generator into the power basis.
    pub fn from_polynomial(ring: &Arc<Ext<T>>, poly: &UniPoly<T>) -> Result<Self, AlgebraError> {
        let (_, rem) = poly.divrem(ring.modulus())?;
        let mut coords = vec![T::zero(ring.base()); ring.degree()];
        for (k, c) in rem.coeffs().iter().enumerate() {
            coords[k] = c.clone();
        }
        Ok(ExtElem { ring: ring.clone(), coords })
    }

    pub fn ring(&self) -> &Arc<Ext<T>> {
        &self.ring
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// The base-ring value, when all higher coordinates vanish.
    pub fn as_base(&self) -> Option<T> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Applies a base-ring map coordinate-wise (a ring map on the layer
    /// whenever `f` fixes the modulus coefficients).
    pub fn map_base(&self, f: impl Fn(&T) -> T) -> Self {
        ExtElem { ring: self.ring.clone(), coords: self.coords.iter().map(f).collect() }
    }

    /// The substitution w ↦ scale·w (a ring automorphism whenever it fixes
    /// the modulus, e.g. γ ↦ ζγ on `γ^ν − r` for ζ^ν = 1).
    pub fn scale_generator(&self, scale: &T) -> Self {
        let mut coords = Vec::with_capacity(self.coords.len());
        let mut power = T::one(self.ring.base());
        for c in &self.coords {
            coords.push(c.mul(&power));
            power = power.mul(scale);
        }
        ExtElem { ring: self.ring.clone(), coords }
    }

    fn assert_same_ring(&self, rhs: &Self) {
        assert!(self.ring == rhs.ring, "cannot combine elements of different layers");
    }
}

impl<T: Scalar> Scalar for ExtElem<T> {
    type Ctx = Arc<Ext<T>>;

    fn ctx(&self) -> Self::Ctx {
        self.ring.clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_base(ctx, T::zero(ctx.base()))
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_base(ctx, T::one(ctx.base()))
    }
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_base(ctx, T::from_i64(ctx.base(), n))
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.assert_same_ring(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect();
        ExtElem { ring: self.ring.clone(), coords }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_ring(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.sub(b)).collect();
        ExtElem { ring: self.ring.clone(), coords }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_ring(rhs);
        let lift = |e: &Self| UniPoly::from_coeffs(self.ring.base(), e.coords.clone());
        let prod = lift(self).mul(&lift(rhs));
        Self::from_polynomial(&self.ring, &prod).expect("monic modulus")
    }
    fn neg(&self) -> Self {
        ExtElem { ring: self.ring.clone(), coords: self.coords.iter().map(Scalar::neg).collect() }
    }
    fn invert(&self) -> Result<Self, AlgebraError> {
        if Scalar::is_zero(self) {
            return Err(AlgebraError::DivisionByZero);
        }
        let lift = UniPoly::from_coeffs(self.ring.base(), self.coords.clone());
        let (g, s, _) = super::numberfield::egcd(&lift, self.ring.modulus())?;
        if g.is_constant() {
            Self::from_polynomial(&self.ring, &s)
        } else {
            Err(AlgebraError::ZeroDivisor)
        }
    }
    fn render(&self) -> String {
        if let Some(b) = self.as_base() {
            return b.render();
        }
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let var = self.ring.label();
                match k {
                    0 => format!("({})", c.render()),
                    1 => format!("({})*{var}", c.render()),
                    _ => format!("({})*{var}^{k}", c.render()),
                }
            })
            .collect();
        terms.join(" + ")
    }
}
