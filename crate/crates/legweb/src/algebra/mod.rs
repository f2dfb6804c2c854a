//! Exact arithmetic substrate: rationals, small number fields, univariate and
//! bivariate polynomials, resultants, étale extensions, truncated Laurent
//! series, and trace-form sums over roots.
//!
//! Everything downstream (foliation analysis, flatness criteria, the solver)
//! computes over these types; no floating point enters except through
//! [`embed`] and the root-isolation helpers, whose results are always
//! verified or consumed by the independent numeric pillar.

mod bipoly;
mod ext;
mod numberfield;
mod rat;
mod roots;
mod series;
mod sums;
mod unipoly;

pub use bipoly::BiPoly;
pub use ext::{Ext, ExtElem};
pub use numberfield::{
    alg_invert, embed, nf_make, nf_make_unbounded, nf_rational, try_invert_split, AlgebraicNumber,
    NumberField,
};
pub use rat::{rat, rat_from_str, rat_i64, rat_to_string, Rat};
pub use roots::{
    binary_form_roots, complex_roots, rat_from_f64_bounded, roots_in_field, BinaryRoots, ProjPoint,
};
pub use series::Series;
pub use sums::sum_over_roots;
pub use unipoly::{resultant, UniPoly};

use crate::error::AlgebraError;

/// Common interface of every coefficient domain in the crate.
///
/// A scalar carries a *context* (`Ctx`) identifying the ring it lives in —
/// `()` for rationals, the field descriptor for algebraic numbers, the tower
/// descriptor for étale extensions — so that generic polynomial and series
/// code can manufacture constants of the right ring.  All operations are
/// pure; values are immutable.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    /// Ring descriptor; equal contexts mean compatible elements.
    type Ctx: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse.  Fails with [`AlgebraError::DivisionByZero`]
    /// on zero and [`AlgebraError::ZeroDivisor`] on zero divisors of étale
    /// (reducible-modulus) rings.
    fn invert(&self) -> Result<Self, AlgebraError>;

    /// Exact ring division: `self / rhs` when the quotient exists in the
    /// ring, [`AlgebraError::NotDivisible`] otherwise.  Field scalars divide
    /// through [`Scalar::invert`].
    fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        rhs.invert().map(|inv| self.mul(&inv))
    }

    /// Human-readable rendering for reports and error messages.
    fn render(&self) -> String;
}
