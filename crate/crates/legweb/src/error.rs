//! Error types shared across the crate.
//!
//! Each module surfaces failures through one of these enums; all are plain
//! data (no sources to chase) so they can cross thread boundaries freely.

use thiserror::Error;

/// Errors from the exact-arithmetic substrate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    /// Division by the zero element of a field or ring.
    #[error("division by zero")]
    DivisionByZero,
    /// Inversion hit a zero divisor of an étale (reducible-modulus) quotient.
    /// The modulus factors; callers that can split should use
    /// [`crate::algebra::try_invert_split`] to recover the witness factor.
    #[error("zero divisor modulo a reducible modulus")]
    ZeroDivisor,
    /// A would-be number-field modulus has a repeated root.
    #[error("modulus is not squarefree")]
    NotSquarefree,
    /// Degree outside the supported range (field moduli allow 1..=8; form
    /// homogenization needs the target degree to dominate).
    #[error("degree {0} out of supported range")]
    DegreeOutOfRange(usize),
    /// Exact polynomial division left a nonzero remainder.
    #[error("polynomial division left a remainder")]
    NotDivisible,
    /// A form-level operation received a non-homogeneous polynomial.
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    /// A number literal failed to parse.
    #[error("malformed number literal: {0:?}")]
    Malformed(String),
    /// `sum_over_roots` needs the denominator coprime to the root polynomial.
    #[error("denominator shares a root with the summation polynomial")]
    NotCoprime,
    /// Mixing elements of structurally different fields or rings.
    #[error("operands belong to different fields")]
    FieldMismatch,
}

/// Errors from foliation-level analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoliationError {
    /// A and B share a nonconstant factor even after saturation.
    #[error("defining forms have a common factor")]
    NotSaturated,
    /// The Gauss map is constant; critical-point analysis is meaningless.
    #[error("degenerate (constant) Gauss map")]
    DegenerateGauss,
    /// A critical point lies in an unsplit extension of the working field.
    #[error("critical point not resolved over the working field")]
    UnresolvedCriticalPoint,
    /// A linear change of coordinates must be invertible.
    #[error("singular coordinate-change matrix")]
    SingularMatrix,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors from the exact flatness criteria.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriterionError {
    /// A closed-form criterion was invoked outside its hypotheses.
    #[error("criterion hypotheses violated: {0}")]
    HypothesisViolated(String),
    /// The line's source point lies in a fiber where only the polar-part
    /// engine applies.
    #[error("line anchor lies in the fiber")]
    AnchorInFiber,
    /// A fiber-sum term has a vanishing denominator: the line's dual point
    /// meets the component in an unhandled configuration.
    #[error("vanishing denominator in a fiber-sum term")]
    ZeroDenominator,
    /// A Gauss value at infinity reached a finite-chart-only code path.
    #[error("Gauss value at infinity (swap charts first)")]
    GaussValueInfinite,
    /// The symbolic machinery only covers degree-3 foliations (4-webs).
    #[error("unsupported foliation degree {0} (criteria require degree 3)")]
    UnsupportedDegree(usize),
    /// A discriminant component needs more étale layers than the engine
    /// carries (two or more distinct Puiseux clusters on one component).
    #[error("unsupported branch configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors from the floating-point curvature oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    /// Sample too close to the web discriminant; caller should resample.
    #[error("sample point too close to the discriminant")]
    NearDiscriminant,
    /// Branch matching across the finite-difference stencil was ambiguous.
    #[error("root tracking ambiguous across the stencil")]
    RootTrackingFailure,
    /// Too many rejected samples in a row.
    #[error("sampling exhausted after {0} rejections")]
    SamplingExhausted(usize),
    /// Root finding did not converge (degenerate polynomial).
    #[error("polynomial root finding failed")]
    RootFindingFailure,
}

/// Errors from elimination and case assembly.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    /// A resultant vanished identically: positive-dimensional fiber.
    #[error("component collapse: resultant identically zero eliminating {0}")]
    ComponentCollapse(String),
    /// Intermediate degree exceeded the configured bound.
    #[error("degree explosion: {0} exceeds bound {1}")]
    DegreeExplosion(usize, usize),
    /// Case id outside the supported set.
    #[error("unknown case id {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors from catalog parsing and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    /// Structural JSON problem, with entry/field locus.
    #[error("catalog parse error at {locus}: {message}")]
    ParseError { locus: String, message: String },
    /// An entry violates one of its declared exact constraints.
    #[error("catalog entry {id}: constraint violated: {constraint}")]
    ConstraintViolated { id: String, constraint: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
}
