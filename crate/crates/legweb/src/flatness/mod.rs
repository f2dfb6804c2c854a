//! Exact flatness decision for the dual 4-web of a pre-foliation.
//!
//! The discriminant of the dual web is a union of lines, one per value the
//! Gauss map takes at a critical direction (plus, possibly, the line dual to
//! the pencil base point).  Flatness is equivalent to the web's curvature
//! extending holomorphically over each such component, and that holonomy
//! reduces, component by component, to one of a handful of closed-form
//! residue conditions — or, in the one genuinely analytic configuration, to
//! the vanishing of the polar part of the curvature along the component,
//! computed exactly on Laurent/Puiseux series.
//!
//! * [`pq`] — the local form pair `(P, Q)` underlying every closed-form
//!   criterion;
//! * [`criteria`] — the residue criteria, the component dispatch, and
//!   [`criteria::decide_flat`];
//! * [`polar`] — the series engine for components where no closed-form
//!   criterion applies.

pub mod criteria;
pub mod polar;
pub mod pq;

pub use criteria::{
    criterion_dl_in_fiber, criterion_dl_noncritical, criterion_sum, criterion_t,
    criterion_transverse_line, decide_flat, CriterionKind, CriterionReport, Flatness,
    FlatnessVerdict,
};
pub use pq::{build_p, build_pq, build_q, PQPair, WeightRule};
