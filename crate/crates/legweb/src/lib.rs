//! Exact and numeric flatness analysis for Legendre-dual 4-webs of
//! homogeneous pre-foliations on the complex projective plane.
//!
//! A *homogeneous foliation* of degree `d` is given by a 1-form
//! `ω_H = A dx + B dy` with `A`, `B` coprime binary forms of degree `d`; a
//! *pre-foliation* of co-degree 1 pairs it with a line through the origin (or
//! the line at infinity), `ω = (αx + βy) ω_H`.  Its Legendre transform is a
//! 4-web on the dual plane — three web members from the tangency slopes of
//! `H`, one from the pencil of lines dual to `ℓ` — and this crate decides
//! whether that web is *flat* (identically vanishing Blaschke curvature).
//!
//! Two independent verification pillars:
//!
//! * **exact** — number-field arithmetic, holomorphy criteria along each
//!   discriminant component, and an exact Laurent/Puiseux polar-part engine
//!   ([`flatness`]);
//! * **numeric** — floating-point curvature sampling of the dual web by
//!   implicit slope extraction and finite differences ([`numweb`]).
//!
//! On top of those sit a machine-readable [`catalog`] of flat pre-foliations
//! (verified by both pillars), and a small resultant-based [`solve`] module
//! that re-derives the parameter loci of the catalog families from the
//! criteria themselves.
//!
//! The [`exec`] module routes embarrassingly-parallel batch work (catalog
//! rows, curvature samples) through rayon when the `parallel` feature is
//! enabled (the default); everything degrades to sequential execution
//! without it.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod flatness;
pub mod foliation;
pub mod numweb;

pub use error::{AlgebraError, CatalogError, CriterionError, FoliationError, NumericError, SolveError};
