//! Exact invariants of superisolated surface singularities.
//!
//! A superisolated surface singularity is governed by its tangent cone, a
//! reduced projective plane curve of degree d together with the topological
//! types of its singular points. Everything this crate computes — Milnor
//! numbers, characteristic and Jordan polynomials of the monodromy,
//! resolution and plumbing graphs, canonical cycles, topological zeta
//! functions and their poles, Seiberg-Witten invariants and the associated
//! conjecture checks — is derived from that combinatorial input with exact
//! rational arithmetic throughout. There is no floating-point mode.
//!
//! The layers, bottom up:
//!
//! - [`algebra`]: rationals, sparse polynomials, products of (t^n - 1),
//!   truncated series, fractional spectra.
//! - [`branch`]: one irreducible plane-curve germ given by characteristic
//!   exponents — semigroup, delta, Milnor number, local Alexander
//!   polynomial, multiplicity sequence.
//! - [`resolution`]: minimal embedded resolution of a branch by simulated
//!   point blow-ups with proximity bookkeeping, and its numerical data.
//! - [`curve`]: the global curve model (components, singular points,
//!   validation, Euler characteristics).
//! - [`plumbing`]: resolution graphs of the surface singularity and link
//!   invariants (determinant, canonical cycle, Z_K^2 + s).
//! - [`monodromy`]: characteristic/Jordan polynomials, monodromy zeta
//!   functions, spectra, Milnor numbers of the 3-fold germ.
//! - [`zeta`]: the local topological zeta function, pole extraction and
//!   the monodromy conjecture checker.
//! - [`swcp`]: the Seiberg-Witten invariant by two independent routes,
//!   R(t), the coefficient bounds, the semigroup distribution identity and
//!   a candidate enumerator.

pub mod algebra;
pub mod branch;
pub mod curve;
pub mod error;
pub mod monodromy;
pub mod plumbing;
pub mod resolution;
pub mod swcp;
pub mod zeta;

pub use algebra::{CycloProduct, Poly, Rat, Series, SpectrumPoly};
pub use branch::{BranchData, LocalInvariants, Semigroup};
pub use curve::{CurveSpec, ExplicitLocal, LocalGerm, SingularPoint, ValidationReport};
pub use error::{Error, Result};
pub use monodromy::JordanReport;
pub use plumbing::{Cycle, PlumbingGraph};
pub use resolution::LocalResolution;
pub use swcp::{CPReport, CuspCollection, SWReport};
pub use zeta::{PoleReport, ZetaFn};
