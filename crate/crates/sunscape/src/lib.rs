//! Critical-point analysis of the trace-fidelity landscape on SU(N).
//!
//! The landscape is `G(S) = Re tr(A† S)` for a fixed target gate `A`,
//! restricted to the special unitary group sitting inside U(N) as the zero
//! level set of a determinant-phase chart. This crate provides:
//!
//! - [`embedded`]: a generic embedded-gradient engine for functions
//!   restricted to level sets of constraints, with Lagrange-multiplier
//!   solves and a restricted Hessian quadratic form;
//! - [`geometry`]: SU(N) as an embedded manifold — the bi-invariant metric,
//!   the determinant chart and its gradient/Hessian, geodesic steps,
//!   orthonormal Lie-algebra bases, and uniform random sampling;
//! - [`landscape`]: the fidelity function, its SU(N) gradient, criticality
//!   tests, Hessian spectra, and critical-point classification;
//! - [`catalog`]: closed-form enumeration of every critical-point family,
//!   materialization to explicit matrices, matching, and the trap report
//!   (non-global local extrema exist exactly when N >= 5);
//! - [`optimizer`]: geodesic gradient ascent/descent with Armijo
//!   backtracking and catalog matching of the converged point;
//! - [`verifier`]: independent finite-difference and sampling oracles;
//! - [`io`]: JSON readers/writers for matrices and validated inputs.

pub mod catalog;
pub mod embedded;
pub mod error;
pub mod geometry;
pub mod io;
pub mod landscape;
pub mod matrix;
pub mod optimizer;
pub mod verifier;

pub use catalog::{enumerate, match_family, trap_report, CriticalFamily};
pub use error::{Error, Result};
pub use geometry::{SpecialUnitaryPoint, SuNBasis, TangentDirection, UnitaryPoint};
pub use landscape::{fidelity_su, CriticalNature, HessianSpectrum, TargetGate};
pub use matrix::{CMatrix, Complex64};
pub use optimizer::{Mode, OptimizeTrace, OptimizerConfig};
