//! Bound states of the hypercentral Schrödinger equation in D dimensions.
//!
//! The D-dimensional problem with a potential V(r) depending only on the
//! hyperradius separates in hyperspherical coordinates and reduces, via
//! u(r) = r^{(D-1)/2} R(r), to a one-dimensional radial equation
//!
//! ```text
//!   -1/2 u'' + [ V(r) + L(L+1)/(2 r^2) ] u = E u,    L = l + (D-3)/2
//! ```
//!
//! in ħ = m = 1 units. This crate provides:
//!
//! - [`reduction`]: the dimensional bookkeeping (grand orbital number L,
//!   centrifugal and fictitious coefficients, the effective potential, the
//!   reduced-wavefunction transform).
//! - [`potentials`]: tagged analytic potential families and their
//!   classification by the limit of r²V(r) at the origin (regular,
//!   soft-singular, singular).
//! - [`asymptotics`]: near-origin Frobenius exponents, the parameter
//!   P = sqrt((L+1/2)² - 2V₀), the extra-solution condition, and the
//!   competing admissibility bounds on the origin exponent.
//! - [`solver`]: Numerov shooting with node-count bracketing for bound-state
//!   spectra under Dirichlet or one-parameter mixed (self-adjoint extension)
//!   boundary data, plus an independent finite-difference oracle.
//! - [`diagnostics`]: numerical verification of the distributional Laplacian
//!   identity, probability-flux scaling at the origin, and interdimensional
//!   degeneracy of spectra sharing D + 2l.

pub mod asymptotics;
pub mod diagnostics;
pub mod potentials;
pub mod reduction;
pub mod solver;

pub use asymptotics::{
    admissibility_bound, extra_solution_threshold, indicial_report, series_start,
    AdmissibilityBound, AdmissibilityCriterion, IndicialReport, OriginVerdict, SeriesBranch,
};
pub use diagnostics::{
    degeneracy_check, delta_identity_check, flux_scaling, origin_exponent, unit_sphere_area,
    DegeneracyReport, DeltaCheckResult, FluxScaling, FluxVerdict, TestFunction,
};
pub use potentials::{Potential, PotentialClass, PotentialTerm};
pub use reduction::{
    build_effective_model, effective_potential, grand_orbital, reduce_wavefunction,
    restore_wavefunction, EffectiveModel, RadialProblem,
};
pub use solver::{
    eigen_solve, fd_oracle, normalize, numerov_integrate, solve_levels, BoundLevel, BoundaryMode,
    Direction, GridSpacing, GridSpec, SolverError, Spectrum,
};
