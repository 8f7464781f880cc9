//! Near-origin behavior of the reduced wavefunction.
//!
//! For a regular potential the Frobenius exponents of u are L+1 and -L; for a
//! soft-singular one (r²V → ∓V₀) they are 1/2 ± P with
//! P = sqrt((L+1/2)² - 2V₀) for attraction (-2V₀ → +2V₀ for repulsion).
//! When 0 < P < 1/2 both branches are normalizable and satisfy u(0) = 0, so
//! the boundary data is a one-parameter mixing family (self-adjoint
//! extension); we parametrize it by τ = A₂/A₁ with the powers of r measured
//! in natural units (reference radius 1), τ = 0 being the standard branch.
//!
//! This module also records, per criterion, the competing admissibility
//! bounds on the origin exponent that motivate the Dirichlet condition. The
//! exponent conventions differ between criteria in the source analysis, so
//! each bound carries its own convention note instead of being normalized.

use serde::Serialize;
use thiserror::Error;

use crate::potentials::PotentialClass;
use crate::reduction::{grand_orbital, ReductionError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("additional branch or nonzero mixing requires 0 < P < 1/2")]
    BranchNotAllowed,
    #[error("fully singular potential: falling to the center, no series start")]
    FallToCenter,
    #[error("imaginary P: oscillatory collapse, no series start")]
    Oscillatory,
    #[error("series start radius must be positive, got {r0}")]
    NonPositiveRadius { r0: f64 },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Near-origin analysis of one (D, l, potential-class) combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicialReport {
    pub dimension: u32,
    pub l: u32,
    pub grand_orbital: f64,
    pub class: PotentialClass,
    /// P = sqrt((L+1/2)² - 2V₀·sign); None when not soft-singular or when
    /// P would be imaginary.
    pub p: Option<f64>,
    /// (L+1, -L) for a regular potential.
    pub regular_exponents: Option<(f64, f64)>,
    /// (1/2+P, 1/2-P) for a soft-singular potential with real P.
    pub soft_exponents: Option<(f64, f64)>,
    /// True iff 0 < P < 1/2, strictly: the second branch also satisfies
    /// Dirichlet data and must be retained (hydrino states possible).
    pub extra_solution_allowed: bool,
    /// True when 2V₀ > (L+1/2)² for attraction: P imaginary, the near-origin
    /// solutions oscillate without bound and no spectrum is attempted.
    pub oscillatory: bool,
    /// True for fully singular potentials (|r²V| → ∞).
    pub fall_to_center: bool,
}

/// Computes the indicial data for quantum numbers (D, l) and a classified
/// potential.
pub fn indicial_report(
    dimension: u32,
    l: u32,
    class: &PotentialClass,
) -> Result<IndicialReport, ReductionError> {
    let big_l = grand_orbital(dimension, l)?;
    let mut report = IndicialReport {
        dimension,
        l,
        grand_orbital: big_l,
        class: *class,
        p: None,
        regular_exponents: None,
        soft_exponents: None,
        extra_solution_allowed: false,
        oscillatory: false,
        fall_to_center: false,
    };
    match class {
        PotentialClass::Regular => {
            report.regular_exponents = Some((big_l + 1.0, -big_l));
        }
        PotentialClass::Singular => {
            report.fall_to_center = true;
        }
        _ => {
            let signed_v0 = class.signed_v0().expect("soft-singular class");
            let half = big_l + 0.5;
            let p_squared = half * half - 2.0 * signed_v0;
            if p_squared < 0.0 {
                report.oscillatory = true;
            } else {
                let p = p_squared.sqrt();
                report.p = Some(p);
                report.soft_exponents = Some((0.5 + p, 0.5 - p));
                report.extra_solution_allowed = p > 0.0 && p < 0.5;
            }
        }
    }
    Ok(report)
}

/// Threshold T = (l + (D-2)/2)² - 1/4 on 2V₀: an additional (hydrino)
/// solution can exist iff 2V₀ > T. The boundary 2V₀ = T means P = 1/2
/// exactly, where only the standard branch remains, so equality is excluded.
pub fn extra_solution_threshold(dimension: u32, l: u32) -> Result<f64, ReductionError> {
    if dimension < 2 {
        return Err(ReductionError::InvalidDimension { dimension });
    }
    let half = l as f64 + (dimension as f64 - 2.0) / 2.0;
    Ok(half * half - 0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityCriterion {
    /// Finite probability in the spherical slice (r, r+dr).
    DifferentialProbability,
    /// Finite total probability inside a small sphere.
    SphereProbability,
    /// Finite norm of the total wavefunction.
    FiniteNorm,
    /// Time independence of the norm: vanishing flux through a shrinking
    /// sphere around the origin. The strongest of the four.
    PauliFlux,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    GreaterThan,
    LessThan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginVerdict {
    /// The criterion forces u(0) = 0.
    MustVanish,
    /// The criterion tolerates u diverging at the origin.
    MayDiverge,
}

/// A strict inequality on the origin exponent s under one admissibility
/// criterion, in that criterion's own exponent convention.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityBound {
    pub criterion: AdmissibilityCriterion,
    pub direction: BoundDirection,
    pub value: f64,
    pub convention: &'static str,
    pub u_origin_verdict: OriginVerdict,
}

/// The bound on the origin exponent imposed by `criterion` in dimension D.
pub fn admissibility_bound(
    criterion: AdmissibilityCriterion,
    dimension: u32,
) -> Result<AdmissibilityBound, ReductionError> {
    if dimension < 2 {
        return Err(ReductionError::InvalidDimension { dimension });
    }
    let d = dimension as f64;
    Ok(match criterion {
        AdmissibilityCriterion::DifferentialProbability => AdmissibilityBound {
            criterion,
            direction: BoundDirection::GreaterThan,
            value: (1.0 - d) / 2.0,
            convention: "R ~ r^s near the origin; finiteness of |R|^2 r^(D-1) dr \
                         requires 2s + D - 1 > 0, so u = r^((D-1)/2+s) -> 0",
            u_origin_verdict: OriginVerdict::MustVanish,
        },
        AdmissibilityCriterion::SphereProbability => AdmissibilityBound {
            criterion,
            direction: BoundDirection::GreaterThan,
            value: -d / 2.0,
            convention: "R ~ r^s near the origin; a finite probability inside a \
                         small sphere admits s = -D/2 + eps for any eps > 0, \
                         letting u ~ r^(-1/2+eps) diverge",
            u_origin_verdict: OriginVerdict::MayDiverge,
        },
        AdmissibilityCriterion::FiniteNorm => AdmissibilityBound {
            criterion,
            direction: BoundDirection::GreaterThan,
            value: -d / 2.0,
            convention: "R ~ r^s near the origin; a finite norm gives the same \
                         bound as the sphere probability, u may diverge as \
                         r^(-1/2+eps)",
            u_origin_verdict: OriginVerdict::MayDiverge,
        },
        AdmissibilityCriterion::PauliFlux => AdmissibilityBound {
            criterion,
            direction: BoundDirection::LessThan,
            value: (d - 1.0) / 2.0,
            convention: "psi = u~/r^s with u~ regular at the origin; the flux \
                         through a sphere of radius a scales as a^(D-1-2s), so \
                         time independence of the norm requires s < (D-1)/2 and \
                         hence u(0) = 0",
            u_origin_verdict: OriginVerdict::MustVanish,
        },
    })
}

/// Which near-origin branch seeds the outward integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesBranch {
    /// r^(L+1) (regular) or r^(1/2+P) (soft-singular); mixing `tau` adds
    /// tau · r^(1/2-P) when the extra solution is allowed.
    Standard,
    /// The pure second solution r^(1/2-P); `tau` is ignored.
    Additional,
}

/// Leading-order initial data (u, u') at r0 for outward integration.
///
/// Powers of r are in natural units, so a nonzero `tau` is the branch mixing
/// ratio A₂/A₁ referenced to radius 1 regardless of r0.
pub fn series_start(
    report: &IndicialReport,
    branch: SeriesBranch,
    r0: f64,
    tau: f64,
) -> Result<(f64, f64), AsymptoticsError> {
    if !(r0 > 0.0) {
        return Err(AsymptoticsError::NonPositiveRadius { r0 });
    }
    if report.fall_to_center {
        return Err(AsymptoticsError::FallToCenter);
    }
    if report.oscillatory {
        return Err(AsymptoticsError::Oscillatory);
    }
    let wants_second = matches!(branch, SeriesBranch::Additional) || tau != 0.0;
    if wants_second && !report.extra_solution_allowed {
        return Err(AsymptoticsError::BranchNotAllowed);
    }
    if let Some((lead, _)) = report.regular_exponents {
        return Ok(power_start(r0, lead));
    }
    let (standard, additional) = report
        .soft_exponents
        .expect("soft exponents present when not regular, singular or oscillatory");
    Ok(match branch {
        SeriesBranch::Additional => power_start(r0, additional),
        SeriesBranch::Standard => {
            let (u1, du1) = power_start(r0, standard);
            let (u2, du2) = power_start(r0, additional);
            (u1 + tau * u2, du1 + tau * du2)
        }
    })
}

fn power_start(r0: f64, exponent: f64) -> (f64, f64) {
    (r0.powf(exponent), exponent * r0.powf(exponent - 1.0))
}
