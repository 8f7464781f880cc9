//! Numerical verification of the structural claims behind the reduction.
//!
//! - The distributional identity Δ(1/r^{D-2}) = -(D-2) Ω_D δ(r) is checked
//!   by pairing both sides with smooth test functions: for radial φ,
//!   ∫ (1/r^{D-2}) Δφ d^D x = Ω_D ∫₀^∞ [r φ'' + (D-1) φ'] dr must equal
//!   -(D-2) Ω_D φ(0).
//! - The probability flux through a sphere of radius a scales as a^{D-1-2s}
//!   for ψ ~ r^{-s}; the norm stays time independent only if that vanishes.
//! - Problems sharing D + 2l reduce to identical 1-D equations, so their
//!   spectra must coincide level by level.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::reduction::RadialProblem;
use crate::solver::{solve_levels, GridSpec, SolverError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("delta identity check requires D >= 3, got {dimension}")]
    DimensionTooLow { dimension: u32 },
    #[error(
        "quadrature did not converge after {refinements} refinements \
         (last change {last_change:.3e})"
    )]
    QuadratureFailure {
        refinements: usize,
        last_change: f64,
    },
    #[error("invalid shift (ΔD = {delta_dimension}, Δl = {delta_l}): {reason}")]
    InvalidShift {
        delta_dimension: i64,
        delta_l: i64,
        reason: String,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Surface area of the unit sphere in D dimensions, 2 π^{D/2} / Γ(D/2).
pub fn unit_sphere_area(dimension: u32) -> f64 {
    let d = dimension as f64;
    2.0 * std::f64::consts::PI.powf(d / 2.0) / gamma_half_integer(dimension)
}

/// Γ(D/2) for integer D >= 1, by the recurrence from Γ(1/2) = sqrt(pi) and
/// Γ(1) = 1.
fn gamma_half_integer(dimension: u32) -> f64 {
    let mut value = if dimension % 2 == 0 {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    let mut twice = dimension;
    while twice > 2 {
        twice -= 2;
        value *= twice as f64 / 2.0;
    }
    value
}

/// Smooth test functions for the delta-identity pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction {
    /// e^{-r²}; value 1 at the origin.
    Gaussian,
    /// A C^∞ bump supported on [1/4, 3/4]; vanishes at the origin, so the
    /// delta pairing must give zero.
    CompactBump,
}

const BUMP_LO: f64 = 0.25;
const BUMP_HI: f64 = 0.75;

impl TestFunction {
    pub fn at_origin(&self) -> f64 {
        match self {
            TestFunction::Gaussian => 1.0,
            TestFunction::CompactBump => 0.0,
        }
    }

    fn value(&self, r: f64) -> f64 {
        match self {
            TestFunction::Gaussian => (-r * r).exp(),
            TestFunction::CompactBump => bump_parts(r).map_or(0.0, |(g, _, _)| g.exp()),
        }
    }

    fn first_derivative(&self, r: f64) -> f64 {
        match self {
            TestFunction::Gaussian => -2.0 * r * (-r * r).exp(),
            TestFunction::CompactBump => bump_parts(r).map_or(0.0, |(g, dg, _)| dg * g.exp()),
        }
    }

    fn second_derivative(&self, r: f64) -> f64 {
        match self {
            TestFunction::Gaussian => (4.0 * r * r - 2.0) * (-r * r).exp(),
            TestFunction::CompactBump => {
                bump_parts(r).map_or(0.0, |(g, dg, ddg)| (ddg + dg * dg) * g.exp())
            }
        }
    }

    fn integration_end(&self, r_max: f64) -> f64 {
        match self {
            TestFunction::Gaussian => r_max,
            TestFunction::CompactBump => r_max.min(BUMP_HI),
        }
    }
}

/// (g, g', g'') for the bump exponent g = -1/((r-a)(b-r)); None outside the
/// support or too close to its edges for e^g to be representable.
fn bump_parts(r: f64) -> Option<(f64, f64, f64)> {
    let q = (r - BUMP_LO) * (BUMP_HI - r);
    if q < 1e-8 {
        return None;
    }
    let dq = BUMP_LO + BUMP_HI - 2.0 * r;
    let g = -1.0 / q;
    let dg = dq / (q * q);
    let ddg = -2.0 / (q * q) - 2.0 * dq * dq / (q * q * q);
    Some((g, dg, ddg))
}

/// Result of one delta-identity quadrature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaCheckResult {
    pub dimension: u32,
    pub test_fn: TestFunction,
    pub quadrature_value: f64,
    pub predicted: f64,
    /// |quadrature - predicted| / |predicted|, or the absolute deviation
    /// when the prediction is zero.
    pub rel_error: f64,
}

/// Verifies Δ(1/r^{D-2}) = -(D-2) Ω_D δ(r) by pairing with `test_fn`.
///
/// `grid` sets the initial quadrature resolution and the radial cutoff; the
/// rule then refines by doubling until two successive values agree.
pub fn delta_identity_check(
    dimension: u32,
    test_fn: TestFunction,
    grid: &GridSpec,
) -> Result<DeltaCheckResult, DiagnosticsError> {
    if dimension < 3 {
        return Err(DiagnosticsError::DimensionTooLow { dimension });
    }
    let omega = unit_sphere_area(dimension);
    let d = dimension as f64;
    let r_end = test_fn.integration_end(grid.r_max);
    let integrand =
        |r: f64| r * test_fn.second_derivative(r) + (d - 1.0) * test_fn.first_derivative(r);

    let mut intervals = grid.n.max(64);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let mut previous = f64::NAN;
    let mut last_change = f64::NAN;
    for refinement in 0..=16 {
        let h = r_end / intervals as f64;
        let samples: Vec<f64> = (0..=intervals).map(|i| integrand(i as f64 * h)).collect();
        let current = omega * crate::solver::simpson(&samples, h);
        if refinement > 0 {
            last_change = (current - previous).abs();
            if last_change <= 1e-10 * current.abs().max(1.0) {
                let predicted = -(d - 2.0) * omega * test_fn.at_origin();
                let rel_error = if predicted != 0.0 {
                    (current - predicted).abs() / predicted.abs()
                } else {
                    current.abs()
                };
                return Ok(DeltaCheckResult {
                    dimension,
                    test_fn,
                    quadrature_value: current,
                    predicted,
                    rel_error,
                });
            }
        }
        previous = current;
        intervals *= 2;
    }
    Err(DiagnosticsError::QuadratureFailure {
        refinements: 16,
        last_change,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FluxVerdict {
    Vanishes,
    Finite,
    Diverges,
}

/// Scaling of the probability flux through a sphere of radius a for
/// ψ ~ r^{-s}: the integrated flux goes as a^{D-1-2s}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluxScaling {
    pub exponent: f64,
    pub verdict: FluxVerdict,
}

pub fn flux_scaling(dimension: u32, s: f64) -> FluxScaling {
    let exponent = (dimension as f64 - 1.0) - 2.0 * s;
    let verdict = if exponent > 0.0 {
        FluxVerdict::Vanishes
    } else if exponent == 0.0 {
        FluxVerdict::Finite
    } else {
        FluxVerdict::Diverges
    };
    FluxScaling { exponent, verdict }
}

/// Least-squares slope of ln|u| against ln r over the first `fit_points`
/// nonzero samples: the apparent power of the reduced wavefunction at the
/// origin.
pub fn origin_exponent(radii: &[f64], values: &[f64], fit_points: usize) -> f64 {
    let mut xs = Vec::with_capacity(fit_points);
    let mut ys = Vec::with_capacity(fit_points);
    for (&r, &u) in radii.iter().zip(values) {
        if u != 0.0 && r > 0.0 {
            xs.push(r.ln());
            ys.push(u.abs().ln());
            if xs.len() == fit_points {
                break;
            }
        }
    }
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// The Pauli-convention exponent s of the total wavefunction ψ ~ r^{-s},
/// from the fitted origin power of the reduced wavefunction u ~ r^σ:
/// s = (D-1)/2 - σ.
pub fn pauli_exponent_from_fit(
    dimension: u32,
    radii: &[f64],
    reduced: &[f64],
    fit_points: usize,
) -> f64 {
    (dimension as f64 - 1.0) / 2.0 - origin_exponent(radii, reduced, fit_points)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyRow {
    pub level: usize,
    pub e_base: f64,
    pub e_partner: f64,
    pub diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyComparison {
    pub dimension: u32,
    pub l: u32,
    pub rows: Vec<DegeneracyRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyReport {
    pub base_dimension: u32,
    pub base_l: u32,
    pub comparisons: Vec<DegeneracyComparison>,
    pub max_discrepancy: f64,
}

/// Solves the base problem and each (D+ΔD, l+Δl) partner with ΔD + 2Δl = 0
/// over the same potential and grid, and reports per-level energy
/// differences. Shifts that change D + 2l, or leave the quantum numbers out
/// of range, are rejected.
pub fn degeneracy_check(
    base: &RadialProblem,
    shifts: &[(i64, i64)],
    n_levels: usize,
) -> Result<DegeneracyReport, DiagnosticsError> {
    let mut partners = Vec::with_capacity(shifts.len());
    for &(delta_dimension, delta_l) in shifts {
        if delta_dimension + 2 * delta_l != 0 {
            return Err(DiagnosticsError::InvalidShift {
                delta_dimension,
                delta_l,
                reason: "ΔD + 2Δl must be zero to preserve the degeneracy label".into(),
            });
        }
        let dimension = base.dimension as i64 + delta_dimension;
        let l = base.l as i64 + delta_l;
        if dimension < 2 || l < 0 {
            return Err(DiagnosticsError::InvalidShift {
                delta_dimension,
                delta_l,
                reason: format!("shifted quantum numbers (D={dimension}, l={l}) out of range"),
            });
        }
        let mut partner = base.clone();
        partner.dimension = dimension as u32;
        partner.l = l as u32;
        partners.push(partner);
    }

    let base_spectrum = solve_levels(base, n_levels)?;
    let partner_spectra = partners
        .par_iter()
        .map(|p| solve_levels(p, n_levels).map(|s| (p.dimension, p.l, s)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut comparisons = Vec::with_capacity(partner_spectra.len());
    let mut max_discrepancy = 0.0_f64;
    for (dimension, l, spectrum) in partner_spectra {
        let rows: Vec<DegeneracyRow> = base_spectrum
            .levels
            .iter()
            .zip(&spectrum.levels)
            .map(|(b, p)| {
                let diff = (b.energy - p.energy).abs();
                max_discrepancy = max_discrepancy.max(diff);
                DegeneracyRow {
                    level: b.n_r,
                    e_base: b.energy,
                    e_partner: p.energy,
                    diff,
                }
            })
            .collect();
        comparisons.push(DegeneracyComparison { dimension, l, rows });
    }
    Ok(DegeneracyReport {
        base_dimension: base.dimension,
        base_l: base.l,
        comparisons,
        max_discrepancy,
    })
}
