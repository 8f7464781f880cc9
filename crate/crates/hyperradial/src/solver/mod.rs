//! Bound-state solver for the reduced radial equation: Numerov shooting with
//! node-count bracketing and log-derivative matching at the outermost
//! classical turning point, cross-checkable against an independent
//! finite-difference oracle.

mod eigen;
mod grid;
mod numerov;
mod oracle;

pub use eigen::{eigen_solve, solve_levels};
pub use grid::{GridError, GridSpacing, GridSpec};
pub use numerov::{numerov_integrate, Direction, NumerovSolution};
pub use oracle::fd_oracle;

pub(crate) use numerov::{count_sign_changes, ReducedEquation};
pub(crate) use oracle::ground_state_estimate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::AsymptoticsError;
use crate::potentials::ClassifyError;
use crate::reduction::ReductionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error("fully singular potential: falling to the center, no bound spectrum")]
    SingularPotential,
    #[error("imaginary P (over-critical attraction): oscillatory collapse, no spectrum")]
    OscillatoryCollapse,
    #[error("SAE boundary data requires 0 < P < 1/2; this problem admits only the standard branch")]
    SaeNotPermitted,
    #[error("effective potential is NaN at r = {r}")]
    NanPotential { r: f64 },
    #[error("no bound state with {n_r} nodes in energy window [{lo:.6e}, {hi:.6e}]: {reason}")]
    NoBoundState {
        n_r: usize,
        lo: f64,
        hi: f64,
        reason: String,
    },
    #[error("eigenvalue iteration failed to converge: {details}")]
    ConvergenceFailure { details: String },
    #[error("wavefunction norm below 1e-300; nothing to normalize")]
    ZeroNorm,
    #[error("value array has {actual} entries but the grid has {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("the finite-difference oracle is defined for Dirichlet boundary data only")]
    OracleRequiresDirichlet,
}

/// Boundary data imposed at the origin end of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum BoundaryMode {
    /// u(0) = 0 via the standard branch alone.
    Dirichlet,
    /// One-parameter self-adjoint extension: u ~ r^(1/2+P) + tau r^(1/2-P)
    /// with tau referenced to radius 1. Permitted only when 0 < P < 1/2.
    Sae { tau: f64 },
}

impl BoundaryMode {
    pub fn mixing(&self) -> f64 {
        match *self {
            BoundaryMode::Dirichlet => 0.0,
            BoundaryMode::Sae { tau } => tau,
        }
    }
}

/// One bound level: energy, interior node count and the normalized reduced
/// wavefunction sampled on the problem grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundLevel {
    pub n_r: usize,
    pub energy: f64,
    pub nodes: usize,
    pub u: Vec<f64>,
}

/// An ordered set of bound levels over a common grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub radii: Vec<f64>,
    pub levels: Vec<BoundLevel>,
}

/// ∫ u² dr over the grid by composite Simpson quadrature (taken in ln r on
/// logarithmic grids, where dr = r dx).
pub fn norm_squared(values: &[f64], grid: &GridSpec) -> Result<f64, SolverError> {
    grid.validate()?;
    if values.len() != grid.n {
        return Err(SolverError::LengthMismatch {
            expected: grid.n,
            actual: values.len(),
        });
    }
    let h = grid.step();
    let integrand: Vec<f64> = match grid.spacing {
        GridSpacing::Uniform => values.iter().map(|u| u * u).collect(),
        GridSpacing::Logarithmic => {
            let radii = grid.points();
            values
                .iter()
                .zip(&radii)
                .map(|(u, r)| u * u * r)
                .collect()
        }
    };
    Ok(simpson(&integrand, h))
}

/// Composite Simpson on a uniform abscissa; an odd number of intervals is
/// finished with the 3/8 rule.
pub(crate) fn simpson(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    debug_assert!(n >= 4);
    let intervals = n - 1;
    let pair_end = if intervals % 2 == 0 { n - 1 } else { n - 4 };
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 <= pair_end {
        total += h / 3.0 * (samples[i] + 4.0 * samples[i + 1] + samples[i + 2]);
        i += 2;
    }
    if intervals % 2 != 0 {
        total += 3.0 * h / 8.0
            * (samples[n - 4] + 3.0 * samples[n - 3] + 3.0 * samples[n - 2] + samples[n - 1]);
    }
    total
}

/// Scales u so that ∫ u² dr = 1 and fixes the overall sign so that u > 0
/// just outside r_min.
pub fn normalize(values: &[f64], grid: &GridSpec) -> Result<Vec<f64>, SolverError> {
    let norm2 = norm_squared(values, grid)?;
    if !(norm2 > 1e-300) {
        return Err(SolverError::ZeroNorm);
    }
    let mut scale = 1.0 / norm2.sqrt();
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if let Some(first) = values.iter().find(|v| v.abs() > 1e-12 * peak) {
        if *first < 0.0 {
            scale = -scale;
        }
    }
    Ok(values.iter().map(|v| v * scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_unit_interval_normalizes_to_one() {
        let grid = GridSpec::uniform(1e-12, 1.0, 10_001);
        let values = vec![2.0; grid.n];
        let normalized = normalize(&values, &grid).unwrap();
        for v in normalized {
            assert!((v - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn gaussian_matches_closed_form_normalization() {
        // u = r e^{-r²/2} has ∫₀^∞ u² dr = sqrt(pi)/4, so the normalized
        // profile is (2/pi^{1/4}) r e^{-r²/2}.
        let grid = GridSpec::uniform(1e-9, 12.0, 20_001);
        let radii = grid.points();
        let values: Vec<f64> = radii.iter().map(|r| r * (-r * r / 2.0).exp()).collect();
        let normalized = normalize(&values, &grid).unwrap();
        let coeff = 2.0 / std::f64::consts::PI.powf(0.25);
        for (idx, r) in radii.iter().enumerate().step_by(997) {
            let expected = coeff * r * (-r * r / 2.0).exp();
            assert!(
                (normalized[idx] - expected).abs() <= 1e-8,
                "at r={r}: {} vs {expected}",
                normalized[idx]
            );
        }
    }

    #[test]
    fn zero_input_reports_zero_norm() {
        let grid = GridSpec::uniform(0.1, 1.0, 64);
        assert!(matches!(
            normalize(&vec![0.0; 64], &grid),
            Err(SolverError::ZeroNorm)
        ));
    }

    #[test]
    fn sign_is_fixed_positive_near_origin() {
        let grid = GridSpec::uniform(0.1, 1.0, 64);
        let values: Vec<f64> = (0..64).map(|i| -((i + 1) as f64)).collect();
        let normalized = normalize(&values, &grid).unwrap();
        assert!(normalized[1] > 0.0);
    }

    #[test]
    fn logarithmic_quadrature_matches_uniform() {
        // Same smooth profile integrated on both spacings.
        let profile = |r: f64| (r * 1.3).sin() * (-r).exp();
        let uniform = GridSpec::uniform(1e-6, 30.0, 60_001);
        let log = GridSpec::logarithmic(1e-6, 30.0, 60_001);
        let nu = norm_squared(
            &uniform.points().iter().map(|&r| profile(r)).collect::<Vec<_>>(),
            &uniform,
        )
        .unwrap();
        let nl = norm_squared(
            &log.points().iter().map(|&r| profile(r)).collect::<Vec<_>>(),
            &log,
        )
        .unwrap();
        assert!(
            (nu - nl).abs() <= 1e-9 * nu,
            "uniform {nu} vs logarithmic {nl}"
        );
    }

    #[test]
    fn length_mismatch_is_reported() {
        let grid = GridSpec::uniform(0.1, 1.0, 64);
        assert!(matches!(
            normalize(&vec![1.0; 63], &grid),
            Err(SolverError::LengthMismatch { .. })
        ));
    }
}
