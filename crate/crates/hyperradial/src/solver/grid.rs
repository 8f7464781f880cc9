//! Radial grids for the reduced equation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::potentials::{Potential, PotentialTerm};
use crate::reduction::grand_orbital;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid r_min must be > 0 and finite, got {r_min}")]
    NonPositiveRMin { r_min: f64 },
    #[error("grid r_max ({r_max}) must be finite and exceed r_min ({r_min})")]
    EmptyRange { r_min: f64, r_max: f64 },
    #[error("grid needs at least 16 points, got {n}")]
    TooFewPoints { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSpacing {
    Uniform,
    Logarithmic,
}

/// A strictly increasing radial grid on [r_min, r_max] with n points.
///
/// Logarithmic spacing is uniform in x = ln r; it resolves steep centrifugal
/// walls near the origin far better than a uniform grid and is the default
/// choice for problems with L > 0 or singular attraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
    pub spacing: GridSpacing,
}

impl GridSpec {
    pub fn uniform(r_min: f64, r_max: f64, n: usize) -> Self {
        Self {
            r_min,
            r_max,
            n,
            spacing: GridSpacing::Uniform,
        }
    }

    pub fn logarithmic(r_min: f64, r_max: f64, n: usize) -> Self {
        Self {
            r_min,
            r_max,
            n,
            spacing: GridSpacing::Logarithmic,
        }
    }

    pub fn validate(&self) -> Result<(), GridError> {
        if !(self.r_min.is_finite() && self.r_min > 0.0) {
            return Err(GridError::NonPositiveRMin { r_min: self.r_min });
        }
        if !(self.r_max.is_finite() && self.r_max > self.r_min) {
            return Err(GridError::EmptyRange {
                r_min: self.r_min,
                r_max: self.r_max,
            });
        }
        if self.n < 16 {
            return Err(GridError::TooFewPoints { n: self.n });
        }
        Ok(())
    }

    /// Step of the integration variable: Δr for uniform grids, Δln r for
    /// logarithmic ones.
    pub fn step(&self) -> f64 {
        let m = (self.n - 1) as f64;
        match self.spacing {
            GridSpacing::Uniform => (self.r_max - self.r_min) / m,
            GridSpacing::Logarithmic => (self.r_max / self.r_min).ln() / m,
        }
    }

    /// Materializes the grid radii, endpoints exact.
    pub fn points(&self) -> Vec<f64> {
        let h = self.step();
        let mut radii: Vec<f64> = match self.spacing {
            GridSpacing::Uniform => (0..self.n).map(|i| self.r_min + i as f64 * h).collect(),
            GridSpacing::Logarithmic => {
                let x0 = self.r_min.ln();
                (0..self.n).map(|i| (x0 + i as f64 * h).exp()).collect()
            }
        };
        radii[0] = self.r_min;
        radii[self.n - 1] = self.r_max;
        radii
    }

    /// A reasonable grid for solving `levels` bound states of `potential` at
    /// quantum numbers (D, l): r_min at 1e-5 of the characteristic potential
    /// length and r_max deep enough that the WKB tail of the shallowest
    /// wanted level is suppressed by e^-30.
    pub fn suggest(potential: &Potential, dimension: u32, l: u32, levels: usize) -> Self {
        let scale = potential.characteristic_length();
        let r_min = 1e-5 * scale;
        let big_l = grand_orbital(dimension, l).unwrap_or(l as f64);

        let mut r_max: f64 = 60.0 * scale;
        let mut strongest_z = 0.0_f64;
        let mut strongest_omega = 0.0_f64;
        for term in &potential.terms {
            match *term {
                PotentialTerm::Coulomb { z } if z > 0.0 => strongest_z = strongest_z.max(z),
                PotentialTerm::Harmonic { omega } => strongest_omega = strongest_omega.max(omega),
                _ => {}
            }
        }
        if strongest_omega > 0.0 {
            // Highest wanted level of an oscillator-dominated well; Gaussian
            // tail reaches e^-30 once the WKB phase past the turning point
            // accumulates to 30.
            let e_top =
                strongest_omega * (2.0 * levels as f64 + l as f64 + dimension as f64 / 2.0);
            let r_turn = (2.0 * e_top / strongest_omega).sqrt() / strongest_omega.sqrt();
            r_max = (r_turn * r_turn + 60.0 / strongest_omega).sqrt();
        } else if strongest_z > 0.0 {
            // Hydrogen-like ladder: shallowest level n = levels + L + 1.
            let n_top = levels as f64 + big_l + 1.0;
            let kappa = strongest_z / n_top;
            r_max = 2.0 * n_top * n_top / strongest_z + 30.0 / kappa;
        }

        Self::logarithmic(r_min, r_max.max(r_min * 1e3), 6001)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_bad_specs() {
        assert!(GridSpec::uniform(0.0, 1.0, 100).validate().is_err());
        assert!(GridSpec::uniform(-1.0, 1.0, 100).validate().is_err());
        assert!(GridSpec::uniform(1.0, 0.5, 100).validate().is_err());
        assert!(GridSpec::uniform(0.1, 1.0, 15).validate().is_err());
        assert!(GridSpec::uniform(0.1, 1.0, 16).validate().is_ok());
        assert!(GridSpec::uniform(0.1, f64::INFINITY, 64).validate().is_err());
    }

    #[test]
    fn points_are_strictly_increasing_with_exact_endpoints() {
        for spec in [
            GridSpec::uniform(1e-4, 25.0, 257),
            GridSpec::logarithmic(1e-6, 80.0, 1024),
        ] {
            let radii = spec.points();
            assert_eq!(radii.len(), spec.n);
            assert_eq!(radii[0], spec.r_min);
            assert_eq!(radii[spec.n - 1], spec.r_max);
            assert!(radii.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn suggest_covers_hydrogen_and_oscillator() {
        let hydrogen = GridSpec::suggest(&Potential::coulomb(1.0), 3, 0, 3);
        assert!(hydrogen.validate().is_ok());
        // Shallowest wanted level n=4 turns around at r = 2 n^2 = 32.
        assert!(hydrogen.r_max > 100.0);
        assert!(hydrogen.r_min <= 1e-5);

        let oscillator = GridSpec::suggest(&Potential::harmonic(1.0), 5, 1, 3);
        assert!(oscillator.validate().is_ok());
        assert!(oscillator.r_max > 4.0 && oscillator.r_max < 30.0);
    }
}
