//! Reduction of the D-dimensional hypercentral problem to the 1-D radial
//! equation.
//!
//! Conventions: ħ = m = 1 and the reduced equation carries the explicit 1/2,
//!
//! ```text
//!   -1/2 u'' + [ V(r) + L(L+1)/(2 r^2) ] u = E u
//! ```
//!
//! so the centrifugal part of the effective potential can equivalently be
//! written ((D+2l)² - 4(D+2l) + 3) / (8 r²); both forms are exposed and agree
//! identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::potentials::{Potential, PotentialError};
use crate::solver::{BoundaryMode, GridSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("dimension must be an integer >= 2, got {dimension}")]
    InvalidDimension { dimension: u32 },
    #[error("radius must be positive, got {r}")]
    NonPositiveRadius { r: f64 },
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("grid: {0}")]
    InvalidGrid(String),
}

/// Grand orbital quantum number L = l + (D-3)/2 of the reduced problem.
///
/// For D = 3 this is just l; even dimensions give half-integer L.
pub fn grand_orbital(dimension: u32, l: u32) -> Result<f64, ReductionError> {
    if dimension < 2 {
        return Err(ReductionError::InvalidDimension { dimension });
    }
    Ok(l as f64 + (dimension as f64 - 3.0) / 2.0)
}

/// Derived dimensional quantities of the reduced radial equation.
///
/// The centrifugal coefficient l(l+D-2) comes from the hyperangular momentum;
/// the fictitious coefficient (D-1)(D-3)/4 is of purely dimensional origin.
/// Their sum is L(L+1), and the whole centrifugal term depends on (D, l) only
/// through the combination D + 2l.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveModel {
    /// Grand orbital number L = l + (D-3)/2.
    pub grand_orbital: f64,
    /// l(l+D-2), the hyperangular-momentum eigenvalue.
    pub centrifugal_coeff: f64,
    /// (D-1)(D-3)/4, the quantum fictitious contribution.
    pub fictitious_coeff: f64,
    /// D + 2l, the interdimensional-degeneracy label.
    pub dplus2l: u32,
}

/// Builds the [`EffectiveModel`] for quantum numbers (D, l).
///
/// All fields are exact in floating point for integer D, l (the products are
/// dyadic rationals), so the identity
/// `centrifugal_coeff + fictitious_coeff == L(L+1)` holds with `==`.
pub fn build_effective_model(dimension: u32, l: u32) -> Result<EffectiveModel, ReductionError> {
    if dimension < 2 {
        return Err(ReductionError::InvalidDimension { dimension });
    }
    let d = dimension as f64;
    let lf = l as f64;
    Ok(EffectiveModel {
        grand_orbital: lf + (d - 3.0) / 2.0,
        centrifugal_coeff: lf * (lf + d - 2.0),
        fictitious_coeff: (d - 1.0) * (d - 3.0) / 4.0,
        dplus2l: dimension + 2 * l,
    })
}

impl EffectiveModel {
    pub fn new(dimension: u32, l: u32) -> Result<Self, ReductionError> {
        build_effective_model(dimension, l)
    }

    /// L(L+1), the full strength of the 1/r² term in the reduced equation.
    pub fn angular_strength(&self) -> f64 {
        self.grand_orbital * (self.grand_orbital + 1.0)
    }

    /// Centrifugal part of the effective potential, L(L+1)/(2r²).
    pub fn centrifugal_term(&self, r: f64) -> f64 {
        self.angular_strength() / (2.0 * r * r)
    }

    /// Same term written through D + 2l: ((D+2l)² - 4(D+2l) + 3)/(8r²).
    pub fn centrifugal_term_dplus2l(&self, r: f64) -> f64 {
        let q = self.dplus2l as f64;
        (q * q - 4.0 * q + 3.0) / (8.0 * r * r)
    }
}

/// Effective potential of the reduced equation, V(r) + L(L+1)/(2r²).
pub fn effective_potential(
    model: &EffectiveModel,
    potential: &Potential,
    r: f64,
) -> Result<f64, ReductionError> {
    if !(r > 0.0) {
        return Err(ReductionError::NonPositiveRadius { r });
    }
    Ok(potential.evaluate(r)? + model.centrifugal_term(r))
}

/// Applies u(r) = r^{(D-1)/2} R(r) pointwise over a grid of radii.
pub fn reduce_wavefunction(
    radii: &[f64],
    total: &[f64],
    dimension: u32,
) -> Result<Vec<f64>, ReductionError> {
    transform_wavefunction(radii, total, dimension, false)
}

/// Inverse of [`reduce_wavefunction`]: R(r) = r^{-(D-1)/2} u(r).
pub fn restore_wavefunction(
    radii: &[f64],
    reduced: &[f64],
    dimension: u32,
) -> Result<Vec<f64>, ReductionError> {
    transform_wavefunction(radii, reduced, dimension, true)
}

fn transform_wavefunction(
    radii: &[f64],
    values: &[f64],
    dimension: u32,
    invert: bool,
) -> Result<Vec<f64>, ReductionError> {
    if dimension < 2 {
        return Err(ReductionError::InvalidDimension { dimension });
    }
    let half = (dimension as f64 - 1.0) / 2.0;
    let exponent = if invert { -half } else { half };
    radii
        .iter()
        .zip(values)
        .map(|(&r, &v)| {
            if !(r > 0.0) {
                return Err(ReductionError::NonPositiveRadius { r });
            }
            Ok(r.powf(exponent) * v)
        })
        .collect()
}

/// One complete radial eigenproblem: quantum numbers, potential, grid and
/// boundary data at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    pub dimension: u32,
    pub l: u32,
    pub potential: Potential,
    pub grid: GridSpec,
    pub boundary: BoundaryMode,
    /// Optional override of the automatic bound-state search window.
    pub energy_window: Option<(f64, f64)>,
}

impl RadialProblem {
    pub fn new(
        dimension: u32,
        l: u32,
        potential: Potential,
        grid: GridSpec,
        boundary: BoundaryMode,
    ) -> Result<Self, ReductionError> {
        let problem = Self {
            dimension,
            l,
            potential,
            grid,
            boundary,
            energy_window: None,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn with_energy_window(mut self, lo: f64, hi: f64) -> Self {
        self.energy_window = Some((lo, hi));
        self
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.dimension < 2 {
            return Err(ReductionError::InvalidDimension {
                dimension: self.dimension,
            });
        }
        self.grid
            .validate()
            .map_err(|e| ReductionError::InvalidGrid(e.to_string()))?;
        if let Some((lo, hi)) = self.energy_window {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(ReductionError::InvalidGrid(format!(
                    "energy window [{lo}, {hi}] is not a finite nonempty interval"
                )));
            }
        }
        Ok(())
    }

    pub fn effective_model(&self) -> Result<EffectiveModel, ReductionError> {
        build_effective_model(self.dimension, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::PotentialTerm;
    use proptest::prelude::*;

    #[test]
    fn grand_orbital_matches_hand_values() {
        assert_eq!(grand_orbital(3, 2).unwrap(), 2.0);
        assert_eq!(grand_orbital(7, 0).unwrap(), 2.0);
        assert_eq!(grand_orbital(4, 1).unwrap(), 1.5);
        // D = 3 collapses to ordinary angular momentum.
        for l in 0..40 {
            assert_eq!(grand_orbital(3, l).unwrap(), l as f64);
        }
    }

    #[test]
    fn grand_orbital_rejects_low_dimension() {
        assert!(matches!(
            grand_orbital(1, 0),
            Err(ReductionError::InvalidDimension { dimension: 1 })
        ));
        assert!(grand_orbital(2, 0).is_ok());
    }

    #[test]
    fn effective_model_hand_values() {
        let m = build_effective_model(5, 1).unwrap();
        assert_eq!(m.grand_orbital, 2.0);
        assert_eq!(m.centrifugal_coeff, 4.0);
        assert_eq!(m.fictitious_coeff, 2.0);
        assert_eq!(m.dplus2l, 7);

        let m = build_effective_model(3, 0).unwrap();
        assert_eq!(m.grand_orbital, 0.0);
        assert_eq!(m.centrifugal_coeff, 0.0);
        assert_eq!(m.fictitious_coeff, 0.0);
        assert_eq!(m.dplus2l, 3);

        let m = build_effective_model(9, 0).unwrap();
        assert_eq!(m.grand_orbital, 3.0);
        assert_eq!(m.centrifugal_coeff, 0.0);
        assert_eq!(m.fictitious_coeff, 12.0);
        assert_eq!(m.dplus2l, 9);
    }

    #[test]
    fn angular_identity_exact_over_quantum_number_grid() {
        // l(l+D-2) = L(L+1) - (D-1)(D-3)/4, exactly, for all 2<=D<=50, 0<=l<=50.
        for dimension in 2..=50 {
            for l in 0..=50 {
                let m = build_effective_model(dimension, l).unwrap();
                assert_eq!(
                    m.centrifugal_coeff + m.fictitious_coeff,
                    m.angular_strength(),
                    "identity broken at D={dimension}, l={l}"
                );
            }
        }
    }

    #[test]
    fn effective_potential_hand_values() {
        let free = Potential::free();
        let m = build_effective_model(3, 0).unwrap();
        assert_eq!(effective_potential(&m, &free, 1.0).unwrap(), 0.0);

        let m = build_effective_model(5, 1).unwrap();
        assert_eq!(effective_potential(&m, &free, 1.0).unwrap(), 3.0);
        let at2 = effective_potential(&m, &free, 2.0).unwrap();
        assert_eq!(at2, 0.75);
        assert_eq!(at2, (49.0 - 28.0 + 3.0) / (8.0 * 4.0));
    }

    #[test]
    fn effective_potential_rejects_nonpositive_radius() {
        let m = build_effective_model(3, 0).unwrap();
        let v = Potential::from_terms(vec![PotentialTerm::Coulomb { z: 1.0 }]);
        assert!(effective_potential(&m, &v, 0.0).is_err());
        assert!(effective_potential(&m, &v, -1.0).is_err());
    }

    #[test]
    fn reduce_wavefunction_hand_values() {
        let u = reduce_wavefunction(&[1.0], &[1.0], 3).unwrap();
        assert_eq!(u[0], 1.0);
        // R = 1/r at r = 2 in D=3 gives u = r R = 1.
        let u = reduce_wavefunction(&[2.0], &[0.5], 3).unwrap();
        assert_eq!(u[0], 1.0);
        // R = r at r = 4 in D=5 gives u = r^2 R = 64.
        let u = reduce_wavefunction(&[4.0], &[4.0], 5).unwrap();
        assert_eq!(u[0], 64.0);
    }

    proptest! {
        #[test]
        fn reduce_then_restore_is_identity(
            dimension in 2u32..20,
            radii in proptest::collection::vec(1e-6f64..1e3, 1..40),
        ) {
            let values: Vec<f64> = radii.iter().map(|r| (r * 0.7).sin() + 1.5).collect();
            let reduced = reduce_wavefunction(&radii, &values, dimension).unwrap();
            let back = restore_wavefunction(&radii, &reduced, dimension).unwrap();
            for (orig, rec) in values.iter().zip(&back) {
                prop_assert!((orig - rec).abs() <= 1e-14 * orig.abs().max(1.0));
            }
        }

        #[test]
        fn centrifugal_depends_only_on_dplus2l(
            dimension in 2u32..30,
            l in 0u32..15,
            shift in 1u32..6,
            r in 1e-3f64..1e3,
        ) {
            // Trade two units of dimension for one unit of l: D+2l fixed.
            let a = build_effective_model(dimension + 2 * shift, l).unwrap();
            let b = build_effective_model(dimension, l + shift).unwrap();
            prop_assert_eq!(a.dplus2l, b.dplus2l);
            let ca = a.centrifugal_term(r);
            let cb = b.centrifugal_term(r);
            prop_assert!((ca - cb).abs() <= 1e-14 * ca.abs().max(1e-300));
            // Both agree with the (D+2l)^2 - 4(D+2l) + 3 form.
            let via_combo = a.centrifugal_term_dplus2l(r);
            prop_assert!((ca - via_combo).abs() <= 1e-14 * ca.abs().max(1e-300));
        }
    }
}
