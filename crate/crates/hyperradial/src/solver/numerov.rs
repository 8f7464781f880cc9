//! Fourth-order Numerov propagation of the reduced radial equation
//! -1/2 u'' + V_eff u = E u, written as u'' + f u = 0 with f = 2(E - V_eff).
//!
//! Uniform grids integrate in r directly. Logarithmic grids integrate in
//! x = ln r after the substitution w = u / sqrt(r), which turns the equation
//! into w_xx + [2 r² (E - V_eff) - 1/4] w = 0 with a uniform step in x; the
//! r² factor tames the centrifugal wall at small r.

use crate::reduction::RadialProblem;
use crate::solver::grid::GridSpacing;
use crate::solver::SolverError;

/// Values this large trigger a rescale of the whole partial solution.
const RESCALE_THRESHOLD: f64 = 1e250;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From r_min towards r_max.
    Outward,
    /// From r_max towards r_min.
    Inward,
}

/// One propagated trajectory. `values` covers the requested index span in
/// ascending-r order; the true solution is `values * exp(log_scale)` — the
/// factor is divided out whenever the magnitudes approach overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct NumerovSolution {
    pub values: Vec<f64>,
    pub log_scale: f64,
}

/// The reduced equation sampled on a grid: radii and effective potential,
/// ready for repeated propagation at different trial energies.
pub(crate) struct ReducedEquation {
    pub radii: Vec<f64>,
    pub veff: Vec<f64>,
    pub spacing: GridSpacing,
    pub step: f64,
}

impl ReducedEquation {
    pub fn new(problem: &RadialProblem) -> Result<Self, SolverError> {
        problem.validate()?;
        problem.potential.validate().map_err(|e| {
            SolverError::Reduction(crate::reduction::ReductionError::Potential(e))
        })?;
        let model = problem.effective_model()?;
        let radii = problem.grid.points();
        let mut veff = Vec::with_capacity(radii.len());
        for &r in &radii {
            let v = crate::reduction::effective_potential(&model, &problem.potential, r)?;
            if v.is_nan() {
                return Err(SolverError::NanPotential { r });
            }
            veff.push(v);
        }
        Ok(Self {
            radii,
            veff,
            spacing: problem.grid.spacing,
            step: problem.grid.step(),
        })
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    /// f at grid index i in the integration variable: 2(E - V_eff) on uniform
    /// grids, 2 r² (E - V_eff) - 1/4 on logarithmic ones.
    fn coefficient(&self, i: usize, energy: f64) -> f64 {
        let f = 2.0 * (energy - self.veff[i]);
        match self.spacing {
            GridSpacing::Uniform => f,
            GridSpacing::Logarithmic => self.radii[i] * self.radii[i] * f - 0.25,
        }
    }

    /// Converts initial data (u, u') at grid index i into the integration
    /// variable: identity on uniform grids, (w, dw/dx) on logarithmic ones.
    fn to_internal_start(&self, i: usize, u: f64, du: f64) -> (f64, f64) {
        match self.spacing {
            GridSpacing::Uniform => (u, du),
            GridSpacing::Logarithmic => {
                let r = self.radii[i];
                let w = u / r.sqrt();
                (w, r.sqrt() * du - 0.5 * w)
            }
        }
    }

    /// Maps an internal-variable value at index i back to u.
    fn to_reduced(&self, i: usize, y: f64) -> f64 {
        match self.spacing {
            GridSpacing::Uniform => y,
            GridSpacing::Logarithmic => self.radii[i].sqrt() * y,
        }
    }

    /// Propagates from one end of the grid to `stop` (inclusive). Outward
    /// runs over indices 0..=stop, inward over stop..=n-1; `values` is in
    /// ascending index order either way and holds the internal variable.
    pub fn propagate(
        &self,
        energy: f64,
        start: (f64, f64),
        direction: Direction,
        stop: usize,
    ) -> Propagation {
        let n = self.len();
        let (first, signed_h, span) = match direction {
            Direction::Outward => (0usize, self.step, stop + 1),
            Direction::Inward => (n - 1, -self.step, n - stop),
        };
        debug_assert!(span >= 2 && span <= n);

        let index_at = |k: usize| -> usize {
            match direction {
                Direction::Outward => k,
                Direction::Inward => n - 1 - k,
            }
        };

        let mut values = vec![0.0_f64; span];
        let mut log_scale = 0.0_f64;
        let h = signed_h;
        let h2_12 = h * h / 12.0;

        let (y0, dy0) = self.to_internal_start(first, start.0, start.1);
        let f0 = self.coefficient(index_at(0), energy);
        let f1 = self.coefficient(index_at(1), energy);
        // Taylor start for the second point: y'' = -f y, with f' from a
        // one-sided difference along the stepping direction.
        let fp = (f1 - f0) / h;
        let y1 = y0
            + h * dy0
            + 0.5 * h * h * (-f0 * y0)
            + h * h * h / 6.0 * (-(fp * y0 + f0 * dy0));
        values[0] = y0;
        values[1] = y1;

        let mut c_prev = 1.0 + h2_12 * f0;
        let mut c_curr = 1.0 + h2_12 * f1;
        for k in 2..span {
            let f_next = self.coefficient(index_at(k), energy);
            let c_next = 1.0 + h2_12 * f_next;
            let y_next =
                ((12.0 - 10.0 * c_curr) * values[k - 1] - c_prev * values[k - 2]) / c_next;
            values[k] = y_next;
            c_prev = c_curr;
            c_curr = c_next;

            let magnitude = y_next.abs();
            if magnitude > RESCALE_THRESHOLD {
                for value in &mut values[..=k] {
                    *value /= magnitude;
                }
                log_scale += magnitude.ln();
            }
        }

        if matches!(direction, Direction::Inward) {
            values.reverse();
        }
        Propagation {
            first_index: match direction {
                Direction::Outward => 0,
                Direction::Inward => stop,
            },
            values,
            log_scale,
        }
    }

    /// Converts a propagation's internal values to the reduced wavefunction u.
    pub fn reduced_values(&self, run: &Propagation) -> Vec<f64> {
        run.values
            .iter()
            .enumerate()
            .map(|(k, &y)| self.to_reduced(run.first_index + k, y))
            .collect()
    }
}

/// Raw result of one propagation in the internal integration variable.
#[derive(Debug, Clone)]
pub(crate) struct Propagation {
    /// Grid index of `values[0]`.
    pub first_index: usize,
    pub values: Vec<f64>,
    pub log_scale: f64,
}

/// Counts strict sign changes, skipping exact zeros.
pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let mut nodes = 0;
    let mut prev = 0.0_f64;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if prev != 0.0 && prev.signum() != v.signum() {
            nodes += 1;
        }
        prev = v;
    }
    nodes
}

/// Fourth-order-accurate solution of the reduced equation at energy E from
/// the given (u, u') boundary data, integrated across the whole grid.
///
/// Outward starts at r_min, inward at r_max. Overflow along the way rescales
/// the partial solution and accumulates in `log_scale` rather than failing.
pub fn numerov_integrate(
    problem: &RadialProblem,
    energy: f64,
    start: (f64, f64),
    direction: Direction,
) -> Result<NumerovSolution, SolverError> {
    let equation = ReducedEquation::new(problem)?;
    let n = equation.len();
    let stop = match direction {
        Direction::Outward => n - 1,
        Direction::Inward => 0,
    };
    let run = equation.propagate(energy, start, direction, stop);
    Ok(NumerovSolution {
        values: equation.reduced_values(&run),
        log_scale: run.log_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;
    use crate::solver::{BoundaryMode, GridSpec};

    fn free_problem(grid: GridSpec) -> RadialProblem {
        RadialProblem::new(3, 0, Potential::free(), grid, BoundaryMode::Dirichlet).unwrap()
    }

    #[test]
    fn free_particle_matches_sine() {
        // -1/2 u'' = E u with E = 1/2 has u = sin(r) for u(r_min)=sin(r_min).
        let r_min = 1e-4;
        let grid = GridSpec::uniform(r_min, 10.0, 10_000);
        let problem = free_problem(grid);
        let start = (r_min.sin(), r_min.cos());
        let run = numerov_integrate(&problem, 0.5, start, Direction::Outward).unwrap();
        assert_eq!(run.log_scale, 0.0);
        let radii = grid.points();
        let mut worst = 0.0_f64;
        for (u, r) in run.values.iter().zip(&radii) {
            worst = worst.max((u - r.sin()).abs());
        }
        assert!(worst <= 1e-8, "max abs deviation from sin(r): {worst:.3e}");
    }

    #[test]
    fn oscillator_ground_state_shape() {
        // Harmonic D=3, l=0, E=3/2: u ∝ r e^{-r²/2}. Compare after unit
        // normalization on a grid that stops before the growing admixture
        // seeded by roundoff can contaminate the tail.
        let grid = GridSpec::uniform(1e-4, 4.0, 8_001);
        let problem = RadialProblem::new(
            3,
            0,
            Potential::harmonic(1.0),
            grid,
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        let start = (1e-4, 1.0);
        let run = numerov_integrate(&problem, 1.5, start, Direction::Outward).unwrap();
        let radii = grid.points();
        let exact: Vec<f64> = radii.iter().map(|r| r * (-r * r / 2.0).exp()).collect();
        let numeric = crate::solver::normalize(&run.values, &grid).unwrap();
        let reference = crate::solver::normalize(&exact, &grid).unwrap();
        let peak = reference.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let mut worst = 0.0_f64;
        for (a, b) in numeric.iter().zip(&reference) {
            worst = worst.max((a - b).abs() / peak);
        }
        assert!(worst <= 1e-6, "relative deviation {worst:.3e}");
    }

    #[test]
    fn below_minimum_energy_grows_without_nodes() {
        let grid = GridSpec::uniform(1e-4, 6.0, 2_000);
        let problem = RadialProblem::new(
            3,
            0,
            Potential::harmonic(1.0),
            grid,
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        // E = -1 lies below min V_eff = 0: classically forbidden everywhere.
        let run = numerov_integrate(&problem, -1.0, (1e-4, 1.0), Direction::Outward).unwrap();
        assert_eq!(count_sign_changes(&run.values), 0);
        assert!(run
            .values
            .windows(2)
            .skip(10)
            .all(|w| w[1] >= w[0] * 0.999999));
    }

    #[test]
    fn rescaling_keeps_values_finite_and_records_scale() {
        // Deep forbidden integration overflows without rescaling.
        let grid = GridSpec::uniform(1e-3, 400.0, 40_000);
        let problem = RadialProblem::new(
            3,
            0,
            Potential::harmonic(2.0),
            grid,
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        let run = numerov_integrate(&problem, 1.0, (1e-3, 1.0), Direction::Outward).unwrap();
        assert!(run.values.iter().all(|v| v.is_finite()));
        assert!(run.log_scale > 0.0);
    }

    #[test]
    fn logarithmic_grid_reproduces_sine_where_valid() {
        // Same free-particle check on a log grid; the transformed equation
        // must agree with sin(r) after the sqrt(r) unwinding.
        let r_min = 1e-3;
        let grid = GridSpec::logarithmic(r_min, 10.0, 20_000);
        let problem = free_problem(grid);
        let start = (r_min.sin(), r_min.cos());
        let run = numerov_integrate(&problem, 0.5, start, Direction::Outward).unwrap();
        let radii = grid.points();
        let mut worst = 0.0_f64;
        for (u, r) in run.values.iter().zip(&radii) {
            worst = worst.max((u - r.sin()).abs());
        }
        assert!(worst <= 1e-7, "max abs deviation from sin(r): {worst:.3e}");
    }

    #[test]
    fn inward_integration_returns_ascending_order() {
        let grid = GridSpec::uniform(0.5, 20.0, 1_000);
        let problem = free_problem(grid);
        // Decaying data at r_max for E < 0: u = e^{-r}, u' = -e^{-r}.
        let u_end = (-20.0_f64).exp();
        let run =
            numerov_integrate(&problem, -0.5, (u_end, -u_end), Direction::Inward).unwrap();
        assert_eq!(run.values.len(), 1_000);
        // e^{-r} grows towards small r; first entries largest.
        assert!(run.values[0] > run.values[500]);
        let radii = grid.points();
        for (idx, r) in radii.iter().enumerate().step_by(111) {
            let expected = (-r).exp();
            assert!(
                (run.values[idx] - expected).abs() <= 1e-6 * expected,
                "at r={r}: {} vs {}",
                run.values[idx],
                expected
            );
        }
    }
}
