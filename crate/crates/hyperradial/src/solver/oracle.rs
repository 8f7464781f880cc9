//! Independent cross-check of the shooting solver: symmetric tridiagonal
//! finite differences with Dirichlet walls at both grid ends, eigenvalues by
//! Sturm-sequence bisection.
//!
//! The discretization is the plain second-order one,
//! -1/2 (u_{i+1} - 2u_i + u_{i-1})/h² + V_eff(r_i) u_i = E u_i on interior
//! points of a uniform grid, so agreement with the Numerov path is O(h²).

use crate::reduction::RadialProblem;
use crate::solver::{BoundaryMode, SolverError};

/// Counts eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below lambda via the LDLT pivot signs.
pub(crate) fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0_f64;
    for (i, &d) in diag.iter().enumerate() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        let mut pivot = d - lambda - e2 / q;
        if pivot == 0.0 {
            pivot = f64::MIN_POSITIVE;
        }
        if pivot < 0.0 {
            count += 1;
        }
        q = pivot;
    }
    count
}

/// Lowest k eigenvalues by bisection on the Sturm count, ascending.
pub(crate) fn lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    if n == 0 || k == 0 {
        return Vec::new();
    }
    // Gershgorin enclosure of the whole spectrum.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let e_left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let e_right = if i < n - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - e_left - e_right);
        hi = hi.max(diag[i] + e_left + e_right);
    }
    lo -= 1.0;
    hi += 1.0;

    let wanted = k.min(n);
    let mut eigenvalues = Vec::with_capacity(wanted);
    for index in 0..wanted {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if (b - a) <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
                break;
            }
            if sturm_count(diag, off, mid) <= index {
                a = mid;
            } else {
                b = mid;
            }
        }
        eigenvalues.push(0.5 * (a + b));
    }
    eigenvalues
}

pub(crate) struct FdSystem {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub step: f64,
}

/// Builds the interior-point tridiagonal system on a uniform grid with the
/// problem's bounds and point count.
pub(crate) fn fd_system(problem: &RadialProblem) -> Result<FdSystem, SolverError> {
    problem.validate()?;
    let n = problem.grid.n;
    let h = (problem.grid.r_max - problem.grid.r_min) / (n - 1) as f64;
    let model = problem.effective_model()?;
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let r = problem.grid.r_min + i as f64 * h;
        let v = crate::reduction::effective_potential(&model, &problem.potential, r)?;
        if v.is_nan() {
            return Err(SolverError::NanPotential { r });
        }
        diag.push(inv_h2 + v);
    }
    let off = vec![-0.5 * inv_h2; n.saturating_sub(3)];
    Ok(FdSystem { diag, off, step: h })
}

/// Lowest k eigenvalues of the Dirichlet finite-difference Hamiltonian.
///
/// Regardless of the problem's grid spacing, the discretization lives on a
/// uniform grid with the same r_min, r_max and point count — it is an
/// independent oracle, not a re-run of the shooting path.
pub fn fd_oracle(problem: &RadialProblem, k: usize) -> Result<Vec<f64>, SolverError> {
    if !matches!(problem.boundary, BoundaryMode::Dirichlet) {
        return Err(SolverError::OracleRequiresDirichlet);
    }
    let system = fd_system(problem)?;
    Ok(lowest_eigenvalues(&system.diag, &system.off, k))
}

/// Cheap ground-state estimate used to size automatic energy windows; the
/// grid is coarsened to keep it negligible next to the shooting solve.
pub(crate) fn ground_state_estimate(problem: &RadialProblem) -> Result<f64, SolverError> {
    let mut coarse = problem.clone();
    coarse.grid.n = coarse.grid.n.min(4001);
    let system = fd_system(&coarse)?;
    Ok(lowest_eigenvalues(&system.diag, &system.off, 1)[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;
    use crate::solver::GridSpec;
    use std::f64::consts::PI;

    #[test]
    fn sturm_count_two_by_two() {
        // [[1, -1], [-1, 3]]: eigenvalues 2 ± sqrt(2).
        let d = [1.0, 3.0];
        let e = [-1.0];
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
        assert_eq!(sturm_count(&d, &e, 1.0), 1);
        assert_eq!(sturm_count(&d, &e, 4.0), 2);
        let evs = lowest_eigenvalues(&d, &e, 2);
        assert!((evs[0] - (2.0 - 2.0_f64.sqrt())).abs() < 1e-12);
        assert!((evs[1] - (2.0 + 2.0_f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn hydrogen_ground_state_to_grid_accuracy() {
        let problem = RadialProblem::new(
            3,
            0,
            Potential::coulomb(1.0),
            GridSpec::uniform(1e-5, 80.0, 4_000),
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        let evs = fd_oracle(&problem, 1).unwrap();
        assert!(
            (evs[0] + 0.5).abs() <= 1e-3,
            "fd hydrogen ground {} vs -0.5",
            evs[0]
        );
    }

    #[test]
    fn oscillator_ladder_to_grid_accuracy() {
        let problem = RadialProblem::new(
            3,
            0,
            Potential::harmonic(1.0),
            GridSpec::uniform(1e-5, 12.0, 6_000),
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        let evs = fd_oracle(&problem, 3).unwrap();
        for (i, expected) in [1.5, 3.5, 5.5].iter().enumerate() {
            assert!(
                (evs[i] - expected).abs() <= 1e-3,
                "level {i}: {} vs {expected}",
                evs[i]
            );
        }
    }

    #[test]
    fn particle_in_a_box_ground_level() {
        // V = 0, L = 0 on (0, 1) with Dirichlet ends: E_1 = pi²/2.
        let problem = RadialProblem::new(
            3,
            0,
            Potential::free(),
            GridSpec::uniform(1e-9, 1.0, 4_000),
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        let evs = fd_oracle(&problem, 1).unwrap();
        assert!(
            (evs[0] - PI * PI / 2.0).abs() <= 1e-3,
            "box ground {} vs {}",
            evs[0],
            PI * PI / 2.0
        );
    }

    #[test]
    fn oracle_rejects_sae_boundary() {
        let problem = RadialProblem {
            dimension: 3,
            l: 0,
            potential: Potential::coulomb(1.0),
            grid: GridSpec::uniform(1e-4, 40.0, 512),
            boundary: BoundaryMode::Sae { tau: 0.5 },
            energy_window: None,
        };
        assert!(matches!(
            fd_oracle(&problem, 1),
            Err(SolverError::OracleRequiresDirichlet)
        ));
    }

    #[test]
    fn eigenvalues_sorted_and_count_consistent() {
        let problem = RadialProblem::new(
            5,
            1,
            Potential::harmonic(1.0),
            GridSpec::uniform(1e-4, 10.0, 2_000),
            BoundaryMode::Dirichlet,
        )
        .unwrap();
        let evs = fd_oracle(&problem, 5).unwrap();
        assert!(evs.windows(2).all(|w| w[0] < w[1]));
        let system = fd_system(&problem).unwrap();
        for (i, &ev) in evs.iter().enumerate() {
            assert!(sturm_count(&system.diag, &system.off, ev + 1e-6) > i);
        }
    }
}
