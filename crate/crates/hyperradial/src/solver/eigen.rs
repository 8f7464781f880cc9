//! Bound-state eigenvalues by shooting.
//!
//! The node count of the outward solution is a non-decreasing step function
//! of the trial energy (Sturm oscillation), so the n_r-th eigenvalue is the
//! energy at which the count jumps from n_r to n_r+1. We bisect that
//! transition to 1e-12 absolute, then polish with regula falsi on the
//! log-derivative mismatch between the outward solution and an inward
//! solution started with decaying data at r_max, both matched at the
//! outermost classical turning point — each integration then runs in its
//! stable direction.

use rayon::prelude::*;

use crate::asymptotics::{indicial_report, series_start, IndicialReport, SeriesBranch};
use crate::potentials::PotentialClass;
use crate::reduction::RadialProblem;
use crate::solver::numerov::{count_sign_changes, Direction, Propagation, ReducedEquation};
use crate::solver::{ground_state_estimate, normalize, BoundLevel, BoundaryMode, Spectrum};
use crate::solver::SolverError;

const BISECTION_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 240;
const MAX_POLISH: usize = 60;

struct Shooter {
    equation: ReducedEquation,
    start: (f64, f64),
}

struct MatchedShot {
    mismatch: f64,
    nodes: usize,
    internal: Option<Vec<f64>>,
}

impl Shooter {
    fn prepare(problem: &RadialProblem) -> Result<(Self, IndicialReport), SolverError> {
        problem.validate()?;
        let class = problem.potential.classify()?;
        if matches!(class, PotentialClass::Singular) {
            return Err(SolverError::SingularPotential);
        }
        let report = indicial_report(problem.dimension, problem.l, &class)?;
        if report.oscillatory {
            return Err(SolverError::OscillatoryCollapse);
        }
        let tau = problem.boundary.mixing();
        if matches!(problem.boundary, BoundaryMode::Sae { .. }) && !report.extra_solution_allowed {
            return Err(SolverError::SaeNotPermitted);
        }
        let equation = ReducedEquation::new(problem)?;
        let start = series_start(&report, SeriesBranch::Standard, problem.grid.r_min, tau)?;
        Ok((Self { equation, start }, report))
    }

    fn len(&self) -> usize {
        self.equation.len()
    }

    /// Interior sign changes of the outward solution across the whole grid.
    fn outward_node_count(&self, energy: f64) -> usize {
        let run = self
            .equation
            .propagate(energy, self.start, Direction::Outward, self.len() - 1);
        count_sign_changes(&run.values)
    }

    /// Outermost classical turning point at this energy, clamped into the
    /// grid interior so the five-point match always fits.
    fn turning_index(&self, energy: f64) -> usize {
        let n = self.len();
        let found = self
            .equation
            .veff
            .iter()
            .rposition(|&v| v <= energy)
            .unwrap_or_else(|| {
                // Below the whole effective potential; match near its minimum.
                self.equation
                    .veff
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(i, _)| i)
                    .unwrap_or(n / 2)
            });
        found.clamp(2, n - 3)
    }

    fn inward_start(&self, energy: f64) -> (f64, f64) {
        let r_max = *self.equation.radii.last().expect("nonempty grid");
        let kappa = (2.0 * energy.abs()).sqrt().max(1e-8);
        let u = (-kappa * r_max).max(-600.0).exp();
        (u, -kappa * u)
    }

    fn matched(&self, energy: f64, want_wave: bool) -> MatchedShot {
        let m = self.turning_index(energy);
        let outward = self
            .equation
            .propagate(energy, self.start, Direction::Outward, m + 1);
        let inward = self.equation.propagate(
            energy,
            self.inward_start(energy),
            Direction::Inward,
            m - 1,
        );
        // inward.values[k] sits at grid index m - 1 + k.
        let yo = &outward.values;
        let yi = &inward.values;
        let h = self.equation.step;
        let d_out = (yo[m + 1] - yo[m - 1]) / (2.0 * h * guard(yo[m]));
        let d_in = (yi[2] - yi[0]) / (2.0 * h * guard(yi[1]));
        let mismatch = (d_out - d_in) / (1.0 + d_out.abs() + d_in.abs());

        let mut stitched = Vec::new();
        let ratio = yo[m] / guard(yi[1]);
        let n = self.len();
        stitched.extend_from_slice(&yo[..=m]);
        stitched.extend(yi[2..].iter().map(|y| y * ratio));
        debug_assert_eq!(stitched.len(), n);
        let nodes = count_sign_changes(&stitched);
        MatchedShot {
            mismatch,
            nodes,
            internal: want_wave.then_some(stitched),
        }
    }

    fn wavefunction(&self, internal: Vec<f64>) -> Vec<f64> {
        self.equation.reduced_values(&Propagation {
            first_index: 0,
            values: internal,
            log_scale: 0.0,
        })
    }

    /// Default search window: a coarse finite-difference estimate of the
    /// Dirichlet ground state anchors the bottom (deepened when an SAE
    /// mixing can pull hydrino states below it); the top is the effective
    /// potential at r_max, beyond which nothing decays on this grid.
    fn auto_window(
        &self,
        problem: &RadialProblem,
        report: &IndicialReport,
    ) -> Result<(f64, f64), SolverError> {
        let veff = &self.equation.veff;
        let v_min = veff.iter().copied().fold(f64::INFINITY, f64::min);
        let v_last = *veff.last().expect("nonempty grid");
        let ground = ground_state_estimate(problem)?;
        let tau = problem.boundary.mixing();
        let deepen = if tau != 0.0 {
            let p = report.p.expect("real P under SAE");
            let ratio = (0.5 + p) / (0.5 - p).max(0.05);
            2.0 * ratio * ratio
        } else {
            1.0
        };
        let mut lo = if ground < 0.0 { ground * deepen } else { ground };
        lo -= 0.5 * ground.abs() + 0.1;
        lo = lo.max(v_min);
        let hi = v_last - 1e-9 * (1.0 + v_last.abs());
        Ok((lo, hi))
    }
}

fn guard(denominator: f64) -> f64 {
    if denominator.abs() < 1e-280 {
        if denominator < 0.0 {
            -1e-280
        } else {
            1e-280
        }
    } else {
        denominator
    }
}

/// Energy and normalized reduced wavefunction of the level with n_r interior
/// nodes, under the problem's boundary data.
pub fn eigen_solve(problem: &RadialProblem, n_r: usize) -> Result<BoundLevel, SolverError> {
    let (shooter, report) = Shooter::prepare(problem)?;
    let (lo, hi) = match problem.energy_window {
        Some(window) => window,
        None => shooter.auto_window(problem, &report)?,
    };
    if !(lo < hi) {
        return Err(SolverError::NoBoundState {
            n_r,
            lo,
            hi,
            reason: "energy window is empty; the grid tail admits no decaying states".into(),
        });
    }

    let target = n_r + 1;
    if shooter.outward_node_count(lo) > n_r {
        return Err(SolverError::NoBoundState {
            n_r,
            lo,
            hi,
            reason: format!(
                "window bottom already oscillates with more than {n_r} nodes"
            ),
        });
    }
    if shooter.outward_node_count(hi) < target {
        return Err(SolverError::NoBoundState {
            n_r,
            lo,
            hi,
            reason: format!(
                "window top reaches only {} nodes; enlarge r_max or the window",
                shooter.outward_node_count(hi)
            ),
        });
    }

    // Bisect the node-count transition n_r -> n_r + 1.
    let mut a = lo;
    let mut b = hi;
    for _ in 0..MAX_BISECTIONS {
        let width_tol = BISECTION_TOL.max(4.0 * f64::EPSILON * a.abs().max(b.abs()));
        if b - a <= width_tol {
            break;
        }
        let mid = 0.5 * (a + b);
        if shooter.outward_node_count(mid) >= target {
            b = mid;
        } else {
            a = mid;
        }
    }

    // Polish inside the bracket with regula falsi on the matching mismatch.
    fn better(candidate: &MatchedShot, current: &MatchedShot, n_r: usize) -> bool {
        candidate.nodes == n_r
            && candidate.mismatch.is_finite()
            && (current.nodes != n_r || candidate.mismatch.abs() < current.mismatch.abs())
    }
    let mut best_energy = 0.5 * (a + b);
    let mut best_shot = shooter.matched(best_energy, false);
    let shot_a = shooter.matched(a, false);
    let shot_b = shooter.matched(b, false);
    for (energy, shot) in [(a, &shot_a), (b, &shot_b)] {
        if better(shot, &best_shot, n_r) {
            best_energy = energy;
            best_shot = MatchedShot {
                mismatch: shot.mismatch,
                nodes: shot.nodes,
                internal: None,
            };
        }
    }
    if shot_a.mismatch.is_finite()
        && shot_b.mismatch.is_finite()
        && shot_a.mismatch * shot_b.mismatch < 0.0
    {
        let (mut ea, mut eb) = (a, b);
        let (mut ga, mut gb) = (shot_a.mismatch, shot_b.mismatch);
        for _ in 0..MAX_POLISH {
            let denominator = gb - ga;
            let e_new = if denominator.abs() > 0.0 {
                (eb - (eb - ea) * gb / denominator).clamp(ea.min(eb), ea.max(eb))
            } else {
                0.5 * (ea + eb)
            };
            let shot = shooter.matched(e_new, false);
            let g_new = shot.mismatch;
            if better(&shot, &best_shot, n_r) {
                best_energy = e_new;
                best_shot = shot;
            }
            if !g_new.is_finite() {
                break;
            }
            if ga * g_new <= 0.0 {
                eb = e_new;
                gb = g_new;
            } else {
                ea = e_new;
                ga = g_new;
            }
            if (eb - ea).abs() <= 1e-10 * best_energy.abs().max(1e-12) {
                break;
            }
        }
    }

    let final_shot = shooter.matched(best_energy, true);
    if final_shot.nodes != n_r {
        return Err(SolverError::ConvergenceFailure {
            details: format!(
                "converged energy {best_energy:.12e} yields {} interior nodes, wanted {n_r}",
                final_shot.nodes
            ),
        });
    }
    let wave = shooter.wavefunction(final_shot.internal.expect("wave requested"));
    let u = normalize(&wave, &problem.grid)?;
    Ok(BoundLevel {
        n_r,
        energy: best_energy,
        nodes: final_shot.nodes,
        u,
    })
}

/// Solves the lowest `count` levels; the solves are independent and run in
/// parallel.
pub fn solve_levels(problem: &RadialProblem, count: usize) -> Result<Spectrum, SolverError> {
    let levels = (0..count)
        .into_par_iter()
        .map(|n_r| eigen_solve(problem, n_r))
        .collect::<Result<Vec<_>, _>>()?;
    for pair in levels.windows(2) {
        if !(pair[0].energy < pair[1].energy) {
            return Err(SolverError::ConvergenceFailure {
                details: format!(
                    "levels out of order: E({}) = {:.12e} >= E({}) = {:.12e}",
                    pair[0].n_r, pair[0].energy, pair[1].n_r, pair[1].energy
                ),
            });
        }
    }
    Ok(Spectrum {
        radii: problem.grid.points(),
        levels,
    })
}
