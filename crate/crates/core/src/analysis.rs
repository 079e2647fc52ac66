//! Errors, convergence rates and ε-uniform aggregates over a study grid.
//!
//! * `E_ε^N = max_i |v(ξ_i) − y_i|` (or the double-mesh estimate when no exact
//!   solution is known),
//! * `P_ε^N = log₂(E_ε^N / E_ε^{2N})`,
//! * `E^N = max_ε E_ε^N` and `P^N = log₂(E^N / E^{2N})`.

use crate::error::{Error, Result};
use crate::linsolve::SolutionVector;
use crate::mesh::{ShishkinMesh, TransitionBranch};
use crate::problems::{ExactSolution, ProblemSpec};
use crate::{solve_with_tol, SolverChoice, DEFAULT_TOL};

/// Discrete max-norm error against an exact solution.
pub fn max_error(y: &SolutionVector, exact: &ExactSolution, mesh: &ShishkinMesh, epsilon: f64) -> f64 {
    mesh.nodes()
        .iter()
        .zip(&y.values)
        .fold(0.0f64, |m, (&x, &yi)| m.max((exact.eval(x, epsilon) - yi).abs()))
}

/// `log₂(e_n / e_2n)`, or `None` when either error is not positive.
pub fn rate(e_n: f64, e_2n: f64) -> Option<f64> {
    if e_n > 0.0 && e_2n > 0.0 && e_n.is_finite() && e_2n.is_finite() {
        Some((e_n / e_2n).ln() / std::f64::consts::LN_2)
    } else {
        None
    }
}

/// Double-mesh error estimate `max_i |y^N_i − y^{2N}(ξ_i)|` over the coarse nodes,
/// solved with LU.
pub fn double_mesh_error(problem: &ProblemSpec, epsilon: f64, n: usize) -> Result<f64> {
    double_mesh_error_with(problem, epsilon, n, SolverChoice::Lu, DEFAULT_TOL).map(|(e, _)| e)
}

/// Double-mesh estimate with a chosen solver. The second value is the larger
/// of the two cross-check gaps when `solver` is [`SolverChoice::Both`].
pub fn double_mesh_error_with(
    problem: &ProblemSpec,
    epsilon: f64,
    n: usize,
    solver: SolverChoice,
    tol: f64,
) -> Result<(f64, Option<f64>)> {
    if n % 2 != 0 {
        return Err(Error::invalid("n", format!("must be even, got {n}")));
    }
    let coarse = solve_with_tol(problem, epsilon, n, solver, tol)?;
    let fine = solve_with_tol(problem, epsilon, 2 * n, solver, tol)?;
    let same_transition = coarse.mesh.rho() == fine.mesh.rho();
    let estimate = coarse
        .mesh
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let y_fine = if same_transition {
                fine.solution.values[2 * i]
            } else {
                fine.mesh.interpolate(&fine.solution.values, x)
            };
            (coarse.solution.values[i] - y_fine).abs()
        })
        .fold(0.0, f64::max);
    let gap = match (coarse.cross_check_gap(), fine.cross_check_gap()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    Ok((estimate, gap))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMethod {
    ExactSolution,
    DoubleMesh,
}

impl std::fmt::Display for ErrorMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ErrorMethod::ExactSolution => "exact-solution",
            ErrorMethod::DoubleMesh => "double-mesh",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyOptions {
    pub solver: SolverChoice,
    pub tol: f64,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            solver: SolverChoice::Lu,
            tol: DEFAULT_TOL,
        }
    }
}

/// Per-cell bookkeeping besides the error itself.
#[derive(Debug, Clone, PartialEq)]
pub struct CellInfo {
    pub rho: f64,
    pub branch: TransitionBranch,
    /// `‖y_LU − y_FP‖∞` when both solvers ran.
    pub cross_check_gap: Option<f64>,
    /// Fixed-point iterations when that path ran.
    pub iterations: Option<usize>,
    /// Interior nodes with `θ_i ≤ 0`.
    pub nonpositive_theta: Vec<usize>,
}

/// Rows are indexed by ε, columns by N, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub epsilons: Vec<f64>,
    pub ns: Vec<usize>,
    pub errors: Vec<Vec<f64>>,
    /// `rates[e][k]` pairs `ns[k]` with `ns[k+1]`; defined only when
    /// `ns[k+1] = 2 ns[k]` and both errors are positive.
    pub rates: Vec<Vec<Option<f64>>>,
    pub uniform_errors: Vec<f64>,
    pub uniform_rates: Vec<Option<f64>>,
    pub method: ErrorMethod,
    pub cells: Vec<Vec<CellInfo>>,
}

impl ConvergenceReport {
    /// Largest cross-solver gap over the grid, if the study ran both solvers.
    pub fn max_cross_check_gap(&self) -> Option<f64> {
        self.cells.iter().flatten().map(|c| c.cross_check_gap).try_fold(0.0f64, |m, g| g.map(|g| f64::max(m, g)))
    }

    /// ε values whose error row is not monotonically decreasing in N.
    pub fn non_monotone_rows(&self) -> Vec<f64> {
        self.epsilons
            .iter()
            .zip(&self.errors)
            .filter(|(_, row)| row.windows(2).any(|w| w[1] > w[0]))
            .map(|(&eps, _)| eps)
            .collect()
    }

    /// ε values whose transition point changes branch across the N grid.
    pub fn branch_switch_rows(&self) -> Vec<f64> {
        self.epsilons
            .iter()
            .zip(&self.cells)
            .filter(|(_, row)| row.windows(2).any(|w| w[0].branch != w[1].branch))
            .map(|(&eps, _)| eps)
            .collect()
    }

    pub fn error(&self, epsilon: f64, n: usize) -> Option<f64> {
        let e = self.epsilons.iter().position(|&x| x == epsilon)?;
        let k = self.ns.iter().position(|&x| x == n)?;
        Some(self.errors[e][k])
    }
}

fn rates_for(ns: &[usize], errors: &[f64]) -> Vec<Option<f64>> {
    (0..ns.len())
        .map(|k| {
            if k + 1 < ns.len() && ns[k + 1] == 2 * ns[k] {
                rate(errors[k], errors[k + 1])
            } else {
                None
            }
        })
        .collect()
}

struct Cell {
    error: f64,
    info: CellInfo,
}

fn run_cell(
    problem: &ProblemSpec,
    exact: Option<&ExactSolution>,
    epsilon: f64,
    n: usize,
    opts: StudyOptions,
) -> Result<Cell> {
    let run = solve_with_tol(problem, epsilon, n, opts.solver, opts.tol)?;
    let iterations = match opts.solver {
        SolverChoice::Lu => None,
        SolverChoice::FixedPoint => Some(run.solution.iterations),
        SolverChoice::Both => run.cross_check.as_ref().map(|s| s.iterations),
    };
    let (error, cross_check_gap) = match exact {
        Some(exact) => (max_error(&run.solution, exact, &run.mesh, epsilon), run.cross_check_gap()),
        None => double_mesh_error_with(problem, epsilon, n, opts.solver, opts.tol)?,
    };
    Ok(Cell {
        error,
        info: CellInfo {
            rho: run.mesh.rho(),
            branch: run.mesh.branch(),
            cross_check_gap,
            iterations,
            nonpositive_theta: run.coeffs.nonpositive_theta(),
        },
    })
}

/// Runs every `(ε, N)` cell and assembles the report. Uses the exact solution
/// when given, the double-mesh estimate otherwise.
pub fn run_study(
    problem: &ProblemSpec,
    exact: Option<&ExactSolution>,
    epsilons: &[f64],
    ns: &[usize],
    opts: StudyOptions,
) -> Result<ConvergenceReport> {
    if epsilons.is_empty() {
        return Err(Error::invalid("epsilon_list", "must not be empty"));
    }
    if ns.is_empty() {
        return Err(Error::invalid("n_list", "must not be empty"));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 4 || n % 2 != 0) {
        return Err(Error::invalid("n_list", format!("entries must be even and >= 4, got {n}")));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("n_list", "must be strictly ascending"));
    }

    let jobs: Vec<(f64, usize)> = epsilons.iter().flat_map(|&e| ns.iter().map(move |&n| (e, n))).collect();
    let run = |&(epsilon, n): &(f64, usize)| {
        run_cell(problem, exact, epsilon, n, opts).map_err(|source| Error::StudyCell {
            epsilon,
            n,
            source: Box::new(source),
        })
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Result<Cell>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<Cell>> = jobs.iter().map(run).collect();

    let mut cells_flat = Vec::with_capacity(results.len());
    for r in results {
        cells_flat.push(r?);
    }

    let width = ns.len();
    let mut errors = Vec::with_capacity(epsilons.len());
    let mut cells = Vec::with_capacity(epsilons.len());
    let mut it = cells_flat.into_iter();
    for _ in epsilons {
        let row: Vec<Cell> = it.by_ref().take(width).collect();
        errors.push(row.iter().map(|c| c.error).collect::<Vec<_>>());
        cells.push(row.into_iter().map(|c| c.info).collect::<Vec<_>>());
    }

    let rates = errors.iter().map(|row| rates_for(ns, row)).collect();
    let uniform_errors: Vec<f64> =
        (0..width).map(|k| errors.iter().map(|row| row[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let uniform_rates = rates_for(ns, &uniform_errors);

    Ok(ConvergenceReport {
        epsilons: epsilons.to_vec(),
        ns: ns.to_vec(),
        errors,
        rates,
        uniform_errors,
        uniform_rates,
        method: if exact.is_some() {
            ErrorMethod::ExactSolution
        } else {
            ErrorMethod::DoubleMesh
        },
        cells,
    })
}
