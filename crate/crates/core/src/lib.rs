//! Exponentially fitted finite-difference solver for singularly perturbed
//! Fredholm integro-differential equations
//!
//! ```text
//! ε v''(ξ) + a(ξ) v'(ξ) = f(ξ) + λ ∫₀ᵀ K(ξ, η) v(η) dη,   0 < ξ < T,
//! v(0) = α,  v(T) = β,
//! ```
//!
//! discretized on a Shishkin mesh. The pipeline is
//! [`mesh`] → [`scheme`] (fitted coefficients and the quadrature kernel
//! matrix) → [`assembly`] (dense system) → [`linsolve`] (LU or fixed-point),
//! with [`analysis`] running error and convergence studies on top.
//!
//! ```
//! use spfide::{problems, solve, SolverChoice};
//!
//! let (problem, exact) = problems::example1();
//! let eps = 2f64.powi(-12);
//! let run = solve(&problem, eps, 64, SolverChoice::Lu).unwrap();
//! let err = spfide::analysis::max_error(&run.solution, &exact, &run.mesh, eps);
//! assert!(err < 2e-4);
//! ```

pub mod analysis;
pub mod assembly;
pub mod error;
pub mod linsolve;
pub mod mesh;
pub mod problems;
pub mod scheme;

pub use analysis::{run_study, ConvergenceReport, ErrorMethod, StudyOptions};
pub use assembly::{assemble, DenseSystem};
pub use error::{Error, Result};
pub use linsolve::{fixed_point_solve, lu_solve, SolutionVector, SolverTag};
pub use mesh::{build_shishkin, ShishkinMesh};
pub use problems::{ExactSolution, ProblemSpec};
pub use scheme::{bernoulli, compute_fitted, compute_kernel_matrix, FittedCoefficients, KernelMatrix};

/// Default stopping tolerance of the fixed-point iteration.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap of the fixed-point iteration.
pub const DEFAULT_MAX_ITER: usize = 200;

/// Which linear solver path to use for a discretized problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Lu,
    FixedPoint,
    /// Solve with both; LU is reported, fixed-point is the cross-check.
    Both,
}

impl std::str::FromStr for SolverChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lu" => Ok(SolverChoice::Lu),
            "fixed-point" => Ok(SolverChoice::FixedPoint),
            "both" => Ok(SolverChoice::Both),
            other => Err(Error::invalid(
                "solver",
                format!("expected one of lu, fixed-point, both; got {other:?}"),
            )),
        }
    }
}

/// Everything produced by one discretize-and-solve pass.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub epsilon: f64,
    pub mesh: ShishkinMesh,
    pub coeffs: FittedCoefficients,
    pub kernel: KernelMatrix,
    pub system: DenseSystem,
}

impl Discretization {
    pub fn new(problem: &ProblemSpec, epsilon: f64, n: usize) -> Result<Self> {
        let mesh = build_shishkin(n, epsilon, problem.a_bar(), problem.t_end())?;
        let coeffs = compute_fitted(&mesh, problem, epsilon)?;
        let kernel = compute_kernel_matrix(&mesh, problem, &coeffs)?;
        let system = assemble(&mesh, &coeffs, &kernel, problem, epsilon)?;
        Ok(Self {
            epsilon,
            mesh,
            coeffs,
            kernel,
            system,
        })
    }
}

/// A solved discretization. `cross_check` holds the fixed-point solution
/// when [`SolverChoice::Both`] was requested.
#[derive(Debug, Clone)]
pub struct SolveRun {
    pub mesh: ShishkinMesh,
    pub coeffs: FittedCoefficients,
    pub solution: SolutionVector,
    pub cross_check: Option<SolutionVector>,
}

impl SolveRun {
    /// `‖y_LU − y_FP‖∞` when both paths ran.
    pub fn cross_check_gap(&self) -> Option<f64> {
        self.cross_check
            .as_ref()
            .map(|fp| linsolve::max_abs_diff(&self.solution.values, &fp.values))
    }
}

/// Discretizes `problem` at `(epsilon, n)` and solves it.
pub fn solve(problem: &ProblemSpec, epsilon: f64, n: usize, solver: SolverChoice) -> Result<SolveRun> {
    solve_with_tol(problem, epsilon, n, solver, DEFAULT_TOL)
}

pub fn solve_with_tol(
    problem: &ProblemSpec,
    epsilon: f64,
    n: usize,
    solver: SolverChoice,
    tol: f64,
) -> Result<SolveRun> {
    let disc = Discretization::new(problem, epsilon, n)?;
    let fixed_point = |d: &Discretization| {
        fixed_point_solve(&d.system, &d.kernel, problem.lambda(), tol, DEFAULT_MAX_ITER)
    };
    let (solution, cross_check) = match solver {
        SolverChoice::Lu => (lu_solve(&disc.system)?, None),
        SolverChoice::FixedPoint => (fixed_point(&disc)?, None),
        SolverChoice::Both => (lu_solve(&disc.system)?, Some(fixed_point(&disc)?)),
    };
    Ok(SolveRun {
        mesh: disc.mesh,
        coeffs: disc.coeffs,
        solution,
        cross_check,
    })
}
