//! Browser bindings for the solver: a solution profile, the Shishkin mesh and
//! a small convergence study. Each operation has a plain Rust entry point
//! (`*_inner`) returning `Result<_, String>`; the exported wrappers only turn
//! the error into a `JsError`.

use spfide::analysis::{run_study, StudyOptions};
use spfide::problems::builtin;
use spfide::{build_shishkin, solve, SolverChoice};
use wasm_bindgen::prelude::*;

/// Largest N the page may request; dense solves grow like N³.
pub const MAX_N: usize = 2048;

fn check_n(n: usize) -> Result<(), String> {
    if n > MAX_N {
        Err(format!("N = {n} is above the demo limit of {MAX_N}"))
    } else {
        Ok(())
    }
}

fn epsilon_from_exponent(k: i32) -> Result<f64, String> {
    if (0..=60).contains(&k) {
        Ok(2f64.powi(-k))
    } else {
        Err(format!("epsilon exponent must lie in 0..=60, got {k}"))
    }
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Profile {
    nodes: Vec<f64>,
    y: Vec<f64>,
    exact: Vec<f64>,
    rho: f64,
    max_error: f64,
}

#[wasm_bindgen]
impl Profile {
    pub fn nodes(&self) -> Vec<f64> {
        self.nodes.clone()
    }

    pub fn y(&self) -> Vec<f64> {
        self.y.clone()
    }

    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn rho(&self) -> f64 {
        self.rho
    }

    #[wasm_bindgen(getter)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }
}

/// Solves `problem` at `ε = 2^-k` on `n` cells.
pub fn profile_inner(problem: &str, k: i32, n: usize) -> Result<Profile, String> {
    check_n(n)?;
    let eps = epsilon_from_exponent(k)?;
    let (p, exact) = builtin(problem).ok_or_else(|| format!("unknown problem {problem:?}"))?;
    let run = solve(&p, eps, n, SolverChoice::Lu).map_err(|e| e.to_string())?;
    let nodes = run.mesh.nodes().to_vec();
    let exact: Vec<f64> = nodes.iter().map(|&x| exact.eval(x, eps)).collect();
    let y = run.solution.values;
    let max_error = y.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
    Ok(Profile {
        nodes,
        y,
        exact,
        rho: run.mesh.rho(),
        max_error,
    })
}

#[wasm_bindgen]
pub fn profile(problem: &str, k: i32, n: usize) -> Result<Profile, JsError> {
    profile_inner(problem, k, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Mesh {
    nodes: Vec<f64>,
    rho: f64,
    h_fine: f64,
    h_coarse: f64,
}

#[wasm_bindgen]
impl Mesh {
    pub fn nodes(&self) -> Vec<f64> {
        self.nodes.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn rho(&self) -> f64 {
        self.rho
    }

    #[wasm_bindgen(getter)]
    pub fn h_fine(&self) -> f64 {
        self.h_fine
    }

    #[wasm_bindgen(getter)]
    pub fn h_coarse(&self) -> f64 {
        self.h_coarse
    }
}

/// Shishkin mesh on `[0, 1]` with `ā = 2`, as used by both built-in problems.
pub fn mesh_inner(k: i32, n: usize) -> Result<Mesh, String> {
    check_n(n)?;
    let eps = epsilon_from_exponent(k)?;
    let m = build_shishkin(n, eps, 2.0, 1.0).map_err(|e| e.to_string())?;
    Ok(Mesh {
        nodes: m.nodes().to_vec(),
        rho: m.rho(),
        h_fine: m.h_fine(),
        h_coarse: m.h_coarse(),
    })
}

#[wasm_bindgen]
pub fn mesh(k: i32, n: usize) -> Result<Mesh, JsError> {
    mesh_inner(k, n).map_err(|e| JsError::new(&e))
}

/// Errors and rates laid out row-major, one row per ε.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Study {
    epsilons: Vec<f64>,
    ns: Vec<u32>,
    errors: Vec<f64>,
    rates: Vec<f64>,
    uniform_errors: Vec<f64>,
}

#[wasm_bindgen]
impl Study {
    pub fn epsilons(&self) -> Vec<f64> {
        self.epsilons.clone()
    }

    pub fn ns(&self) -> Vec<u32> {
        self.ns.clone()
    }

    pub fn errors(&self) -> Vec<f64> {
        self.errors.clone()
    }

    /// `NaN` where no rate is defined (last column, non-doubling steps).
    pub fn rates(&self) -> Vec<f64> {
        self.rates.clone()
    }

    pub fn uniform_errors(&self) -> Vec<f64> {
        self.uniform_errors.clone()
    }
}

/// Convergence study over `ε = 2^-k` for each `k` in `exponents`.
pub fn study_inner(problem: &str, exponents: &[i32], ns: &[u32]) -> Result<Study, String> {
    let ns_usize: Vec<usize> = ns.iter().map(|&n| n as usize).collect();
    for &n in &ns_usize {
        check_n(n)?;
    }
    let eps = exponents.iter().map(|&k| epsilon_from_exponent(k)).collect::<Result<Vec<_>, _>>()?;
    let (p, exact) = builtin(problem).ok_or_else(|| format!("unknown problem {problem:?}"))?;
    let report = run_study(&p, Some(&exact), &eps, &ns_usize, StudyOptions::default()).map_err(|e| e.to_string())?;
    Ok(Study {
        epsilons: report.epsilons,
        ns: ns.to_vec(),
        errors: report.errors.concat(),
        rates: report.rates.iter().flatten().map(|r| r.unwrap_or(f64::NAN)).collect(),
        uniform_errors: report.uniform_errors,
    })
}

#[wasm_bindgen]
pub fn study(problem: &str, exponents: Vec<i32>, ns: Vec<u32>) -> Result<Study, JsError> {
    study_inner(problem, &exponents, &ns).map_err(|e| JsError::new(&e))
}
