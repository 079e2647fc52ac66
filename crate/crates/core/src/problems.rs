//! Problem instances: coefficient `a`, source `f`, kernel `K` (with its
//! ξ-derivative), coupling `λ`, boundary values and domain length.
//!
//! The perturbation parameter ε is not part of a problem; it is supplied at
//! solve time. All function fields must be pure.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type KernelFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["example1", "layer"];

/// Scalar data of a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    pub t_end: f64,
    /// Certified lower bound of `a` on `[0, T]`.
    pub a_bar: f64,
}

#[derive(Clone)]
pub struct ProblemSpec {
    a: ScalarFn,
    f: ScalarFn,
    kernel: KernelFn,
    kernel_dxi: KernelFn,
    params: ProblemParams,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec").field("params", &self.params).finish_non_exhaustive()
    }
}

/// Number of points on which `a >= a_bar` is spot-checked.
const A_BAR_SAMPLES: usize = 1024;

impl ProblemSpec {
    pub fn new(
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        kernel: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        kernel_dxi: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        params: ProblemParams,
    ) -> Result<Self> {
        Self::from_arcs(Arc::new(a), Arc::new(f), Arc::new(kernel), Arc::new(kernel_dxi), params)
    }

    /// Like [`ProblemSpec::new`] but `∂K/∂ξ` is replaced by a central difference
    /// with step `max(1e-6, 1e-6 T)`.
    pub fn with_numeric_kernel_derivative(
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        kernel: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        params: ProblemParams,
    ) -> Result<Self> {
        let kernel: KernelFn = Arc::new(kernel);
        let step = f64::max(1e-6, 1e-6 * params.t_end);
        let k = Arc::clone(&kernel);
        let kernel_dxi = move |x: f64, y: f64| (k(x + step, y) - k(x - step, y)) / (2.0 * step);
        Self::from_arcs(Arc::new(a), Arc::new(f), kernel, Arc::new(kernel_dxi), params)
    }

    fn from_arcs(
        a: ScalarFn,
        f: ScalarFn,
        kernel: KernelFn,
        kernel_dxi: KernelFn,
        params: ProblemParams,
    ) -> Result<Self> {
        let ProblemParams {
            lambda,
            alpha,
            beta,
            t_end,
            a_bar,
        } = params;
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::invalid("t_end", format!("must be positive, got {t_end}")));
        }
        if !(a_bar > 0.0 && a_bar.is_finite()) {
            return Err(Error::invalid("a_bar", format!("must be positive, got {a_bar}")));
        }
        for (name, value) in [("lambda", lambda), ("alpha", alpha), ("beta", beta)] {
            if !value.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {value}")));
            }
        }
        for k in 0..=A_BAR_SAMPLES {
            let x = t_end * k as f64 / A_BAR_SAMPLES as f64;
            let ax = a(x);
            if !(ax >= a_bar) {
                return Err(Error::invalid(
                    "a_bar",
                    format!("a({x}) = {ax} is below the certified bound {a_bar}"),
                ));
            }
        }
        Ok(Self {
            a,
            f,
            kernel,
            kernel_dxi,
            params,
        })
    }

    /// Same problem with a different coupling `λ`.
    pub fn with_lambda(&self, lambda: f64) -> Self {
        let mut p = self.clone();
        p.params.lambda = lambda;
        p
    }

    pub fn a(&self, x: f64) -> f64 {
        (self.a)(x)
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn kernel(&self, x: f64, y: f64) -> f64 {
        (self.kernel)(x, y)
    }

    pub fn kernel_dxi(&self, x: f64, y: f64) -> f64 {
        (self.kernel_dxi)(x, y)
    }

    pub fn params(&self) -> ProblemParams {
        self.params
    }

    pub fn lambda(&self) -> f64 {
        self.params.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha
    }

    pub fn beta(&self) -> f64 {
        self.params.beta
    }

    pub fn t_end(&self) -> f64 {
        self.params.t_end
    }

    pub fn a_bar(&self) -> f64 {
        self.params.a_bar
    }
}

/// Closed-form solution `v(ξ; ε)`.
#[derive(Clone)]
pub struct ExactSolution {
    eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ExactSolution")
    }
}

impl ExactSolution {
    pub fn new(eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(eval) }
    }

    pub fn eval(&self, x: f64, epsilon: f64) -> f64 {
        (self.eval)(x, epsilon)
    }
}

/// `(1 − e^{−s x}) / (1 − e^{−s T})` without overflow or cancellation.
fn layer_profile(x: f64, s: f64, t_end: f64) -> f64 {
    let den = -(-s * t_end).exp_m1();
    -(-s * x).exp_m1() / den
}

/// `ε v'' + 2 v' = e^ξ − ¼ ∫₀¹ e^{ξ−η} v(η) dη`, `v(0) = 0`, `v(1) = 1`.
pub fn example1() -> (ProblemSpec, ExactSolution) {
    let problem = ProblemSpec::new(
        |_| 2.0,
        f64::exp,
        |x, y| (x - y).exp(),
        |x, y| (x - y).exp(),
        ProblemParams {
            lambda: -0.25,
            alpha: 0.0,
            beta: 1.0,
            t_end: 1.0,
            a_bar: 2.0,
        },
    )
    .expect("example1 parameters are valid");
    (problem, ExactSolution::new(example1_exact))
}

/// Exact solution of [`example1`].
pub fn example1_exact(x: f64, eps: f64) -> f64 {
    let e = std::f64::consts::E;
    // e^{-2/ε}; underflows to 0 for small ε, which is the correct limit.
    let q = (-2.0 / eps).exp();
    let num = (3.0 + eps - e) * (2.0 - 2.0 * e + eps * (1.0 - q)) + (2.0 + eps) * (q - 1.0);
    let den = 4.0 * e * (2.0 + eps).powi(2) * (q - 1.0) - (4.0 * e + eps * e - 2.0 * e * e)
        + (2.0 + eps * e) * q;
    let d1 = num / den;
    let d2 = 1.0 + (d1 - 1.0) * (e - 1.0) / (2.0 + eps);
    (d1 - 1.0) / (2.0 + eps) * (-x.exp_m1()) + d2 * layer_profile(x, 2.0 / eps, 1.0)
}

/// `ε v'' + a v' = f` with constant `a`, `f`, no integral term, `v(0) = α`, `v(T) = β`.
///
/// The fitted scheme reproduces this solution exactly at the nodes.
pub fn constant_coefficient(
    a: f64,
    f: f64,
    alpha: f64,
    beta: f64,
    t_end: f64,
) -> Result<(ProblemSpec, ExactSolution)> {
    let problem = ProblemSpec::new(
        move |_| a,
        move |_| f,
        |_, _| 0.0,
        |_, _| 0.0,
        ProblemParams {
            lambda: 0.0,
            alpha,
            beta,
            t_end,
            a_bar: a,
        },
    )?;
    let exact = ExactSolution::new(move |x, eps| {
        alpha + f * x / a + (beta - alpha - f * t_end / a) * layer_profile(x, a / eps, t_end)
    });
    Ok((problem, exact))
}

/// Looks up a built-in problem by name.
///
/// * `example1` – the Fredholm test problem with a closed-form solution.
/// * `layer` – `ε v'' + 2 v' = 0`, `v(0) = 0`, `v(1) = 1`; a pure boundary layer.
pub fn builtin(name: &str) -> Option<(ProblemSpec, ExactSolution)> {
    match name {
        "example1" => Some(example1()),
        "layer" => constant_coefficient(2.0, 0.0, 0.0, 1.0, 1.0).ok(),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaReport {
    /// `max_ξ ∫₀ᵀ |K(ξ, ζ)| dζ`.
    pub k_bar: f64,
    /// `ā / (K̄ T)`; infinite for a zero kernel.
    pub bound: f64,
    pub ok: bool,
}

/// Checks the smallness condition `|λ| < ā / (K̄ T)` that guarantees a bounded
/// solution. Advisory only; solving is still possible when it fails.
pub fn validate_lambda_bound(problem: &ProblemSpec, quad_panels: usize) -> Result<LambdaReport> {
    if quad_panels < 16 {
        return Err(Error::invalid("quad_panels", format!("must be >= 16, got {quad_panels}")));
    }
    let t = problem.t_end();
    let h = t / quad_panels as f64;
    let k_bar = (0..=quad_panels)
        .map(|i| {
            let x = i as f64 * h;
            let inner: f64 = (0..=quad_panels)
                .map(|j| {
                    let w = if j == 0 || j == quad_panels { 0.5 } else { 1.0 };
                    w * problem.kernel(x, j as f64 * h).abs()
                })
                .sum();
            inner * h
        })
        .fold(0.0, f64::max);
    let bound = if k_bar == 0.0 {
        f64::INFINITY
    } else {
        problem.a_bar() / (k_bar * t)
    };
    Ok(LambdaReport {
        k_bar,
        bound,
        ok: problem.lambda().abs() < bound,
    })
}
