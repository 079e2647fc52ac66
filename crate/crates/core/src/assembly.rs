//! The discrete system: fitted three-point stencil plus the dense Fredholm
//! coupling.
//!
//! Interior row `i` encodes
//!
//! ```text
//! ε θ_i y_{ξ̄ξ,i} + A_i y_{ξ̊,i} − λ Σ_j ℏ_j 𝒦_ij y_j = f̂_i
//! ```
//!
//! and rows `0` and `N` are identity rows carrying `α` and `β`. The boundary
//! columns stay in the matrix rather than moving to the right-hand side.

use crate::error::{Error, Result};
use crate::linsolve::{DenseMatrix, Tridiagonal};
use crate::mesh::ShishkinMesh;
use crate::problems::ProblemSpec;
use crate::scheme::{FittedCoefficients, KernelMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSystem {
    /// `(N+1) × (N+1)`: the embedded stencil minus `λ` times the kernel matrix.
    pub matrix: DenseMatrix,
    pub rhs: Vec<f64>,
    /// Differential part alone, including the identity boundary rows.
    pub tri: Tridiagonal,
    /// Mesh nodes the system was built on.
    pub nodes: Vec<f64>,
    pub lambda: f64,
}

impl DenseSystem {
    pub fn size(&self) -> usize {
        self.rhs.len()
    }
}

/// Fitted stencil of every row, boundary rows as identity.
pub fn fitted_stencil(mesh: &ShishkinMesh, coeffs: &FittedCoefficients, epsilon: f64) -> Tridiagonal {
    let n = mesh.n();
    let mut tri = Tridiagonal::new(n + 1);
    tri.diag[0] = 1.0;
    tri.diag[n] = 1.0;
    for i in 1..n {
        let c = coeffs.node(i);
        let (h, h_next, hbar) = (mesh.h(i), mesh.h(i + 1), mesh.hbar(i));
        let diffusion = epsilon * c.theta / hbar;
        let convection = c.cap_a / (2.0 * hbar);
        tri.sub[i] = diffusion / h - convection;
        tri.diag[i] = -diffusion * (1.0 / h + 1.0 / h_next);
        tri.sup[i] = diffusion / h_next + convection;
    }
    tri
}

pub fn assemble(
    mesh: &ShishkinMesh,
    coeffs: &FittedCoefficients,
    kmat: &KernelMatrix,
    problem: &ProblemSpec,
    epsilon: f64,
) -> Result<DenseSystem> {
    let n = mesh.n();
    if coeffs.interior_len() != n - 1 {
        return Err(Error::DimensionMismatch(format!(
            "mesh has {} interior nodes, coefficients cover {}",
            n - 1,
            coeffs.interior_len()
        )));
    }
    if kmat.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "mesh has N = {n}, kernel matrix was built for N = {}",
            kmat.n()
        )));
    }
    if coeffs.epsilon() != epsilon {
        return Err(Error::DimensionMismatch(format!(
            "coefficients were computed for ε = {}, assembling for ε = {epsilon}",
            coeffs.epsilon()
        )));
    }

    let lambda = problem.lambda();
    let tri = fitted_stencil(mesh, coeffs, epsilon);
    let mut matrix = tri.to_dense();
    if lambda != 0.0 {
        for i in 1..n {
            for (m, k) in matrix.row_mut(i).iter_mut().zip(kmat.row(i)) {
                *m -= lambda * k;
            }
        }
    }

    let mut rhs = vec![0.0; n + 1];
    rhs[0] = problem.alpha();
    rhs[n] = problem.beta();
    for (i, c) in coeffs.iter().enumerate() {
        rhs[i + 1] = c.fhat;
    }

    for i in 0..=n {
        if !(matrix.row(i).iter().all(|v| v.is_finite()) && rhs[i].is_finite()) {
            return Err(Error::NonFinite { what: "system entry", node: i });
        }
    }

    Ok(DenseSystem {
        matrix,
        rhs,
        tri,
        nodes: mesh.nodes().to_vec(),
        lambda,
    })
}
