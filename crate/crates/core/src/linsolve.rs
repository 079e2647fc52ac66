//! Linear solvers for the assembled system.
//!
//! [`lu_solve`] is the reference path: dense LU with partial pivoting and one
//! step of iterative refinement.
//! [`fixed_point_solve`] treats the integral coupling as a perturbation of the
//! tridiagonal differential operator and iterates
//! `y⁽ᵏ⁺¹⁾ = T⁻¹(f̂ + λ K y⁽ᵏ⁾)`, which converges when the coupling is a
//! contraction.

use crate::assembly::DenseSystem;
use crate::error::{Error, Result};
use crate::scheme::KernelMatrix;

/// Relative residual above which an LU solution is flagged ill-conditioned.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Thomas pivots smaller than this in magnitude trigger the dense fallback.
pub const THOMAS_PIVOT_FLOOR: f64 = 1e-300;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must all have length n".into()));
        }
        Ok(Self { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Copy with rows reordered so that row `k` of the result is row `perm[k]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.n);
        for (k, &src) in perm.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(src));
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// In-place LU factors `P A = L U` with unit lower `L`.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    lu: DenseMatrix,
    perm: Vec<usize>,
    reciprocal_pivot_growth: f64,
}

impl LuFactorization {
    /// Factors with partial pivoting: the pivot in column `k` is the entry of
    /// largest magnitude on or below the diagonal.
    pub fn new(matrix: &DenseMatrix) -> Result<Self> {
        let n = matrix.dim();
        let mut lu = matrix.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let col_max_a: Vec<f64> = (0..n).map(|j| (0..n).fold(0.0f64, |m, i| m.max(matrix[(i, j)].abs()))).collect();

        for k in 0..n {
            let mut best = k;
            let mut best_val = -1.0;
            for r in k..n {
                let v = lu[(r, k)].abs();
                if v > best_val {
                    best = r;
                    best_val = v;
                }
            }
            if lu[(best, k)] == 0.0 {
                return Err(Error::Singular { pivot: k });
            }
            if best != k {
                let (upper, lower) = lu.data.split_at_mut(best * n);
                upper[k * n..(k + 1) * n].swap_with_slice(&mut lower[..n]);
                perm.swap(k, best);
            }
            let (head, tail) = lu.data.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..];
            let pivot = pivot_row[k];
            for row in tail.chunks_exact_mut(n) {
                let m = row[k] / pivot;
                row[k] = m;
                if m != 0.0 {
                    for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                        *x -= m * p;
                    }
                }
            }
        }

        let reciprocal_pivot_growth = (0..n)
            .map(|j| {
                let u_max = (0..=j).fold(0.0, |m: f64, i| m.max(lu[(i, j)].abs()));
                if u_max == 0.0 {
                    1.0
                } else {
                    col_max_a[j] / u_max
                }
            })
            .fold(1.0, f64::min);

        Ok(Self {
            lu,
            perm,
            reciprocal_pivot_growth,
        })
    }

    pub fn dim(&self) -> usize {
        self.lu.dim()
    }

    /// `min_j max_i |a_ij| / max_i |u_ij|`; values far below 1 mean the
    /// elimination amplified entries.
    pub fn reciprocal_pivot_growth(&self) -> f64 {
        self.reciprocal_pivot_growth
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: f64 = row[..i].iter().zip(&y[..i]).map(|(l, v)| l * v).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: f64 = row[i + 1..].iter().zip(&y[i + 1..]).map(|(u, v)| u * v).sum();
            y[i] = (y[i] - s) / row[i];
        }
        y
    }
}

/// Three diagonals; `sub[0]` and `sup[n−1]` are unused and zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(n: usize) -> Self {
        Self {
            sub: vec![0.0; n],
            diag: vec![0.0; n],
            sup: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.len();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i > 0 {
                m[(i, i - 1)] = self.sub[i];
            }
            if i + 1 < n {
                m[(i, i + 1)] = self.sup[i];
            }
        }
        m
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Forward-elimination factors of the Thomas algorithm.
#[derive(Debug, Clone)]
pub struct ThomasFactorization {
    sub: Vec<f64>,
    pivots: Vec<f64>,
    upper: Vec<f64>,
}

impl ThomasFactorization {
    /// Fails with the offending row when a pivot falls below [`THOMAS_PIVOT_FLOOR`].
    pub fn new(tri: &Tridiagonal) -> std::result::Result<Self, usize> {
        let n = tri.len();
        let mut pivots = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 0..n {
            let p = if i == 0 { tri.diag[0] } else { tri.diag[i] - tri.sub[i] * upper[i - 1] };
            if !(p.abs() >= THOMAS_PIVOT_FLOOR) {
                return Err(i);
            }
            pivots[i] = p;
            if i + 1 < n {
                upper[i] = tri.sup[i] / p;
            }
        }
        Ok(Self {
            sub: tri.sub.clone(),
            pivots,
            upper,
        })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.pivots.len();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let carry = if i == 0 { 0.0 } else { self.sub[i] * y[i - 1] };
            y[i] = (b[i] - carry) / self.pivots[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            y[i] -= self.upper[i] * y[i + 1];
        }
        y
    }
}

/// Thomas when its pivots are healthy, dense LU of the same matrix otherwise.
#[derive(Debug, Clone)]
pub enum TridiagonalSolver {
    Thomas(ThomasFactorization),
    DenseFallback(LuFactorization),
}

impl TridiagonalSolver {
    pub fn new(tri: &Tridiagonal) -> Result<Self> {
        match ThomasFactorization::new(tri) {
            Ok(t) => Ok(Self::Thomas(t)),
            Err(_) => Ok(Self::DenseFallback(LuFactorization::new(&tri.to_dense())?)),
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        match self {
            Self::Thomas(t) => t.solve(b),
            Self::DenseFallback(lu) => lu.solve(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverTag {
    Lu,
    FixedPoint,
}

impl std::fmt::Display for SolverTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverTag::Lu => "lu",
            SolverTag::FixedPoint => "fixed-point",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuDiagnostics {
    pub reciprocal_pivot_growth: f64,
    /// `‖A y − b‖∞ / ‖b‖∞`.
    pub relative_residual: f64,
    /// Set when the residual exceeds [`RESIDUAL_TOLERANCE`].
    pub ill_conditioned: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionVector {
    pub values: Vec<f64>,
    pub solver: SolverTag,
    /// Fixed-point iterations used; 0 for LU.
    pub iterations: usize,
    pub lu: Option<LuDiagnostics>,
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn residual(matrix: &DenseMatrix, y: &[f64], b: &[f64]) -> Vec<f64> {
    matrix.matvec(y).iter().zip(b).map(|(ay, b)| b - ay).collect()
}

/// Dense solve of the assembled system followed by one step of iterative
/// refinement with the same factors. The stencil rows have entries of order
/// `N²` that nearly cancel, so a bare elimination loses a few digits; the
/// correction step recovers them.
pub fn lu_solve(system: &DenseSystem) -> Result<SolutionVector> {
    let lu = LuFactorization::new(&system.matrix)?;
    let mut values = lu.solve(&system.rhs);
    let n = values.len() - 1;
    values[0] = system.rhs[0];
    values[n] = system.rhs[n];

    let delta = lu.solve(&residual(&system.matrix, &values, &system.rhs));
    for (v, d) in values.iter_mut().zip(&delta).take(n).skip(1) {
        *v += d;
    }
    let r = residual(&system.matrix, &values, &system.rhs);

    let b_norm = max_abs(&system.rhs);
    let relative_residual = max_abs(&r) / if b_norm > 0.0 { b_norm } else { 1.0 };

    Ok(SolutionVector {
        values,
        solver: SolverTag::Lu,
        iterations: 0,
        lu: Some(LuDiagnostics {
            reciprocal_pivot_growth: lu.reciprocal_pivot_growth(),
            relative_residual,
            ill_conditioned: !(relative_residual <= RESIDUAL_TOLERANCE),
        }),
    })
}

/// Iterates on the integral term with a tridiagonal inner solve, starting from
/// the linear interpolant of the boundary values, until successive iterates
/// differ by at most `tol` in the max norm.
///
/// With `λ = 0` the coupling vanishes and the first inner solve is the answer.
pub fn fixed_point_solve(
    system: &DenseSystem,
    kmat: &KernelMatrix,
    lambda: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SolutionVector> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", format!("must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::invalid("max_iter", "must be at least 1"));
    }
    let size = system.rhs.len();
    if kmat.cols() != size || system.tri.len() != size {
        return Err(Error::DimensionMismatch(format!(
            "system of size {size}, kernel with {} columns, tridiagonal part of size {}",
            kmat.cols(),
            system.tri.len()
        )));
    }
    let n = size - 1;
    let inner = TridiagonalSolver::new(&system.tri)?;
    let done = |values: Vec<f64>, iterations| SolutionVector {
        values,
        solver: SolverTag::FixedPoint,
        iterations,
        lu: None,
    };

    if lambda == 0.0 {
        return Ok(done(inner.solve(&system.rhs), 1));
    }

    let (alpha, beta) = (system.rhs[0], system.rhs[n]);
    let t_end = system.nodes[n];
    let mut y: Vec<f64> = system.nodes.iter().map(|x| alpha + (beta - alpha) * x / t_end).collect();
    let mut increment = f64::INFINITY;
    for k in 1..=max_iter {
        let coupling = kmat.apply(&y);
        let mut b = system.rhs.clone();
        for (bi, c) in b[1..n].iter_mut().zip(&coupling) {
            *bi += lambda * c;
        }
        let next = inner.solve(&b);
        increment = max_abs_diff(&next, &y);
        y = next;
        if increment <= tol {
            return Ok(done(y, k));
        }
        if !increment.is_finite() {
            return Err(Error::NotConverged { iterations: k, increment, last: y });
        }
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        increment,
        last: y,
    })
}
