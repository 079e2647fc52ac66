//! Fitted-scheme coefficients.
//!
//! Every interior node `ξ_i` carries an exponential test function built from
//! the frozen coefficient `a_i`. Its weighted means give the coefficients
//! `χ`, `γ` and from them `â`, `θ`, `A`, `f̂` and the modified kernel
//! `𝒦(ξ_i, η) = K(ξ_i, η)(χ⁽¹⁾ + χ⁽²⁾) + ∂_ξK(ξ_i, η)(γ⁽¹⁾ + γ⁽²⁾)`.
//!
//! With the cell Péclet numbers `σ = a_i h_i / ε` and `σ' = a_i h_{i+1} / ε`
//! all coefficients are written through three bounded functions of σ
//! ([`bernoulli`], `mean_weight`, `moment_weight`), so no raw exponential of a
//! large argument is ever formed. `σ` reaches ~10¹⁴ for ε = 2⁻⁴⁸.

use crate::error::{Error, Result};
use crate::mesh::ShishkinMesh;
use crate::problems::ProblemSpec;

/// Bernoulli function `B(t) = t / (eᵗ − 1)`.
pub fn bernoulli(t: f64) -> f64 {
    if t.is_nan() {
        t
    } else if t.abs() < 1e-8 {
        1.0 - 0.5 * t
    } else if t > 700.0 {
        0.0
    } else if t < -700.0 {
        -t
    } else {
        t / t.exp_m1()
    }
}

/// Taylor coefficients of `(1 − B(t)) / t`.
const MEAN_SERIES: [f64; 21] = [
    0.5,
    -0.08333333333333333,
    0.0,
    0.001388888888888889,
    0.0,
    -3.306878306878307e-05,
    0.0,
    8.267195767195768e-07,
    0.0,
    -2.08767569878681e-08,
    0.0,
    5.284190138687493e-10,
    0.0,
    -1.3382536530684679e-11,
    0.0,
    3.3896802963225827e-13,
    0.0,
    -8.586062056277845e-15,
    0.0,
    2.174868698558062e-16,
    0.0,
];

/// Taylor coefficients of `(B(t)(1 + t/2) − 1) / t²`.
const MOMENT_SERIES: [f64; 21] = [
    -0.16666666666666666,
    0.041666666666666664,
    -0.001388888888888889,
    -0.0006944444444444445,
    3.306878306878307e-05,
    1.6534391534391536e-05,
    -8.267195767195768e-07,
    -4.133597883597884e-07,
    2.08767569878681e-08,
    1.043837849393405e-08,
    -5.284190138687493e-10,
    -2.6420950693437466e-10,
    1.3382536530684679e-11,
    6.6912682653423394e-12,
    -3.3896802963225827e-13,
    -1.6948401481612914e-13,
    8.586062056277845e-15,
    4.2930310281389226e-15,
    -2.174868698558062e-16,
    -1.087434349279031e-16,
    5.5090028283602295e-18,
];

/// Below this |t| the series are used; both direct forms cancel there.
const SERIES_CUTOFF: f64 = 1.0;

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// `D(t) = (1 − B(t)) / t`: the mean of the rising exponential test function
/// over its cell, in units of the cell width. `D(t) + D(−t) = 1`.
pub(crate) fn mean_weight(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        horner(&MEAN_SERIES, t)
    } else {
        (1.0 - bernoulli(t)) / t
    }
}

/// `G(t) = (B(t)(1 + t/2) − 1) / t²`: the first moment of the rising test
/// function about its peak, in units of the squared cell width.
pub(crate) fn moment_weight(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        horner(&MOMENT_SERIES, t)
    } else {
        (bernoulli(t) * (1.0 + 0.5 * t) - 1.0) / (t * t)
    }
}

fn check_interior(i: usize, mesh: &ShishkinMesh) -> Result<()> {
    let hi = mesh.n() - 1;
    if i == 0 || i > hi {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi });
    }
    Ok(())
}

fn peclet(i: usize, mesh: &ShishkinMesh, a_i: f64, epsilon: f64) -> (f64, f64) {
    (a_i * mesh.h(i) / epsilon, a_i * mesh.h(i + 1) / epsilon)
}

/// `(χ⁽¹⁾, χ⁽²⁾)` at interior node `i`:
///
/// ```text
/// χ⁽¹⁾ = ℏ_i⁻¹ [ε/a_i − h_i / (e^σ − 1)]     = h_i     D(σ)  / ℏ_i
/// χ⁽²⁾ = ℏ_i⁻¹ [h_{i+1} / (1 − e^{−σ'}) − ε/a_i] = h_{i+1} D(−σ') / ℏ_i
/// ```
pub fn compute_chi(i: usize, mesh: &ShishkinMesh, a_i: f64, epsilon: f64) -> Result<(f64, f64)> {
    check_interior(i, mesh)?;
    let (s1, s2) = peclet(i, mesh, a_i, epsilon);
    let hbar = mesh.hbar(i);
    Ok((mesh.h(i) * mean_weight(s1) / hbar, mesh.h(i + 1) * mean_weight(-s2) / hbar))
}

/// `(γ⁽¹⁾, γ⁽²⁾)` at interior node `i`: the means of `(ξ − ξ_i)ψ_i` over the left
/// and right cells.
///
/// The closed forms carry absolute positions `ξ_{i−1}`, `ξ_{i+1}`, but these cancel
/// against `(ξ_i² − ξ_{i−1}²)/2 = h_i(ξ_i + ξ_{i−1})/2` exactly, leaving
/// `γ⁽¹⁾ = h_i² G(σ) / ℏ_i` and `γ⁽²⁾ = −h_{i+1}² G(−σ') / ℏ_i`.
pub fn compute_gamma(i: usize, mesh: &ShishkinMesh, a_i: f64, epsilon: f64) -> Result<(f64, f64)> {
    check_interior(i, mesh)?;
    let (s1, s2) = peclet(i, mesh, a_i, epsilon);
    let (h1, h2) = (mesh.h(i), mesh.h(i + 1));
    let hbar = mesh.hbar(i);
    Ok((h1 * h1 * moment_weight(s1) / hbar, -h2 * h2 * moment_weight(-s2) / hbar))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeCoefficients {
    pub chi1: f64,
    pub chi2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub ahat1: f64,
    pub ahat2: f64,
    pub theta: f64,
    pub cap_a: f64,
    pub fhat: f64,
}

impl NodeCoefficients {
    pub fn chi_sum(&self) -> f64 {
        self.chi1 + self.chi2
    }

    pub fn gamma_sum(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    fn all_finite(&self) -> bool {
        [
            self.chi1, self.chi2, self.gamma1, self.gamma2, self.ahat1, self.ahat2, self.theta,
            self.cap_a, self.fhat,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Coefficients for interior nodes `1 … N−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedCoefficients {
    epsilon: f64,
    nodes: Vec<NodeCoefficients>,
}

impl FittedCoefficients {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Coefficients of interior node `i` (1-based, `1 ≤ i ≤ N−1`).
    pub fn node(&self, i: usize) -> &NodeCoefficients {
        &self.nodes[i - 1]
    }

    /// Interior nodes in order, starting at node 1.
    pub fn iter(&self) -> impl Iterator<Item = &NodeCoefficients> {
        self.nodes.iter()
    }

    pub fn interior_len(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes where `θ_i ≤ 0`. The stencil is only known to be monotone for
    /// positive `θ`, so callers should surface a non-empty result.
    pub fn nonpositive_theta(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, c)| !(c.theta > 0.0))
            .map(|(k, _)| k + 1)
            .collect()
    }
}

pub fn compute_fitted(mesh: &ShishkinMesh, problem: &ProblemSpec, epsilon: f64) -> Result<FittedCoefficients> {
    let n = mesh.n();
    let mut nodes = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (x, x_next) = (mesh.node(i), mesh.node(i + 1));
        let (h, h_next) = (mesh.h(i), mesh.h(i + 1));
        let a_i = problem.a(x);
        if !(a_i.is_finite() && a_i > 0.0) {
            return Err(Error::NonFinite { what: "coefficient a", node: i });
        }
        let f_i = problem.f(x);
        let a_xi = (problem.a(x_next) - a_i) / h_next;
        let f_xi = (problem.f(x_next) - f_i) / h_next;

        let (chi1, chi2) = compute_chi(i, mesh, a_i, epsilon)?;
        let (gamma1, gamma2) = compute_gamma(i, mesh, a_i, epsilon)?;
        let ahat1 = a_i * chi1 + a_xi * gamma1;
        let ahat2 = a_i * chi2 + a_xi * gamma2;
        let theta = 1.0 - ahat1 * h_next / (2.0 * epsilon) + ahat2 * h / (2.0 * epsilon);
        let c = NodeCoefficients {
            chi1,
            chi2,
            gamma1,
            gamma2,
            ahat1,
            ahat2,
            theta,
            cap_a: ahat1 + ahat2,
            fhat: f_i * (chi1 + chi2) + f_xi * (gamma1 + gamma2),
        };
        if !c.all_finite() {
            return Err(Error::NonFinite { what: "fitted coefficient", node: i });
        }
        nodes.push(c);
    }
    Ok(FittedCoefficients { epsilon, nodes })
}

/// Trapezoid-weighted modified kernel `ℏ_j 𝒦(ξ_i, ξ_j)` for interior rows
/// `i = 1 … N−1` and all columns `j = 0 … N`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl KernelMatrix {
    /// Mesh parameter `N`; the matrix is `(N−1) × (N+1)`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.n - 1
    }

    pub fn cols(&self) -> usize {
        self.n + 1
    }

    /// Row of interior node `i` (1-based).
    pub fn row(&self, i: usize) -> &[f64] {
        let cols = self.cols();
        &self.entries[(i - 1) * cols..i * cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i)[j]
    }

    /// `(K y)_i = Σ_j ℏ_j 𝒦_ij y_j` for interior `i`, as a vector over `1 … N−1`.
    pub fn apply(&self, y: &[f64]) -> Vec<f64> {
        (1..self.n)
            .map(|i| self.row(i).iter().zip(y).map(|(k, v)| k * v).sum())
            .collect()
    }

    /// `max_i Σ_j |ℏ_j 𝒦_ij|`, the discrete analogue of `K̄`.
    pub fn max_abs_row_sum(&self) -> f64 {
        (1..self.n)
            .map(|i| self.row(i).iter().map(|k| k.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

pub fn compute_kernel_matrix(
    mesh: &ShishkinMesh,
    problem: &ProblemSpec,
    coeffs: &FittedCoefficients,
) -> Result<KernelMatrix> {
    let n = mesh.n();
    if coeffs.interior_len() != n - 1 {
        return Err(Error::DimensionMismatch(format!(
            "coefficients cover {} interior nodes, mesh has {}",
            coeffs.interior_len(),
            n - 1
        )));
    }
    let xs = mesh.nodes();
    let weights = mesh.half_steps();
    let mut entries = Vec::with_capacity((n - 1) * (n + 1));
    for i in 1..n {
        let c = coeffs.node(i);
        let (chi, gamma) = (c.chi_sum(), c.gamma_sum());
        let x = xs[i];
        for (&y, &w) in xs.iter().zip(weights) {
            let value = w * (problem.kernel(x, y) * chi + problem.kernel_dxi(x, y) * gamma);
            if !value.is_finite() {
                return Err(Error::NonFinite { what: "kernel entry", node: i });
            }
            entries.push(value);
        }
    }
    Ok(KernelMatrix { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_shishkin;
    use crate::problems::{constant_coefficient, example1, ProblemParams};
    use approx::assert_relative_eq;

    /// 50-digit reference values of `t / (eᵗ − 1)`.
    const BERNOULLI_REF: [(f64, f64); 10] = [
        (1e-10, 0.99999999995),
        (-1e-10, 1.00000000005),
        (1e-3, 0.99950008333333194444),
        (-1e-3, 1.0005000833333319444),
        (1.0, 0.58197670686932642439),
        (-1.0, 1.5819767068693264244),
        (30.0, 2.8072868906523150768e-12),
        (-30.0, 30.000000000002807287),
        (700.0, 6.9017735806318395997e-302),
        (-700.0, 700.0),
    ];

    /// 50-digit reference values of `(B(t)(1 + t/2) − 1) / t²`.
    const MOMENT_REF: [(f64, f64); 12] = [
        (1e-6, -0.16666662500000138889),
        (0.05, -0.16458689214927745917),
        (0.0999, -0.16251871669753354916),
        (0.1001, -0.16251044305832582742),
        (0.5, -0.14626479365800428967),
        (1.0, -0.12703493969601036342),
        (-1.0, -0.20901164656533678781),
        (-0.05, -0.1687533852151663636),
        (10.0, -0.009972758805394187339),
        (-10.0, -0.41001816079640387511),
        (100.0, -0.0001),
        (-100.0, -0.4901),
    ];

    #[test]
    fn bernoulli_reference_values() {
        assert_eq!(bernoulli(0.0), 1.0);
        for (t, want) in BERNOULLI_REF {
            assert_relative_eq!(bernoulli(t), want, max_relative = 1e-14);
        }
        assert_eq!(bernoulli(800.0), 0.0);
        assert_eq!(bernoulli(-800.0), 800.0);
        assert!(bernoulli(f64::NAN).is_nan());
    }

    #[test]
    fn bernoulli_reflection() {
        for t in [0.5, 5.0, 50.0] {
            assert_relative_eq!(bernoulli(-t) - bernoulli(t), t, max_relative = 1e-12);
        }
    }

    #[test]
    fn moment_weight_reference_values() {
        for (t, want) in MOMENT_REF {
            assert_relative_eq!(moment_weight(t), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn mean_weight_matches_direct_form_and_reflects() {
        // The direct form cancels badly near zero, so small t is checked
        // against the leading series terms instead.
        for t in [0.3, 0.99, 1.01, 4.0, 300.0, 1e12] {
            let direct = (1.0 - bernoulli(t)) / t;
            assert_relative_eq!(mean_weight(t), direct, max_relative = 1e-12);
        }
        for t in [1e-7f64, 1e-5, 1e-3] {
            let series = 0.5 - t / 12.0 + t.powi(3) / 720.0;
            assert_relative_eq!(mean_weight(t), series, max_relative = 1e-15);
        }
        for t in [1e-7, 1e-3, 0.3, 0.99, 1.01, 4.0, 300.0, 1e12] {
            assert_relative_eq!(mean_weight(t) + mean_weight(-t), 1.0, max_relative = 1e-15);
        }
        // Continuous across the series cutoff.
        let below = mean_weight(SERIES_CUTOFF * (1.0 - 1e-12));
        let above = mean_weight(SERIES_CUTOFF * (1.0 + 1e-12));
        assert_relative_eq!(below, above, max_relative = 1e-11);
    }

    fn uniform_mesh(n: usize) -> ShishkinMesh {
        build_shishkin(n, 1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn chi_at_unit_peclet() {
        // ε = 0.5, a = 2, h = 0.25 gives σ = 1: χ⁽¹⁾ = 1 − 1/(e − 1).
        let mesh = uniform_mesh(4);
        assert_eq!(mesh.h(2), 0.25);
        let (chi1, chi2) = compute_chi(2, &mesh, 2.0, 0.5).unwrap();
        assert_relative_eq!(chi1, 0.41802329313067357561, max_relative = 1e-14);
        assert_relative_eq!(chi1 + chi2, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn chi_upwind_limit() {
        let mesh = uniform_mesh(64);
        let (chi1, chi2) = compute_chi(10, &mesh, 2.0, 1e-14).unwrap();
        assert!(chi1.abs() < 1e-10);
        assert!((chi2 - mesh.h(11) / mesh.hbar(10)).abs() < 1e-10);
    }

    #[test]
    fn gamma_upwind_limit() {
        let mesh = build_shishkin(64, 2f64.powi(-6), 2.0, 1.0).unwrap();
        let eps = 1e-12;
        let a = 2.0;
        let r = eps / a;
        for i in [5, 32, 40] {
            let (g1, g2) = compute_gamma(i, &mesh, a, eps).unwrap();
            let hbar = mesh.hbar(i);
            let (xi, xn) = (mesh.node(i), mesh.node(i + 1));
            let hn = mesh.h(i + 1);
            assert_relative_eq!(g1, -r * r / hbar, max_relative = 1e-10);
            let limit = (hn * xn - (xn * xn - xi * xi) / 2.0 + r * r) / hbar;
            assert_relative_eq!(g2, limit, max_relative = 1e-8);
        }
    }

    /// `ℏ_i⁻¹ ∫ (ξ − ξ_i) ψ_i dξ` by a fine trapezoid.
    fn gamma_sum_by_quadrature(mesh: &ShishkinMesh, i: usize, a_i: f64, eps: f64, panels: usize) -> f64 {
        let (x0, x1, x2) = (mesh.node(i - 1), mesh.node(i), mesh.node(i + 1));
        let s = a_i / eps;
        let left = |x: f64| (x - x1) * (-s * (x1 - x)).exp() * (-(-s * (x - x0)).exp_m1()) / (-(-s * (x1 - x0)).exp_m1());
        let right = |x: f64| (x - x1) * (-(-s * (x2 - x)).exp_m1()) / (-(-s * (x2 - x1)).exp_m1());
        let trap = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
            let h = (hi - lo) / panels as f64;
            let inner: f64 = (1..panels).map(|k| g(lo + k as f64 * h)).sum();
            h * (inner + 0.5 * (g(lo) + g(hi)))
        };
        (trap(&left, x0, x1) + trap(&right, x1, x2)) / mesh.hbar(i)
    }

    #[test]
    fn gamma_matches_quadrature_of_first_moment() {
        let mesh = build_shishkin(32, 2f64.powi(-5), 1.0, 1.0).unwrap();
        for i in [3, 16, 17, 29] {
            let a_i = 1.0 + mesh.node(i);
            let (g1, g2) = compute_gamma(i, &mesh, a_i, 2f64.powi(-5)).unwrap();
            let oracle = gamma_sum_by_quadrature(&mesh, i, a_i, 2f64.powi(-5), 20_000);
            assert_relative_eq!(g1 + g2, oracle, max_relative = 1e-7);
        }
    }

    #[test]
    fn rejects_boundary_indices() {
        let mesh = uniform_mesh(8);
        assert!(matches!(compute_chi(0, &mesh, 1.0, 0.5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(compute_gamma(8, &mesh, 1.0, 0.5), Err(Error::IndexOutOfRange { .. })));
        assert!(compute_chi(7, &mesh, 1.0, 0.5).is_ok());
    }

    #[test]
    fn constant_a_reduces_ahat_to_chi() {
        let (p, _) = constant_coefficient(2.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        let mesh = uniform_mesh(16);
        let c = compute_fitted(&mesh, &p, 0.1).unwrap();
        for node in c.iter() {
            assert_eq!(node.ahat1, 2.0 * node.chi1);
            assert_eq!(node.ahat2, 2.0 * node.chi2);
            assert_relative_eq!(node.cap_a, 2.0, max_relative = 1e-14);
            assert_eq!(node.cap_a, node.ahat1 + node.ahat2);
        }
    }

    #[test]
    fn constant_f_gives_unscaled_fhat() {
        let (p, _) = constant_coefficient(2.0, 3.0, 0.0, 1.0, 1.0).unwrap();
        let mesh = build_shishkin(16, 2f64.powi(-10), 2.0, 1.0).unwrap();
        let c = compute_fitted(&mesh, &p, 2f64.powi(-10)).unwrap();
        for node in c.iter() {
            assert_eq!(node.fhat, 3.0 * node.chi_sum());
        }
    }

    #[test]
    fn example1_theta_positive_and_a_near_two() {
        let (p, _) = example1();
        let eps = 2f64.powi(-6);
        let mesh = build_shishkin(64, eps, 2.0, 1.0).unwrap();
        let c = compute_fitted(&mesh, &p, eps).unwrap();
        assert!(c.nonpositive_theta().is_empty());
        // Away from the junction node the three-point cells are uniform.
        for (idx, node) in c.iter().enumerate() {
            if idx + 1 != mesh.n() / 2 {
                assert!((1.9..=2.1).contains(&node.cap_a), "A = {} at {}", node.cap_a, idx + 1);
            }
        }
    }

    #[test]
    fn coefficients_finite_and_signed_on_stress_grid() {
        let (p, _) = example1();
        for k in (0..=48).step_by(6) {
            let eps = 2f64.powi(-k);
            for n in [8, 64, 512] {
                let mesh = build_shishkin(n, eps, 2.0, 1.0).unwrap();
                let c = compute_fitted(&mesh, &p, eps).unwrap();
                for (idx, node) in c.iter().enumerate() {
                    let i = idx + 1;
                    assert!(node.chi1 >= 0.0 && node.chi2 >= 0.0);
                    if mesh.h(i) == mesh.h(i + 1) {
                        assert!((node.chi_sum() - 1.0).abs() <= 1e-12);
                    }
                }
                let k = compute_kernel_matrix(&mesh, &p, &c).unwrap();
                assert!((1..n).all(|i| k.row(i).iter().all(|v| v.is_finite())));
            }
        }
    }

    fn unit_kernel_problem() -> ProblemSpec {
        ProblemSpec::new(
            |_| 2.0,
            |_| 0.0,
            |_, _| 1.0,
            |_, _| 0.0,
            ProblemParams { lambda: 0.25, alpha: 0.0, beta: 1.0, t_end: 1.0, a_bar: 2.0 },
        )
        .unwrap()
    }

    #[test]
    fn zero_kernel_gives_zero_matrix() {
        let (p, _) = constant_coefficient(2.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let mesh = build_shishkin(16, 0.01, 2.0, 1.0).unwrap();
        let c = compute_fitted(&mesh, &p, 0.01).unwrap();
        let k = compute_kernel_matrix(&mesh, &p, &c).unwrap();
        assert_eq!((k.rows(), k.cols()), (15, 17));
        assert!((1..16).all(|i| k.row(i).iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn unit_kernel_row_sums_equal_length() {
        let p = unit_kernel_problem();
        let mesh = uniform_mesh(32);
        let c = compute_fitted(&mesh, &p, 0.05).unwrap();
        let k = compute_kernel_matrix(&mesh, &p, &c).unwrap();
        for i in 1..32 {
            let sum: f64 = k.row(i).iter().sum();
            assert_relative_eq!(sum, 1.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn example1_kernel_rows_match_fine_quadrature() {
        let (p, _) = example1();
        let eps = 2f64.powi(-6);
        let mesh = build_shishkin(256, eps, 2.0, 1.0).unwrap();
        let c = compute_fitted(&mesh, &p, eps).unwrap();
        let k = compute_kernel_matrix(&mesh, &p, &c).unwrap();
        let panels = 100_000;
        for i in [1, 64, 128, 200, 255] {
            let node = c.node(i);
            let x = mesh.node(i);
            let modified = |y: f64| p.kernel(x, y) * node.chi_sum() + p.kernel_dxi(x, y) * node.gamma_sum();
            let h = 1.0 / panels as f64;
            let oracle = h * ((1..panels).map(|j| modified(j as f64 * h)).sum::<f64>()
                + 0.5 * (modified(0.0) + modified(1.0)));
            let sum: f64 = k.row(i).iter().sum();
            assert_relative_eq!(sum, oracle, max_relative = 1e-3);
        }
    }

    #[test]
    fn kernel_matrix_rejects_mismatched_coefficients() {
        let (p, _) = example1();
        let coarse = uniform_mesh(8);
        let c = compute_fitted(&coarse, &p, 1.0).unwrap();
        let fine = uniform_mesh(16);
        assert!(matches!(compute_kernel_matrix(&fine, &p, &c), Err(Error::DimensionMismatch(_))));
    }
}
