//! Shishkin piecewise-uniform mesh.
//!
//! `[0, T]` is split at the transition point `ρ = min(T/2, ε ln N / ā)` and each
//! half gets `N/2` equal cells: step `h_fine = 2ρ/N` inside the layer,
//! `h_coarse = 2(T − ρ)/N` outside.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ShishkinMesh {
    n: usize,
    nodes: Vec<f64>,
    steps: Vec<f64>,
    half_steps: Vec<f64>,
    rho: f64,
    h_fine: f64,
    h_coarse: f64,
}

/// Which branch of `min(T/2, ε ln N / ā)` produced the transition point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionBranch {
    /// `ρ = T/2`: the mesh is uniform.
    Half,
    /// `ρ = ε ln N / ā`: the mesh is refined in the layer.
    Layer,
}

pub fn build_shishkin(n: usize, epsilon: f64, a_bar: f64, t_end: f64) -> Result<ShishkinMesh> {
    ShishkinMesh::new(n, epsilon, a_bar, t_end)
}

impl ShishkinMesh {
    pub fn new(n: usize, epsilon: f64, a_bar: f64, t_end: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::invalid("n", format!("must be an even integer >= 4, got {n}")));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::invalid("epsilon", format!("must lie in (0, 1], got {epsilon}")));
        }
        if !(a_bar > 0.0 && a_bar.is_finite()) {
            return Err(Error::invalid("a_bar", format!("must be positive, got {a_bar}")));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::invalid("t_end", format!("must be positive, got {t_end}")));
        }

        let half = n / 2;
        let layer = epsilon * (n as f64).ln() / a_bar;
        // Ties go to T/2; both branches give the same uniform mesh there.
        let rho = if layer >= 0.5 * t_end { 0.5 * t_end } else { layer };
        let h_fine = 2.0 * rho / n as f64;
        let h_coarse = 2.0 * (t_end - rho) / n as f64;

        let mut nodes: Vec<f64> = (0..=n)
            .map(|i| {
                if i <= half {
                    i as f64 * h_fine
                } else {
                    (i - half) as f64 * h_coarse + rho
                }
            })
            .collect();
        nodes[half] = rho;
        nodes[n] = t_end;

        let steps: Vec<f64> = (1..=n).map(|i| if i <= half { h_fine } else { h_coarse }).collect();

        let mut half_steps = vec![0.0; n + 1];
        half_steps[0] = 0.5 * steps[0];
        half_steps[n] = 0.5 * steps[n - 1];
        for i in 1..n {
            half_steps[i] = 0.5 * (steps[i - 1] + steps[i]);
        }

        Ok(Self {
            n,
            nodes,
            steps,
            half_steps,
            rho,
            h_fine,
            h_coarse,
        })
    }

    /// Mesh parameter `N` (number of cells).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nodes `ξ_0 … ξ_N`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Cell widths; `steps()[k]` is `h_{k+1} = ξ_{k+1} − ξ_k`.
    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// Trapezoid weights `ℏ_0 … ℏ_N`.
    pub fn half_steps(&self) -> &[f64] {
        &self.half_steps
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// `h_i` with the 1-based cell index used by the difference operators.
    pub fn h(&self, i: usize) -> f64 {
        self.steps[i - 1]
    }

    pub fn hbar(&self, i: usize) -> f64 {
        self.half_steps[i]
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn h_fine(&self) -> f64 {
        self.h_fine
    }

    pub fn h_coarse(&self) -> f64 {
        self.h_coarse
    }

    pub fn t_end(&self) -> f64 {
        self.nodes[self.n]
    }

    pub fn branch(&self) -> TransitionBranch {
        if self.rho == 0.5 * self.t_end() {
            TransitionBranch::Half
        } else {
            TransitionBranch::Layer
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.h_fine == self.h_coarse
    }

    /// Piecewise-linear interpolation of nodal `values` at `x`.
    /// Points outside `[0, T]` are clamped to the end values.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        if x <= self.nodes[0] {
            return values[0];
        }
        if x >= self.nodes[self.n] {
            return values[self.n];
        }
        // First node strictly greater than x.
        let hi = self.nodes.partition_point(|&node| node <= x);
        let lo = hi - 1;
        let w = (x - self.nodes[lo]) / (self.nodes[hi] - self.nodes[lo]);
        values[lo] + w * (values[hi] - values[lo])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn clamps_to_half_for_large_epsilon() {
        let m = build_shishkin(64, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(m.rho(), 0.5);
        assert_eq!(m.h_fine(), 1.0 / 64.0);
        assert_eq!(m.h_coarse(), 1.0 / 64.0);
        assert!(m.is_uniform());
        assert_eq!(m.branch(), TransitionBranch::Half);
    }

    #[test]
    fn layer_branch_transition_point() {
        // 2^-13 ln 64, 50-digit reference.
        let m = build_shishkin(64, 2f64.powi(-12), 2.0, 1.0).unwrap();
        assert_relative_eq!(m.rho(), 5.0767615763667869342e-4, max_relative = 1e-15);
        assert_relative_eq!(m.h_fine(), 1.5864879926146209169e-5, max_relative = 1e-15);
        assert_eq!(m.branch(), TransitionBranch::Layer);
    }

    #[test]
    fn four_cell_mesh_by_hand() {
        let m = build_shishkin(4, 0.0625, 1.0, 1.0).unwrap();
        let rho = 8.6643397569993163677e-2;
        assert_relative_eq!(m.rho(), rho, max_relative = 1e-15);
        let expected = [0.0, rho / 2.0, rho, rho + (1.0 - rho) / 2.0, 1.0];
        for (got, want) in m.nodes().iter().zip(expected) {
            assert_relative_eq!(*got, want, max_relative = 1e-15);
        }
    }

    #[test]
    fn tie_takes_half() {
        // ε ln N / ā == T/2 exactly when ā = 2 ε ln N / T.
        let n = 16;
        let eps = 0.25;
        let a_bar = 2.0 * eps * (n as f64).ln();
        let m = build_shishkin(n, eps, a_bar, 1.0).unwrap();
        assert_eq!(m.rho(), 0.5);
        assert!(m.is_uniform());
    }

    #[test]
    fn rejects_bad_arguments() {
        let field = |r: Result<ShishkinMesh>| match r {
            Err(Error::InvalidArgument { field, .. }) => field,
            other => panic!("expected invalid argument, got {other:?}"),
        };
        assert_eq!(field(build_shishkin(7, 0.5, 1.0, 1.0)), "n");
        assert_eq!(field(build_shishkin(2, 0.5, 1.0, 1.0)), "n");
        assert_eq!(field(build_shishkin(8, 0.0, 1.0, 1.0)), "epsilon");
        assert_eq!(field(build_shishkin(8, 1.5, 1.0, 1.0)), "epsilon");
        assert_eq!(field(build_shishkin(8, f64::NAN, 1.0, 1.0)), "epsilon");
        assert_eq!(field(build_shishkin(8, 0.5, 0.0, 1.0)), "a_bar");
        assert_eq!(field(build_shishkin(8, 0.5, 1.0, -1.0)), "t_end");
    }

    #[test]
    fn interpolation_is_exact_for_linear_data() {
        let m = build_shishkin(16, 2f64.powi(-8), 1.0, 2.0).unwrap();
        let vals: Vec<f64> = m.nodes().iter().map(|x| 3.0 * x - 1.0).collect();
        for x in [0.0, 1e-4, 0.01, 0.7, 1.3, 2.0] {
            assert_relative_eq!(m.interpolate(&vals, x), 3.0 * x - 1.0, epsilon = 1e-14);
        }
    }

    fn mesh_params() -> impl Strategy<Value = (usize, f64, f64, f64)> {
        (2usize..=1024, -40i32..=0, 0.1f64..10.0, 0.1f64..10.0)
            .prop_map(|(half, k, a_bar, t)| (2 * half, 2f64.powi(k), a_bar, t))
    }

    proptest! {
        #[test]
        fn mesh_invariants((n, eps, a_bar, t) in mesh_params()) {
            let m = build_shishkin(n, eps, a_bar, t).unwrap();
            let nodes = m.nodes();
            prop_assert_eq!(nodes.len(), n + 1);
            prop_assert_eq!(nodes[0], 0.0);
            prop_assert_eq!(nodes[n], t);
            prop_assert_eq!(nodes[n / 2], m.rho());
            prop_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(m.rho() > 0.0 && m.rho() <= t / 2.0);
            for (k, h) in m.steps().iter().enumerate() {
                let want = if k < n / 2 { m.h_fine() } else { m.h_coarse() };
                prop_assert!(((h - want) / want).abs() <= 1e-14);
            }
            // Node spacing agrees with the nominal steps up to rounding in the nodes.
            for (k, w) in nodes.windows(2).enumerate() {
                prop_assert!(((w[1] - w[0]) - m.steps()[k]).abs() <= 8.0 * f64::EPSILON * t);
            }
            let total: f64 = m.half_steps().iter().sum();
            prop_assert!((total - t).abs() <= 1e-13 * t);
            if eps * (n as f64).ln() / a_bar >= t / 2.0 {
                prop_assert!(m.is_uniform());
            }
        }

        #[test]
        fn refinement_grows_layer_rho((n, eps, a_bar, t) in mesh_params()) {
            let coarse = build_shishkin(n, eps, a_bar, t).unwrap();
            let fine = build_shishkin(2 * n, eps, a_bar, t).unwrap();
            prop_assert!(fine.rho() >= coarse.rho());
        }
    }
}
