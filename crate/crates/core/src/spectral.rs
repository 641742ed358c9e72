//! Discrete Laplacian, its Moore–Penrose pseudoinverse, and the pinned
//! solve of singular Laplacian systems.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;

/// Condition number of `L + J/n` above which a warning is logged.
pub const CONDITION_WARNING: f64 = 1e12;

/// Relative tolerance for the solvability condition `Σ b = 0`.
pub const CENTERING_TOLERANCE: f64 = 1e-9;

/// `L = D − A` for an optimal graph, indexed by vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaplacian {
    matrix: DMatrix<f64>,
}

impl DiscreteLaplacian {
    pub fn new(g: &MetrizedGraph) -> Result<Self> {
        if !g.is_optimal() {
            return Err(Error::NotOptimal);
        }
        let n = g.n();
        let mut matrix = DMatrix::zeros(n, n);
        for e in g.edges() {
            let c = e.conductance();
            matrix[(e.a, e.b)] = -c;
            matrix[(e.b, e.a)] = -c;
        }
        for p in 0..n {
            let off: f64 = matrix.row(p).sum();
            matrix[(p, p)] = -off;
        }
        Ok(Self { matrix })
    }

    /// Wraps an existing matrix after checking it is square, symmetric and
    /// doubly centered to `tol`.
    pub fn from_matrix(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let scale = matrix.amax().max(1.0);
        if (&matrix - matrix.transpose()).amax() > tol * scale {
            return Err(Error::Domain("Laplacian must be symmetric".into()));
        }
        if matrix.row_iter().any(|r| r.sum().abs() > tol * scale) {
            return Err(Error::Domain("Laplacian rows must sum to zero".into()));
        }
        Ok(Self { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.matrix[(p, q)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Unique `u` with `L u = b` and `u[pin] = 0`. Requires `Σ b = 0`.
    ///
    /// Solved on the reduced Laplacian (row and column `pin` removed), which
    /// is positive definite for a connected graph.
    pub fn solve_centered(&self, b: &DVector<f64>, pin: usize) -> Result<DVector<f64>> {
        let n = self.n();
        if b.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: b.len(),
            });
        }
        if pin >= n {
            return Err(Error::VertexOutOfRange { index: pin, n });
        }
        let sum = b.sum();
        if sum.abs() > CENTERING_TOLERANCE * b.lp_norm(1).max(f64::MIN_POSITIVE) {
            return Err(Error::Inconsistent { sum });
        }
        let mut u = DVector::zeros(n);
        if n == 1 {
            return Ok(u);
        }
        let reduced = self.matrix.clone().remove_row(pin).remove_column(pin);
        let rhs = b.clone().remove_row(pin);
        let chol = reduced.clone().cholesky().ok_or_else(|| Error::Numerical {
            condition: eigen_condition(&reduced),
        })?;
        let x = chol.solve(&rhs);
        for (slot, i) in (0..n).filter(|&i| i != pin).enumerate() {
            u[i] = x[slot];
        }
        Ok(u)
    }
}

/// Convenience wrapper for [`DiscreteLaplacian::new`].
pub fn laplacian(g: &MetrizedGraph) -> Result<DiscreteLaplacian> {
    DiscreteLaplacian::new(g)
}

/// Convenience wrapper for [`DiscreteLaplacian::solve_centered`].
pub fn solve_centered(lap: &DiscreteLaplacian, b: &DVector<f64>, pin: usize) -> Result<DVector<f64>> {
    lap.solve_centered(b, pin)
}

/// The Moore–Penrose pseudoinverse `L⁺` of a discrete Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoInverse {
    matrix: DMatrix<f64>,
    condition: f64,
}

impl PseudoInverse {
    /// Computes `L⁺ = (L + J/n)⁻¹ − J/n`.
    ///
    /// `L + J/n` is symmetric positive definite for a connected graph, so a
    /// single Cholesky factorisation suffices.
    pub fn new(lap: &DiscreteLaplacian) -> Result<Self> {
        let n = lap.n();
        let shift = 1.0 / n as f64;
        let completed = lap.matrix().add_scalar(shift);
        let chol = completed.clone().cholesky().ok_or_else(|| Error::Numerical {
            condition: eigen_condition(&completed),
        })?;
        let inv = chol.inverse();
        let condition = completed.column_iter().map(|c| c.lp_norm(1)).fold(0.0, f64::max)
            * inv.column_iter().map(|c| c.lp_norm(1)).fold(0.0, f64::max);
        if !condition.is_finite() {
            return Err(Error::Numerical { condition });
        }
        if condition > CONDITION_WARNING {
            log::warn!("L + J/n is ill-conditioned (condition estimate {condition:e})");
        }
        let mut matrix = inv.add_scalar(-shift);
        // Restore exact symmetry lost to rounding in the inverse.
        for p in 0..n {
            for q in p + 1..n {
                let avg = 0.5 * (matrix[(p, q)] + matrix[(q, p)]);
                matrix[(p, q)] = avg;
                matrix[(q, p)] = avg;
            }
        }
        Ok(Self { matrix, condition })
    }

    /// Wraps a precomputed matrix; no identities are checked.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Self {
        Self {
            matrix,
            condition: f64::NAN,
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.matrix[(p, q)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// One-norm condition number of `L + J/n` measured during construction.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Smallest eigenvalue; non-negative up to rounding for a valid `L⁺`.
    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Convenience wrapper for [`PseudoInverse::new`].
pub fn pseudo_inverse(lap: &DiscreteLaplacian) -> Result<PseudoInverse> {
    PseudoInverse::new(lap)
}

/// Max-entry residuals of the defining identities of `L⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenroseResiduals {
    /// `‖L L⁺ L − L‖_max`
    pub lpl: f64,
    /// `‖L⁺ L L⁺ − L⁺‖_max`
    pub plp: f64,
    /// `‖(L L⁺)ᵀ − L L⁺‖_max`
    pub lp_symmetric: f64,
    /// `‖(L⁺ L)ᵀ − L⁺ L‖_max`
    pub pl_symmetric: f64,
    /// `max(‖L L⁺ − (I − J/n)‖_max, ‖L⁺ L − (I − J/n)‖_max)`
    pub centering: f64,
}

impl PenroseResiduals {
    pub fn compute(lap: &DiscreteLaplacian, pinv: &PseudoInverse) -> Self {
        let l = lap.matrix();
        let p = pinv.matrix();
        let n = l.nrows();
        let lp = l * p;
        let pl = p * l;
        let projector = DMatrix::<f64>::identity(n, n).add_scalar(-1.0 / n as f64);
        Self {
            lpl: (&lp * l - l).amax(),
            plp: (&pl * p - p).amax(),
            lp_symmetric: (lp.transpose() - &lp).amax(),
            pl_symmetric: (pl.transpose() - &pl).amax(),
            centering: (&lp - &projector).amax().max((&pl - &projector).amax()),
        }
    }

    pub fn max(&self) -> f64 {
        [self.lpl, self.plp, self.lp_symmetric, self.pl_symmetric, self.centering]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn eigen_condition(m: &DMatrix<f64>) -> f64 {
    let eig = SymmetricEigen::new(m.clone()).eigenvalues;
    let max = eig.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let min = eig.iter().fold(f64::INFINITY, |a, v| a.min(v.abs()));
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::dmatrix;

    fn graph(text: &str) -> MetrizedGraph {
        MetrizedGraph::parse_edge_list(text).unwrap()
    }

    #[test]
    fn laplacian_fixtures() {
        let single = laplacian(&graph("a b 2")).unwrap();
        assert_eq!(*single.matrix(), dmatrix![0.5, -0.5; -0.5, 0.5]);

        let path = laplacian(&graph("a b 1\nb c 1")).unwrap();
        assert_eq!(
            *path.matrix(),
            dmatrix![1.0, -1.0, 0.0; -1.0, 2.0, -1.0; 0.0, -1.0, 1.0]
        );

        let tri = laplacian(&graph("a b 1\nb c 1\nc a 1")).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(tri.get(p, q), if p == q { 2.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn laplacian_rejects_multigraph() {
        assert!(matches!(laplacian(&graph("a a 1\na b 1")), Err(Error::NotOptimal)));
    }

    #[test]
    fn pseudo_inverse_closed_forms() {
        // L + J/2 = I for the length-2 edge, so L⁺ = I − J/2.
        let p = pseudo_inverse(&laplacian(&graph("a b 2")).unwrap()).unwrap();
        assert_abs_diff_eq!(p.matrix(), &dmatrix![0.5, -0.5; -0.5, 0.5], epsilon = 1e-15);

        let p = pseudo_inverse(&laplacian(&graph("a b 1")).unwrap()).unwrap();
        assert_abs_diff_eq!(p.matrix(), &dmatrix![0.25, -0.25; -0.25, 0.25], epsilon = 1e-15);
    }

    #[test]
    fn pinv_times_laplacian_is_centering_projector() {
        let lap = laplacian(&graph("a b 1\nb c 2\nc d 0.5\nd a 3\na c 1")).unwrap();
        let pinv = pseudo_inverse(&lap).unwrap();
        let n = lap.n() as f64;
        let prod = pinv.matrix() * lap.matrix();
        for p in 0..lap.n() {
            for q in 0..lap.n() {
                let want = if p == q { (n - 1.0) / n } else { -1.0 / n };
                assert_abs_diff_eq!(prod[(p, q)], want, epsilon = 1e-12);
            }
        }
        assert!(PenroseResiduals::compute(&lap, &pinv).max() < 1e-12);
        assert!(pinv.min_eigenvalue() > -1e-12);
        assert!(pinv.condition() >= 1.0);
    }

    #[test]
    fn single_vertex_pinv_is_zero() {
        let g = graph("a a 3");
        // the unoptimalized one-vertex graph has no Laplacian
        assert!(laplacian(&g).is_err());
        let lap = DiscreteLaplacian::from_matrix(dmatrix![0.0], 1e-12).unwrap();
        let pinv = pseudo_inverse(&lap).unwrap();
        assert_eq!(pinv.get(0, 0), 0.0);
    }

    #[test]
    fn from_matrix_validates() {
        assert!(DiscreteLaplacian::from_matrix(dmatrix![1.0, -1.0; -0.5, 0.5], 1e-12).is_err());
        assert!(DiscreteLaplacian::from_matrix(dmatrix![1.0, 0.0; 0.0, 1.0], 1e-12).is_err());
    }

    #[test]
    fn solve_centered_fixtures() {
        let lap = laplacian(&graph("a b 1\nb c 1")).unwrap();
        let u = lap.solve_centered(&DVector::zeros(3), 0).unwrap();
        assert_eq!(u, DVector::zeros(3));

        let u = lap
            .solve_centered(&DVector::from_vec(vec![-2.0, 1.0, 1.0]), 0)
            .unwrap();
        assert_abs_diff_eq!(u, DVector::from_vec(vec![0.0, 2.0, 3.0]), epsilon = 1e-14);
        assert_eq!(u[0], 0.0);

        let u = lap
            .solve_centered(&DVector::from_vec(vec![1.0, -2.0, 1.0]), 1)
            .unwrap();
        assert_abs_diff_eq!(u, DVector::from_vec(vec![1.0, 0.0, 1.0]), epsilon = 1e-14);
        assert_eq!(u[1], 0.0);
    }

    #[test]
    fn solve_centered_errors() {
        let lap = laplacian(&graph("a b 1\nb c 1")).unwrap();
        assert!(matches!(
            lap.solve_centered(&DVector::from_vec(vec![1.0, 0.0, 0.0]), 0),
            Err(Error::Inconsistent { .. })
        ));
        assert!(matches!(
            lap.solve_centered(&DVector::zeros(3), 3),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            lap.solve_centered(&DVector::zeros(2), 0),
            Err(Error::Dimension { .. })
        ));
    }
}
