//! Laplacian matrices, their spectra, and the Laplacian group inverse.
//!
//! Conventions: the combinatorial Laplacian `L = D − A` and the normalized
//! Laplacian `𝓛 = D^{-1/2} L D^{-1/2}` have their eigenvalues `γ` and `μ`
//! sorted ascending (`γ₁ = μ₁ = 0`); the normalized adjacency
//! `D^{-1/2} A D^{-1/2}` has its eigenvalues `λ` sorted descending
//! (`λ₁ = 1`), so that `μᵢ = 1 − λ_{n+1−i}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{self, Cholesky, Matrix, SymmetricEigen};

/// Relative scale used to decide that an eigenvalue is zero.
pub const EIGEN_ZERO_RTOL: f64 = 1e-9;

/// The matrices derived from a graph with no isolated vertex.
#[derive(Debug, Clone)]
pub struct LaplacianSet {
    pub adjacency: Matrix,
    pub degrees: Vec<f64>,
    pub laplacian: Matrix,
    pub normalized_laplacian: Matrix,
    pub normalized_adjacency: Matrix,
}

impl LaplacianSet {
    /// Assembles `A`, `D`, `L`, `𝓛` and the normalized adjacency.
    ///
    /// Fails with [`Error::ZeroDegree`] if some vertex is isolated, which
    /// includes every single-vertex graph.
    pub fn assemble(g: &WeightedGraph) -> Result<Self> {
        let n = g.n();
        let mut adjacency = Matrix::zeros(n, n);
        for e in g.edges() {
            adjacency[(e.i, e.j)] = e.conductance;
            adjacency[(e.j, e.i)] = e.conductance;
        }
        let degrees = g.degree_profile().degrees;
        if let Some(v) = degrees.iter().position(|&k| k <= 0.0) {
            return Err(Error::ZeroDegree(v));
        }
        let inv_sqrt: Vec<f64> = degrees.iter().map(|&k| 1.0 / libm::sqrt(k)).collect();
        let laplacian = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                degrees[i]
            } else {
                -adjacency[(i, j)]
            }
        });
        let normalized_adjacency =
            Matrix::from_fn(n, n, |i, j| adjacency[(i, j)] * inv_sqrt[i] * inv_sqrt[j]);
        let normalized_laplacian = Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            id - normalized_adjacency[(i, j)]
        });
        Ok(Self {
            adjacency,
            degrees,
            laplacian,
            normalized_laplacian,
            normalized_adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    /// Random-walk transition matrix `P = D⁻¹A`.
    pub fn transition_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n(), self.n(), |i, j| {
            self.adjacency[(i, j)] / self.degrees[i]
        })
    }

    /// Eigen-decomposition of `L` including eigenvectors.
    pub fn laplacian_eigen(&self) -> Result<SymmetricEigen> {
        linalg::symmetric_eigen(&self.laplacian)
    }
}

/// Sorted spectra of `L`, `𝓛` and the normalized adjacency.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    /// Eigenvalues of `L`, ascending.
    pub gamma: Vec<f64>,
    /// Eigenvalues of `𝓛`, ascending.
    pub mu: Vec<f64>,
    /// Eigenvalues of `D^{-1/2} A D^{-1/2}`, descending.
    pub lambda: Vec<f64>,
}

impl SpectrumSummary {
    pub fn compute(ls: &LaplacianSet) -> Result<Self> {
        let gamma = linalg::symmetric_eigenvalues(&ls.laplacian)?;
        let mu = linalg::symmetric_eigenvalues(&ls.normalized_laplacian)?;
        let mut lambda = linalg::symmetric_eigenvalues(&ls.normalized_adjacency)?;
        lambda.reverse();
        Ok(Self { gamma, mu, lambda })
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    /// Zero threshold for `γ`: `1e-9 · max(1, γₙ)`.
    pub fn tol_eig(&self) -> f64 {
        EIGEN_ZERO_RTOL * self.gamma_max().max(1.0)
    }

    /// Zero threshold for the normalized spectra, `1e-9 · max(1, μₙ)`.
    pub fn tol_normalized(&self) -> f64 {
        EIGEN_ZERO_RTOL * self.mu.last().copied().unwrap_or(0.0).max(1.0)
    }

    /// Algebraic connectivity `γ₂`.
    pub fn gamma2(&self) -> f64 {
        self.gamma.get(1).copied().unwrap_or(0.0)
    }

    /// Largest Laplacian eigenvalue `γₙ`.
    pub fn gamma_max(&self) -> f64 {
        self.gamma.last().copied().unwrap_or(0.0)
    }

    pub fn mu2(&self) -> f64 {
        self.mu.get(1).copied().unwrap_or(0.0)
    }

    /// Second largest eigenvalue of the normalized adjacency.
    pub fn lambda2(&self) -> f64 {
        self.lambda.get(1).copied().unwrap_or(1.0)
    }

    /// `μ` sorted descending (`μ₁ ≥ … ≥ μₙ = 0`), the convention of the
    /// edge-deletion bounds.
    pub fn mu_descending(&self) -> Vec<f64> {
        let mut mu = self.mu.clone();
        mu.reverse();
        mu
    }

    /// Both `γ₂` and `μ₂` clear their zero thresholds.
    pub fn is_connected(&self) -> bool {
        self.n() >= 2 && self.gamma2() > self.tol_eig() && self.mu2() > self.tol_normalized()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

/// The group inverse `L^#` of a connected graph's Laplacian.
///
/// Computed as `(L + J/n)⁻¹ − J/n`, where `J` is the all-ones matrix. The
/// shift makes the matrix positive definite exactly when the graph is
/// connected, so one Cholesky factorization suffices.
#[derive(Debug, Clone)]
pub struct GroupInverseMatrix {
    pub matrix: Matrix,
}

impl GroupInverseMatrix {
    pub fn compute(ls: &LaplacianSet) -> Result<Self> {
        let n = ls.n();
        let shift = 1.0 / n as f64;
        let shifted = Matrix::from_fn(n, n, |i, j| ls.laplacian[(i, j)] + shift);
        let chol = match Cholesky::factor(&shifted) {
            Ok(c) => c,
            Err(Error::Singular) => return Err(Error::Disconnected),
            Err(e) => return Err(e),
        };
        let mut m = chol.inverse();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= shift;
            }
        }
        Ok(Self { matrix: m })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `r_ij = (eᵢ − eⱼ)ᵀ L^# (eᵢ − eⱼ)`; zero when `i == j`.
    pub fn effective_resistance(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.n();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if i == j {
            return Ok(0.0);
        }
        let m = &self.matrix;
        Ok((m[(i, i)] + m[(j, j)] - m[(i, j)] - m[(j, i)]).max(0.0))
    }

    /// Relative Frobenius residuals of `L L^# L = L` and `L^# L L^# = L^#`.
    pub fn identity_residuals(&self, laplacian: &Matrix) -> Result<(f64, f64)> {
        let m = &self.matrix;
        let lml = laplacian.matmul(m)?.matmul(laplacian)?;
        let mlm = m.matmul(laplacian)?.matmul(m)?;
        let r1 = lml.sub(laplacian)?.frobenius_norm() / laplacian.frobenius_norm();
        let r2 = mlm.sub(m)?.frobenius_norm() / m.frobenius_norm();
        Ok((r1, r2))
    }
}

/// Kirchhoff index `R_G = n · Σ_{i≥2} 1/γᵢ`.
pub fn kirchhoff_index(spec: &SpectrumSummary) -> Result<f64> {
    if spec.n() < 2 || spec.gamma2() <= spec.tol_eig() {
        return Err(Error::Disconnected);
    }
    let sum: f64 = spec.gamma[1..].iter().map(|g| 1.0 / g).sum();
    Ok(spec.n() as f64 * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use alloc::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn k2_laplacian() {
        let ls = LaplacianSet::assemble(&generators::complete(2).unwrap()).unwrap();
        assert_eq!(
            ls.laplacian,
            Matrix::from_rows(&[&[1.0, -1.0], &[-1.0, 1.0]]).unwrap()
        );
    }

    #[test]
    fn normalized_laplacian_has_unit_diagonal() {
        let ls = LaplacianSet::assemble(&generators::path(3).unwrap()).unwrap();
        assert_eq!(ls.normalized_laplacian.diagonal(), vec![1.0; 3]);
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                assert_eq!(
                    ls.normalized_laplacian[(i, j)],
                    id - ls.normalized_adjacency[(i, j)]
                );
            }
        }
    }

    #[test]
    fn bipartite_normalized_adjacency_entries() {
        let g = generators::complete_bipartite(10, 15).unwrap();
        let ls = LaplacianSet::assemble(&g).unwrap();
        let expected = 1.0 / libm::sqrt(150.0);
        for e in g.edges() {
            assert!(close(ls.normalized_adjacency[(e.i, e.j)], expected, 1e-15));
        }
        assert_eq!(ls.normalized_adjacency[(0, 1)], 0.0);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = generators::windmill(3, 4).unwrap();
        let ls = LaplacianSet::assemble(&g).unwrap();
        for i in 0..g.n() {
            let s: f64 = ls.laplacian.row(i).iter().sum();
            assert!(s.abs() <= 1e-10 * ls.volume());
        }
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        assert_eq!(
            LaplacianSet::assemble(&g).unwrap_err(),
            Error::ZeroDegree(2)
        );
        assert!(LaplacianSet::assemble(&WeightedGraph::new(1).unwrap()).is_err());
    }

    #[test]
    fn complete_graph_spectrum() {
        let ls = LaplacianSet::assemble(&generators::complete(5).unwrap()).unwrap();
        let s = SpectrumSummary::compute(&ls).unwrap();
        assert!(s.gamma[0].abs() < 1e-12);
        assert!(close(s.gamma2(), 5.0, 1e-12) && close(s.gamma_max(), 5.0, 1e-12));
        assert!(s.is_connected());
    }

    #[test]
    fn table_spectra() {
        let s = |g: WeightedGraph| {
            SpectrumSummary::compute(&LaplacianSet::assemble(&g).unwrap()).unwrap()
        };
        let b = s(generators::complete_bipartite(10, 15).unwrap());
        assert!(close(b.gamma2(), 10.0, 1e-10) && close(b.gamma_max(), 25.0, 1e-10));
        let w = s(generators::windmill(3, 10).unwrap());
        assert!(close(w.gamma2(), 1.0, 1e-10) && close(w.gamma_max(), 31.0, 1e-10));
    }

    #[test]
    fn normalized_spectra_pair_up() {
        let ls = LaplacianSet::assemble(&generators::windmill_type_ii(2, 3, 2).unwrap()).unwrap();
        let s = SpectrumSummary::compute(&ls).unwrap();
        for i in 0..s.n() {
            assert!((s.mu[i] - (1.0 - s.lambda[i])).abs() < 1e-12);
        }
        assert!(s.mu[0].abs() < 1e-12 && (s.lambda[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disconnected_spectrum_detected() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let ls = LaplacianSet::assemble(&g).unwrap();
        let s = SpectrumSummary::compute(&ls).unwrap();
        assert!(!s.is_connected());
        assert_eq!(kirchhoff_index(&s), Err(Error::Disconnected));
        assert_eq!(
            GroupInverseMatrix::compute(&ls).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn group_inverse_of_k2() {
        let ls = LaplacianSet::assemble(&generators::complete(2).unwrap()).unwrap();
        let gi = GroupInverseMatrix::compute(&ls).unwrap();
        let expected = Matrix::from_rows(&[&[0.25, -0.25], &[-0.25, 0.25]]).unwrap();
        assert!(gi.matrix.sub(&expected).unwrap().max_abs() < 1e-15);
        let (r1, r2) = gi.identity_residuals(&ls.laplacian).unwrap();
        assert!(r1 < 1e-14 && r2 < 1e-14);
        assert!(close(gi.effective_resistance(0, 1).unwrap(), 1.0, 1e-14));
    }

    #[test]
    fn group_inverse_of_p3() {
        let ls = LaplacianSet::assemble(&generators::path(3).unwrap()).unwrap();
        let gi = GroupInverseMatrix::compute(&ls).unwrap();
        assert!(close(gi.trace(), 4.0 / 3.0, 1e-14));
        for row in 0..3 {
            assert!(gi.matrix.row(row).iter().sum::<f64>().abs() < 1e-14);
        }
        assert!(close(gi.effective_resistance(0, 2).unwrap(), 2.0, 1e-14));
        assert!(close(gi.effective_resistance(0, 1).unwrap(), 1.0, 1e-14));
        assert_eq!(gi.effective_resistance(1, 1).unwrap(), 0.0);
        assert!(gi.effective_resistance(0, 3).is_err());
    }

    #[test]
    fn kirchhoff_values() {
        let s = |g: WeightedGraph| {
            SpectrumSummary::compute(&LaplacianSet::assemble(&g).unwrap()).unwrap()
        };
        assert!(close(
            kirchhoff_index(&s(generators::complete(5).unwrap())).unwrap(),
            4.0,
            1e-12
        ));
        assert!(close(
            kirchhoff_index(&s(generators::path(3).unwrap())).unwrap(),
            4.0,
            1e-12
        ));
    }
}
