//! Kemeny's constant: exact formulas, degree bounds and approximations.
//!
//! `K(G)` is the expected number of steps a random walk started from the
//! stationary distribution needs to reach a stationary-random target,
//! counting only targets different from the start. Three independent
//! routes are provided:
//!
//! * [`kemeny_eigen`]: `Σ_{j≥2} 1/μⱼ` over the normalized Laplacian spectrum;
//! * [`kemeny_group_inverse`]: `tr(L^# D) − kᵀL^#k / vol`;
//! * [`mfpt_kemeny_by_start`]: mean first passage times from the
//!   fundamental matrix of the walk.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{DegreeProfile, WeightedGraph};
use crate::interval::{BoundInterval, BoundSource};
use crate::linalg::{self, Lu, Matrix};
use crate::spectral::{kirchhoff_index, GroupInverseMatrix, LaplacianSet, SpectrumSummary};

/// Relative residual below which `w` counts as a Laplacian eigenvector.
pub const SLIGHTLY_REGULAR_TOL: f64 = 1e-8;
/// `‖w‖ ≤ REGULAR_TOL · vol` selects the regular branch.
pub const REGULAR_TOL: f64 = 1e-10;

/// `K(G) = Σ_{j≥2} 1/μⱼ`.
pub fn kemeny_eigen(spec: &SpectrumSummary) -> Result<f64> {
    if spec.n() < 2 || spec.mu2() <= spec.tol_normalized() {
        return Err(Error::Disconnected);
    }
    Ok(spec.mu[1..].iter().map(|m| 1.0 / m).sum())
}

/// `tr(L^# D)`.
pub fn trace_group_inverse_degree(gi: &GroupInverseMatrix, dp: &DegreeProfile) -> f64 {
    dp.degrees
        .iter()
        .enumerate()
        .map(|(i, k)| k * gi.matrix[(i, i)])
        .sum()
}

/// `kᵀ L^# k / vol`.
pub fn degree_quadratic_term(gi: &GroupInverseMatrix, dp: &DegreeProfile) -> Result<f64> {
    Ok(gi.matrix.bilinear(&dp.degrees, &dp.degrees)? / dp.volume)
}

/// `K(G) = tr(L^# D) − kᵀL^#k / vol`.
pub fn kemeny_group_inverse(gi: &GroupInverseMatrix, dp: &DegreeProfile) -> Result<f64> {
    check_dims(gi.n(), dp.n())?;
    Ok(trace_group_inverse_degree(gi, dp) - degree_quadratic_term(gi, dp)?)
}

/// `K_j = Σ_{i≠j} πᵢ m_ji` for every start vertex `j`.
///
/// Uses the fundamental matrix `Z = (I − P + 𝟙πᵀ)⁻¹` and the mean first
/// passage times `m_ji = (z_ii − z_ji)/πᵢ`. For a reversible chain every
/// entry equals `K(G)`.
pub fn mfpt_kemeny_by_start(ls: &LaplacianSet, dp: &DegreeProfile) -> Result<Vec<f64>> {
    let n = ls.n();
    check_dims(n, dp.n())?;
    if n < 2 {
        return Err(Error::Disconnected);
    }
    let pi = dp.stationary();
    let p = ls.transition_matrix();
    let system = Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - p[(i, j)] + pi[j]
    });
    let z = match Lu::factor(&system) {
        Ok(lu) => lu.inverse(),
        Err(Error::Singular) => return Err(Error::Disconnected),
        Err(e) => return Err(e),
    };
    Ok((0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| i != j)
                .map(|i| {
                    let m_ji = (z[(i, i)] - z[(j, i)]) / pi[i];
                    pi[i] * m_ji
                })
                .sum()
        })
        .collect())
}

/// Kemeny's constant from mean first passage times, started at vertex 0.
pub fn kemeny_mfpt_oracle(ls: &LaplacianSet, dp: &DegreeProfile) -> Result<f64> {
    Ok(mfpt_kemeny_by_start(ls, dp)?[0])
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `w = k − (vol/n)·𝟙`, the degree vector projected off the constants.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalDegreeVector {
    pub w: Vec<f64>,
    pub norm_sq: f64,
}

pub fn orthogonal_degree(dp: &DegreeProfile) -> OrthogonalDegreeVector {
    let mean = dp.average_degree();
    let w: Vec<f64> = dp.degrees.iter().map(|k| k - mean).collect();
    let norm_sq = linalg::dot(&w, &w);
    OrthogonalDegreeVector { w, norm_sq }
}

/// Degree bounds on `K(G)`:
/// `tr(L^#D) − ‖w‖²/(γ₂·vol) ≤ K(G) ≤ tr(L^#D) − ‖w‖²/(γₙ·vol)`.
pub fn degree_bounds(
    gi: &GroupInverseMatrix,
    dp: &DegreeProfile,
    spec: &SpectrumSummary,
) -> Result<BoundInterval> {
    spec.require_connected()?;
    check_dims(gi.n(), dp.n())?;
    let tr = trace_group_inverse_degree(gi, dp);
    let w2 = orthogonal_degree(dp).norm_sq;
    Ok(BoundInterval::new(
        tr - w2 / (spec.gamma2() * dp.volume),
        tr - w2 / (spec.gamma_max() * dp.volume),
        BoundSource::DegreeBounds,
    ))
}

/// Evidence that `w` is an eigenvector of `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlightlyRegularCertificate {
    /// Laplacian eigenvalue associated with `w` (0 for regular graphs).
    pub gamma: f64,
    /// `‖Lw − γw‖ / ‖w‖`.
    pub residual: f64,
    pub is_regular: bool,
}

impl SlightlyRegularCertificate {
    /// `γ^#`: `1/γ`, or 0 when `γ = 0`.
    pub fn gamma_sharp(&self) -> f64 {
        if self.gamma == 0.0 {
            0.0
        } else {
            1.0 / self.gamma
        }
    }
}

/// Outcome of the slightly-regular test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlightlyRegular {
    Accepted(SlightlyRegularCertificate),
    /// `w` is not an eigenvector; `gamma` is its Rayleigh quotient.
    Rejected {
        gamma: f64,
        residual: f64,
    },
}

impl SlightlyRegular {
    pub fn is_accepted(&self) -> bool {
        matches!(self, SlightlyRegular::Accepted(_))
    }

    pub fn certificate(&self) -> Option<&SlightlyRegularCertificate> {
        match self {
            SlightlyRegular::Accepted(c) => Some(c),
            SlightlyRegular::Rejected { .. } => None,
        }
    }
}

/// Tests whether the orthogonal degree vector is a Laplacian eigenvector.
pub fn slightly_regular_certificate(
    ls: &LaplacianSet,
    dp: &DegreeProfile,
) -> Result<SlightlyRegular> {
    check_dims(ls.n(), dp.n())?;
    let ow = orthogonal_degree(dp);
    let w_norm = libm::sqrt(ow.norm_sq);
    if w_norm <= REGULAR_TOL * dp.volume {
        return Ok(SlightlyRegular::Accepted(SlightlyRegularCertificate {
            gamma: 0.0,
            residual: 0.0,
            is_regular: true,
        }));
    }
    let lw = ls.laplacian.matvec(&ow.w)?;
    let gamma = linalg::dot(&ow.w, &lw) / ow.norm_sq;
    let diff: Vec<f64> = lw.iter().zip(&ow.w).map(|(a, b)| a - gamma * b).collect();
    let residual = linalg::norm(&diff) / w_norm;
    Ok(if residual <= SLIGHTLY_REGULAR_TOL {
        SlightlyRegular::Accepted(SlightlyRegularCertificate {
            gamma,
            residual,
            is_regular: false,
        })
    } else {
        SlightlyRegular::Rejected { gamma, residual }
    })
}

/// `K = tr(L^#D) − (γ^#/vol)(‖k‖² − vol²/n)` for a slightly regular graph.
pub fn kemeny_slightly_regular(
    cert: &SlightlyRegular,
    gi: &GroupInverseMatrix,
    dp: &DegreeProfile,
) -> Result<f64> {
    let cert = cert.certificate().ok_or(Error::CertificateRejected)?;
    check_dims(gi.n(), dp.n())?;
    let n = dp.n() as f64;
    let spread = dp.norm_sq() - dp.volume * dp.volume / n;
    Ok(trace_group_inverse_degree(gi, dp) - cert.gamma_sharp() / dp.volume * spread)
}

/// Laplacian eigenvalue of a two-class slightly regular graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiregularGamma {
    pub gamma: f64,
    /// `γ = n`, which happens iff `k0 = r0 + n1`.
    pub equals_n: bool,
}

/// `γ = (n/n0)(k1 − r1) = (n/n1)(k0 − r0)` for a graph whose vertices split
/// into classes of sizes `n0`, `n1` with degrees `k0`, `k1` and within-class
/// degrees `r0`, `r1`.
pub fn semiregular_gamma(
    n: usize,
    n0: usize,
    n1: usize,
    k0: f64,
    k1: f64,
    r0: f64,
    r1: f64,
) -> Result<SemiregularGamma> {
    if n0 == 0 || n1 == 0 || n != n0 + n1 {
        return Err(crate::error::invalid(
            "class sizes must be positive and sum to n",
        ));
    }
    let left = n0 as f64 * (k0 - r0);
    let right = n1 as f64 * (k1 - r1);
    if (left - right).abs() > 1e-12 * (1.0 + left.abs().max(right.abs())) {
        return Err(crate::error::invalid(
            "inconsistent parameters: n0(k0 - r0) != n1(k1 - r1)",
        ));
    }
    let gamma = n as f64 / n0 as f64 * (k1 - r1);
    let equals_n = (k0 - (r0 + n1 as f64)).abs() <= 1e-12 * (1.0 + k0.abs());
    Ok(SemiregularGamma { gamma, equals_n })
}

/// Heterogeneity index `H = (1/n) Σ (kᵢ − k̄)²`.
pub fn heterogeneity(dp: &DegreeProfile) -> f64 {
    let mean = dp.average_degree();
    dp.degrees
        .iter()
        .map(|k| (k - mean) * (k - mean))
        .sum::<f64>()
        / dp.n() as f64
}

/// Irregularity `I = β₁² − k̄²`, `β₁` the largest adjacency eigenvalue.
pub fn irregularity(ls: &LaplacianSet, dp: &DegreeProfile) -> Result<f64> {
    let beta1 = linalg::symmetric_eigenvalues(&ls.adjacency)?
        .last()
        .copied()
        .unwrap_or(0.0);
    let kbar = dp.average_degree();
    Ok(beta1 * beta1 - kbar * kbar)
}

/// Resistive estimate `(k̄/n)·R_G`, exact for regular graphs.
pub fn resistive_estimate(dp: &DegreeProfile, spec: &SpectrumSummary) -> Result<f64> {
    Ok(dp.average_degree() / dp.n() as f64 * kirchhoff_index(spec)?)
}

/// `K** = (k̄/n)·R_G + I·(1 − 2n)/(2m)`, with `m` the total conductance.
pub fn kemeny_kooij_star_star(g: &WeightedGraph) -> Result<f64> {
    let ls = LaplacianSet::assemble(g)?;
    let spec = SpectrumSummary::compute(&ls)?;
    let dp = g.degree_profile();
    kemeny_star_star_from_parts(&ls, &spec, &dp)
}

pub(crate) fn kemeny_star_star_from_parts(
    ls: &LaplacianSet,
    spec: &SpectrumSummary,
    dp: &DegreeProfile,
) -> Result<f64> {
    let n = dp.n() as f64;
    let m = dp.volume / 2.0;
    Ok(resistive_estimate(dp, spec)? + irregularity(ls, dp)? * (1.0 - 2.0 * n) / (2.0 * m))
}
