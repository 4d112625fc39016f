//! Kemeny bounds from eigenvalue interlacing.
//!
//! Let `λ₁ = 1 ≥ λ₂ ≥ … ≥ λₙ` be the eigenvalues of the normalized adjacency
//! `D^{-1/2} A D^{-1/2}` and let `θ₁ ≥ … ≥ θ_m` interlace them, either as the
//! spectrum of an `m × m` principal submatrix or of the quotient matrix of an
//! `m`-part partition. Then
//!
//! ```text
//! Σ_{i=2}^m 1/(1−θᵢ) + (n−m)/2  ≤  K(G)  ≤  Σ_{i=2}^m 1/(1−θᵢ) + (n−m)/(1−λ₂)
//! ```
//!
//! Edge deletion uses the normalized Laplacian instead. Here both `μ` (of
//! `G`) and `θ` (of `H = G − r edges`) are sorted **descending**, so
//! `μ₁` is the largest eigenvalue and `μₙ = 0`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{DegreeProfile, Edge, WeightedGraph};
use crate::interval::{BoundInterval, BoundSource};
use crate::kemeny;
use crate::linalg::{self, Matrix};
use crate::spectral::{LaplacianSet, SpectrumSummary};

/// A partition of `{0, …, n−1}` into non-empty disjoint parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return Err(invalid("partition has an empty part"));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(invalid(alloc::format!("vertex {v} appears in two parts")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(invalid(alloc::format!(
                "vertex {v} is not covered by the partition"
            )));
        }
        Ok(Self { n, parts })
    }

    /// Part `labels[v]` receives vertex `v`; labels must be `0..m` with no gaps.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let m = labels.iter().max().map_or(0, |l| l + 1);
        let mut parts = vec![Vec::new(); m];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v);
        }
        Self::new(labels.len(), parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }
}

/// Quotient of a symmetric matrix over a partition.
#[derive(Debug, Clone)]
pub struct QuotientMatrix {
    /// `B_ij = 𝟙ᵀ A_ij 𝟙 / |Uᵢ|`, the average row sums of the blocks.
    pub b: Matrix,
    /// Eigenvalues of `B`, descending.
    pub theta: Vec<f64>,
}

impl QuotientMatrix {
    /// Eigenvalues come from the similar symmetric matrix
    /// `𝟙ᵀ A_ij 𝟙 / √(|Uᵢ||Uⱼ|)`, so they are always real.
    pub fn new(a: &Matrix, partition: &VertexPartition) -> Result<Self> {
        if !a.is_square() || a.rows() != partition.n() {
            return Err(Error::DimensionMismatch {
                expected: partition.n(),
                found: a.rows(),
            });
        }
        let parts = partition.parts();
        let m = parts.len();
        let mut sums = Matrix::zeros(m, m);
        for (p, up) in parts.iter().enumerate() {
            for (q, uq) in parts.iter().enumerate() {
                sums[(p, q)] = up
                    .iter()
                    .flat_map(|&i| uq.iter().map(move |&j| (i, j)))
                    .map(|ij| a[ij])
                    .sum();
            }
        }
        let size = |p: usize| parts[p].len() as f64;
        let b = Matrix::from_fn(m, m, |p, q| sums[(p, q)] / size(p));
        let sym = Matrix::from_fn(m, m, |p, q| {
            0.5 * (sums[(p, q)] + sums[(q, p)]) / libm::sqrt(size(p) * size(q))
        });
        let mut theta = linalg::symmetric_eigenvalues(&sym)?;
        theta.reverse();
        Ok(Self { b, theta })
    }
}

fn interlacing_interval(
    spec: &SpectrumSummary,
    theta: &[f64],
    source: BoundSource,
) -> Result<BoundInterval> {
    let n = spec.n();
    let m = theta.len();
    let gap = 1.0 - spec.lambda2();
    if gap <= spec.tol_normalized() {
        return Err(Error::Disconnected);
    }
    let mut head = 0.0;
    for &t in &theta[1..] {
        if 1.0 - t <= spec.tol_normalized() {
            return Err(Error::Disconnected);
        }
        head += 1.0 / (1.0 - t);
    }
    let rest = (n - m) as f64;
    Ok(BoundInterval::new(
        head + rest / 2.0,
        head + rest / gap,
        source,
    ))
}

fn check_order(m: usize, n: usize) -> Result<()> {
    if m < 2 || m >= n {
        return Err(invalid(alloc::format!(
            "need 2 <= m < n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// Bounds from the principal submatrix of the normalized adjacency on `subset`.
pub fn submatrix_bounds(
    ls: &LaplacianSet,
    spec: &SpectrumSummary,
    subset: &[usize],
) -> Result<BoundInterval> {
    let n = ls.n();
    check_order(subset.len(), n)?;
    let mut seen = BTreeSet::new();
    for &v in subset {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if !seen.insert(v) {
            return Err(invalid(alloc::format!("vertex {v} repeated in subset")));
        }
    }
    let b = ls.normalized_adjacency.principal_submatrix(subset);
    let mut theta = linalg::symmetric_eigenvalues(&b)?;
    theta.reverse();
    interlacing_interval(spec, &theta, BoundSource::PrincipalSubmatrix)
}

/// Bounds from the quotient matrix of the normalized adjacency.
pub fn quotient_bounds(
    ls: &LaplacianSet,
    spec: &SpectrumSummary,
    partition: &VertexPartition,
) -> Result<BoundInterval> {
    check_order(partition.len(), ls.n())?;
    let q = QuotientMatrix::new(&ls.normalized_adjacency, partition)?;
    interlacing_interval(spec, &q.theta, BoundSource::QuotientMatrix)
}

/// `min_{i~j} √(kᵢkⱼ)/(√(kᵢkⱼ)+c_ij) + (n−2)/(1−λ₂)`, together with the first
/// minimizing edge in lexicographic order.
pub fn adjacent_pair_upper(
    g: &WeightedGraph,
    dp: &DegreeProfile,
    spec: &SpectrumSummary,
) -> Result<(f64, Edge)> {
    let n = g.n();
    if n < 3 {
        return Err(invalid("adjacent-pair bound needs n >= 3"));
    }
    spec.require_connected()?;
    let mut best: Option<(f64, Edge)> = None;
    for e in g.edges() {
        let s = libm::sqrt(dp.degrees[e.i] * dp.degrees[e.j]);
        let term = s / (s + e.conductance);
        if best.is_none_or(|(b, _)| term < b) {
            best = Some((term, e));
        }
    }
    let (term, edge) = best.ok_or(Error::Disconnected)?;
    Ok((term + (n - 2) as f64 / (1.0 - spec.lambda2()), edge))
}

fn check_deletion(spec_g: &SpectrumSummary, spec_h: &SpectrumSummary, r: usize) -> Result<usize> {
    let n = spec_g.n();
    if spec_h.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: spec_h.n(),
        });
    }
    if r > n.saturating_sub(1) {
        return Err(invalid(alloc::format!(
            "cannot delete r = {r} edges with n = {n}"
        )));
    }
    spec_g.require_connected()?;
    spec_h.require_connected()?;
    Ok(n)
}

/// `r/μ₁ + Σ_{j=1}^{n−r−1} 1/θⱼ ≤ K(G) ≤ Σ_{j=r+1}^{n−1} 1/θⱼ + r/μ_{n−1}`,
/// for `H` obtained from `G` by deleting `r` edges.
pub fn edge_deletion_bounds(
    spec_g: &SpectrumSummary,
    spec_h: &SpectrumSummary,
    r: usize,
) -> Result<BoundInterval> {
    let n = check_deletion(spec_g, spec_h, r)?;
    if r == 0 {
        let k = kemeny::kemeny_eigen(spec_g)?;
        return Ok(BoundInterval::new(k, k, BoundSource::EdgeDeletion));
    }
    let mu = spec_g.mu_descending();
    let theta = spec_h.mu_descending();
    // 1-based θⱼ is theta[j - 1]
    let inv = |j: usize| 1.0 / theta[j - 1];
    let rf = r as f64;
    let lower = rf / mu[0] + (1..=n - r - 1).map(inv).sum::<f64>();
    let upper = (r + 1..=n - 1).map(inv).sum::<f64>() + rf / mu[n - 2];
    Ok(BoundInterval::new(lower, upper, BoundSource::EdgeDeletion))
}

/// The same interval written around `K(H)`:
/// `K(H) − Σ_{j=n−r}^{n−1} 1/θⱼ + r/μ₁ ≤ K(G) ≤ K(H) − Σ_{j=1}^r 1/θⱼ + r/μ_{n−1}`.
pub fn edge_deletion_bounds_via_kh(
    spec_g: &SpectrumSummary,
    spec_h: &SpectrumSummary,
    r: usize,
) -> Result<BoundInterval> {
    let n = check_deletion(spec_g, spec_h, r)?;
    let kh = kemeny::kemeny_eigen(spec_h)?;
    if r == 0 {
        return Ok(BoundInterval::new(kh, kh, BoundSource::EdgeDeletion));
    }
    let mu = spec_g.mu_descending();
    let theta = spec_h.mu_descending();
    let inv = |j: usize| 1.0 / theta[j - 1];
    let rf = r as f64;
    let lower = kh - (n - r..=n - 1).map(inv).sum::<f64>() + rf / mu[0];
    let upper = kh - (1..=r).map(inv).sum::<f64>() + rf / mu[n - 2];
    Ok(BoundInterval::new(lower, upper, BoundSource::EdgeDeletion))
}

/// `G` with the listed edges removed. Every pair must be a distinct edge of `G`.
pub fn delete_edges(g: &WeightedGraph, deleted: &[(usize, usize)]) -> Result<WeightedGraph> {
    let mut h = g.clone();
    for &(i, j) in deleted {
        if !h.has_edge(i, j) {
            return Err(Error::NotAnEdge(i, j));
        }
        h.remove_edge(i, j);
    }
    Ok(h)
}

/// Deletes `deleted` from `g` and returns the edge-deletion interval along
/// with `H`. Fails with [`Error::Disconnected`] if `H` is disconnected.
pub fn edge_deletion_bounds_for(
    g: &WeightedGraph,
    spec_g: &SpectrumSummary,
    deleted: &[(usize, usize)],
) -> Result<(BoundInterval, WeightedGraph)> {
    let h = delete_edges(g, deleted)?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let spec_h = SpectrumSummary::compute(&LaplacianSet::assemble(&h)?)?;
    Ok((edge_deletion_bounds(spec_g, &spec_h, deleted.len())?, h))
}

/// `λᵢ ≥ θᵢ ≥ λ_{n−m+i}` for descending `lambda` (length n) and `theta`
/// (length m), up to `tol`.
pub fn cauchy_interlacing_holds(lambda: &[f64], theta: &[f64], tol: f64) -> bool {
    let (n, m) = (lambda.len(), theta.len());
    m <= n
        && theta
            .iter()
            .enumerate()
            .all(|(i, &t)| lambda[i] + tol >= t && t + tol >= lambda[n - m + i])
}

/// `μ_{i−r} ≥ θᵢ ≥ μ_{i+r}` for `i = 1..n`, descending spectra, with
/// `μᵢ = 2` for `i ≤ 0` and `μᵢ = 0` for `i ≥ n+1`.
pub fn edge_interlacing_holds(mu: &[f64], theta: &[f64], r: usize, tol: f64) -> bool {
    let n = mu.len();
    let at = |i: isize| -> f64 {
        if i <= 0 {
            2.0
        } else if i as usize > n {
            0.0
        } else {
            mu[i as usize - 1]
        }
    };
    theta.len() == n
        && (1..=n as isize).all(|i| {
            let t = theta[i as usize - 1];
            at(i - r as isize) + tol >= t && t + tol >= at(i + r as isize)
        })
}
