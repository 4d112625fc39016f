//! Spectral sparsification by effective-resistance sampling and the Kemeny
//! approximations built on it.
//!
//! [`sparsify`] draws `t = ⌈8n·ln(n)/ε²⌉` edges with replacement, edge
//! `{i,j}` with probability `p_ij ∝ c_ij·r_ij`, and gives every sampled edge
//! the conductance `(draws)·c_ij/(t·p_ij)`. With probability at least 1/2
//! (for `ε ≤ 1`) the result `G′` is an ε-approximation of `G`:
//! `zᵀL_G z/(1+ε) ≤ zᵀL_{G′} z ≤ (1+ε) zᵀL_G z` for all `z`.
//!
//! From `G′` three approximations of `K(G)` are formed,
//!
//! * `K′ = Σ x′ᵢ − y′`,
//! * `K″ = Σ x′ᵢ − y`,
//! * `K‴ = K(G′)`,
//!
//! with `xᵢ = kᵢ (L_G^#)ᵢᵢ`, `x′ᵢ = kᵢ (L_{G′}^#)ᵢᵢ`, `y = kᵀL_G^#k/vol(G)`
//! and `y′ = kᵀL_{G′}^#k/vol(G)`; degrees and volume are always those of `G`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::Analysis;
use crate::error::{invalid, Error, Result};
use crate::graph::{DegreeProfile, Edge, WeightedGraph};
use crate::interval::{BoundInterval, BoundSource};
use crate::kemeny;
use crate::linalg::{self, Matrix};
use crate::rng;
use crate::spectral::{GroupInverseMatrix, LaplacianSet, SpectrumSummary};

/// Absolute slack used by the ε-approximation and eigenvalue-envelope checks.
pub const VERIFY_TOL: f64 = 1e-9;
/// Reseeded attempts allowed when a sample comes out disconnected.
pub const DEFAULT_MAX_ATTEMPTS: usize = 16;

/// `t = ⌈8n·ln(n)/ε²⌉`.
pub fn sample_count(n: usize, epsilon: f64) -> Result<usize> {
    check_epsilon(epsilon)?;
    let nf = n as f64;
    Ok(libm::ceil(8.0 * nf * libm::log(nf) / (epsilon * epsilon)) as usize)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(invalid("epsilon must be a positive finite number"))
    }
}

/// `p_ij = c_ij·r_ij / Σ_e c_e·r_e`, in the edge order of `g`.
pub fn sampling_probabilities(g: &WeightedGraph, gi: &GroupInverseMatrix) -> Result<Vec<f64>> {
    if gi.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: gi.n(),
        });
    }
    let weights = g
        .edges()
        .map(|e| Ok(e.conductance * gi.effective_resistance(e.i, e.j)?))
        .collect::<Result<Vec<f64>>>()?;
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(invalid("graph has no edges to sample"));
    }
    if let Some(pos) = weights.iter().position(|&w| !(w > 0.0)) {
        let e = g.edges().nth(pos).expect("index from the same iterator");
        return Err(invalid(alloc::format!(
            "edge ({}, {}) has zero effective resistance",
            e.i,
            e.j
        )));
    }
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Walker/Vose alias table for O(1) sampling from a discrete distribution.
#[derive(Debug, Clone)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    /// `weights` need not be normalized but must be non-negative with a
    /// positive sum.
    pub fn new(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        let total: f64 = weights.iter().sum();
        if n == 0 || !(total > 0.0) || weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(invalid(
                "alias table needs non-negative weights with positive sum",
            ));
        }
        let mut scaled: Vec<f64> = weights.iter().map(|w| w * n as f64 / total).collect();
        let mut prob = vec![1.0; n];
        let mut alias: Vec<usize> = (0..n).collect();
        let (mut small, mut large): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| scaled[i] < 1.0);
        while let (Some(s), Some(&l)) = (small.pop(), large.last()) {
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] += scaled[s] - 1.0;
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        Ok(Self { prob, alias })
    }

    pub fn len(&self) -> usize {
        self.prob.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    pub fn sample<R: rand_core::RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        let column = ((rng::uniform(rng) * self.len() as f64) as usize).min(self.len() - 1);
        if rng::uniform(rng) < self.prob[column] {
            column
        } else {
            self.alias[column]
        }
    }
}

/// The graph half of a sparsification run.
#[derive(Debug, Clone)]
pub struct Sparsified {
    pub graph: WeightedGraph,
    pub sample_count: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// `p_ij` in the edge order of the input graph.
    pub probabilities: Vec<f64>,
    /// `false` when `ε > 1`, where the probability-1/2 guarantee does not apply.
    pub guarantee_applies: bool,
}

/// Samples a sparsifier of `g`; `gi` must be the group inverse of `g`.
pub fn sparsify(
    g: &WeightedGraph,
    gi: &GroupInverseMatrix,
    epsilon: f64,
    seed: u64,
) -> Result<Sparsified> {
    check_epsilon(epsilon)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let probabilities = sampling_probabilities(g, gi)?;
    let alias = AliasTable::new(&probabilities)?;
    let edges: Vec<Edge> = g.edges().collect();
    draw(g.n(), &edges, &probabilities, &alias, epsilon, seed)
}

fn draw(
    n: usize,
    edges: &[Edge],
    probabilities: &[f64],
    alias: &AliasTable,
    epsilon: f64,
    seed: u64,
) -> Result<Sparsified> {
    let t = sample_count(n, epsilon)?;
    let mut counts = vec![0u64; edges.len()];
    let mut stream = rng::seeded(seed);
    for _ in 0..t {
        counts[alias.sample(&mut stream)] += 1;
    }
    let mut graph = WeightedGraph::new(n)?;
    for ((e, &count), &p) in edges.iter().zip(&counts).zip(probabilities) {
        if count > 0 {
            graph.add_edge(e.i, e.j, count as f64 * e.conductance / (t as f64 * p))?;
        }
    }
    Ok(Sparsified {
        graph,
        sample_count: t,
        epsilon,
        seed,
        probabilities: probabilities.to_vec(),
        guarantee_applies: epsilon <= 1.0,
    })
}

/// Outcome of the ε-approximation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verification {
    Verified,
    Refuted,
    Unchecked,
}

impl Verification {
    pub fn name(self) -> &'static str {
        match self {
            Verification::Verified => "verified",
            Verification::Refuted => "refuted",
            Verification::Unchecked => "unchecked",
        }
    }
}

/// Checks candidate sparsifiers against a fixed connected graph `G`.
///
/// Holds `W = V Γ^{-1/2}`, where the columns of `V` span the complement of
/// `𝟙` in the eigenbasis of `L_G`. The generalized eigenvalues of the pencil
/// `(L_{G′}, L_G)` on that complement are the eigenvalues of `Wᵀ L_{G′} W`,
/// which equals `(L_G^#)^{1/2} L_{G′} (L_G^#)^{1/2}` with the null direction
/// removed.
#[derive(Debug, Clone)]
pub struct ApproximationChecker {
    basis: Matrix,
}

impl ApproximationChecker {
    pub fn new(ls: &LaplacianSet) -> Result<Self> {
        let n = ls.n();
        let eig = ls.laplacian_eigen()?;
        let tol =
            crate::spectral::EIGEN_ZERO_RTOL * eig.values.last().copied().unwrap_or(0.0).max(1.0);
        if n < 2 || eig.values[1] <= tol {
            return Err(Error::Disconnected);
        }
        let scale: Vec<f64> = eig.values[1..]
            .iter()
            .map(|g| 1.0 / libm::sqrt(*g))
            .collect();
        let basis = Matrix::from_fn(n, n - 1, |i, j| eig.vectors[(i, j + 1)] * scale[j]);
        Ok(Self { basis })
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    /// Ascending generalized eigenvalues of `(L_{G′}, L_G)` off `𝟙`.
    pub fn relative_spectrum(&self, gprime: &WeightedGraph) -> Result<Vec<f64>> {
        let n = self.n();
        if gprime.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: gprime.n(),
            });
        }
        let mut lp = Matrix::zeros(n, n);
        for e in gprime.edges() {
            lp[(e.i, e.i)] += e.conductance;
            lp[(e.j, e.j)] += e.conductance;
            lp[(e.i, e.j)] -= e.conductance;
            lp[(e.j, e.i)] -= e.conductance;
        }
        let projected = self.basis.transpose().matmul(&lp.matmul(&self.basis)?)?;
        let sym = Matrix::from_fn(n - 1, n - 1, |i, j| {
            0.5 * (projected[(i, j)] + projected[(j, i)])
        });
        linalg::symmetric_eigenvalues(&sym)
    }

    /// True iff every relative eigenvalue lies in `[1/(1+ε), 1+ε]` up to
    /// [`VERIFY_TOL`]. A disconnected `G′` is refuted without solving.
    pub fn verify(&self, gprime: &WeightedGraph, epsilon: f64) -> Result<bool> {
        check_epsilon(epsilon)?;
        if gprime.n() == self.n() && !gprime.is_connected() {
            return Ok(false);
        }
        let spectrum = self.relative_spectrum(gprime)?;
        let lo = 1.0 / (1.0 + epsilon) - VERIFY_TOL;
        let hi = 1.0 + epsilon + VERIFY_TOL;
        Ok(spectrum.iter().all(|&x| lo <= x && x <= hi))
    }
}

/// Whether `gprime` is an ε-approximation of the connected graph `g`.
pub fn verify_epsilon_approx(
    g: &WeightedGraph,
    gprime: &WeightedGraph,
    epsilon: f64,
) -> Result<bool> {
    let ls = LaplacianSet::assemble(g)?;
    ApproximationChecker::new(&ls)?.verify(gprime, epsilon)
}

/// The diagonal terms `x`, `x′` and the degree terms `y`, `y′`.
#[derive(Debug, Clone, PartialEq)]
pub struct XyTerms {
    pub x: Vec<f64>,
    pub x_prime: Vec<f64>,
    pub y: f64,
    pub y_prime: f64,
}

impl XyTerms {
    /// `Σ xᵢ − y`, which equals `K(G)`.
    pub fn kemeny(&self) -> f64 {
        self.x.iter().sum::<f64>() - self.y
    }
}

/// `xᵢ = kᵢ(L_G^#)ᵢᵢ`, `x′ᵢ = kᵢ(L_{G′}^#)ᵢᵢ`, `y`, `y′`; `dp` is the degree
/// profile of `G`.
pub fn xy_terms(
    dp: &DegreeProfile,
    gi: &GroupInverseMatrix,
    gi_prime: &GroupInverseMatrix,
) -> Result<XyTerms> {
    for m in [gi.n(), gi_prime.n()] {
        if m != dp.n() {
            return Err(Error::DimensionMismatch {
                expected: dp.n(),
                found: m,
            });
        }
    }
    let x = diag_times_degree(dp, gi);
    let x_prime = diag_times_degree(dp, gi_prime);
    let y = gi.matrix.bilinear(&dp.degrees, &dp.degrees)? / dp.volume;
    let y_prime = gi_prime.matrix.bilinear(&dp.degrees, &dp.degrees)? / dp.volume;
    Ok(XyTerms {
        x,
        x_prime,
        y,
        y_prime,
    })
}

fn diag_times_degree(dp: &DegreeProfile, gi: &GroupInverseMatrix) -> Vec<f64> {
    dp.degrees
        .iter()
        .enumerate()
        .map(|(i, k)| k * gi.matrix[(i, i)])
        .collect()
}

/// [`xy_terms`] computed directly from the two graphs.
pub fn xy_terms_for_graphs(g: &WeightedGraph, gprime: &WeightedGraph) -> Result<XyTerms> {
    if !gprime.is_connected() {
        return Err(Error::Disconnected);
    }
    let gi = GroupInverseMatrix::compute(&LaplacianSet::assemble(g)?)?;
    let gi_prime = GroupInverseMatrix::compute(&LaplacianSet::assemble(gprime)?)?;
    xy_terms(&g.degree_profile(), &gi, &gi_prime)
}

/// `K′`, `K″` and `K‴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approximations {
    pub k_prime: f64,
    pub k_double_prime: f64,
    pub k_triple_prime: f64,
}

/// `spec_prime` is the spectrum of `G′`.
pub fn approximations(xy: &XyTerms, spec_prime: &SpectrumSummary) -> Result<Approximations> {
    let sum_xp: f64 = xy.x_prime.iter().sum();
    Ok(Approximations {
        k_prime: sum_xp - xy.y_prime,
        k_double_prime: sum_xp - xy.y,
        k_triple_prime: kemeny::kemeny_eigen(spec_prime)?,
    })
}

/// `[K‴/(1+ε), (1+ε)K‴]`, which contains `K(G)` whenever `G′` is an
/// ε-approximation. Tagged conditional unless `verification` is verified.
pub fn envelope_direct(k_triple: f64, epsilon: f64, verification: Verification) -> BoundInterval {
    BoundInterval::new(
        k_triple / (1.0 + epsilon),
        (1.0 + epsilon) * k_triple,
        BoundSource::DirectSparsification,
    )
    .conditional(verification != Verification::Verified)
}

/// Envelopes that contain `K″` and `K′` for every ε-approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationEnvelopes {
    pub k_double_prime: BoundInterval,
    pub k_prime: BoundInterval,
}

/// (i) `K − ε/(1+ε)(K+y) ≤ K″ ≤ K + ε(K+y)`;
/// (ii) `K − ε/(1+ε)(K+(2+ε)y) ≤ K′ ≤ K + ε(K + (2+ε)/(1+ε)·y)`.
pub fn envelope_kprime_kdoubleprime(k: f64, y: f64, epsilon: f64) -> ApproximationEnvelopes {
    let e = epsilon;
    ApproximationEnvelopes {
        k_double_prime: BoundInterval::new(
            k - e / (1.0 + e) * (k + y),
            k + e * (k + y),
            BoundSource::KDoublePrimeEnvelope,
        ),
        k_prime: BoundInterval::new(
            k - e / (1.0 + e) * (k + (2.0 + e) * y),
            k + e * (k + (2.0 + e) / (1.0 + e) * y),
            BoundSource::KPrimeEnvelope,
        ),
    }
}

/// Upper bound on `K(G′)` for any ε-approximation `G′`:
/// `(1+ε)²·tr(L^#D) − M/((1+ε)²·vol·γₙ)` with
/// `M = max{‖k‖²/(1+ε)² − (1+ε)²·vol²/n, 0}`.
pub fn envelope_ktriple_upper(
    dp: &DegreeProfile,
    gi: &GroupInverseMatrix,
    spec: &SpectrumSummary,
    epsilon: f64,
) -> Result<f64> {
    spec.require_connected()?;
    let s = (1.0 + epsilon) * (1.0 + epsilon);
    let n = dp.n() as f64;
    let m = (dp.norm_sq() / s - s * dp.volume * dp.volume / n).max(0.0);
    let tr = kemeny::trace_group_inverse_degree(gi, dp);
    Ok(s * tr - m / (s * dp.volume * spec.gamma_max()))
}

/// `μᵢ/(1+ε) ≤ μ′ᵢ ≤ (1+ε)μᵢ` for every index, with slack [`VERIFY_TOL`].
pub fn normalized_eig_envelope(
    spec_g: &SpectrumSummary,
    spec_gprime: &SpectrumSummary,
    epsilon: f64,
) -> bool {
    spec_g.mu.len() == spec_gprime.mu.len()
        && spec_g.mu.iter().zip(&spec_gprime.mu).all(|(&mu, &mup)| {
            mu / (1.0 + epsilon) - VERIFY_TOL <= mup && mup <= (1.0 + epsilon) * mu + VERIFY_TOL
        })
}

/// Every interval attached to a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelopes {
    /// Direct interval for `K`, absent when `G′` is disconnected.
    pub direct: Option<BoundInterval>,
    pub k_double_prime: BoundInterval,
    pub k_prime: BoundInterval,
    /// Upper bound on `K‴`.
    pub k_triple_upper: f64,
}

impl Envelopes {
    pub fn by_name(&self) -> BTreeMap<&'static str, BoundInterval> {
        let mut map = BTreeMap::new();
        if let Some(d) = self.direct {
            map.insert(d.source.name(), d);
        }
        map.insert(self.k_double_prime.source.name(), self.k_double_prime);
        map.insert(self.k_prime.source.name(), self.k_prime);
        map
    }
}

/// One complete sparsification experiment.
#[derive(Debug, Clone)]
pub struct SparsificationReport {
    pub sparsified: Sparsified,
    pub verification: Verification,
    /// `K(G)`.
    pub kemeny: f64,
    /// `y` of `G`.
    pub y: f64,
    /// `None` when `G′` is disconnected.
    pub approximations: Option<Approximations>,
    pub envelopes: Envelopes,
    /// Per-index normalized-spectrum envelope; `None` when `G′` is disconnected.
    pub normalized_envelope_holds: Option<bool>,
    /// Number of draws made, including the accepted one.
    pub attempts: usize,
}

impl SparsificationReport {
    pub fn edge_count(&self) -> usize {
        self.sparsified.graph.edge_count()
    }

    pub fn relative_error(&self) -> Option<f64> {
        self.approximations
            .map(|a| (a.k_triple_prime - self.kemeny).abs() / self.kemeny)
    }
}

/// Reusable sparsification state for one connected graph: sampling
/// probabilities, the alias table and the ε-approximation checker.
#[derive(Debug, Clone)]
pub struct Sparsifier<'a> {
    analysis: &'a Analysis,
    edges: Vec<Edge>,
    probabilities: Vec<f64>,
    alias: AliasTable,
    checker: ApproximationChecker,
}

impl<'a> Sparsifier<'a> {
    pub fn new(analysis: &'a Analysis) -> Result<Self> {
        let probabilities = sampling_probabilities(&analysis.graph, &analysis.group_inverse)?;
        let alias = AliasTable::new(&probabilities)?;
        Ok(Self {
            edges: analysis.graph.edges().collect(),
            checker: ApproximationChecker::new(&analysis.laplacians)?,
            analysis,
            probabilities,
            alias,
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn checker(&self) -> &ApproximationChecker {
        &self.checker
    }

    pub fn sparsify(&self, epsilon: f64, seed: u64) -> Result<Sparsified> {
        draw(
            self.analysis.n(),
            &self.edges,
            &self.probabilities,
            &self.alias,
            epsilon,
            seed,
        )
    }

    /// Samples `G′` with `seed` and evaluates every approximation and bound.
    pub fn report(&self, epsilon: f64, seed: u64, verify: bool) -> Result<SparsificationReport> {
        let sparsified = self.sparsify(epsilon, seed)?;
        self.evaluate(sparsified, verify, 1)
    }

    /// Like [`Self::report`], redrawing with seeds `trial_seed(seed, a)` for
    /// `a = 1, 2, …` while `G′` is disconnected, up to `max_attempts` draws.
    pub fn report_with_retries(
        &self,
        epsilon: f64,
        seed: u64,
        verify: bool,
        max_attempts: usize,
    ) -> Result<SparsificationReport> {
        let mut attempt = 0;
        loop {
            let s = if attempt == 0 {
                seed
            } else {
                rng::trial_seed(seed, attempt as u64)
            };
            let sparsified = self.sparsify(epsilon, s)?;
            attempt += 1;
            if sparsified.graph.is_connected() || attempt >= max_attempts.max(1) {
                return self.evaluate(sparsified, verify, attempt);
            }
        }
    }

    fn evaluate(
        &self,
        sparsified: Sparsified,
        verify: bool,
        attempts: usize,
    ) -> Result<SparsificationReport> {
        let a = self.analysis;
        let epsilon = sparsified.epsilon;
        let kemeny = a.kemeny();
        let y = a.y()?;
        let env = envelope_kprime_kdoubleprime(kemeny, y, epsilon);
        let k_triple_upper =
            envelope_ktriple_upper(&a.degrees, &a.group_inverse, &a.spectrum, epsilon)?;

        if !sparsified.graph.is_connected() {
            return Ok(SparsificationReport {
                sparsified,
                verification: Verification::Refuted,
                kemeny,
                y,
                approximations: None,
                envelopes: Envelopes {
                    direct: None,
                    k_double_prime: env.k_double_prime,
                    k_prime: env.k_prime,
                    k_triple_upper,
                },
                normalized_envelope_holds: None,
                attempts,
            });
        }

        let verification = if verify {
            if self.checker.verify(&sparsified.graph, epsilon)? {
                Verification::Verified
            } else {
                Verification::Refuted
            }
        } else {
            Verification::Unchecked
        };
        let ls_prime = LaplacianSet::assemble(&sparsified.graph)?;
        let spec_prime = SpectrumSummary::compute(&ls_prime)?;
        let gi_prime = GroupInverseMatrix::compute(&ls_prime)?;
        let xy = xy_terms(&a.degrees, &a.group_inverse, &gi_prime)?;
        let approx = approximations(&xy, &spec_prime)?;
        Ok(SparsificationReport {
            verification,
            kemeny,
            y,
            approximations: Some(approx),
            envelopes: Envelopes {
                direct: Some(envelope_direct(
                    approx.k_triple_prime,
                    epsilon,
                    verification,
                )),
                k_double_prime: env.k_double_prime,
                k_prime: env.k_prime,
                k_triple_upper,
            },
            normalized_envelope_holds: Some(normalized_eig_envelope(
                &a.spectrum,
                &spec_prime,
                epsilon,
            )),
            attempts,
            sparsified,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn sample_count_uses_natural_log_and_ceiling() {
        // 8·25·ln 25 / 0.25 = 2575.15...
        assert_eq!(sample_count(25, 0.5).unwrap(), 2576);
        assert_eq!(sample_count(250, 0.5).unwrap(), 44172);
        assert!(sample_count(10, 0.0).is_err());
        assert!(sample_count(10, -1.0).is_err());
    }

    #[test]
    fn probabilities_follow_foster() {
        let g = generators::windmill(3, 4).unwrap();
        let a = Analysis::new(&g).unwrap();
        let p = sampling_probabilities(&g, &a.group_inverse).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (prob, e) in p.iter().zip(g.edges()) {
            let r = a.group_inverse.effective_resistance(e.i, e.j).unwrap();
            assert!((prob - r / (g.n() - 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn alias_table_frequencies() {
        let w = [0.1, 0.2, 0.3, 0.4];
        let table = AliasTable::new(&w).unwrap();
        let mut counts = [0usize; 4];
        let mut r = rng::seeded(3);
        let draws = 200_000;
        for _ in 0..draws {
            counts[table.sample(&mut r)] += 1;
        }
        for (c, p) in counts.iter().zip(w) {
            let freq = *c as f64 / draws as f64;
            let se = libm::sqrt(p * (1.0 - p) / draws as f64);
            assert!((freq - p).abs() < 4.0 * se, "{freq} vs {p}");
        }
        assert!(AliasTable::new(&[]).is_err());
        assert!(AliasTable::new(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn sparsify_rejects_bad_input() {
        let g = generators::complete(4).unwrap();
        let a = Analysis::new(&g).unwrap();
        assert!(sparsify(&g, &a.group_inverse, 0.0, 1).is_err());
        let split = WeightedGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(
            sparsify(&split, &a.group_inverse, 0.5, 1).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn sparsify_is_deterministic_and_bounded() {
        let g = generators::complete_bipartite(10, 15).unwrap();
        let a = Analysis::new(&g).unwrap();
        let s1 = sparsify(&g, &a.group_inverse, 0.5, 11).unwrap();
        let s2 = sparsify(&g, &a.group_inverse, 0.5, 11).unwrap();
        assert_eq!(s1.graph, s2.graph);
        assert!(s1.graph.edge_count() <= s1.sample_count.min(g.edge_count()));
        assert!(s1.guarantee_applies);
        for e in s1.graph.edges() {
            assert!(g.has_edge(e.i, e.j));
        }
        let s3 = sparsify(&g, &a.group_inverse, 1.5, 11).unwrap();
        assert!(!s3.guarantee_applies);
    }

    #[test]
    fn identity_is_an_approximation() {
        let g = generators::windmill(3, 5).unwrap();
        assert!(verify_epsilon_approx(&g, &g, 1e-6).unwrap());
        let ls = LaplacianSet::assemble(&g).unwrap();
        let spectrum = ApproximationChecker::new(&ls)
            .unwrap()
            .relative_spectrum(&g)
            .unwrap();
        assert_eq!(spectrum.len(), g.n() - 1);
        assert!(spectrum.iter().all(|x| (x - 1.0).abs() < 1e-10));
    }

    #[test]
    fn scaled_graph_is_refuted() {
        let g = generators::complete_bipartite(4, 6).unwrap();
        let eps = 0.3;
        let scaled = g.scaled((1.0 + eps) * 1.01).unwrap();
        assert!(!verify_epsilon_approx(&g, &scaled, eps).unwrap());
        let inside = g.scaled(1.0 + 0.5 * eps).unwrap();
        assert!(verify_epsilon_approx(&g, &inside, eps).unwrap());
    }

    #[test]
    fn disconnected_candidate_is_refuted() {
        let g = generators::cycle(6).unwrap();
        let mut h = g.clone();
        h.remove_edge(0, 1);
        h.remove_edge(3, 4);
        assert!(!verify_epsilon_approx(&g, &h, 1.0).unwrap());
    }

    #[test]
    fn xy_identity_and_regular_case() {
        let g = generators::windmill_type_ii(3, 4, 2).unwrap();
        let xy = xy_terms_for_graphs(&g, &g).unwrap();
        let a = Analysis::new(&g).unwrap();
        assert!((xy.kemeny() - a.kemeny()).abs() < 1e-9 * a.kemeny());
        assert_eq!(xy.x, xy.x_prime);
        assert_eq!(xy.y, xy.y_prime);

        let c = generators::complete(6).unwrap();
        let xy = xy_terms_for_graphs(&c, &c.scaled(1.3).unwrap()).unwrap();
        assert!(xy.y.abs() < 1e-12 && xy.y_prime.abs() < 1e-12);
    }

    #[test]
    fn approximations_of_identity() {
        let g = generators::windmill(2, 5).unwrap();
        let a = Analysis::new(&g).unwrap();
        let xy = xy_terms(&a.degrees, &a.group_inverse, &a.group_inverse).unwrap();
        let ap = approximations(&xy, &a.spectrum).unwrap();
        let k = a.kemeny();
        for v in [ap.k_prime, ap.k_double_prime, ap.k_triple_prime] {
            assert!((v - k).abs() < 1e-9 * k);
        }
    }

    #[test]
    fn envelope_direct_values() {
        let iv = envelope_direct(23.66, 0.5, Verification::Verified);
        assert!((iv.lower - 15.773_333).abs() < 1e-5 && (iv.upper - 35.49).abs() < 1e-12);
        assert!(iv.contains(23.5, 0.0) && !iv.conditional);
        let point = envelope_direct(4.0, 0.0, Verification::Unchecked);
        assert_eq!((point.lower, point.upper), (4.0, 4.0));
        assert!(point.conditional);
    }

    #[test]
    fn envelopes_collapse_at_zero_epsilon() {
        let env = envelope_kprime_kdoubleprime(10.0, 0.7, 0.0);
        for iv in [env.k_double_prime, env.k_prime] {
            assert_eq!((iv.lower, iv.upper), (10.0, 10.0));
        }
    }

    #[test]
    fn envelopes_match_closed_form_for_bipartite() {
        // K = 23.5 and y = 0.02 for K_{10,15}
        let g = generators::complete_bipartite(10, 15).unwrap();
        let a = Analysis::new(&g).unwrap();
        let y = a.y().unwrap();
        assert!((y - 0.02).abs() < 1e-10);
        let env = envelope_kprime_kdoubleprime(a.kemeny(), y, 0.5);
        assert!((env.k_double_prime.lower - 15.66).abs() < 1e-9);
        assert!((env.k_double_prime.upper - 35.26).abs() < 1e-9);
        assert!((env.k_prime.lower - 15.65).abs() < 1e-9);
        assert!((env.k_prime.upper - 35.266_666_666_666_67).abs() < 1e-9);
    }

    #[test]
    fn ktriple_upper_regular_and_tight() {
        let c = generators::complete(8).unwrap();
        let a = Analysis::new(&c).unwrap();
        let eps = 0.4;
        let bound = envelope_ktriple_upper(&a.degrees, &a.group_inverse, &a.spectrum, eps).unwrap();
        let expected = (1.0 + eps) * (1.0 + eps) * 7.0 * a.group_inverse.trace();
        assert!((bound - expected).abs() < 1e-12 * expected);

        let w = generators::windmill_type_ii(3, 10, 5).unwrap();
        let a = Analysis::new(&w).unwrap();
        let bound =
            envelope_ktriple_upper(&a.degrees, &a.group_inverse, &a.spectrum, 1e-6).unwrap();
        assert!((bound - a.kemeny()).abs() < 1e-4);
    }

    #[test]
    fn normalized_envelope_checks() {
        let g = generators::complete(3).unwrap();
        let a = Analysis::new(&g).unwrap();
        assert!(normalized_eig_envelope(&a.spectrum, &a.spectrum, 0.01));
        let mut h = g.clone();
        h.add_edge(0, 1, 1.0).unwrap();
        let hs = SpectrumSummary::compute(&LaplacianSet::assemble(&h).unwrap()).unwrap();
        assert!(!normalized_eig_envelope(&a.spectrum, &hs, 0.01));
    }

    #[test]
    fn report_on_identity_like_run() {
        let g = generators::complete_bipartite(10, 15).unwrap();
        let a = Analysis::new(&g).unwrap();
        let sp = Sparsifier::new(&a).unwrap();
        let r = sp.report(0.5, 1, true).unwrap();
        assert_eq!(r.attempts, 1);
        assert!(r.edge_count() <= 150);
        assert_eq!(r.sparsified.probabilities.len(), 150);
        let names = r.envelopes.by_name();
        assert!(names.contains_key("k-prime-envelope"));
        if r.verification == Verification::Verified {
            assert!(r.envelopes.direct.unwrap().contains(a.kemeny(), 1e-9));
        }
    }

    #[test]
    fn unchecked_reports() {
        let g = generators::complete(6).unwrap();
        let a = Analysis::new(&g).unwrap();
        let sp = Sparsifier::new(&a).unwrap();
        let r = sp.report(1.0, 5, false).unwrap();
        assert_eq!(r.verification, Verification::Unchecked);
        assert!(r.envelopes.direct.is_none_or(|d| d.conditional));
    }

    #[test]
    fn retries_are_counted() {
        // a path sparsifies to a disconnected graph unless every edge is hit
        let g = generators::path(12).unwrap();
        let a = Analysis::new(&g).unwrap();
        let sp = Sparsifier::new(&a).unwrap();
        let r = sp
            .report_with_retries(8.0, 2, true, DEFAULT_MAX_ATTEMPTS)
            .unwrap();
        assert!(r.attempts >= 1 && r.attempts <= DEFAULT_MAX_ATTEMPTS);
        if r.attempts < DEFAULT_MAX_ATTEMPTS {
            assert!(r.sparsified.graph.is_connected());
        }
        let single = sp.report_with_retries(8.0, 2, true, 1).unwrap();
        assert_eq!(single.attempts, 1);
        if !single.sparsified.graph.is_connected() {
            assert_eq!(single.verification, Verification::Refuted);
            assert!(single.approximations.is_none());
        }
    }
}
