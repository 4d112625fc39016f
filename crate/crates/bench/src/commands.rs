//! The computations behind each CLI subcommand. Every function returns a
//! [`Table`]; rows that could not be computed are kept and marked `failed` in
//! their `status` column, and counted in [`Outcome::failures`].

use anyhow::{bail, Context, Result};
use kemeny_core::interlace::{self, VertexPartition};
use kemeny_core::sparsify::{SparsificationReport, Sparsifier, Verification, DEFAULT_MAX_ATTEMPTS};
use kemeny_core::{generators, kemeny, rng, Analysis, WeightedGraph};
use rayon::prelude::*;

use crate::table::{Table, Value};

/// Redraws allowed when an Erdős–Rényi sample is disconnected.
pub const ER_MAX_DRAWS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub failures: usize,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self { table, failures: 0 }
    }
}

fn analyse(label: &str, g: &WeightedGraph) -> Result<Analysis> {
    if !g.is_connected() {
        bail!("{label} is disconnected; Kemeny's constant is only defined for connected graphs");
    }
    Analysis::new(g).with_context(|| format!("analysing {label}"))
}

pub const EXACT_COLUMNS: &[&str] = &[
    "graph",
    "n",
    "edges",
    "gamma2",
    "gamma_n",
    "lower",
    "K",
    "upper",
    "slightly_regular",
    "gamma_w",
    "K_slightly_regular",
    "K_group_inverse",
    "K_mfpt",
    "K_star",
    "K_star_star",
    "y",
];

/// Exact constant, every independent formula, and the degree bounds.
pub fn exact(label: &str, g: &WeightedGraph) -> Result<Outcome> {
    let a = analyse(label, g)?;
    let bounds = a.degree_bounds()?;
    let cert = a.slightly_regular()?;
    let (accepted, gamma_w, k_sr) = match cert.certificate() {
        Some(c) => (
            "yes",
            Some(c.gamma),
            Some(kemeny::kemeny_slightly_regular(
                &cert,
                &a.group_inverse,
                &a.degrees,
            )?),
        ),
        None => ("no", None, None),
    };
    let mut t = Table::new(EXACT_COLUMNS.iter().copied());
    t.push(vec![
        label.into(),
        g.n().into(),
        g.edge_count().into(),
        a.spectrum.gamma2().into(),
        a.spectrum.gamma_max().into(),
        bounds.lower.into(),
        a.kemeny().into(),
        bounds.upper.into(),
        accepted.into(),
        gamma_w.into(),
        k_sr.into(),
        a.kemeny_group_inverse()?.into(),
        kemeny::kemeny_mfpt_oracle(&a.laplacians, &a.degrees)?.into(),
        a.resistive_estimate()?.into(),
        a.kemeny_star_star()?.into(),
        a.y()?.into(),
    ]);
    Ok(Outcome::ok(t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub epsilons: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// One row per trial instead of one aggregated row per ε.
    pub per_trial: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epsilons.is_empty() {
            bail!("at least one epsilon is required");
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            bail!("epsilon must be positive, got {e}");
        }
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        Ok(())
    }

    /// Seed of trial `t` (0-based): `trial_seed(seed, t)`, shared by every ε.
    pub fn trial_seed(&self, t: usize) -> u64 {
        rng::trial_seed(self.seed, t as u64)
    }
}

fn run_trials(
    sp: &Sparsifier<'_>,
    cfg: &SweepConfig,
) -> Result<Vec<Vec<(u64, SparsificationReport)>>> {
    let jobs: Vec<(usize, usize)> = (0..cfg.epsilons.len())
        .flat_map(|e| (0..cfg.trials).map(move |t| (e, t)))
        .collect();
    let done: Vec<(u64, SparsificationReport)> = jobs
        .par_iter()
        .map(|&(e, t)| {
            let seed = cfg.trial_seed(t);
            let report =
                sp.report_with_retries(cfg.epsilons[e], seed, true, DEFAULT_MAX_ATTEMPTS)?;
            Ok((seed, report))
        })
        .collect::<kemeny_core::Result<_>>()?;
    let mut grouped: Vec<Vec<(u64, SparsificationReport)>> = vec![Vec::new(); cfg.epsilons.len()];
    for ((e, _), r) in jobs.into_iter().zip(done) {
        grouped[e].push(r);
    }
    Ok(grouped)
}

fn status(r: &SparsificationReport) -> &'static str {
    if r.approximations.is_none() {
        "disconnected"
    } else {
        r.verification.name()
    }
}

fn pct_variation(edges: usize, sparse: f64) -> f64 {
    100.0 * (edges as f64 - sparse) / edges as f64
}

pub const TRIAL_COLUMNS: &[&str] = &[
    "graph",
    "eps",
    "trial",
    "seed",
    "attempts",
    "status",
    "t",
    "edges",
    "edges_sparse",
    "pct_variation",
    "K",
    "y",
    "K_prime",
    "K_double_prime",
    "K_triple_prime",
    "rel_error",
    "direct_lo",
    "direct_hi",
    "K_double_prime_lo",
    "K_double_prime_hi",
    "K_prime_lo",
    "K_prime_hi",
    "K_triple_prime_upper",
];

pub const SWEEP_COLUMNS: &[&str] = &[
    "graph",
    "eps",
    "trials",
    "connected",
    "verified",
    "seeds",
    "t",
    "edges",
    "edges_sparse",
    "edges_sparse_min",
    "edges_sparse_max",
    "pct_variation",
    "K",
    "y",
    "K_prime",
    "K_prime_min",
    "K_prime_max",
    "K_double_prime",
    "K_double_prime_min",
    "K_double_prime_max",
    "K_triple_prime",
    "K_triple_prime_min",
    "K_triple_prime_max",
    "rel_error",
    "rel_error_min",
    "rel_error_max",
    "direct_lo",
    "direct_hi",
    "K_double_prime_lo",
    "K_double_prime_hi",
    "K_prime_lo",
    "K_prime_hi",
    "K_triple_prime_upper",
    "status",
];

/// Median, min and max; `None` for an empty sample.
pub fn summarize(values: &[f64]) -> Option<(f64, f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    let median = if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    };
    Some((median, v[0], v[v.len() - 1]))
}

fn push_summary(row: &mut Vec<Value>, values: &[f64], with_range: bool) {
    match summarize(values) {
        Some((med, lo, hi)) => {
            row.push(med.into());
            if with_range {
                row.push(lo.into());
                row.push(hi.into());
            }
        }
        None => {
            let k = if with_range { 3 } else { 1 };
            row.extend(std::iter::repeat_n(Value::Missing, k));
        }
    }
}

/// Sparsifies `g` for every ε and trial and reports each approximation with
/// its envelopes.
pub fn sparsify_sweep(label: &str, g: &WeightedGraph, cfg: &SweepConfig) -> Result<Outcome> {
    cfg.validate()?;
    let a = analyse(label, g)?;
    let sp = Sparsifier::new(&a)?;
    let grouped = run_trials(&sp, cfg)?;
    let edges = g.edge_count();
    let mut failures = 0;

    if cfg.per_trial {
        let mut t = Table::new(TRIAL_COLUMNS.iter().copied());
        for (eps, runs) in cfg.epsilons.iter().zip(&grouped) {
            for (idx, (seed, r)) in runs.iter().enumerate() {
                let ap = r.approximations;
                if ap.is_none() {
                    failures += 1;
                }
                t.push(vec![
                    label.into(),
                    (*eps).into(),
                    idx.into(),
                    (*seed).into(),
                    r.attempts.into(),
                    status(r).into(),
                    r.sparsified.sample_count.into(),
                    edges.into(),
                    r.edge_count().into(),
                    pct_variation(edges, r.edge_count() as f64).into(),
                    r.kemeny.into(),
                    r.y.into(),
                    ap.map(|x| x.k_prime).into(),
                    ap.map(|x| x.k_double_prime).into(),
                    ap.map(|x| x.k_triple_prime).into(),
                    r.relative_error().into(),
                    r.envelopes.direct.map(|d| d.lower).into(),
                    r.envelopes.direct.map(|d| d.upper).into(),
                    r.envelopes.k_double_prime.lower.into(),
                    r.envelopes.k_double_prime.upper.into(),
                    r.envelopes.k_prime.lower.into(),
                    r.envelopes.k_prime.upper.into(),
                    r.envelopes.k_triple_upper.into(),
                ]);
            }
        }
        return Ok(Outcome { table: t, failures });
    }

    let mut t = Table::new(SWEEP_COLUMNS.iter().copied());
    for (eps, runs) in cfg.epsilons.iter().zip(&grouped) {
        let ok: Vec<&SparsificationReport> = runs
            .iter()
            .map(|(_, r)| r)
            .filter(|r| r.approximations.is_some())
            .collect();
        let verified = ok
            .iter()
            .filter(|r| r.verification == Verification::Verified)
            .count();
        let pick =
            |f: fn(&SparsificationReport) -> f64| -> Vec<f64> { ok.iter().map(|r| f(r)).collect() };
        let seeds: Vec<String> = runs.iter().map(|(s, _)| s.to_string()).collect();
        let first = &runs[0].1;
        let sparse = pick(|r| r.edge_count() as f64);
        let k_triple = pick(|r| r.approximations.unwrap().k_triple_prime);
        let k_triple_med = summarize(&k_triple).map(|s| s.0);
        if ok.is_empty() {
            failures += 1;
        }

        let mut row: Vec<Value> = vec![
            label.into(),
            (*eps).into(),
            cfg.trials.into(),
            ok.len().into(),
            verified.into(),
            seeds.join(" ").into(),
            first.sparsified.sample_count.into(),
            edges.into(),
        ];
        push_summary(&mut row, &sparse, true);
        row.push(summarize(&sparse).map(|s| pct_variation(edges, s.0)).into());
        row.push(first.kemeny.into());
        row.push(first.y.into());
        push_summary(&mut row, &pick(|r| r.approximations.unwrap().k_prime), true);
        push_summary(
            &mut row,
            &pick(|r| r.approximations.unwrap().k_double_prime),
            true,
        );
        push_summary(&mut row, &k_triple, true);
        push_summary(&mut row, &pick(|r| r.relative_error().unwrap()), true);
        row.push(k_triple_med.map(|k| k / (1.0 + eps)).into());
        row.push(k_triple_med.map(|k| k * (1.0 + eps)).into());
        row.push(first.envelopes.k_double_prime.lower.into());
        row.push(first.envelopes.k_double_prime.upper.into());
        row.push(first.envelopes.k_prime.lower.into());
        row.push(first.envelopes.k_prime.upper.into());
        row.push(first.envelopes.k_triple_upper.into());
        row.push(if ok.is_empty() { "failed" } else { "ok" }.into());
        t.push(row);
    }
    Ok(Outcome { table: t, failures })
}

/// Which interlacing bounds to evaluate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InterlaceRequest {
    pub subsets: Vec<Vec<usize>>,
    /// Partitions given as one part label per vertex.
    pub partitions: Vec<Vec<usize>>,
    pub deletions: Vec<Vec<(usize, usize)>>,
    pub adjacent_pair: bool,
}

impl InterlaceRequest {
    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
            && self.partitions.is_empty()
            && self.deletions.is_empty()
            && !self.adjacent_pair
    }
}

pub const INTERLACE_COLUMNS: &[&str] = &[
    "graph", "bound", "detail", "lower", "upper", "K", "contains",
];

fn join_list<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Evaluates the requested interlacing intervals next to the exact constant.
pub fn interlace(label: &str, g: &WeightedGraph, req: &InterlaceRequest) -> Result<Outcome> {
    if req.is_empty() {
        bail!("no interlacing bound requested");
    }
    let a = analyse(label, g)?;
    let k = a.kemeny();
    let mut t = Table::new(INTERLACE_COLUMNS.iter().copied());
    let mut push = |bound: &str, detail: String, lower: Option<f64>, upper: f64| {
        let inside = lower.is_none_or(|l| l <= k + 1e-9) && k <= upper + 1e-9;
        t.push(vec![
            label.into(),
            bound.into(),
            detail.into(),
            lower.into(),
            upper.into(),
            k.into(),
            if inside { "yes" } else { "no" }.into(),
        ]);
    };
    if req.adjacent_pair {
        let (ub, e) = interlace::adjacent_pair_upper(g, &a.degrees, &a.spectrum)
            .context("adjacent-pair bound")?;
        push("adjacent-pair", format!("{}-{}", e.i, e.j), None, ub);
    }
    for subset in &req.subsets {
        let iv = interlace::submatrix_bounds(&a.laplacians, &a.spectrum, subset)
            .with_context(|| format!("submatrix bound on {{{}}}", join_list(subset, " ")))?;
        push(
            iv.source.name(),
            join_list(subset, " "),
            Some(iv.lower),
            iv.upper,
        );
    }
    for labels in &req.partitions {
        if labels.len() != g.n() {
            bail!(
                "partition has {} labels but the graph has {} vertices",
                labels.len(),
                g.n()
            );
        }
        let part = VertexPartition::from_labels(labels).context("invalid partition")?;
        let iv = interlace::quotient_bounds(&a.laplacians, &a.spectrum, &part)
            .context("quotient bound")?;
        push(
            iv.source.name(),
            join_list(labels, " "),
            Some(iv.lower),
            iv.upper,
        );
    }
    for deleted in &req.deletions {
        let detail: Vec<String> = deleted.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        let (iv, _) = interlace::edge_deletion_bounds_for(g, &a.spectrum, deleted)
            .with_context(|| format!("edge-deletion bound for {}", detail.join(" ")))?;
        push(iv.source.name(), detail.join(" "), Some(iv.lower), iv.upper);
    }
    Ok(Outcome::ok(t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErStudyConfig {
    pub n: usize,
    pub probabilities: Vec<f64>,
    pub sweep: SweepConfig,
}

pub const ER_COLUMNS: &[&str] = &[
    "n",
    "p",
    "eps",
    "graph_seed",
    "draws",
    "edges",
    "gamma2",
    "gamma_n",
    "lower",
    "K",
    "upper",
    "K_star_star",
    "trials",
    "verified",
    "K_triple_prime",
    "rel_error",
    "rel_error_min",
    "rel_error_max",
    "edges_sparse",
    "pct_variation",
    "status",
];

/// Draw `a` (0-based) for probability index `pi` uses
/// `trial_seed(trial_seed(seed, pi), a)`.
pub fn er_graph_seed(seed: u64, pi: usize, draw: usize) -> u64 {
    rng::trial_seed(rng::trial_seed(seed, pi as u64), draw as u64)
}

/// Draws a connected `G(n, p)` for every `p`, then sparsifies it for every ε.
pub fn er_study(cfg: &ErStudyConfig) -> Result<Outcome> {
    cfg.sweep.validate()?;
    if cfg.n < 2 {
        bail!("n must be at least 2");
    }
    if let Some(p) = cfg
        .probabilities
        .iter()
        .find(|p| !(**p > 0.0 && **p <= 1.0))
    {
        bail!("edge probability must lie in (0, 1], got {p}");
    }
    if cfg.probabilities.is_empty() {
        bail!("at least one edge probability is required");
    }
    let mut t = Table::new(ER_COLUMNS.iter().copied());
    let mut failures = 0;
    for (pi, &p) in cfg.probabilities.iter().enumerate() {
        let mut drawn = None;
        for draw in 0..ER_MAX_DRAWS {
            let seed = er_graph_seed(cfg.sweep.seed, pi, draw);
            let g = generators::erdos_renyi(cfg.n, p, seed)?;
            if g.is_connected() {
                drawn = Some((g, seed, draw + 1));
                break;
            }
        }
        let Some((g, graph_seed, draws)) = drawn else {
            failures += cfg.sweep.epsilons.len();
            for &eps in &cfg.sweep.epsilons {
                let mut row: Vec<Value> = vec![
                    cfg.n.into(),
                    p.into(),
                    eps.into(),
                    Value::Missing,
                    ER_MAX_DRAWS.into(),
                ];
                row.extend(std::iter::repeat_n(Value::Missing, ER_COLUMNS.len() - 6));
                row.push("failed".into());
                t.push(row);
            }
            continue;
        };
        let a = Analysis::new(&g)?;
        let bounds = a.degree_bounds()?;
        let kss = a.kemeny_star_star()?;
        let sp = Sparsifier::new(&a)?;
        let grouped = run_trials(&sp, &cfg.sweep)?;
        let edges = g.edge_count();
        for (&eps, runs) in cfg.sweep.epsilons.iter().zip(&grouped) {
            let ok: Vec<&SparsificationReport> = runs
                .iter()
                .map(|(_, r)| r)
                .filter(|r| r.approximations.is_some())
                .collect();
            if ok.is_empty() {
                failures += 1;
            }
            let verified = ok
                .iter()
                .filter(|r| r.verification == Verification::Verified)
                .count();
            let k3: Vec<f64> = ok
                .iter()
                .map(|r| r.approximations.unwrap().k_triple_prime)
                .collect();
            let rel: Vec<f64> = ok.iter().map(|r| r.relative_error().unwrap()).collect();
            let sparse: Vec<f64> = ok.iter().map(|r| r.edge_count() as f64).collect();
            let mut row: Vec<Value> = vec![
                cfg.n.into(),
                p.into(),
                eps.into(),
                graph_seed.into(),
                draws.into(),
                edges.into(),
                a.spectrum.gamma2().into(),
                a.spectrum.gamma_max().into(),
                bounds.lower.into(),
                a.kemeny().into(),
                bounds.upper.into(),
                kss.into(),
                cfg.sweep.trials.into(),
                verified.into(),
            ];
            push_summary(&mut row, &k3, false);
            push_summary(&mut row, &rel, true);
            push_summary(&mut row, &sparse, false);
            row.push(summarize(&sparse).map(|s| pct_variation(edges, s.0)).into());
            row.push(if ok.is_empty() { "failed" } else { "ok" }.into());
            t.push(row);
        }
    }
    Ok(Outcome { table: t, failures })
}
