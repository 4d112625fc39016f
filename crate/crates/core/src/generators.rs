//! Deterministic graph families with unit conductances.
//!
//! Vertex orderings are fixed so partitions built on top of them are
//! reproducible:
//!
//! * [`complete_bipartite`]`(p, q)`: side of size `p` is `0..p`, side of size
//!   `q` is `p..p+q`.
//! * windmills: the `n0` centers come first (`0..n0`), then blade `b`
//!   occupies `n0 + b·k .. n0 + (b+1)·k`.
//! * [`join`]: base vertices first, then each satellite in order.
//! * [`star`]`(q)`: center is vertex 0.

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::rng;

/// Complete graph `Kₙ`.
pub fn complete(n: usize) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new(n)?;
    add_clique(&mut g, 0, n)?;
    Ok(g)
}

/// Complete bipartite graph `K_{p,q}`.
pub fn complete_bipartite(p: usize, q: usize) -> Result<WeightedGraph> {
    if p == 0 || q == 0 {
        return Err(invalid("complete bipartite sides must be non-empty"));
    }
    let mut g = WeightedGraph::new(p + q)?;
    for i in 0..p {
        for j in p..p + q {
            g.add_edge(i, j, 1.0)?;
        }
    }
    Ok(g)
}

/// Path `Pₙ` with edges `{i, i+1}`.
pub fn path(n: usize) -> Result<WeightedGraph> {
    WeightedGraph::from_edges(n, (1..n).map(|i| (i - 1, i, 1.0)))
}

/// Cycle `Cₙ`, `n ≥ 3`.
pub fn cycle(n: usize) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(invalid("cycle needs at least three vertices"));
    }
    WeightedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1.0)))
}

/// Star `K_{1,q}` centered at vertex 0.
pub fn star(q: usize) -> Result<WeightedGraph> {
    if q == 0 {
        return Err(invalid("star needs at least one leaf"));
    }
    WeightedGraph::from_edges(q + 1, (1..=q).map(|i| (0, i, 1.0)))
}

/// Edgeless graph on `n` vertices.
pub fn empty(n: usize) -> Result<WeightedGraph> {
    WeightedGraph::new(n)
}

/// Windmill `W(m, k)`: `m` copies of `K_k` joined to one center.
pub fn windmill(m: usize, k: usize) -> Result<WeightedGraph> {
    windmill_with_centers(m, k, 1, true)
}

/// Generalized windmill of Type I, `W′(m, k, n0)`: the centers form a clique.
pub fn windmill_type_i(m: usize, k: usize, n0: usize) -> Result<WeightedGraph> {
    windmill_with_centers(m, k, n0, true)
}

/// Generalized windmill of Type II, `W″(m, k, n0)`: the centers are independent.
pub fn windmill_type_ii(m: usize, k: usize, n0: usize) -> Result<WeightedGraph> {
    windmill_with_centers(m, k, n0, false)
}

fn windmill_with_centers(
    m: usize,
    k: usize,
    n0: usize,
    centers_clique: bool,
) -> Result<WeightedGraph> {
    if m < 2 || k < 1 || n0 < 1 {
        return Err(invalid("windmill requires m >= 2, k >= 1, n0 >= 1"));
    }
    let n = n0 + m * k;
    let mut g = WeightedGraph::new(n)?;
    if centers_clique {
        add_clique(&mut g, 0, n0)?;
    }
    for c in 0..n0 {
        for s in n0..n {
            g.add_edge(c, s, 1.0)?;
        }
    }
    for blade in 0..m {
        add_clique(&mut g, n0 + blade * k, k)?;
    }
    Ok(g)
}

fn add_clique(g: &mut WeightedGraph, start: usize, size: usize) -> Result<()> {
    for i in start..start + size {
        for j in i + 1..start + size {
            g.add_edge(i, j, 1.0)?;
        }
    }
    Ok(())
}

/// Join of an `ℓ`-regular base with `k`-regular satellites.
///
/// The result is the disjoint union of all inputs plus every edge between a
/// base vertex and a satellite vertex. All inputs must carry unit weights.
pub fn join(base: &WeightedGraph, satellites: &[WeightedGraph]) -> Result<WeightedGraph> {
    if satellites.is_empty() {
        return Err(invalid("join needs at least one satellite"));
    }
    check_unit_regular(base)?;
    let k = check_unit_regular(&satellites[0])?;
    for s in &satellites[1..] {
        if check_unit_regular(s)? != k {
            return Err(Error::NotRegular);
        }
    }
    let n0 = base.n();
    let n = n0 + satellites.iter().map(WeightedGraph::n).sum::<usize>();
    let mut g = WeightedGraph::new(n)?;
    for e in base.edges() {
        g.add_edge(e.i, e.j, 1.0)?;
    }
    let mut offset = n0;
    for s in satellites {
        for e in s.edges() {
            g.add_edge(offset + e.i, offset + e.j, 1.0)?;
        }
        offset += s.n();
    }
    for b in 0..n0 {
        for v in n0..n {
            g.add_edge(b, v, 1.0)?;
        }
    }
    Ok(g)
}

fn check_unit_regular(g: &WeightedGraph) -> Result<usize> {
    if g.edges().any(|e| e.conductance != 1.0) {
        return Err(invalid("join inputs must have unit conductances"));
    }
    g.regular_degree(0.0)
        .map(|d| d as usize)
        .ok_or(Error::NotRegular)
}

/// Erdős–Rényi `G(n, p)` with unit weights.
///
/// Pairs `(i, j)`, `i < j`, are visited in lexicographic order and each
/// consumes exactly one uniform draw from the stream seeded by `seed`; the
/// pair is kept iff the draw is below `p`. The output may be disconnected.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid("edge probability must lie in (0, 1]"));
    }
    let mut g = WeightedGraph::new(n)?;
    let mut stream = rng::seeded(seed);
    for i in 0..n {
        for j in i + 1..n {
            if rng::uniform(&mut stream) < p {
                g.add_edge(i, j, 1.0)?;
            }
        }
    }
    Ok(g)
}

/// A random connected graph: a random recursive tree (vertex `v` attaches to
/// a uniform earlier vertex) plus every other pair independently with
/// probability `p`. With `weighted`, conductances are uniform in `[0.5, 2.5)`,
/// otherwise 1.
pub fn random_connected(n: usize, p: f64, weighted: bool, seed: u64) -> Result<WeightedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("edge probability must lie in [0, 1]"));
    }
    let mut g = WeightedGraph::new(n)?;
    let mut stream = rng::seeded(seed);
    let weight = |s: &mut rng::Rng| {
        if weighted {
            0.5 + 2.0 * rng::uniform(s)
        } else {
            1.0
        }
    };
    for v in 1..n {
        let u = ((rng::uniform(&mut stream) * v as f64) as usize).min(v - 1);
        let c = weight(&mut stream);
        g.add_edge(u, v, c)?;
    }
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) && rng::uniform(&mut stream) < p {
                let c = weight(&mut stream);
                g.add_edge(i, j, c)?;
            }
        }
    }
    Ok(g)
}

/// Copies of `K_k` used as windmill blades, convenient for [`join`].
pub fn cliques(count: usize, k: usize) -> Result<Vec<WeightedGraph>> {
    (0..count).map(|_| complete(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn assert_well_formed(g: &WeightedGraph) {
        for e in g.edges() {
            assert!(e.i < e.j);
            assert!(e.conductance > 0.0);
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(complete(5).unwrap().edge_count(), 10);
        assert_eq!(complete_bipartite(10, 15).unwrap().edge_count(), 150);
        let p4 = path(4).unwrap();
        let pairs: Vec<_> = p4.edges().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(star(7).unwrap().edge_count(), 7);
        assert_eq!(cycle(6).unwrap().edge_count(), 6);
    }

    #[test]
    fn windmill_sizes_match_tables() {
        let w = windmill(3, 10).unwrap();
        assert_eq!((w.n(), w.edge_count()), (31, 165));
        let w1 = windmill_type_i(3, 10, 5).unwrap();
        assert_eq!((w1.n(), w1.edge_count()), (35, 295));
        let w2 = windmill_type_ii(3, 10, 5).unwrap();
        assert_eq!((w2.n(), w2.edge_count()), (35, 285));
        assert_eq!(windmill_type_i(4, 3, 1).unwrap(), windmill(4, 3).unwrap());
    }

    #[test]
    fn windmill_degrees() {
        for m in 2..=6 {
            for k in 1..=6 {
                let g = windmill(m, k).unwrap();
                assert_well_formed(&g);
                let dp = g.degree_profile();
                assert_eq!(dp.degrees[0], (m * k) as f64);
                assert!(dp.degrees[1..].iter().all(|&d| d == k as f64));
            }
        }
    }

    #[test]
    fn windmill_parameter_bounds() {
        assert!(windmill(1, 3).is_err());
        assert!(windmill(2, 0).is_err());
        assert!(windmill_type_ii(3, 3, 0).is_err());
    }

    #[test]
    fn join_reproduces_windmills() {
        let blades = cliques(3, 10).unwrap();
        assert_eq!(
            join(&empty(1).unwrap(), &blades).unwrap(),
            windmill(3, 10).unwrap()
        );
        assert_eq!(
            join(&complete(5).unwrap(), &blades).unwrap(),
            windmill_type_i(3, 10, 5).unwrap()
        );
        assert_eq!(
            join(&empty(5).unwrap(), &blades).unwrap(),
            windmill_type_ii(3, 10, 5).unwrap()
        );
    }

    #[test]
    fn join_rejects_irregular_inputs() {
        let blades = cliques(2, 4).unwrap();
        assert_eq!(join(&path(3).unwrap(), &blades), Err(Error::NotRegular));
        let mixed = vec![complete(4).unwrap(), complete(5).unwrap()];
        assert_eq!(join(&empty(2).unwrap(), &mixed), Err(Error::NotRegular));
        assert!(join(&empty(2).unwrap(), &[]).is_err());
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        let a = erdos_renyi(40, 0.3, 99).unwrap();
        let b = erdos_renyi(40, 0.3, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, erdos_renyi(40, 0.3, 100).unwrap());
        assert_well_formed(&a);
    }

    #[test]
    fn erdos_renyi_p_one_is_complete() {
        assert_eq!(erdos_renyi(12, 1.0, 5).unwrap(), complete(12).unwrap());
    }

    #[test]
    fn random_connected_is_connected_and_reproducible() {
        for seed in 0..20 {
            let g = random_connected(15, 0.1, true, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.edge_count() >= 14);
            assert_well_formed(&g);
            assert_eq!(g, random_connected(15, 0.1, true, seed).unwrap());
        }
        let tree = random_connected(9, 0.0, false, 4).unwrap();
        assert_eq!(tree.edge_count(), 8);
        assert!(random_connected(5, 1.5, false, 0).is_err());
    }

    #[test]
    fn erdos_renyi_rejects_bad_probability() {
        assert!(erdos_renyi(10, 0.0, 1).is_err());
        assert!(erdos_renyi(10, 1.5, 1).is_err());
        assert!(erdos_renyi(10, f64::NAN, 1).is_err());
    }

    #[test]
    fn zero_sizes_rejected() {
        assert!(complete(0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        assert!(path(0).is_err());
    }
}
