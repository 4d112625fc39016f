//! Weighted undirected graphs with positive conductances.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An undirected edge `{i, j}` with `i < j` and conductance `c > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub conductance: f64,
}

/// Undirected graph on vertices `0..n` with positive edge conductances.
///
/// Edges are keyed by the sorted vertex pair, so iteration is in
/// lexicographic order and the symmetric conductance `c(i,j) = c(j,i)` is
/// stored once. Adding an edge that already exists sums the conductances.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl WeightedGraph {
    /// Edgeless graph on `n ≥ 1` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(crate::error::invalid("graph needs at least one vertex"));
        }
        Ok(Self {
            n,
            edges: BTreeMap::new(),
        })
    }

    /// Builds a graph from `(i, j, c)` triples, merging repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut g = Self::new(n)?;
        for (i, j, c) in edges {
            g.add_edge(i, j, c)?;
        }
        Ok(g)
    }

    /// Adds conductance `c` between `i` and `j`.
    pub fn add_edge(&mut self, i: usize, j: usize, c: f64) -> Result<()> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        // also rejects NaN
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::NonPositiveWeight { i, j, weight: c });
        }
        *self.edges.entry(ordered(i, j)).or_insert(0.0) += c;
        Ok(())
    }

    /// Removes the edge `{i, j}`, returning its conductance.
    pub fn remove_edge(&mut self, i: usize, j: usize) -> Option<f64> {
        self.edges.remove(&ordered(i, j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order of `(i, j)`, `i < j`.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(i, j), &c)| Edge {
            i,
            j,
            conductance: c,
        })
    }

    pub fn conductance(&self, i: usize, j: usize) -> Option<f64> {
        self.edges.get(&ordered(i, j)).copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&ordered(i, j))
    }

    pub fn total_conductance(&self) -> f64 {
        self.edges.values().sum()
    }

    /// Neighbour lists `(neighbour, conductance)`, each sorted by neighbour.
    pub fn adjacency_lists(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges() {
            adj[e.i].push((e.j, e.conductance));
            adj[e.j].push((e.i, e.conductance));
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
        }
        adj
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut k = vec![0.0; self.n];
        for e in self.edges() {
            k[e.i] += e.conductance;
            k[e.j] += e.conductance;
        }
        DegreeProfile::from_degrees(k)
    }

    /// True iff a traversal from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == self.n
    }

    /// Common degree if every vertex has the same degree within `tol`.
    pub fn regular_degree(&self, tol: f64) -> Option<f64> {
        let k = self.degree_profile().degrees;
        let first = k[0];
        k.iter().all(|&d| (d - first).abs() <= tol).then_some(first)
    }

    /// Same graph with every conductance multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_edges(
            self.n,
            self.edges().map(|e| (e.i, e.j, e.conductance * factor)),
        )
    }
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Weighted degrees `kᵢ = Σⱼ c_ij`, the volume `Σᵢ kᵢ` and the mean degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub degrees: Vec<f64>,
    pub volume: f64,
}

impl DegreeProfile {
    pub fn from_degrees(degrees: Vec<f64>) -> Self {
        let volume = degrees.iter().sum();
        Self { degrees, volume }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `vol / n`.
    pub fn average_degree(&self) -> f64 {
        self.volume / self.n() as f64
    }

    /// `‖k‖²`.
    pub fn norm_sq(&self) -> f64 {
        self.degrees.iter().map(|k| k * k).sum()
    }

    /// Stationary distribution of the random walk, `πᵢ = kᵢ / vol`.
    pub fn stationary(&self) -> Vec<f64> {
        self.degrees.iter().map(|k| k / self.volume).collect()
    }
}
