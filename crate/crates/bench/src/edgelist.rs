//! Plain-text edge lists.
//!
//! ```text
//! n m
//! i j [c]
//! ...
//! ```
//!
//! Vertices are 0-based, fields are whitespace separated and a missing `c`
//! means unit conductance. Blank lines and lines starting with `#` are
//! ignored. Repeated pairs are merged by summing conductances.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use kemeny_core::WeightedGraph;

pub fn parse(text: &str) -> Result<WeightedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, header) = lines.next().ok_or_else(|| anyhow!("empty edge list"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        bail!("line {no}: header must be `n m`");
    }
    let n: usize = fields[0]
        .parse()
        .with_context(|| format!("line {no}: bad vertex count"))?;
    let m: usize = fields[1]
        .parse()
        .with_context(|| format!("line {no}: bad edge count"))?;

    let mut g = WeightedGraph::new(n).with_context(|| format!("line {no}"))?;
    let mut seen = 0;
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            bail!("line {no}: expected `i j [c]`");
        }
        let i: usize = fields[0]
            .parse()
            .with_context(|| format!("line {no}: bad vertex"))?;
        let j: usize = fields[1]
            .parse()
            .with_context(|| format!("line {no}: bad vertex"))?;
        let c: f64 = match fields.get(2) {
            Some(s) => s
                .parse()
                .with_context(|| format!("line {no}: bad conductance"))?,
            None => 1.0,
        };
        g.add_edge(i, j, c).with_context(|| format!("line {no}"))?;
        seen += 1;
    }
    if seen != m {
        bail!("header announces {m} edges but {seen} were given");
    }
    Ok(g)
}

pub fn read_path(path: &Path) -> Result<WeightedGraph> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Conductances are written in shortest round-trip form, so
/// `parse(&render(g)) == g`.
pub fn render(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {} {:?}", e.i, e.j, e.conductance).unwrap();
    }
    out
}
