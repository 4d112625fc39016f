//! Where a graph comes from: a named generator with `k=v` parameters, or an
//! edge-list file.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use kemeny_core::{generators, WeightedGraph};

use crate::edgelist;

/// Generators known to the CLI with their parameter names.
pub const GENERATORS: &[(&str, &[&str])] = &[
    ("complete", &["n"]),
    ("complete-bipartite", &["p", "q"]),
    ("path", &["n"]),
    ("cycle", &["n"]),
    ("star", &["q"]),
    ("windmill", &["m", "k"]),
    ("windmill-i", &["m", "k", "n0"]),
    ("windmill-ii", &["m", "k", "n0"]),
    ("erdos-renyi", &["n", "p", "seed"]),
    ("random", &["n", "p", "weighted", "seed"]),
];

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Generator {
        name: String,
        params: BTreeMap<String, String>,
    },
    File(PathBuf),
}

/// Parses `k=v,k=v`. Empty input gives no parameters.
pub fn parse_params(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter `{item}` is not of the form key=value"))?;
        if out
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            bail!("parameter `{}` given twice", k.trim());
        }
    }
    Ok(out)
}

impl GraphSource {
    pub fn generator(name: &str, params: &str) -> Result<Self> {
        let known = GENERATORS.iter().find(|(g, _)| *g == name).ok_or_else(|| {
            let names: Vec<&str> = GENERATORS.iter().map(|(g, _)| *g).collect();
            anyhow!(
                "unknown generator `{name}`; expected one of {}",
                names.join(", ")
            )
        })?;
        let params = parse_params(params)?;
        for k in params.keys() {
            if !known.1.contains(&k.as_str()) {
                bail!("generator `{name}` takes {:?}, not `{k}`", known.1);
            }
        }
        Ok(GraphSource::Generator {
            name: name.to_string(),
            params,
        })
    }

    /// Label used in output tables, e.g. `complete-bipartite(p=10,q=15)`.
    pub fn label(&self) -> String {
        match self {
            GraphSource::File(p) => p.display().to_string(),
            GraphSource::Generator { name, params } => {
                let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{name}({})", inner.join(";"))
            }
        }
    }

    /// `default_seed` fills in a missing `seed` parameter of randomized
    /// generators.
    pub fn build(&self, default_seed: u64) -> Result<WeightedGraph> {
        let (name, params) = match self {
            GraphSource::File(p) => return edgelist::read_path(p),
            GraphSource::Generator { name, params } => (name.as_str(), params),
        };
        let get = |k: &str| -> Result<&str> {
            params
                .get(k)
                .map(String::as_str)
                .ok_or_else(|| anyhow!("generator `{name}` needs parameter `{k}`"))
        };
        let int = |k: &str| -> Result<usize> {
            get(k)?
                .parse()
                .with_context(|| format!("parameter `{k}` must be a non-negative integer"))
        };
        let real = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .with_context(|| format!("parameter `{k}` must be a number"))
        };
        let seed = || -> Result<u64> {
            match params.get("seed") {
                Some(s) => s
                    .parse()
                    .context("parameter `seed` must be a 64-bit unsigned integer"),
                None => Ok(default_seed),
            }
        };
        let g = match name {
            "complete" => generators::complete(int("n")?),
            "complete-bipartite" => generators::complete_bipartite(int("p")?, int("q")?),
            "path" => generators::path(int("n")?),
            "cycle" => generators::cycle(int("n")?),
            "star" => generators::star(int("q")?),
            "windmill" => generators::windmill(int("m")?, int("k")?),
            "windmill-i" => generators::windmill_type_i(int("m")?, int("k")?, int("n0")?),
            "windmill-ii" => generators::windmill_type_ii(int("m")?, int("k")?, int("n0")?),
            "erdos-renyi" => generators::erdos_renyi(int("n")?, real("p")?, seed()?),
            "random" => {
                let weighted = match params.get("weighted").map(String::as_str) {
                    None | Some("false") | Some("0") => false,
                    Some("true") | Some("1") => true,
                    Some(other) => {
                        bail!("parameter `weighted` must be true or false, not `{other}`")
                    }
                };
                generators::random_connected(int("n")?, real("p")?, weighted, seed()?)
            }
            other => bail!("unknown generator `{other}`"),
        };
        g.with_context(|| format!("building {}", self.label()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        let p = parse_params("p=10, q=15").unwrap();
        assert_eq!(p["p"], "10");
        assert_eq!(p["q"], "15");
        assert!(parse_params("").unwrap().is_empty());
        assert!(parse_params("p").is_err());
        assert!(parse_params("p=1,p=2").is_err());
    }

    #[test]
    fn builds_generators() {
        let s = GraphSource::generator("complete-bipartite", "p=10,q=15").unwrap();
        assert_eq!(s.label(), "complete-bipartite(p=10;q=15)");
        assert_eq!(s.build(0).unwrap().edge_count(), 150);
        let w = GraphSource::generator("windmill-ii", "m=3,k=10,n0=5").unwrap();
        assert_eq!(w.build(0).unwrap().n(), 35);
        let er = GraphSource::generator("erdos-renyi", "n=30,p=0.5").unwrap();
        assert_eq!(er.build(4).unwrap(), er.build(4).unwrap());
        assert_ne!(er.build(4).unwrap(), er.build(5).unwrap());
    }

    #[test]
    fn rejects_unknown_or_bad() {
        assert!(GraphSource::generator("nope", "").is_err());
        assert!(GraphSource::generator("complete", "m=3").is_err());
        assert!(GraphSource::generator("complete", "")
            .unwrap()
            .build(0)
            .is_err());
        assert!(GraphSource::generator("complete", "n=x")
            .unwrap()
            .build(0)
            .is_err());
        assert!(GraphSource::generator("random", "n=5,p=0.1,weighted=maybe")
            .unwrap()
            .build(0)
            .is_err());
    }
}
