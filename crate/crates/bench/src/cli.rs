//! Argument parsing and dispatch for the `kemeny` binary.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, ErStudyConfig, InterlaceRequest, Outcome, SweepConfig};
use crate::edgelist;
use crate::source::GraphSource;
use crate::table::Table;

#[derive(Debug, Parser)]
#[command(
    name = "kemeny",
    version,
    about = "Kemeny's constant: exact values, bounds and sparsified approximations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact constant by every formula, degree bounds and K**.
    Exact {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sparsify over a grid of epsilons and trials.
    Sparsify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        /// One row per trial instead of median/min/max per epsilon.
        #[arg(long)]
        per_trial: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Interlacing bounds from subsets, partitions or deleted edges.
    Interlace {
        #[command(flatten)]
        graph: GraphArgs,
        /// Principal-submatrix vertices, e.g. `0,1,4` (repeatable).
        #[arg(long = "subset", value_name = "VERTICES")]
        subsets: Vec<String>,
        /// Part label per vertex, e.g. `0,0,1,1` (repeatable).
        #[arg(long = "partition", value_name = "LABELS")]
        partitions: Vec<String>,
        /// Edges to delete, e.g. `0-1,2-3` (repeatable).
        #[arg(long = "delete", value_name = "EDGES")]
        deletions: Vec<String>,
        /// Upper bound from the best adjacent pair.
        #[arg(long)]
        adjacent_pair: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Erdős–Rényi study: exact values, bounds and sparsification per (p, eps).
    ErStudy {
        #[arg(long)]
        n: usize,
        /// Edge probabilities, comma separated.
        #[arg(long = "p", value_delimiter = ',', required = true)]
        probabilities: Vec<f64>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a generated graph as an edge list.
    Gen {
        #[arg(long = "gen", value_name = "NAME")]
        generator: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "generator")]
    pub graph: Option<PathBuf>,
    /// Generator name.
    #[arg(long = "gen", value_name = "NAME")]
    pub generator: Option<String>,
    /// Generator parameters as `k=v,...`.
    #[arg(long, default_value = "")]
    pub params: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "eps", value_delimiter = ',', default_value = "0.5,1,1.5,2")]
    pub epsilons: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Master seed for randomized generators and sparsification.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

impl GraphArgs {
    fn source(&self) -> Result<GraphSource> {
        match (&self.graph, &self.generator) {
            (Some(p), None) => {
                if !self.params.is_empty() {
                    bail!("--params only applies to --gen");
                }
                Ok(GraphSource::File(p.clone()))
            }
            (None, Some(name)) => GraphSource::generator(name, &self.params),
            _ => bail!("exactly one of --graph or --gen is required"),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn render(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => table.to_csv(),
        Format::Md => Ok(table.to_markdown()),
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("bad {what} `{s}` in `{text}`"))
        })
        .collect()
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(|item| {
            let (i, j) = item
                .trim()
                .split_once('-')
                .with_context(|| format!("edge `{item}` is not of the form i-j"))?;
            Ok((
                i.parse()
                    .with_context(|| format!("bad vertex in `{item}`"))?,
                j.parse()
                    .with_context(|| format!("bad vertex in `{item}`"))?,
            ))
        })
        .collect()
}

/// Runs one invocation and returns the number of failed computations.
pub fn run(cli: &Cli) -> Result<usize> {
    let (outcome, output): (Outcome, &OutputArgs) = match &cli.command {
        Command::Gen {
            generator,
            params,
            seed,
            out,
        } => {
            let g = GraphSource::generator(generator, params)?.build(*seed)?;
            emit(&edgelist::render(&g), out.as_ref())?;
            return Ok(0);
        }
        Command::Exact { graph, output } => {
            let src = graph.source()?;
            let g = src.build(output.seed)?;
            (commands::exact(&src.label(), &g)?, output)
        }
        Command::Sparsify {
            graph,
            sweep,
            per_trial,
            output,
        } => {
            let src = graph.source()?;
            let g = src.build(output.seed)?;
            let cfg = SweepConfig {
                epsilons: sweep.epsilons.clone(),
                trials: sweep.trials,
                seed: output.seed,
                per_trial: *per_trial,
            };
            (commands::sparsify_sweep(&src.label(), &g, &cfg)?, output)
        }
        Command::Interlace {
            graph,
            subsets,
            partitions,
            deletions,
            adjacent_pair,
            output,
        } => {
            let src = graph.source()?;
            let g = src.build(output.seed)?;
            let req = InterlaceRequest {
                subsets: subsets
                    .iter()
                    .map(|s| parse_list(s, "vertex"))
                    .collect::<Result<_>>()?,
                partitions: partitions
                    .iter()
                    .map(|s| parse_list(s, "label"))
                    .collect::<Result<_>>()?,
                deletions: deletions
                    .iter()
                    .map(|s| parse_edges(s))
                    .collect::<Result<_>>()?,
                adjacent_pair: *adjacent_pair,
            };
            (commands::interlace(&src.label(), &g, &req)?, output)
        }
        Command::ErStudy {
            n,
            probabilities,
            sweep,
            output,
        } => {
            let cfg = ErStudyConfig {
                n: *n,
                probabilities: probabilities.clone(),
                sweep: SweepConfig {
                    epsilons: sweep.epsilons.clone(),
                    trials: sweep.trials,
                    seed: output.seed,
                    per_trial: false,
                },
            };
            (commands::er_study(&cfg)?, output)
        }
    };
    emit(&render(&outcome.table, output.format)?, output.out.as_ref())?;
    Ok(outcome.failures)
}
