use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fkcd::WeightTransform;

mod run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Centrality-weighted pipeline.
    Fkcd,
    /// Unit-weight multilevel modularity optimization.
    Louvain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    Direct,
    Inverse,
}

impl From<Transform> for WeightTransform {
    fn from(t: Transform) -> Self {
        match t {
            Transform::Direct => WeightTransform::Direct,
            Transform::Inverse => WeightTransform::Inverse,
        }
    }
}

/// Community detection on an undirected edge list.
#[derive(Debug, Parser)]
#[command(name = "fkcd", version)]
pub struct RunConfig {
    /// Edge list: `#` comments, two node labels per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Fkcd)]
    pub algo: Algorithm,
    /// Walk-length bound (fkcd only) [default: 20]
    #[arg(long)]
    pub kappa: Option<usize>,
    /// Stop when a level improves modularity by less than this.
    #[arg(long, default_value_t = fkcd::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Walk workers (fkcd only); 1 is the sequential reference.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Proximity to edge weight mapping (fkcd only) [default: direct]
    #[arg(long, value_enum)]
    pub weight_transform: Option<Transform>,
    /// `node community` reference labels; enables NMI.
    #[arg(long)]
    pub ground_truth: Option<PathBuf>,
    /// Write `node community` lines.
    #[arg(long)]
    pub out_partition: Option<PathBuf>,
    /// Write `u v weight` lines by decreasing centrality (fkcd only).
    #[arg(long)]
    pub out_centrality: Option<PathBuf>,
    /// Write `u v proximity` lines (fkcd only).
    #[arg(long)]
    pub out_proximity: Option<PathBuf>,
    /// Write `level node_count edge_count Q` lines.
    #[arg(long)]
    pub out_dendrogram: Option<PathBuf>,
    /// Append one metrics row to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run::run(&config) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
