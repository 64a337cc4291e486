use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use fkcd::{
    coverage, fkcd_with, load_edge_list, load_ground_truth, louvain_baseline, modularity_of, nmi, proximity,
    Dendrogram64, FkcdConfig, LabeledPartition, LoadedGraph, Partition, WeightedGraph64, DEFAULT_KAPPA,
};

use crate::{Algorithm, RunConfig};

/// What a run reports on stdout, as `name value` lines plus one
/// `level i node_count edge_count Q` line per dendrogram level.
#[derive(Debug)]
pub struct Summary {
    algorithm: &'static str,
    nodes: usize,
    edges: usize,
    dropped: usize,
    levels: Vec<(usize, usize, f64)>,
    communities: usize,
    modularity: f64,
    modularity_unweighted: f64,
    coverage: f64,
    nmi: Option<f64>,
    wall_time: f64,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm {}", self.algorithm)?;
        writeln!(f, "nodes {}", self.nodes)?;
        writeln!(f, "edges {}", self.edges)?;
        writeln!(f, "dropped_records {}", self.dropped)?;
        for (i, (n, e, q)) in self.levels.iter().enumerate() {
            writeln!(f, "level {i} {n} {e} {q}")?;
        }
        writeln!(f, "levels {}", self.levels.len())?;
        writeln!(f, "communities {}", self.communities)?;
        writeln!(f, "modularity {}", self.modularity)?;
        writeln!(f, "modularity_unweighted {}", self.modularity_unweighted)?;
        writeln!(f, "coverage {}", self.coverage)?;
        if let Some(v) = self.nmi {
            writeln!(f, "nmi {v}")?;
        }
        writeln!(f, "wall_time_s {:.3}", self.wall_time)
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    match File::open(path) {
        Ok(f) => Ok(BufReader::new(f)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            bail!("file not found: {}", path.display())
        }
        Err(e) => Err(e).with_context(|| format!("cannot open {}", path.display())),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot create {}", path.display()))
}

fn validate(config: &RunConfig) -> Result<()> {
    if config.kappa == Some(0) {
        bail!("invalid value for --kappa: must be at least 1");
    }
    if !(config.epsilon.is_finite() && config.epsilon > 0.0) {
        bail!("invalid value for --epsilon: must be positive");
    }
    if config.threads == 0 {
        bail!("invalid value for --threads: must be at least 1");
    }
    if config.algo == Algorithm::Louvain {
        let fkcd_only = [
            ("--kappa", config.kappa.is_some()),
            ("--weight-transform", config.weight_transform.is_some()),
            ("--out-centrality", config.out_centrality.is_some()),
            ("--out-proximity", config.out_proximity.is_some()),
            ("--threads", config.threads != 1),
        ];
        if let Some((flag, _)) = fkcd_only.iter().find(|(_, set)| *set) {
            bail!("invalid flag combination: {flag} only applies to --algo fkcd");
        }
    }
    Ok(())
}

pub fn run(config: &RunConfig) -> Result<Summary> {
    validate(config)?;
    let loaded: LoadedGraph = load_edge_list(open(&config.input)?)
        .with_context(|| format!("cannot read edge list {}", config.input.display()))?;
    let truth: Option<LabeledPartition> = match &config.ground_truth {
        Some(path) => Some(
            load_ground_truth(open(path)?, &loaded.ids)
                .with_context(|| format!("cannot read ground truth {}", path.display()))?,
        ),
        None => None,
    };
    let g = &loaded.graph;

    let started = Instant::now();
    let (dendrogram, weighted): (Dendrogram64, WeightedGraph64) = match config.algo {
        Algorithm::Louvain => (
            louvain_baseline(g, config.epsilon, config.seed)?,
            WeightedGraph64::unit(g),
        ),
        Algorithm::Fkcd => {
            let fkcd_config = FkcdConfig {
                kappa: config.kappa.unwrap_or(DEFAULT_KAPPA),
                epsilon: config.epsilon,
                seed: config.seed,
                threads: config.threads,
                transform: config.weight_transform.map(Into::into).unwrap_or_default(),
            };
            let run = fkcd_with::<f64>(g, &fkcd_config)?;
            if let Some(path) = &config.out_centrality {
                run.centrality.write_dump(g, &loaded.ids, create(path)?)?;
            }
            if let Some(path) = &config.out_proximity {
                proximity::write_proximities(g, &loaded.ids, &run.proximities, create(path)?)?;
            }
            (run.dendrogram, run.weighted)
        }
    };
    let wall_time = started.elapsed().as_secs_f64();

    let flat = dendrogram.flat_assignment();
    let unit = WeightedGraph64::unit(g);
    let summary = Summary {
        algorithm: match config.algo {
            Algorithm::Fkcd => "fkcd",
            Algorithm::Louvain => "louvain",
        },
        nodes: g.node_count(),
        edges: g.edge_count(),
        dropped: loaded.dropped,
        levels: dendrogram
            .levels()
            .iter()
            .map(|l| (l.graph.node_count(), l.graph.edge_count(), l.modularity))
            .collect(),
        communities: dendrogram.community_count(),
        modularity: dendrogram.modularity(),
        modularity_unweighted: modularity_of(&unit, &flat)?,
        coverage: coverage(&weighted, &Partition::from_assignment(&weighted, &flat)?)?,
        nmi: truth
            .as_ref()
            .map(|t| nmi(t, &LabeledPartition::new(flat.clone())))
            .transpose()?,
        wall_time,
    };

    if let Some(path) = &config.out_partition {
        let mut out = create(path)?;
        for (v, c) in flat.iter().enumerate() {
            writeln!(out, "{} {}", loaded.ids.label(v), c)?;
        }
        out.flush()?;
    }
    if let Some(path) = &config.out_dendrogram {
        dendrogram.write_summary(create(path)?)?;
    }
    if let Some(path) = &config.csv {
        append_csv(path, config, &summary)?;
    }
    Ok(summary)
}

const CSV_HEADER: &str = "input,algo,kappa,epsilon,seed,threads,weight_transform,nodes,edges,levels,communities,modularity,modularity_unweighted,coverage,nmi,wall_time_s";

fn append_csv(path: &Path, config: &RunConfig, s: &Summary) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut out = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    if fresh {
        writeln!(out, "{CSV_HEADER}")?;
    }
    let (kappa, transform) = match config.algo {
        Algorithm::Fkcd => (
            config.kappa.unwrap_or(DEFAULT_KAPPA).to_string(),
            format!("{:?}", config.weight_transform.unwrap_or(crate::Transform::Direct)).to_lowercase(),
        ),
        Algorithm::Louvain => (String::new(), String::new()),
    };
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
        config.input.display(),
        s.algorithm,
        kappa,
        config.epsilon,
        config.seed,
        config.threads,
        transform,
        s.nodes,
        s.edges,
        s.levels.len(),
        s.communities,
        s.modularity,
        s.modularity_unweighted,
        s.coverage,
        s.nmi.map(|v| v.to_string()).unwrap_or_default(),
        s.wall_time
    )?;
    Ok(())
}
