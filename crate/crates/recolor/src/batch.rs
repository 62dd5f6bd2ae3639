//! Seeded batch experiments, one CSV row per instance.

use rayon::prelude::*;
use recolor_core::generate::{girth5_planar, random_colouring, rng, stacked_triangulation, GenerateError};
use recolor_core::reconfig::{bfs_distance, ReconfigSpace};
use recolor_core::{recolour, Colouring, EngineError, Graph, PlaneEmbedding, Solver};
use thiserror::Error;

pub const CSV_HEADER: &str = "instance,n,colors,steps,phases,max_per_vertex,bound,bfs_distance,checksum";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Family {
    /// Stacked triangulations.
    #[default]
    Stacked,
    /// Planar graphs of girth at least 5.
    Girth5,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchConfig {
    pub family: Family,
    pub n: usize,
    pub count: usize,
    pub ell: u8,
    pub solver: Solver,
    pub seed: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BatchRow {
    pub instance: usize,
    pub n: usize,
    pub colors: u8,
    pub steps: usize,
    pub phases: usize,
    pub max_per_vertex: usize,
    pub bound: usize,
    /// Exact distance when the state space fits the budget.
    pub bfs_distance: Option<usize>,
    pub checksum: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BatchError {
    #[error("instance {instance}: {source}")]
    Generate { instance: usize, source: GenerateError },
    #[error("instance {instance}: could not draw a proper {ell}-colouring")]
    NoColouring { instance: usize, ell: u8 },
    #[error("instance {instance}: {source}")]
    Engine { instance: usize, source: EngineError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("CSV row {row}: {message}")]
pub struct CsvError {
    pub row: usize,
    pub message: String,
}

pub fn generate(family: Family, n: usize, seed: u64) -> Result<(Graph, PlaneEmbedding), GenerateError> {
    match family {
        Family::Stacked => stacked_triangulation(n, seed),
        Family::Girth5 => girth5_planar(n, seed),
    }
}

/// Instance `i` uses seed `seed + i` for the graph and a derived stream for
/// the colouring pair.
pub fn instance(config: &BatchConfig, i: usize) -> Result<(Graph, PlaneEmbedding, Colouring, Colouring), BatchError> {
    let seed = config.seed.wrapping_add(i as u64);
    let (g, emb) =
        generate(config.family, config.n, seed).map_err(|source| BatchError::Generate { instance: i, source })?;
    let mut r = rng(seed ^ 0x5eed_c010_u64);
    let missing = || BatchError::NoColouring {
        instance: i,
        ell: config.ell,
    };
    let alpha = random_colouring(&g, config.ell, &mut r).ok_or_else(missing)?;
    let beta = random_colouring(&g, config.ell, &mut r).ok_or_else(missing)?;
    Ok((g, emb, alpha, beta))
}

pub fn run_instance(config: &BatchConfig, i: usize) -> Result<BatchRow, BatchError> {
    let (g, emb, alpha, beta) = instance(config, i)?;
    let out = recolour(&g, Some(&emb), &alpha, &beta, config.ell, config.solver)
        .map_err(|source| BatchError::Engine { instance: i, source })?;
    let space = ReconfigSpace::new(&g, config.ell);
    let bfs = match space.assignments() {
        Some(s) if s <= config.budget as u128 => bfs_distance(&space, &alpha, &beta, config.budget).ok().flatten(),
        _ => None,
    };
    log::debug!(
        "instance {i}: {} steps in {} phases",
        out.sequence.len(),
        out.phases.len()
    );
    Ok(BatchRow {
        instance: i,
        n: g.n(),
        colors: config.ell,
        steps: out.sequence.len(),
        phases: out.phases.len(),
        max_per_vertex: out.sequence.per_vertex_counts().into_iter().max().unwrap_or(0),
        bound: g.n() * g.n(),
        bfs_distance: bfs,
        checksum: out.sequence.checksum(),
    })
}

/// Runs instances in parallel; rows come back in instance order.
pub fn run_batch(config: &BatchConfig) -> Result<Vec<BatchRow>, BatchError> {
    (0..config.count)
        .into_par_iter()
        .map(|i| run_instance(config, i))
        .collect()
}

pub fn to_csv(rows: &[BatchRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("writing to memory");
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(',')).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV is ASCII")
}

pub fn parse_csv(text: &str) -> Result<Vec<BatchRow>, CsvError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| CsvError {
        row: 0,
        message: e.to_string(),
    })?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(CsvError {
            row: 0,
            message: "missing or unexpected header".into(),
        });
    }
    r.deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| CsvError {
                row: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_round_trip() {
        let row = BatchRow {
            instance: 3,
            n: 5,
            colors: 10,
            steps: 7,
            phases: 2,
            max_per_vertex: 2,
            bound: 25,
            bfs_distance: Some(4),
            checksum: 91,
        };
        let none = BatchRow {
            bfs_distance: None,
            ..row.clone()
        };
        let csv = to_csv(&[row.clone(), none.clone()]);
        assert_eq!(
            csv,
            format!("{CSV_HEADER}\n3,5,10,7,2,2,25,4,91\n3,5,10,7,2,2,25,,91\n")
        );
        assert_eq!(parse_csv(&csv).unwrap(), vec![row, none]);
        assert!(parse_csv("a,b\n").is_err());
        assert_eq!(to_csv(&[]), format!("{CSV_HEADER}\n"));
        assert!(parse_csv(&format!("{CSV_HEADER}\n1,2,3\n")).is_err());
    }

    #[test]
    fn small_batch_has_bfs_column() {
        let config = BatchConfig {
            family: Family::Stacked,
            n: 5,
            count: 4,
            ell: 10,
            solver: Solver::Thomassen,
            seed: 1,
            budget: 1_000_000,
        };
        let rows = run_batch(&config).unwrap();
        assert_eq!(rows.len(), 4);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.instance, i);
            let d = r.bfs_distance.unwrap();
            assert!(d <= r.steps && r.steps <= 25);
        }
    }
}
