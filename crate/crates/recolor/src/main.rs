use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use recolor::batch::{self, BatchConfig, Family};
use recolor::report::{self, Format};
use recolor::{formats, GraphFile, SequenceFileError, EXIT_BUDGET, EXIT_INVALID, EXIT_UNSAT, EXIT_VERIFY_FAILED};
use recolor_core::generate::{random_colouring, rng};
use recolor_core::reconfig::{bfs_distance, diameter_report, ReconfigSpace, StateSpaceError, DEFAULT_BUDGET};
use recolor_core::{recolour, Colouring, EngineError, Solver};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "recolor",
    version,
    about = "Recolour proper colourings of planar and degenerate graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a recolouring sequence from ALPHA to BETA and write it to --out.
    Recolor {
        graph: PathBuf,
        alpha: PathBuf,
        beta: PathBuf,
        #[command(flatten)]
        colours: Colours,
        #[arg(long, value_enum, default_value_t = SolverArg::Thomassen)]
        solver: SolverArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a sequence file and report the first violation, if any.
    Verify {
        graph: PathBuf,
        alpha: PathBuf,
        beta: PathBuf,
        sequence: PathBuf,
        #[command(flatten)]
        colours: Colours,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact distance between two colourings by breadth-first search.
    Distance {
        graph: PathBuf,
        alpha: PathBuf,
        beta: PathBuf,
        #[command(flatten)]
        colours: Colours,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Components, frozen colourings and diameter of the whole reconfiguration graph.
    Diameter {
        graph: PathBuf,
        #[command(flatten)]
        colours: Colours,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Generate a graph with its embedding.
    Gen {
        #[arg(long, value_enum, default_value_t)]
        family: Family,
        /// Number of vertices.
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a random proper colouring of a graph.
    Colouring {
        graph: PathBuf,
        #[command(flatten)]
        colours: Colours,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recolour COUNT random instances and write one CSV row per instance.
    Batch {
        #[arg(long, value_enum, default_value_t)]
        family: Family,
        /// Number of vertices.
        #[arg(short, long)]
        n: usize,
        /// Number of instances.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        colours: Colours,
        #[arg(long, value_enum, default_value_t = SolverArg::Thomassen)]
        solver: SolverArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Colours {
    /// Number of colours.
    #[arg(short = 'l', long = "colors", value_name = "L", default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=64))]
    ell: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Thomassen,
    Backtrack,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Thomassen => Solver::Thomassen,
            SolverArg::Backtrack => Solver::Backtrack,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: formats::ParseError },
    #[error("{0}")]
    Invalid(String),
    #[error("SOLVER_UNSAT: {0}")]
    Unsat(String),
    #[error("BUDGET_EXCEEDED: more than {0} states")]
    Budget(u64),
    #[error("sequence is invalid")]
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Invalid(_) => EXIT_INVALID,
            CliError::Unsat(_) => EXIT_UNSAT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::VerifyFailed => EXIT_VERIFY_FAILED,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::SolverUnsat {
                anchor,
                ref certificate,
            } => {
                let lists: Vec<String> = certificate
                    .vertices
                    .iter()
                    .zip(&certificate.lists)
                    .map(|(v, l)| {
                        format!(
                            "{}:{{{}}}",
                            v + 1,
                            l.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                CliError::Unsat(format!(
                    "phase anchored at vertex {} has no list colouring; lists {}",
                    anchor + 1,
                    lists.join(" ")
                ))
            }
            EngineError::ImproperInput { side, edge } => CliError::Invalid(format!(
                "{side} is improper: edge {}-{} is monochromatic",
                edge.0 + 1,
                edge.1 + 1
            )),
            EngineError::ColourOutOfRange {
                side,
                vertex,
                colour,
                ell,
            } => CliError::Invalid(format!(
                "{side} gives vertex {} colour {colour}, outside 1..={ell}",
                vertex + 1
            )),
            EngineError::EmbeddingRequired => CliError::Invalid(
                "graph file has no `r` lines; the planar solver needs an embedding (use --solver backtrack)".into(),
            ),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<StateSpaceError> for CliError {
    fn from(e: StateSpaceError) -> Self {
        match e {
            StateSpaceError::BudgetExceeded(b) => CliError::Budget(b),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn load_graph(path: &Path) -> Result<GraphFile, CliError> {
    formats::parse_graph(&read(path)?).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

fn load_colouring(path: &Path, n: usize) -> Result<Colouring, CliError> {
    let f = formats::parse_colouring(&read(path)?).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })?;
    if f.len() != n {
        return Err(CliError::Invalid(format!(
            "{}: {} colours for {n} vertices",
            path.display(),
            f.len()
        )));
    }
    Ok(f)
}

fn load_proper(path: &Path, gf: &GraphFile, ell: u8) -> Result<Colouring, CliError> {
    let f = load_colouring(path, gf.graph.n())?;
    if let Some(v) = f.out_of_range(ell) {
        return Err(CliError::Invalid(format!(
            "{}: vertex {} has colour {}, outside 1..={ell}",
            path.display(),
            v + 1,
            f.get(v)
        )));
    }
    if let Some((u, v)) = f.first_conflict(&gf.graph) {
        return Err(CliError::Invalid(format!(
            "{}: edge {}-{} is monochromatic",
            path.display(),
            u + 1,
            v + 1
        )));
    }
    Ok(f)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Recolor {
            graph,
            alpha,
            beta,
            colours,
            solver,
            out,
        } => {
            let gf = load_graph(&graph)?;
            let a = load_colouring(&alpha, gf.graph.n())?;
            let b = load_colouring(&beta, gf.graph.n())?;
            let r = recolour(&gf.graph, gf.embedding.as_ref(), &a, &b, colours.ell, solver.into())?;
            write_out(
                Some(&out),
                &formats::serialize_sequence(gf.graph.n(), colours.ell, &r.sequence.steps),
            )?;
            let n = gf.graph.n();
            println!("steps={} bound={} phases={}", r.sequence.len(), n * n, r.phases.len());
        }
        Command::Verify {
            graph,
            alpha,
            beta,
            sequence,
            colours,
            format,
        } => {
            let gf = load_graph(&graph)?;
            let a = load_colouring(&alpha, gf.graph.n())?;
            let b = load_colouring(&beta, gf.graph.n())?;
            let rep = recolor::verify_sequence_text(&gf.graph, &a, &b, &read(&sequence)?, colours.ell).map_err(
                |e| match e {
                    SequenceFileError::Parse(source) => CliError::Parse {
                        path: sequence.clone(),
                        source,
                    },
                    other => CliError::Invalid(format!("{}: {other}", sequence.display())),
                },
            )?;
            print!("{}", report::render_sequence_report(&rep, format));
            if !rep.is_valid() {
                return Err(CliError::VerifyFailed);
            }
        }
        Command::Distance {
            graph,
            alpha,
            beta,
            colours,
            budget,
            format,
        } => {
            let gf = load_graph(&graph)?;
            let a = load_proper(&alpha, &gf, colours.ell)?;
            let b = load_proper(&beta, &gf, colours.ell)?;
            let d = bfs_distance(&ReconfigSpace::new(&gf.graph, colours.ell), &a, &b, budget)?;
            print!("{}", report::render_distance(d, format));
        }
        Command::Diameter {
            graph,
            colours,
            budget,
            format,
        } => {
            let gf = load_graph(&graph)?;
            let rep = diameter_report(&ReconfigSpace::new(&gf.graph, colours.ell), budget)?;
            print!("{}", report::render_diameter(&rep, format));
        }
        Command::Gen { family, n, seed, out } => {
            let (g, emb) = batch::generate(family, n, seed).map_err(|e| CliError::Invalid(e.to_string()))?;
            write_out(out.as_deref(), &formats::serialize_graph(&g, Some(&emb)))?;
        }
        Command::Colouring {
            graph,
            colours,
            seed,
            out,
        } => {
            let gf = load_graph(&graph)?;
            let f = random_colouring(&gf.graph, colours.ell, &mut rng(seed))
                .ok_or_else(|| CliError::Invalid(format!("no proper {}-colouring found", colours.ell)))?;
            write_out(out.as_deref(), &formats::serialize_colouring(&f))?;
        }
        Command::Batch {
            family,
            n,
            count,
            colours,
            solver,
            seed,
            budget,
            out,
        } => {
            let config = BatchConfig {
                family,
                n,
                count,
                ell: colours.ell,
                solver: solver.into(),
                seed,
                budget,
            };
            let rows = batch::run_batch(&config).map_err(|e| match e {
                batch::BatchError::Engine { instance, source } => match CliError::from(source) {
                    CliError::Unsat(m) => CliError::Unsat(format!("instance {instance}: {m}")),
                    CliError::Invalid(m) => CliError::Invalid(format!("instance {instance}: {m}")),
                    other => other,
                },
                other => CliError::Invalid(other.to_string()),
            })?;
            write_out(out.as_deref(), &batch::to_csv(&rows))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("RECOLOR_LOG")).init();
    // clap exits with 2 on usage errors, which is taken by SOLVER_UNSAT
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
