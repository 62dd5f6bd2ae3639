//! File formats, reports and batch runs for `recolor-core`, plus the
//! `recolor` command-line tool.
//!
//! Exit codes of the tool:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O error, malformed file or invalid input |
//! | 2 | a phase had no list colouring (`SOLVER_UNSAT`) |
//! | 3 | state budget exceeded (`BUDGET_EXCEEDED`) |
//! | 4 | `verify` found the sequence invalid |

pub mod batch;
pub mod formats;
pub mod report;

pub use batch::{run_batch, BatchConfig, BatchRow, Family};
pub use formats::{
    parse_colouring, parse_graph, parse_sequence, serialize_colouring, serialize_graph, serialize_sequence, GraphFile,
    ParseError, ParseErrorKind, SequenceFile,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_UNSAT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;

use recolor_core::reconfig::{verify_sequence, SequenceReport};
use recolor_core::{Colouring, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("sequence header says n = {found}, graph has {expected} vertices")]
    VertexCount { expected: usize, found: usize },
    #[error("sequence header says {found} colours, expected {expected}")]
    ColourCount { expected: u8, found: u8 },
}

/// Parses a sequence file, checks its header against `g` and `ell`, and
/// replays it from `alpha` to `beta`.
pub fn verify_sequence_text(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
    text: &str,
    ell: u8,
) -> Result<SequenceReport, SequenceFileError> {
    let seq = parse_sequence(text)?;
    if seq.n != g.n() {
        return Err(SequenceFileError::VertexCount {
            expected: g.n(),
            found: seq.n,
        });
    }
    if seq.ell != ell {
        return Err(SequenceFileError::ColourCount {
            expected: ell,
            found: seq.ell,
        });
    }
    Ok(verify_sequence(g, alpha, beta, &seq.steps, ell))
}
