//! Recolouring proper colourings of planar and degenerate graphs.
//!
//! Given two proper `ℓ`-colourings `α` and `β` of a graph, [`engine::recolour`]
//! produces a sequence of single-vertex recolourings from `α` to `β` in which
//! every intermediate colouring is proper. The sequence is built in phases
//! along a degeneracy ordering: each phase freezes the first vertex where the
//! colourings disagree by solving a list-colouring problem on the suffix of
//! the ordering and replaying that solution backwards. With ten colours on a
//! plane graph the lists are large enough for the constructive planar
//! 5-list-colouring in [`thomassen`]; for other degenerate graphs the exact
//! [`backtrack`] solver is used instead. Either way at most `n` vertices move
//! per phase and there are at most `n` phases, so sequences have length at
//! most `n²`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line driver live in the `recolor` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod backtrack;
pub mod colour;
pub mod degeneracy;
pub mod embedding;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod lists;
pub mod reconfig;
pub mod thomassen;

pub use colour::{Colour, ColourSet, Colouring, MAX_COLOURS};
pub use degeneracy::{degeneracy_ordering, DegeneracyOrdering};
pub use embedding::{Dart, EmbeddingError, Face, PlaneEmbedding};
pub use engine::{
    recolour, recolour_degenerate, EngineError, PhaseReport, RecolourSequence, RecolourStep, Recolouring, Solver,
};
pub use graph::{Graph, GraphError, Vertex};
pub use lists::{verify_list_colouring, ListAssignment, ListReport};
