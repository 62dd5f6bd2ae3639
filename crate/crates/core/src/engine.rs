//! Phase-by-phase recolouring along a degeneracy ordering.
//!
//! Let `v_1, …, v_n` be a degeneracy ordering and `h` the first index where
//! the current colouring `α` and the target `β` disagree. A phase builds the
//! lists
//!
//! * `L(v_h) = {β(v_h)}`,
//! * `L(v_i) = {1..ℓ} − {α(v_j) : v_j ~ v_i, j < i}` for `i > h`,
//!
//! on the graph `H` induced by `v_h, …, v_n`, finds an `L`-colouring `f` of
//! `H`, and recolours `v_n, v_{n-1}, …, v_h` to `f` in that order, skipping
//! vertices that already have their `f` colour. Each intermediate colouring is
//! proper: earlier neighbours of `v_k` keep their `α` colours, which `L(v_k)`
//! avoids, and later neighbours already carry `f` colours. No vertex before
//! `v_h` moves, every vertex after it moves at most once, and `v_h` ends at
//! `β(v_h)`, so the anchor strictly advances and at most `n` phases of at most
//! `n` steps each are needed.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::backtrack::backtrack_list_colour;
use crate::colour::{Colour, ColourSet, Colouring, MAX_COLOURS};
use crate::degeneracy::{degeneracy_ordering, DegeneracyOrdering};
use crate::embedding::{trace_faces, EmbeddingError, PlaneEmbedding};
use crate::graph::{Graph, InducedSubgraph, Vertex};
use crate::lists::ListAssignment;
use crate::thomassen::{list_colour_planar_one_precoloured, ThomassenError};

/// Which of the two input colourings an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Start,
    Target,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Side::Start => "start colouring",
            Side::Target => "target colouring",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("{side} has {got} entries, graph has {expected} vertices")]
    DimensionMismatch { side: Side, expected: usize, got: usize },
    #[error("colour universe {0} outside 1..=64")]
    BadUniverse(u8),
    #[error("{side} gives vertex {vertex} colour {colour}, outside 1..={ell}")]
    ColourOutOfRange {
        side: Side,
        vertex: Vertex,
        colour: Colour,
        ell: u8,
    },
    #[error("{side} is improper: edge {0}-{1} is monochromatic", .edge.0, .edge.1)]
    ImproperInput { side: Side, edge: (Vertex, Vertex) },
    #[error("the planar solver needs an embedding")]
    EmbeddingRequired,
    #[error("invalid embedding: {0}")]
    Embedding(EmbeddingError),
    #[error("the planar solver needs at least 10 colours, got {0}")]
    TooFewColours(u8),
    #[error("phase anchored at vertex {anchor} has no list colouring")]
    SolverUnsat {
        anchor: Vertex,
        certificate: UnsatCertificate,
    },
    #[error("planar solver failed: {0}")]
    Solver(ThomassenError),
    #[error("phase anchored at position {0} did not advance")]
    NoProgress(usize),
}

/// The list assignment of a phase that had no colouring: `vertices[i]` had
/// list `lists[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsatCertificate {
    pub vertices: Vec<Vertex>,
    pub lists: Vec<ColourSet>,
}

/// List-colouring backend for phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    /// Constructive planar 5-list-colouring; needs an embedding and ℓ ≥ 10.
    #[default]
    Thomassen,
    /// Exact backtracking; works on any graph but may report UNSAT.
    Backtrack,
}

/// Recolour one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RecolourStep {
    pub vertex: Vertex,
    pub old: Colour,
    pub new: Colour,
}

/// A start colouring and the steps applied to it in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecolourSequence {
    pub start: Colouring,
    pub steps: Vec<RecolourStep>,
    pub ell: u8,
}

impl RecolourSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Colouring after all steps, without any validity checks.
    pub fn end(&self) -> Colouring {
        let mut f = self.start.clone();
        for s in &self.steps {
            f.set(s.vertex, s.new);
        }
        f
    }

    /// How often each vertex is recoloured.
    pub fn per_vertex_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.start.len()];
        for s in &self.steps {
            counts[s.vertex] += 1;
        }
        counts
    }

    /// Sum of `(vertex + 1) · new` over all steps, modulo 2³².
    pub fn checksum(&self) -> u32 {
        checksum(&self.steps)
    }
}

pub fn checksum(steps: &[RecolourStep]) -> u32 {
    steps.iter().fold(0u32, |acc, s| {
        acc.wrapping_add(((s.vertex as u32).wrapping_add(1)).wrapping_mul(s.new as u32))
    })
}

/// What one phase did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseReport {
    /// Position of the anchor in the ordering (0-based, so `h - 1`).
    pub anchor: usize,
    pub anchor_vertex: Vertex,
    /// Vertices touched in this phase with their step counts, in step order.
    pub recoloured: Vec<(Vertex, usize)>,
    /// Index of the phase's first step in the whole sequence.
    pub first_step: usize,
    pub steps: usize,
}

/// Output of [`recolour`].
#[derive(Debug, Clone)]
pub struct Recolouring {
    pub sequence: RecolourSequence,
    pub phases: Vec<PhaseReport>,
    pub ordering: DegeneracyOrdering,
}

/// Position of the first disagreement along the ordering, or `None` when the
/// colourings agree everywhere.
pub fn find_anchor(
    order: &DegeneracyOrdering,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<Option<usize>, EngineError> {
    let n = order.len();
    for (side, f) in [(Side::Start, alpha), (Side::Target, beta)] {
        if f.len() != n {
            return Err(EngineError::DimensionMismatch {
                side,
                expected: n,
                got: f.len(),
            });
        }
    }
    Ok(order.order().iter().position(|&v| alpha.get(v) != beta.get(v)))
}

/// `H` and its lists for the phase anchored at position `h`.
#[derive(Debug, Clone)]
pub struct PhaseLists {
    pub sub: InducedSubgraph,
    /// Indexed by `H`'s vertices; may contain empty lists when `ℓ` is at most
    /// a back-degree.
    pub lists: Vec<ColourSet>,
    pub anchor_local: Vertex,
}

/// Lists exclude the current (`α`) colours of neighbours earlier in the full
/// ordering of `G`, whether or not those neighbours lie in `H`.
pub fn build_phase_lists(
    g: &Graph,
    order: &DegeneracyOrdering,
    alpha: &Colouring,
    beta: &Colouring,
    h: usize,
    ell: u8,
) -> PhaseLists {
    let suffix = &order.order()[h..];
    let sub = g.induced_subgraph(suffix).expect("ordering covers the graph");
    let anchor = order.order()[h];
    let universe = ColourSet::universe(ell);
    let lists = sub
        .backward
        .iter()
        .map(|&v| {
            if v == anchor {
                return ColourSet::singleton(beta.get(v));
            }
            let mut l = universe;
            for &w in g.neighbours(v) {
                if order.position(w) < order.position(v) {
                    l.remove(alpha.get(w));
                }
            }
            l
        })
        .collect();
    let anchor_local = sub.forward[anchor].expect("anchor in H");
    PhaseLists {
        sub,
        lists,
        anchor_local,
    }
}

/// One phase: the steps, its report, and the colouring after it.
#[derive(Debug, Clone)]
pub struct Phase {
    pub steps: Vec<RecolourStep>,
    pub report: PhaseReport,
    pub next: Colouring,
}

#[allow(clippy::too_many_arguments)]
pub fn run_phase(
    g: &Graph,
    emb: Option<&PlaneEmbedding>,
    order: &DegeneracyOrdering,
    alpha: &Colouring,
    beta: &Colouring,
    h: usize,
    ell: u8,
    solver: Solver,
) -> Result<Phase, EngineError> {
    let phase = build_phase_lists(g, order, alpha, beta, h, ell);
    let anchor_vertex = order.order()[h];
    let unsat = |phase: &PhaseLists| EngineError::SolverUnsat {
        anchor: anchor_vertex,
        certificate: UnsatCertificate {
            vertices: phase.sub.backward.clone(),
            lists: phase.lists.clone(),
        },
    };
    if phase.lists.iter().any(|l| l.is_empty()) {
        return Err(unsat(&phase));
    }
    let f = match solver {
        Solver::Thomassen => {
            let emb = emb.ok_or(EngineError::EmbeddingRequired)?;
            if ell < 10 {
                return Err(EngineError::TooFewColours(ell));
            }
            let lists: Vec<ColourSet> = if ell > 10 {
                phase.lists.iter().map(|l| l.lowest(5)).collect()
            } else {
                phase.lists.clone()
            };
            let lists = ListAssignment::new(lists, ell).expect("nonempty lists within the universe");
            let sub_emb = emb.restrict(&phase.sub);
            list_colour_planar_one_precoloured(
                &phase.sub.graph,
                &sub_emb,
                phase.anchor_local,
                beta.get(anchor_vertex),
                &lists,
            )
            .map_err(EngineError::Solver)?
        }
        Solver::Backtrack => {
            let lists = ListAssignment::new(phase.lists.clone(), ell).expect("nonempty lists within the universe");
            backtrack_list_colour(&phase.sub.graph, &lists).ok_or_else(|| unsat(&phase))?
        }
    };

    let mut current = alpha.clone();
    let mut steps = Vec::new();
    let mut recoloured = Vec::new();
    for k in (h..order.len()).rev() {
        let v = order.order()[k];
        let target = f.get(phase.sub.forward[v].expect("suffix vertex in H"));
        if target != current.get(v) {
            steps.push(RecolourStep {
                vertex: v,
                old: current.get(v),
                new: target,
            });
            current.set(v, target);
            recoloured.push((v, 1));
        }
    }
    let report = PhaseReport {
        anchor: h,
        anchor_vertex,
        recoloured,
        first_step: 0,
        steps: steps.len(),
    };
    Ok(Phase {
        steps,
        report,
        next: current,
    })
}

fn check_input(g: &Graph, f: &Colouring, side: Side, ell: u8) -> Result<(), EngineError> {
    if f.len() != g.n() {
        return Err(EngineError::DimensionMismatch {
            side,
            expected: g.n(),
            got: f.len(),
        });
    }
    if let Some(vertex) = f.out_of_range(ell) {
        return Err(EngineError::ColourOutOfRange {
            side,
            vertex,
            colour: f.get(vertex),
            ell,
        });
    }
    if let Some(edge) = f.first_conflict(g) {
        return Err(EngineError::ImproperInput { side, edge });
    }
    Ok(())
}

/// Recolours `alpha` into `beta` through proper `ell`-colourings.
///
/// With [`Solver::Thomassen`], `emb` must be a valid plane embedding of `g`
/// and `ell ≥ 10`. With [`Solver::Backtrack`] the embedding is ignored and a
/// phase may fail with [`EngineError::SolverUnsat`].
pub fn recolour(
    g: &Graph,
    emb: Option<&PlaneEmbedding>,
    alpha: &Colouring,
    beta: &Colouring,
    ell: u8,
    solver: Solver,
) -> Result<Recolouring, EngineError> {
    if ell == 0 || ell > MAX_COLOURS {
        return Err(EngineError::BadUniverse(ell));
    }
    check_input(g, alpha, Side::Start, ell)?;
    check_input(g, beta, Side::Target, ell)?;
    if solver == Solver::Thomassen {
        let emb = emb.ok_or(EngineError::EmbeddingRequired)?;
        if ell < 10 {
            return Err(EngineError::TooFewColours(ell));
        }
        trace_faces(g, emb).map_err(EngineError::Embedding)?;
    }
    let ordering = degeneracy_ordering(g);
    let mut current = alpha.clone();
    let mut steps = Vec::new();
    let mut phases = Vec::new();
    let mut last: Option<usize> = None;
    while let Some(h) = find_anchor(&ordering, &current, beta)? {
        if last.is_some_and(|l| h <= l) {
            return Err(EngineError::NoProgress(h));
        }
        last = Some(h);
        let mut phase = run_phase(g, emb, &ordering, &current, beta, h, ell, solver)?;
        phase.report.first_step = steps.len();
        steps.append(&mut phase.steps);
        phases.push(phase.report);
        current = phase.next;
    }
    Ok(Recolouring {
        sequence: RecolourSequence {
            start: alpha.clone(),
            steps,
            ell,
        },
        phases,
        ordering,
    })
}

/// [`recolour`] with the backtracking solver: lists have size at least
/// `ell` minus the back-degree, so `ell ≥ 2d + 1` always succeeds on a
/// `d`-degenerate graph.
pub fn recolour_degenerate(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
    ell: u8,
) -> Result<Recolouring, EngineError> {
    recolour(g, None, alpha, beta, ell, Solver::Backtrack)
}
