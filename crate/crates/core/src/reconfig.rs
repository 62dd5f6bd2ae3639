//! Ground truth for the reconfiguration graph `R_ℓ(G)`: a sequence replayer,
//! exact BFS distances, and diameter/component reports for tiny graphs.
//!
//! States are encoded as mixed-radix integers, `Σ (f(v) − 1) · ℓ^v`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::colour::{Colour, Colouring};
use crate::engine::RecolourStep;
use crate::graph::{Graph, Vertex};

/// First problem found while replaying a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// A colouring or step uses a colour outside `1..=ℓ`; `step` is `None` for
    /// the endpoints.
    ColourOutOfRange {
        step: Option<usize>,
        vertex: Vertex,
        colour: Colour,
    },
    ImproperStart {
        edge: (Vertex, Vertex),
    },
    UnknownVertex {
        step: usize,
        vertex: Vertex,
    },
    OldColourMismatch {
        step: usize,
        vertex: Vertex,
        expected: Colour,
        found: Colour,
    },
    NoOpStep {
        step: usize,
        vertex: Vertex,
    },
    ImproperIntermediate {
        step: usize,
        edge: (Vertex, Vertex),
    },
    WrongEndpoint {
        vertex: Vertex,
        expected: Colour,
        found: Colour,
    },
}

/// Outcome of [`verify_sequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceReport {
    Valid { steps: usize, per_vertex: Vec<usize> },
    Invalid(Violation),
}

impl SequenceReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, SequenceReport::Valid { .. })
    }
}

/// Replays `steps` from `alpha`, checking that each step starts from the
/// colour the vertex currently has, that every colouring along the way is a
/// proper `ell`-colouring, and that the walk ends at `beta`.
pub fn verify_sequence(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
    steps: &[RecolourStep],
    ell: u8,
) -> SequenceReport {
    use SequenceReport::Invalid;
    let n = g.n();
    for f in [alpha, beta] {
        if f.len() != n {
            return Invalid(Violation::DimensionMismatch {
                expected: n,
                got: f.len(),
            });
        }
        if let Some(vertex) = f.out_of_range(ell) {
            return Invalid(Violation::ColourOutOfRange {
                step: None,
                vertex,
                colour: f.get(vertex),
            });
        }
    }
    if let Some(edge) = g.edges().find(|&(u, v)| alpha.get(u) == alpha.get(v)) {
        return Invalid(Violation::ImproperStart { edge });
    }
    let mut current: Vec<Colour> = alpha.as_slice().to_vec();
    let mut per_vertex = vec![0usize; n];
    for (i, s) in steps.iter().enumerate() {
        if s.vertex >= n {
            return Invalid(Violation::UnknownVertex {
                step: i,
                vertex: s.vertex,
            });
        }
        if current[s.vertex] != s.old {
            return Invalid(Violation::OldColourMismatch {
                step: i,
                vertex: s.vertex,
                expected: current[s.vertex],
                found: s.old,
            });
        }
        if s.new == 0 || s.new > ell {
            return Invalid(Violation::ColourOutOfRange {
                step: Some(i),
                vertex: s.vertex,
                colour: s.new,
            });
        }
        if s.new == s.old {
            return Invalid(Violation::NoOpStep {
                step: i,
                vertex: s.vertex,
            });
        }
        current[s.vertex] = s.new;
        if let Some(&w) = g.neighbours(s.vertex).iter().find(|&&w| current[w] == s.new) {
            return Invalid(Violation::ImproperIntermediate {
                step: i,
                edge: (s.vertex.min(w), s.vertex.max(w)),
            });
        }
        per_vertex[s.vertex] += 1;
    }
    if let Some(v) = (0..n).find(|&v| current[v] != beta.get(v)) {
        return Invalid(Violation::WrongEndpoint {
            vertex: v,
            expected: beta.get(v),
            found: current[v],
        });
    }
    SequenceReport::Valid {
        steps: steps.len(),
        per_vertex,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateSpaceError {
    #[error("state budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("{0} is not a proper colouring of the graph")]
    ImproperState(&'static str),
    #[error("colouring does not match the state space dimensions")]
    DimensionMismatch,
}

/// Default number of states BFS may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Visited sets up to this many bits are dense bitsets.
const DENSE_BITS: u128 = 1 << 28;

/// The proper `ell`-colourings of `graph`, adjacent when they differ at one
/// vertex. Neighbours are generated on demand.
#[derive(Debug, Clone)]
pub struct ReconfigSpace<'a> {
    graph: &'a Graph,
    ell: u8,
    /// `ℓ^n`, when it fits.
    size: Option<u128>,
}

impl<'a> ReconfigSpace<'a> {
    pub fn new(graph: &'a Graph, ell: u8) -> Self {
        let size = (0..graph.n()).try_fold(1u128, |acc, _| acc.checked_mul(ell as u128));
        ReconfigSpace { graph, ell, size }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    /// Number of colour assignments `ℓ^n`, proper or not, if it fits in u128.
    pub fn assignments(&self) -> Option<u128> {
        self.size
    }

    fn encode(&self, f: &[Colour]) -> u128 {
        f.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.ell as u128 + (c - 1) as u128)
    }

    fn decode(&self, mut code: u128, out: &mut [Colour]) {
        for c in out.iter_mut() {
            *c = (code % self.ell as u128) as Colour + 1;
            code /= self.ell as u128;
        }
    }

    fn is_proper(&self, f: &[Colour]) -> bool {
        self.graph.edges().all(|(u, v)| f[u] != f[v])
    }

    fn validate(&self, f: &Colouring, name: &'static str) -> Result<(), StateSpaceError> {
        if f.len() != self.graph.n() || f.out_of_range(self.ell).is_some() {
            return Err(StateSpaceError::DimensionMismatch);
        }
        if !self.is_proper(f.as_slice()) {
            return Err(StateSpaceError::ImproperState(name));
        }
        Ok(())
    }

    /// Calls `visit` with the code of every neighbour of `f` (which is left
    /// unchanged on return).
    fn for_each_neighbour(&self, f: &mut [Colour], mut visit: impl FnMut(u128)) {
        let mut weight = 1u128;
        let base = self.encode(f);
        for v in 0..f.len() {
            let old = f[v];
            let mut used = 0u64;
            for &w in self.graph.neighbours(v) {
                used |= 1 << (f[w] - 1);
            }
            for c in 1..=self.ell {
                if c != old && used & (1 << (c - 1)) == 0 {
                    let code = base - (old as u128 - 1) * weight + (c as u128 - 1) * weight;
                    visit(code);
                }
            }
            weight *= self.ell as u128;
        }
    }
}

/// Visited-set over state codes.
enum Visited {
    Dense(Vec<u64>),
    Sparse(BTreeSet<u128>),
}

impl Visited {
    fn new(space: &ReconfigSpace<'_>) -> Self {
        match space.size {
            Some(s) if s <= DENSE_BITS => Visited::Dense(vec![0; (s as usize).div_ceil(64)]),
            _ => Visited::Sparse(BTreeSet::new()),
        }
    }

    /// Marks `code`; true if it was new.
    fn insert(&mut self, code: u128) -> bool {
        match self {
            Visited::Dense(bits) => {
                let (word, bit) = ((code / 64) as usize, code % 64);
                let fresh = bits[word] & (1 << bit) == 0;
                bits[word] |= 1 << bit;
                fresh
            }
            Visited::Sparse(set) => set.insert(code),
        }
    }
}

/// Exact distance from `alpha` to `beta` in `R_ℓ(G)` by breadth-first search
/// over the states reachable from `alpha`. `Ok(None)` means unreachable.
pub fn bfs_distance(
    space: &ReconfigSpace<'_>,
    alpha: &Colouring,
    beta: &Colouring,
    budget: u64,
) -> Result<Option<usize>, StateSpaceError> {
    space.validate(alpha, "start")?;
    if beta.len() != space.graph.n() || beta.out_of_range(space.ell).is_some() {
        return Err(StateSpaceError::DimensionMismatch);
    }
    if !space.is_proper(beta.as_slice()) {
        return Ok(None);
    }
    let start = space.encode(alpha.as_slice());
    let goal = space.encode(beta.as_slice());
    if start == goal {
        return Ok(Some(0));
    }
    let mut visited = Visited::new(space);
    visited.insert(start);
    let mut count = 1u64;
    let mut frontier = vec![start];
    let mut scratch = vec![0 as Colour; space.graph.n()];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &code in &frontier {
            space.decode(code, &mut scratch);
            let mut found = false;
            let mut over = false;
            space.for_each_neighbour(&mut scratch, |nb| {
                if found || over {
                    return;
                }
                if visited.insert(nb) {
                    if nb == goal {
                        found = true;
                        return;
                    }
                    count += 1;
                    if count > budget {
                        over = true;
                    }
                    next.push(nb);
                }
            });
            if found {
                return Ok(Some(depth));
            }
            if over {
                return Err(StateSpaceError::BudgetExceeded(budget));
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Structure of the whole of `R_ℓ(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterReport {
    /// Number of proper colourings.
    pub states: usize,
    pub components: usize,
    pub largest_component: usize,
    /// Diameter of the largest component (the one holding the smallest
    /// state code among those of maximum size).
    pub diameter: usize,
    /// Proper colourings with no neighbour, in code order.
    pub frozen: Vec<Colouring>,
}

/// Enumerates all `ℓ^n` assignments (at most `budget` of them) and reports
/// components, frozen colourings and the diameter of the largest component.
///
/// Permuting colours is an automorphism of `R_ℓ(G)`, so eccentricities only
/// need computing from one colouring per permutation class: the one whose
/// colours first appear in the order 1, 2, 3, ….
pub fn diameter_report(space: &ReconfigSpace<'_>, budget: u64) -> Result<DiameterReport, StateSpaceError> {
    let total = match space.size {
        Some(s) if s <= budget as u128 => s as usize,
        _ => return Err(StateSpaceError::BudgetExceeded(budget)),
    };
    let n = space.graph.n();
    let mut scratch = vec![0 as Colour; n];
    const NONE: u32 = u32::MAX;
    // component id per code, NONE for improper or unvisited
    let mut comp = vec![NONE; total];
    let mut proper = vec![false; total];
    let mut states = 0;
    for (code, slot) in proper.iter_mut().enumerate() {
        space.decode(code as u128, &mut scratch);
        if space.is_proper(&scratch) {
            *slot = true;
            states += 1;
        }
    }
    let mut sizes: Vec<usize> = Vec::new();
    let mut frozen = Vec::new();
    let mut queue = Vec::new();
    for s in 0..total {
        if !proper[s] || comp[s] != NONE {
            continue;
        }
        let id = sizes.len() as u32;
        comp[s] = id;
        queue.clear();
        queue.push(s);
        let mut size = 0;
        while let Some(u) = queue.pop() {
            size += 1;
            space.decode(u as u128, &mut scratch);
            space.for_each_neighbour(&mut scratch, |nb| {
                let nb = nb as usize;
                if comp[nb] == NONE {
                    comp[nb] = id;
                    queue.push(nb);
                }
            });
        }
        if size == 1 {
            space.decode(s as u128, &mut scratch);
            frozen.push(Colouring::new(scratch.clone()));
        }
        sizes.push(size);
    }
    let largest = sizes.iter().copied().max().unwrap_or(0);
    let mut diameter = 0;
    if let Some(target) = sizes.iter().position(|&s| s == largest) {
        let mut reps = BTreeSet::new();
        for (s, &c) in comp.iter().enumerate() {
            if c == target as u32 {
                space.decode(s as u128, &mut scratch);
                canonicalise(&mut scratch);
                reps.insert(space.encode(&scratch) as usize);
            }
        }
        let mut dist = vec![u32::MAX; total];
        for &r in &reps {
            diameter = diameter.max(eccentricity(space, r, &mut dist, &mut scratch));
        }
    }
    Ok(DiameterReport {
        states,
        components: sizes.len(),
        largest_component: largest,
        diameter,
        frozen,
    })
}

/// Relabels colours in order of first appearance.
fn canonicalise(f: &mut [Colour]) {
    let mut map = [0 as Colour; 65];
    let mut next = 1;
    for c in f.iter_mut() {
        if map[*c as usize] == 0 {
            map[*c as usize] = next;
            next += 1;
        }
        *c = map[*c as usize];
    }
}

fn eccentricity(space: &ReconfigSpace<'_>, start: usize, dist: &mut [u32], scratch: &mut [Colour]) -> usize {
    dist.iter_mut().for_each(|d| *d = u32::MAX);
    dist[start] = 0;
    let mut frontier = vec![start];
    let mut depth = 0u32;
    loop {
        let mut next = Vec::new();
        for &u in &frontier {
            space.decode(u as u128, scratch);
            space.for_each_neighbour(scratch, |nb| {
                let nb = nb as usize;
                if dist[nb] == u32::MAX {
                    dist[nb] = depth + 1;
                    next.push(nb);
                }
            });
        }
        if next.is_empty() {
            return depth as usize;
        }
        depth += 1;
        frontier = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[Colour]) -> Colouring {
        Colouring::new(v.to_vec())
    }

    #[test]
    fn empty_sequence_valid() {
        let g = Graph::path(2);
        let a = col(&[1, 2]);
        assert_eq!(
            verify_sequence(&g, &a, &a, &[], 3),
            SequenceReport::Valid {
                steps: 0,
                per_vertex: vec![0, 0]
            }
        );
    }

    #[test]
    fn mismatched_old_colour() {
        let g = Graph::path(2);
        let steps = [
            RecolourStep {
                vertex: 0,
                old: 1,
                new: 3,
            },
            RecolourStep {
                vertex: 1,
                old: 1,
                new: 1,
            },
        ];
        assert_eq!(
            verify_sequence(&g, &col(&[1, 2]), &col(&[3, 1]), &steps, 3),
            SequenceReport::Invalid(Violation::OldColourMismatch {
                step: 1,
                vertex: 1,
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn improper_step_and_wrong_end() {
        let g = Graph::path(2);
        let bad = [RecolourStep {
            vertex: 0,
            old: 1,
            new: 2,
        }];
        assert_eq!(
            verify_sequence(&g, &col(&[1, 2]), &col(&[3, 2]), &bad, 3),
            SequenceReport::Invalid(Violation::ImproperIntermediate { step: 0, edge: (0, 1) })
        );
        let short = [RecolourStep {
            vertex: 0,
            old: 1,
            new: 3,
        }];
        assert_eq!(
            verify_sequence(&g, &col(&[1, 2]), &col(&[3, 1]), &short, 3),
            SequenceReport::Invalid(Violation::WrongEndpoint {
                vertex: 1,
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn distances() {
        let k1 = Graph::new(1);
        let space = ReconfigSpace::new(&k1, 2);
        assert_eq!(bfs_distance(&space, &col(&[1]), &col(&[1]), 10).unwrap(), Some(0));
        assert_eq!(bfs_distance(&space, &col(&[1]), &col(&[2]), 10).unwrap(), Some(1));
        let k2 = Graph::complete(2);
        let space = ReconfigSpace::new(&k2, 2);
        assert_eq!(bfs_distance(&space, &col(&[1, 2]), &col(&[2, 1]), 10).unwrap(), None);
        let space = ReconfigSpace::new(&k2, 3);
        assert_eq!(bfs_distance(&space, &col(&[1, 2]), &col(&[2, 1]), 10).unwrap(), Some(3));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::new(6);
        let space = ReconfigSpace::new(&g, 10);
        let err = bfs_distance(&space, &col(&[1; 6]), &col(&[10; 6]), 100).unwrap_err();
        assert_eq!(err, StateSpaceError::BudgetExceeded(100));
    }

    #[test]
    fn k2_two_colours_frozen() {
        let g = Graph::complete(2);
        let r = diameter_report(&ReconfigSpace::new(&g, 2), 100).unwrap();
        assert_eq!(r.states, 2);
        assert_eq!(r.components, 2);
        assert_eq!(r.frozen, [col(&[2, 1]), col(&[1, 2])]);
    }

    #[test]
    fn k2_three_colours_connected() {
        let g = Graph::complete(2);
        let r = diameter_report(&ReconfigSpace::new(&g, 3), 100).unwrap();
        assert_eq!((r.states, r.components, r.diameter), (6, 1, 3));
        assert!(r.frozen.is_empty());
    }

    #[test]
    fn canonical_relabel() {
        let mut f = [3, 1, 3, 7];
        canonicalise(&mut f);
        assert_eq!(f, [1, 2, 1, 3]);
    }
}
