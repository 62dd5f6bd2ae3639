//! Exact list colouring by backtracking search.
//!
//! Branches on the uncoloured vertex with the fewest remaining colours
//! (lowest index on ties), tries colours in increasing order, and prunes with
//! forward checking: assigning a colour removes it from every uncoloured
//! neighbour and fails as soon as a neighbour's domain empties.

use alloc::vec;
use alloc::vec::Vec;

use crate::colour::{Colour, ColourSet, Colouring};
use crate::graph::{Graph, Vertex};
use crate::lists::ListAssignment;

/// Search counters from one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
}

/// A proper colouring with `f(v) ∈ L(v)` for every `v`, or `None` if none
/// exists.
pub fn backtrack_list_colour(g: &Graph, lists: &ListAssignment) -> Option<Colouring> {
    backtrack_list_colour_with_stats(g, lists).0
}

pub fn backtrack_list_colour_with_stats(g: &Graph, lists: &ListAssignment) -> (Option<Colouring>, SearchStats) {
    assert_eq!(g.n(), lists.len(), "one list per vertex");
    let mut search = Search {
        g,
        domain: lists.lists().to_vec(),
        colour: vec![0; g.n()],
        trail: Vec::new(),
        stats: SearchStats::default(),
    };
    let found = search.run(g.n());
    let result = found.then(|| Colouring::new(search.colour));
    (result, search.stats)
}

struct Search<'a> {
    g: &'a Graph,
    domain: Vec<ColourSet>,
    colour: Vec<Colour>,
    // (vertex, colour removed from its domain)
    trail: Vec<(Vertex, Colour)>,
    stats: SearchStats,
}

impl Search<'_> {
    fn pick(&self) -> Option<Vertex> {
        let mut best: Option<(usize, Vertex)> = None;
        for v in 0..self.g.n() {
            if self.colour[v] != 0 {
                continue;
            }
            let size = self.domain[v].len();
            if best.is_none_or(|(s, _)| size < s) {
                best = Some((size, v));
                if size <= 1 {
                    break;
                }
            }
        }
        best.map(|(_, v)| v)
    }

    fn run(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        self.stats.nodes += 1;
        let v = self.pick().expect("uncoloured vertex remains");
        for c in self.domain[v].iter() {
            let mark = self.trail.len();
            self.colour[v] = c;
            let mut wiped = false;
            for &w in self.g.neighbours(v) {
                if self.colour[w] == 0 && self.domain[w].contains(c) {
                    self.domain[w].remove(c);
                    self.trail.push((w, c));
                    if self.domain[w].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped && self.run(remaining - 1) {
                return true;
            }
            for (w, c) in self.trail.drain(mark..) {
                self.domain[w].insert(c);
            }
            self.colour[v] = 0;
            self.stats.backtracks += 1;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lists::verify_list_colouring;

    #[test]
    fn triangle_two_colours_unsat() {
        let g = Graph::complete(3);
        let lists = ListAssignment::new(vec![ColourSet::universe(2); 3], 2).unwrap();
        assert!(backtrack_list_colour(&g, &lists).is_none());
    }

    #[test]
    fn delta_plus_one_is_sat() {
        let g = Graph::complete(5);
        let lists = ListAssignment::full(5, 5);
        let f = backtrack_list_colour(&g, &lists).unwrap();
        assert!(verify_list_colouring(&g, &lists, &f).is_valid());
    }

    #[test]
    fn lowest_colour_first() {
        let g = Graph::path(3);
        let f = backtrack_list_colour(&g, &ListAssignment::full(3, 3)).unwrap();
        assert_eq!(f.as_slice(), [1, 2, 1]);
    }

    #[test]
    fn empty_graph() {
        let f = backtrack_list_colour(&Graph::new(0), &ListAssignment::full(0, 3)).unwrap();
        assert!(f.is_empty());
    }
}
