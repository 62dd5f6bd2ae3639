//! List assignments and the list-colouring verifier.

use alloc::vec::Vec;

use thiserror::Error;

use crate::colour::{ColourSet, Colouring, MAX_COLOURS};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("colour universe {0} outside 1..=64")]
    BadUniverse(u8),
    #[error("list of vertex {0} is empty")]
    EmptyList(Vertex),
    #[error("list of vertex {vertex} uses colours outside 1..={ell}")]
    OutsideUniverse { vertex: Vertex, ell: u8 },
}

/// Per-vertex colour lists over the universe `1..=ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<ColourSet>,
    ell: u8,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColourSet>, ell: u8) -> Result<Self, ListError> {
        if ell == 0 || ell > MAX_COLOURS {
            return Err(ListError::BadUniverse(ell));
        }
        let universe = ColourSet::universe(ell);
        for (v, l) in lists.iter().enumerate() {
            if l.is_empty() {
                return Err(ListError::EmptyList(v));
            }
            if !l.difference(universe).is_empty() {
                return Err(ListError::OutsideUniverse { vertex: v, ell });
            }
        }
        Ok(ListAssignment { lists, ell })
    }

    /// Every vertex gets the whole universe.
    pub fn full(n: usize, ell: u8) -> Self {
        ListAssignment {
            lists: alloc::vec![ColourSet::universe(ell); n],
            ell,
        }
    }

    pub fn get(&self, v: Vertex) -> ColourSet {
        self.lists[v]
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn lists(&self) -> &[ColourSet] {
        &self.lists
    }

    pub fn min_size(&self) -> usize {
        self.lists.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    /// Number of assignments `Π |L(v)|`, saturating.
    pub fn product(&self) -> u128 {
        self.lists
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128))
    }
}

/// Everything wrong with a list colouring; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListReport {
    /// Edges `(u, v)`, `u < v`, whose ends share a colour.
    pub monochromatic: Vec<(Vertex, Vertex)>,
    /// Vertices coloured outside their list.
    pub list_violations: Vec<Vertex>,
    /// Set when the colouring does not cover exactly the graph's vertices.
    pub length_mismatch: bool,
}

impl ListReport {
    pub fn is_valid(&self) -> bool {
        self.monochromatic.is_empty() && self.list_violations.is_empty() && !self.length_mismatch
    }
}

pub fn verify_list_colouring(g: &Graph, lists: &ListAssignment, f: &Colouring) -> ListReport {
    if f.len() != g.n() || lists.len() != g.n() {
        return ListReport {
            length_mismatch: true,
            ..ListReport::default()
        };
    }
    ListReport {
        monochromatic: f.conflicts(g),
        list_violations: (0..g.n()).filter(|&v| !lists.get(v).contains(f.get(v))).collect(),
        length_mismatch: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn triangle_lists() -> ListAssignment {
        ListAssignment::new(vec![ColourSet::universe(3); 3], 3).unwrap()
    }

    #[test]
    fn valid_is_empty_report() {
        let g = Graph::complete(3);
        let r = verify_list_colouring(&g, &triangle_lists(), &Colouring::new(vec![1, 2, 3]));
        assert!(r.is_valid());
        assert_eq!(r, ListReport::default());
    }

    #[test]
    fn monochromatic_edge_reported() {
        let g = Graph::complete(3);
        let r = verify_list_colouring(&g, &triangle_lists(), &Colouring::new(vec![1, 1, 3]));
        assert_eq!(r.monochromatic, [(0, 1)]);
        assert!(r.list_violations.is_empty());
    }

    #[test]
    fn one_list_violation() {
        let g = Graph::path(3);
        let lists = ListAssignment::new(
            vec![ColourSet::singleton(2), ColourSet::universe(3), ColourSet::universe(3)],
            3,
        )
        .unwrap();
        let r = verify_list_colouring(&g, &lists, &Colouring::new(vec![1, 2, 1]));
        assert_eq!(r.list_violations, [0]);
        assert!(r.monochromatic.is_empty());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            ListAssignment::new(vec![ColourSet::EMPTY], 3),
            Err(ListError::EmptyList(0))
        );
        assert_eq!(
            ListAssignment::new(vec![ColourSet::singleton(4)], 3),
            Err(ListError::OutsideUniverse { vertex: 0, ell: 3 })
        );
        assert_eq!(ListAssignment::new(vec![], 65), Err(ListError::BadUniverse(65)));
    }
}
