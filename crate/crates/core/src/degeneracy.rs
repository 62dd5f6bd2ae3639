//! Degeneracy orderings via min-degree peeling.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

/// A vertex order `v_1, …, v_n` together with back-degrees: the number of
/// neighbours of each vertex that come earlier in the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
    back_degree: Vec<usize>,
    d: usize,
}

impl DegeneracyOrdering {
    /// Wraps an arbitrary permutation, computing back-degrees. Returns `None`
    /// if `order` is not a permutation of `0..g.n()`.
    pub fn from_order(g: &Graph, order: Vec<Vertex>) -> Option<Self> {
        let n = g.n();
        if order.len() != n {
            return None;
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return None;
            }
            position[v] = i;
        }
        let back_degree: Vec<usize> = (0..n)
            .map(|v| g.neighbours(v).iter().filter(|&&w| position[w] < position[v]).count())
            .collect();
        let d = back_degree.iter().copied().max().unwrap_or(0);
        Some(DegeneracyOrdering {
            order,
            position,
            back_degree,
            d,
        })
    }

    /// Vertices in order; `order()[i]` is `v_{i+1}`.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Index of `v` in the order (0-based).
    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn back_degree(&self, v: Vertex) -> usize {
        self.back_degree[v]
    }

    /// Maximum back-degree.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Repeatedly removes a vertex of minimum remaining degree (lowest index on
/// ties) and returns the reversed removal order. The maximum back-degree of
/// the result equals the degeneracy of `g`.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); g.max_degree() + 1];
    for v in 0..n {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut back_degree = vec![0; n];
    let mut low: usize = 0;
    for _ in 0..n {
        // Removing one vertex lowers neighbour degrees by at most one.
        low = low.saturating_sub(1);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("nonempty bucket");
        removed[v] = true;
        back_degree[v] = degree[v];
        removal.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                buckets[degree[w]].remove(&w);
                degree[w] -= 1;
                buckets[degree[w]].insert(w);
            }
        }
    }
    removal.reverse();
    let mut position = vec![0; n];
    for (i, &v) in removal.iter().enumerate() {
        position[v] = i;
    }
    let d = back_degree.iter().copied().max().unwrap_or(0);
    DegeneracyOrdering {
        order: removal,
        position,
        back_degree,
        d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        // Antipodal pairs (0,5), (1,3), (2,4) are the non-edges.
        let mut g = Graph::complete(6);
        for (u, v) in [(0, 5), (1, 3), (2, 4)] {
            g.remove_edge(u, v);
        }
        g
    }

    #[test]
    fn k4_is_3_degenerate() {
        let o = degeneracy_ordering(&Graph::complete(4));
        assert_eq!(o.d(), 3);
        let backs: Vec<_> = o.order().iter().map(|&v| o.back_degree(v)).collect();
        assert_eq!(backs, [0, 1, 2, 3]);
    }

    #[test]
    fn octahedron_is_4_degenerate() {
        assert_eq!(degeneracy_ordering(&octahedron()).d(), 4);
    }

    #[test]
    fn edgeless_and_empty() {
        let o = degeneracy_ordering(&Graph::new(3));
        assert_eq!(o.d(), 0);
        assert_eq!(o.order(), [2, 1, 0]);
        assert!(degeneracy_ordering(&Graph::new(0)).is_empty());
    }

    #[test]
    fn back_degrees_match_from_order() {
        let g = octahedron();
        let o = degeneracy_ordering(&g);
        let again = DegeneracyOrdering::from_order(&g, o.order().to_vec()).unwrap();
        assert_eq!(o, again);
        assert!(DegeneracyOrdering::from_order(&g, vec![0, 0, 1, 2, 3, 4]).is_none());
    }
}
