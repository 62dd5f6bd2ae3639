//! Simple undirected graphs on vertices `0..n`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Vertex index, `0..n`. Files use `1..=n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    IndexOutOfRange { vertex: Vertex, n: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("graph is not connected")]
    NotConnected,
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).expect("fresh edge");
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1).expect("fresh edge");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::IndexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(pos);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `vertices` (sorted and deduplicated first).
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
        let mut back: Vec<Vertex> = vertices.to_vec();
        back.sort_unstable();
        back.dedup();
        if let Some(&bad) = back.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::UnknownVertex(bad));
        }
        let mut forward = vec![None; self.n()];
        for (i, &v) in back.iter().enumerate() {
            forward[v] = Some(i);
        }
        let mut adj = vec![Vec::new(); back.len()];
        let mut m = 0;
        for (i, &v) in back.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(j) = forward[w] {
                    adj[i].push(j);
                    if j > i {
                        m += 1;
                    }
                }
            }
        }
        Ok(InducedSubgraph {
            graph: Graph { adj, m },
            forward,
            backward: back,
        })
    }
}

/// An induced subgraph together with its vertex maps.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Original vertex → subgraph vertex.
    pub forward: Vec<Option<Vertex>>,
    /// Subgraph vertex → original vertex.
    pub backward: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::Loop(1)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::IndexOutOfRange { vertex: 3, n: 3 }));
        g.add_edge(2, 0).unwrap();
        assert_eq!(g.add_edge(0, 2), Err(GraphError::DuplicateEdge(0, 2)));
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbours(0), [2]);
        assert_eq!(g.neighbours(2), [0]);
    }

    #[test]
    fn induced_k4_pair_is_k2() {
        let k4 = Graph::complete(4);
        let sub = k4.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(sub.graph, Graph::complete(2));
        assert_eq!(sub.backward, [0, 1]);
        assert_eq!(sub.forward, [Some(0), Some(1), None, None]);
    }

    #[test]
    fn induced_on_everything_is_identity() {
        let g = Graph::cycle(5);
        let sub = g.induced_subgraph(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(sub.graph, g);
        for v in 0..5 {
            assert_eq!(sub.forward[v], Some(v));
            assert_eq!(sub.backward[v], v);
        }
    }

    #[test]
    fn induced_unknown_vertex() {
        assert_eq!(
            Graph::new(2).induced_subgraph(&[0, 5]).unwrap_err(),
            GraphError::UnknownVertex(5)
        );
    }

    #[test]
    fn components_and_girth() {
        let mut g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), [vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert!(!g.is_connected());
        assert_eq!(g.girth(), None);
        g.add_edge(0, 2).unwrap();
        assert_eq!(g.girth(), Some(3));
        assert_eq!(Graph::cycle(7).girth(), Some(7));
        assert!(g.remove_edge(2, 0));
        assert!(!g.has_edge(0, 2));
    }
}
