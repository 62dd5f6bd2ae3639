//! Combinatorial plane embeddings (rotation systems), face tracing and
//! triangulation.
//!
//! A rotation lists the neighbours of each vertex in cyclic order. Faces are
//! traced dart by dart: after the dart `u → v` comes `v → w`, where `w` is the
//! neighbour following `u` in the rotation at `v`. The embedding is planar iff
//! every connected component satisfies `V − E + F = 2`.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Graph, GraphError, InducedSubgraph, Vertex};

/// Directed edge `tail → head`.
pub type Dart = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {0} is not a permutation of its neighbours")]
    RotationMismatch(Vertex),
    #[error("rotation covers {got} vertices, graph has {expected}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("Euler violation in component of vertex {component}: V={vertices} E={edges} F={faces}")]
    EulerViolation {
        component: Vertex,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("outer dart {0:?} is not an edge of the graph")]
    BadOuterDart(Dart),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no non-adjacent diagonal available in a face of length {0}")]
    Untriangulable(usize),
}

/// A face as the closed walk of vertices met along its boundary darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Vertex>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    pub fn contains_dart(&self, dart: Dart) -> bool {
        self.darts().any(|d| d == dart)
    }

    /// True when no vertex repeats along the walk.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<Vertex> = self.walk.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// Rotation system with an optional designated outer face, given by one of
/// its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneEmbedding {
    rotation: Vec<Vec<Vertex>>,
    outer: Option<Dart>,
}

impl PlaneEmbedding {
    /// Checks that each rotation is a permutation of the vertex's neighbours.
    /// Planarity itself is checked by [`trace_faces`].
    pub fn new(g: &Graph, rotation: Vec<Vec<Vertex>>) -> Result<Self, EmbeddingError> {
        if rotation.len() != g.n() {
            return Err(EmbeddingError::WrongVertexCount {
                expected: g.n(),
                got: rotation.len(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbours(v) {
                return Err(EmbeddingError::RotationMismatch(v));
            }
        }
        Ok(PlaneEmbedding { rotation, outer: None })
    }

    pub fn with_outer(mut self, g: &Graph, dart: Dart) -> Result<Self, EmbeddingError> {
        if !g.has_edge(dart.0, dart.1) {
            return Err(EmbeddingError::BadOuterDart(dart));
        }
        self.outer = Some(dart);
        Ok(self)
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    /// Neighbour after `u` in the rotation at `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&w| w == u).expect("u adjacent to v");
        rot[(i + 1) % rot.len()]
    }

    /// Embedding of an induced subgraph: rotations filtered to surviving
    /// neighbours and relabelled. The outer dart is kept when it survives.
    pub fn restrict(&self, sub: &InducedSubgraph) -> PlaneEmbedding {
        let rotation = sub
            .backward
            .iter()
            .map(|&v| self.rotation[v].iter().filter_map(|&w| sub.forward[w]).collect())
            .collect();
        let outer = self.outer.and_then(|(u, v)| Some((sub.forward[u]?, sub.forward[v]?)));
        PlaneEmbedding { rotation, outer }
    }

    /// Embedding of a spanning subgraph `sub` of the embedded graph: each
    /// rotation keeps only the edges present in `sub`.
    pub fn spanning(&self, sub: &Graph) -> PlaneEmbedding {
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, rot)| rot.iter().copied().filter(|&w| sub.has_edge(v, w)).collect())
            .collect();
        let outer = self.outer.filter(|&(u, v)| sub.has_edge(u, v));
        PlaneEmbedding { rotation, outer }
    }

    /// Index of the outer face in `faces`: the face holding the outer dart, or
    /// failing that the longest face (earliest on ties).
    pub fn outer_face_index(&self, faces: &[Face]) -> Option<usize> {
        if let Some(dart) = self.outer {
            if let Some(i) = faces.iter().position(|f| f.contains_dart(dart)) {
                return Some(i);
            }
        }
        let mut best: Option<usize> = None;
        for (i, f) in faces.iter().enumerate() {
            if best.is_none_or(|b| f.len() > faces[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    fn insert_after(&mut self, v: Vertex, anchor: Vertex, w: Vertex) {
        let rot = &mut self.rotation[v];
        let i = rot.iter().position(|&x| x == anchor).expect("anchor in rotation");
        rot.insert(i + 1, w);
    }

    fn insert_before(&mut self, v: Vertex, anchor: Vertex, w: Vertex) {
        let rot = &mut self.rotation[v];
        let i = rot.iter().position(|&x| x == anchor).expect("anchor in rotation");
        rot.insert(i, w);
    }
}

/// All face walks of the rotation system, in order of their first dart
/// (vertex-major, rotation order). Isolated vertices have no darts and
/// produce no walk.
pub fn faces(g: &Graph, emb: &PlaneEmbedding) -> Vec<Face> {
    let n = g.n();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + emb.rotation[v].len();
    }
    // sorted-neighbour index → rotation index, per vertex
    let rot_index: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.neighbours(v)
                .iter()
                .map(|w| emb.rotation[v].iter().position(|x| x == w).expect("valid rotation"))
                .collect()
        })
        .collect();
    let rotation_pos = |v: Vertex, u: Vertex| -> usize {
        let k = g.neighbours(v).binary_search(&u).expect("adjacent");
        rot_index[v][k]
    };
    let mut used = vec![false; offset[n]];
    let mut out = Vec::new();
    for v in 0..n {
        for i in 0..emb.rotation[v].len() {
            if used[offset[v] + i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut tail, mut idx) = (v, i);
            while !used[offset[tail] + idx] {
                used[offset[tail] + idx] = true;
                walk.push(tail);
                let head = emb.rotation[tail][idx];
                let back = rotation_pos(head, tail);
                let next = (back + 1) % emb.rotation[head].len();
                tail = head;
                idx = next;
            }
            out.push(Face { walk });
        }
    }
    out
}

/// Traces faces and validates the embedding with Euler's formula on every
/// connected component.
pub fn trace_faces(g: &Graph, emb: &PlaneEmbedding) -> Result<Vec<Face>, EmbeddingError> {
    if emb.rotation.len() != g.n() {
        return Err(EmbeddingError::WrongVertexCount {
            expected: g.n(),
            got: emb.rotation.len(),
        });
    }
    for v in 0..g.n() {
        if emb.rotation[v].len() != g.degree(v) || emb.rotation[v].iter().any(|&w| !g.has_edge(v, w)) {
            return Err(EmbeddingError::RotationMismatch(v));
        }
    }
    let fs = faces(g, emb);
    let comps = g.components();
    let mut comp_of = vec![0usize; g.n()];
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let mut face_count = vec![0usize; comps.len()];
    for f in &fs {
        face_count[comp_of[f.walk[0]]] += 1;
    }
    for (c, vs) in comps.iter().enumerate() {
        let vertices = vs.len();
        let edges: usize = vs.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let faces = if edges == 0 { 1 } else { face_count[c] };
        if vertices + faces != edges + 2 {
            return Err(EmbeddingError::EulerViolation {
                component: vs[0],
                vertices,
                edges,
                faces,
            });
        }
    }
    Ok(fs)
}

/// Result of [`triangulate`].
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub graph: Graph,
    pub embedding: PlaneEmbedding,
    /// Added edges `(u, v)` with `u < v`, in insertion order.
    pub added: Vec<(Vertex, Vertex)>,
}

/// Adds edges until every inner face is a triangle and the outer face
/// boundary is a simple cycle. Diagonals are chosen lowest-index first.
/// Graphs on at most two vertices are returned unchanged.
pub fn triangulate(g: &Graph, emb: &PlaneEmbedding) -> Result<Triangulation, EmbeddingError> {
    if !g.is_connected() {
        return Err(GraphError::NotConnected.into());
    }
    let fs = trace_faces(g, emb)?;
    let mut graph = g.clone();
    let mut embedding = emb.clone();
    let mut added = Vec::new();
    if g.n() <= 2 {
        return Ok(Triangulation {
            graph,
            embedding,
            added,
        });
    }
    let outer_idx = emb
        .outer_face_index(&fs)
        .expect("connected graph with an edge has a face");
    for (i, face) in fs.iter().enumerate() {
        if i == outer_idx {
            continue;
        }
        let mut walk = face.walk.clone();
        while walk.len() > 3 {
            let i = best_diagonal(&graph, &walk, |_| true).ok_or(EmbeddingError::Untriangulable(walk.len()))?;
            cut_ear(&mut graph, &mut embedding, &mut added, &mut walk, i);
        }
    }
    let mut walk = fs[outer_idx].walk.clone();
    loop {
        let repeated = |i: usize| walk.iter().filter(|&&x| x == walk[i]).count() > 1;
        if !(0..walk.len()).any(repeated) {
            break;
        }
        let i = best_diagonal(&graph, &walk, repeated).ok_or(EmbeddingError::Untriangulable(walk.len()))?;
        cut_ear(&mut graph, &mut embedding, &mut added, &mut walk, i);
    }
    embedding.outer = Some((walk[0], walk[1]));
    Ok(Triangulation {
        graph,
        embedding,
        added,
    })
}

/// Position `i` of the walk whose neighbours `walk[i-1]`, `walk[i+1]` are
/// distinct and non-adjacent, minimising the sorted diagonal, then `i`.
fn best_diagonal(g: &Graph, walk: &[Vertex], allowed: impl Fn(usize) -> bool) -> Option<usize> {
    let k = walk.len();
    let mut best: Option<((Vertex, Vertex), usize)> = None;
    for i in 0..k {
        if !allowed(i) {
            continue;
        }
        let a = walk[(i + k - 1) % k];
        let b = walk[(i + 1) % k];
        if a == b || g.has_edge(a, b) {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if best.is_none_or(|(bk, _)| key < bk) {
            best = Some((key, i));
        }
    }
    best.map(|(_, i)| i)
}

/// Adds the diagonal across the angle at `walk[i]`, splitting off the
/// triangle `walk[i-1], walk[i], walk[i+1]` and removing `walk[i]` from the
/// remaining face walk.
fn cut_ear(
    g: &mut Graph,
    emb: &mut PlaneEmbedding,
    added: &mut Vec<(Vertex, Vertex)>,
    walk: &mut Vec<Vertex>,
    i: usize,
) {
    let k = walk.len();
    let a = walk[(i + k - 1) % k];
    let w = walk[i];
    let b = walk[(i + 1) % k];
    g.add_edge(a, b).expect("diagonal checked non-adjacent");
    emb.insert_before(a, w, b);
    emb.insert_after(b, w, a);
    added.push((a.min(b), a.max(b)));
    walk.remove(i);
}

/// Searches all rotation systems of a small graph for a plane one. Gives up
/// (returning `None`) after `max_tries` candidates or when none exists.
pub fn exhaustive_embedding(g: &Graph, max_tries: usize) -> Option<PlaneEmbedding> {
    let n = g.n();
    // For each vertex the first neighbour stays fixed; permute the rest.
    let perms: Vec<Vec<Vec<Vertex>>> = (0..n)
        .map(|v| {
            let ns = g.neighbours(v);
            if ns.len() <= 2 {
                return vec![ns.to_vec()];
            }
            let mut out = Vec::new();
            permutations(&ns[1..], &mut |p| {
                let mut rot = vec![ns[0]];
                rot.extend_from_slice(p);
                out.push(rot);
            });
            out
        })
        .collect();
    let mut choice = vec![0usize; n];
    for _ in 0..max_tries {
        let rotation = (0..n).map(|v| perms[v][choice[v]].clone()).collect();
        let emb = PlaneEmbedding { rotation, outer: None };
        if trace_faces(g, &emb).is_ok() {
            return Some(emb);
        }
        let mut v = 0;
        loop {
            if v == n {
                return None;
            }
            choice[v] += 1;
            if choice[v] < perms[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
    None
}

fn permutations(items: &[Vertex], visit: &mut impl FnMut(&[Vertex])) {
    fn rec(items: &mut Vec<Vertex>, k: usize, visit: &mut impl FnMut(&[Vertex])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, visit);
            items.swap(k, i);
        }
    }
    let mut items = items.to_vec();
    rec(&mut items, 0, visit);
}
