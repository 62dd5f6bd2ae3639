//! Constructive 5-list-colouring of plane graphs.
//!
//! The solver works on near-triangulations: plane graphs whose outer boundary
//! is a cycle `C` and whose inner faces are triangles. Two adjacent vertices
//! `p, q` of `C` are precoloured with distinct colours, every other vertex of
//! `C` has at least three colours and every inner vertex at least five. Such
//! an instance is always colourable, and the colouring is built by
//! decomposing it:
//!
//! * If `C` has a chord, the chord cuts the disc in two. The side whose
//!   boundary contains `pq` is coloured first; the other side is then an
//!   instance of its own with the chord's ends as its precoloured pair.
//! * Otherwise let `x` be the neighbour of `q` on `C` other than `p`, and `y`
//!   the other neighbour of `x` on `C`. Reserve the two lowest colours of
//!   `L(x) − f(q)`, remove them from the inner neighbours of `x`, and colour
//!   `G − x`, whose outer cycle runs through those neighbours. Afterwards one
//!   reserved colour differs from `f(y)`, and `x` takes it.
//!
//! [`list_colour_planar_one_precoloured`] reduces the case of a single
//! precoloured vertex with 5-lists everywhere else to this form by
//! triangulating each component and precolouring an outer neighbour.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::colour::{Colour, ColourSet, Colouring};
use crate::embedding::{trace_faces, triangulate, EmbeddingError, PlaneEmbedding};
use crate::graph::{Graph, Vertex};
use crate::lists::ListAssignment;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThomassenError {
    #[error("vertex {vertex} has {size} colours, needs at least {needed}")]
    ListTooSmall { vertex: Vertex, size: usize, needed: usize },
    #[error("not a near-triangulation: {0}")]
    NotNearTriangulation(&'static str),
    #[error("precoloured vertices {0} and {1} are not consecutive on the outer cycle")]
    PairNotAdjacent(Vertex, Vertex),
    #[error("precoloured vertices share colour {0}")]
    PairSameColour(Colour),
    #[error("colour {colour} outside 1..={ell}")]
    ColourOutOfRange { colour: Colour, ell: u8 },
    #[error("vertex {0} out of range")]
    UnknownVertex(Vertex),
    #[error("embedding does not fit the graph: {0}")]
    NoEmbedding(EmbeddingError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// A near-triangulation with a precoloured adjacent pair on its outer cycle.
///
/// `outer[0]` and `outer[1]` are the precoloured vertices; the cycle is
/// listed in boundary order from there.
#[derive(Clone, Debug)]
pub struct PrecolouredInstance {
    graph: Graph,
    embedding: PlaneEmbedding,
    outer: Vec<Vertex>,
    pair_colours: [Colour; 2],
    lists: ListAssignment,
}

impl PrecolouredInstance {
    /// Validates the instance. `outer` may be given in either direction and
    /// starting anywhere; it is normalised to begin with `first.0, second.0`.
    pub fn new(
        graph: Graph,
        embedding: PlaneEmbedding,
        outer: Vec<Vertex>,
        first: (Vertex, Colour),
        second: (Vertex, Colour),
        lists: ListAssignment,
    ) -> Result<Self, ThomassenError> {
        let n = graph.n();
        let ell = lists.ell();
        for v in [first.0, second.0] {
            if v >= n {
                return Err(ThomassenError::UnknownVertex(v));
            }
        }
        for c in [first.1, second.1] {
            if c == 0 || c > ell {
                return Err(ThomassenError::ColourOutOfRange { colour: c, ell });
            }
        }
        if first.1 == second.1 {
            return Err(ThomassenError::PairSameColour(first.1));
        }
        if lists.len() != n {
            return Err(ThomassenError::NotNearTriangulation(
                "list count differs from vertex count",
            ));
        }
        let outer =
            normalise_cycle(&outer, first.0, second.0).ok_or(ThomassenError::PairNotAdjacent(first.0, second.0))?;
        if !graph.has_edge(first.0, second.0) {
            return Err(ThomassenError::PairNotAdjacent(first.0, second.0));
        }
        check_near_triangulation(&graph, &embedding, &outer)?;
        let mut on_outer = vec![false; n];
        for &v in &outer {
            on_outer[v] = true;
        }
        for (v, &outer_v) in on_outer.iter().enumerate() {
            if v == first.0 || v == second.0 {
                continue;
            }
            let needed = if outer_v { 3 } else { 5 };
            let size = lists.get(v).len();
            if size < needed {
                return Err(ThomassenError::ListTooSmall {
                    vertex: v,
                    size,
                    needed,
                });
            }
        }
        Ok(PrecolouredInstance {
            graph,
            embedding,
            outer,
            pair_colours: [first.1, second.1],
            lists,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn outer_cycle(&self) -> &[Vertex] {
        &self.outer
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    /// Precoloured pair with colours.
    pub fn pair(&self) -> [(Vertex, Colour); 2] {
        [
            (self.outer[0], self.pair_colours[0]),
            (self.outer[1], self.pair_colours[1]),
        ]
    }
}

/// Rotates (and if needed reverses) `cycle` so that it starts `p, q`.
fn normalise_cycle(cycle: &[Vertex], p: Vertex, q: Vertex) -> Option<Vec<Vertex>> {
    let k = cycle.len();
    let i = cycle.iter().position(|&v| v == p)?;
    let mut out: Vec<Vertex> = (0..k).map(|j| cycle[(i + j) % k]).collect();
    if k >= 2 && out[1] != q {
        out[1..].reverse();
    }
    (k >= 2 && out[1] == q).then_some(out)
}

fn check_near_triangulation(g: &Graph, emb: &PlaneEmbedding, outer: &[Vertex]) -> Result<(), ThomassenError> {
    use ThomassenError::NotNearTriangulation as Bad;
    let faces = trace_faces(g, emb)?;
    if !g.is_connected() {
        return Err(Bad("graph is disconnected"));
    }
    let mut sorted = outer.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != outer.len() {
        return Err(Bad("outer cycle repeats a vertex"));
    }
    if g.n() == 2 {
        return if outer.len() == 2 {
            Ok(())
        } else {
            Err(Bad("outer cycle must be the edge"))
        };
    }
    if outer.len() < 3 {
        return Err(Bad("outer cycle shorter than 3"));
    }
    let k = outer.len();
    let forward: Vec<_> = (0..k).map(|i| (outer[i], outer[(i + 1) % k])).collect();
    let matches = |reverse: bool| {
        faces.iter().position(|f| {
            f.len() == k
                && forward.iter().all(|&(a, b)| {
                    if reverse {
                        f.contains_dart((b, a))
                    } else {
                        f.contains_dart((a, b))
                    }
                })
        })
    };
    let outer_idx = matches(false)
        .or_else(|| matches(true))
        .ok_or(Bad("outer cycle is not a face"))?;
    if faces.iter().enumerate().any(|(i, f)| i != outer_idx && f.len() != 3) {
        return Err(Bad("inner face is not a triangle"));
    }
    Ok(())
}

/// Work counters from one solver run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ThomassenStats {
    /// Vertex and adjacency visits summed over all subproblems.
    pub steps: u64,
    /// Chord splits performed.
    pub splits: u64,
    /// Outer vertices deleted.
    pub deletions: u64,
    /// Deepest nesting of pending subproblems.
    pub max_depth: usize,
}

pub fn thomassen_colour(inst: &PrecolouredInstance) -> Result<Colouring, ThomassenError> {
    thomassen_colour_with_stats(inst).map(|(f, _)| f)
}

enum Task {
    Solve {
        vertices: Vec<Vertex>,
        cycle: Vec<Vertex>,
        depth: usize,
    },
    Finish {
        x: Vertex,
        reserved: [Colour; 2],
        y: Vertex,
    },
}

pub fn thomassen_colour_with_stats(inst: &PrecolouredInstance) -> Result<(Colouring, ThomassenStats), ThomassenError> {
    use ThomassenError::NotNearTriangulation as Bad;
    let g = &inst.graph;
    let emb = &inst.embedding;
    let n = g.n();
    let mut lists: Vec<ColourSet> = inst.lists.lists().to_vec();
    let mut colour: Vec<Colour> = vec![0; n];
    let [(p, cp), (q, cq)] = inst.pair();
    colour[p] = cp;
    colour[q] = cq;

    // Per-subproblem membership, stamped with a fresh tag when it starts.
    let mut member = vec![0u32; n];
    let mut on_cycle = vec![0u32; n];
    let mut cycle_pos = vec![0usize; n];
    let mut tag = 0u32;
    let mut stats = ThomassenStats::default();

    let mut stack = vec![Task::Solve {
        vertices: (0..n).collect(),
        cycle: inst.outer.clone(),
        depth: 1,
    }];
    while let Some(task) = stack.pop() {
        let (vertices, cycle, depth) = match task {
            Task::Finish { x, reserved, y } => {
                colour[x] = if colour[y] != reserved[0] {
                    reserved[0]
                } else {
                    reserved[1]
                };
                continue;
            }
            Task::Solve { vertices, cycle, depth } => (vertices, cycle, depth),
        };
        stats.max_depth = stats.max_depth.max(depth);
        stats.steps += vertices.len() as u64;
        let k = cycle.len();
        if k == 2 {
            if vertices.len() != 2 {
                return Err(Bad("digon boundary encloses vertices"));
            }
            continue;
        }
        tag += 1;
        for &v in &vertices {
            member[v] = tag;
        }
        for (i, &v) in cycle.iter().enumerate() {
            on_cycle[v] = tag;
            cycle_pos[v] = i;
        }

        if let Some((i, j)) = find_chord(g, &cycle, &member, &on_cycle, &cycle_pos, tag, &mut stats.steps) {
            stats.splits += 1;
            // Flood the interior on the cycle[i..=j] side from the boundary
            // path strictly between the chord's ends.
            let current = tag;
            tag += 1;
            let side = tag;
            let mut queue: Vec<Vertex> = cycle[i + 1..j].to_vec();
            for &v in &queue {
                member[v] = side;
            }
            let mut verts_a: Vec<Vertex> = cycle[i..=j].to_vec();
            while let Some(u) = queue.pop() {
                for &w in g.neighbours(u) {
                    stats.steps += 1;
                    if member[w] == current && on_cycle[w] != current {
                        member[w] = side;
                        verts_a.push(w);
                        queue.push(w);
                    }
                }
            }
            let verts_b: Vec<Vertex> = vertices.iter().copied().filter(|&v| member[v] != side).collect();
            let cycle_a = cycle[i..=j].to_vec();
            let (pair_side, other) = if i == 0 {
                // A = c0..cj holds p, q; B closes through the chord c0–cj.
                let mut b = vec![cycle[0]];
                b.extend_from_slice(&cycle[j..]);
                ((verts_a, cycle_a), (verts_b, b))
            } else {
                // B = c0..ci, cj..c_{k-1} holds p, q; A is entered through cj, ci.
                let mut pair_cycle = cycle[..=i].to_vec();
                pair_cycle.extend_from_slice(&cycle[j..]);
                let mut a = vec![cycle[j]];
                a.extend_from_slice(&cycle[i..j]);
                ((verts_b, pair_cycle), (verts_a, a))
            };
            stack.push(Task::Solve {
                vertices: other.0,
                cycle: other.1,
                depth: depth + 1,
            });
            stack.push(Task::Solve {
                vertices: pair_side.0,
                cycle: pair_side.1,
                depth: depth + 1,
            });
            continue;
        }

        stats.deletions += 1;
        let (p, q, x) = (cycle[0], cycle[1], cycle[2]);
        let y = cycle[3 % k];
        let path = inner_fan(emb, x, q, y, &member, tag, &mut stats.steps).ok_or(Bad("deleted vertex has no fan"))?;
        if path.iter().any(|&u| on_cycle[u] == tag) {
            return Err(Bad("outer cycle has an undetected chord"));
        }
        if path.is_empty() && (k > 3 || vertices.len() != 3) {
            return Err(Bad("outer vertex of degree two"));
        }
        let mut avail = lists[x].without(colour[q]).iter();
        let (a, b) = match (avail.next(), avail.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(ThomassenError::ListTooSmall {
                    vertex: x,
                    size: lists[x].len(),
                    needed: 3,
                });
            }
        };
        let reserved = ColourSet::from_iter([a, b]);
        for &u in &path {
            lists[u] = lists[u].difference(reserved);
        }
        let mut next_cycle = Vec::with_capacity(k - 1 + path.len());
        next_cycle.extend_from_slice(&[p, q]);
        next_cycle.extend_from_slice(&path);
        next_cycle.extend_from_slice(&cycle[3.min(k)..]);
        let next_vertices: Vec<Vertex> = vertices.into_iter().filter(|&v| v != x).collect();
        stack.push(Task::Finish { x, reserved: [a, b], y });
        stack.push(Task::Solve {
            vertices: next_vertices,
            cycle: next_cycle,
            depth: depth + 1,
        });
    }
    Ok((Colouring::new(colour), stats))
}

/// Chord `(i, j)` of the current outer cycle with the smallest `i`, then
/// smallest `j`.
fn find_chord(
    g: &Graph,
    cycle: &[Vertex],
    member: &[u32],
    on_cycle: &[u32],
    cycle_pos: &[usize],
    tag: u32,
    steps: &mut u64,
) -> Option<(usize, usize)> {
    let k = cycle.len();
    for (i, &v) in cycle.iter().enumerate() {
        let mut best: Option<usize> = None;
        for &w in g.neighbours(v) {
            *steps += 1;
            if member[w] != tag || on_cycle[w] != tag {
                continue;
            }
            let j = cycle_pos[w];
            if j > i + 1 && !(i == 0 && j == k - 1) {
                best = Some(best.map_or(j, |b| b.min(j)));
            }
        }
        if let Some(j) = best {
            return Some((i, j));
        }
    }
    None
}

/// Neighbours of `x` inside the current subproblem strictly between `q` and
/// `y` in the rotation at `x`, ordered from `q` towards `y`.
fn inner_fan(
    emb: &PlaneEmbedding,
    x: Vertex,
    q: Vertex,
    y: Vertex,
    member: &[u32],
    tag: u32,
    steps: &mut u64,
) -> Option<Vec<Vertex>> {
    let rot: Vec<Vertex> = emb.rotation(x).iter().copied().filter(|&w| member[w] == tag).collect();
    *steps += emb.rotation(x).len() as u64;
    let t = rot.len();
    let qi = rot.iter().position(|&w| w == q)?;
    let from_q: Vec<Vertex> = (0..t).map(|s| rot[(qi + s) % t]).collect();
    let yi = from_q.iter().position(|&w| w == y)?;
    if yi == t - 1 {
        Some(from_q[1..yi].to_vec())
    } else if yi == 1 {
        let mut path = from_q[2..].to_vec();
        path.reverse();
        Some(path)
    } else {
        None
    }
}

/// Colours a plane graph in which `v` is fixed to `c` and every other vertex
/// has at least five colours.
///
/// Each component is handled separately. In the component of `v` the face
/// before `v`'s first rotation edge becomes the outer face; the component is
/// triangulated, the lower-indexed outer neighbour `u` of `v` is precoloured
/// with the lowest colour of `L(u) − c`, and [`thomassen_colour`] finishes.
/// Components without `v` are anchored at their lowest vertex with its lowest
/// colour. Triangulation edges are then dropped and each vertex other than
/// `v`, in index order, moves to its lowest colour admissible in `g`; the
/// result stays a proper `L`-colouring throughout.
pub fn list_colour_planar_one_precoloured(
    g: &Graph,
    emb: &PlaneEmbedding,
    v: Vertex,
    c: Colour,
    lists: &ListAssignment,
) -> Result<Colouring, ThomassenError> {
    let n = g.n();
    if v >= n {
        return Err(ThomassenError::UnknownVertex(v));
    }
    if emb.n() != n {
        return Err(ThomassenError::NoEmbedding(EmbeddingError::WrongVertexCount {
            expected: n,
            got: emb.n(),
        }));
    }
    let ell = lists.ell();
    if c == 0 || c > ell {
        return Err(ThomassenError::ColourOutOfRange { colour: c, ell });
    }
    if lists.len() != n {
        return Err(ThomassenError::NotNearTriangulation(
            "list count differs from vertex count",
        ));
    }
    for u in (0..n).filter(|&u| u != v) {
        let size = lists.get(u).len();
        if size < 5 {
            return Err(ThomassenError::ListTooSmall {
                vertex: u,
                size,
                needed: 5,
            });
        }
    }
    trace_faces(g, emb).map_err(ThomassenError::NoEmbedding)?;

    let mut colour = vec![0 as Colour; n];
    for comp in g.components() {
        let (anchor, anchor_colour) = if comp.contains(&v) {
            (v, c)
        } else {
            let a = comp[0];
            (a, lists.get(a).min().expect("nonempty list"))
        };
        let sub = g.induced_subgraph(&comp).expect("component vertices exist");
        let local = |w: Vertex| sub.forward[w].expect("in component");
        let sg = &sub.graph;
        let a = local(anchor);
        if comp.len() == 1 {
            colour[anchor] = anchor_colour;
            continue;
        }
        if comp.len() == 2 {
            let other = comp[if comp[0] == anchor { 1 } else { 0 }];
            colour[anchor] = anchor_colour;
            colour[other] = lists.get(other).without(anchor_colour).min().expect("five colours");
            continue;
        }
        let sub_emb = emb.restrict(&sub);
        let first = sub_emb.rotation(a)[0];
        let sub_emb = sub_emb.with_outer(sg, (a, first))?;
        let tri = triangulate(sg, &sub_emb)?;
        let faces = trace_faces(&tri.graph, &tri.embedding)?;
        let outer_idx = tri.embedding.outer_face_index(&faces).expect("outer face");
        let walk = &faces[outer_idx].walk;
        let k = walk.len();
        let at = walk
            .iter()
            .position(|&w| w == a)
            .ok_or(ThomassenError::NotNearTriangulation("anchor left outer face"))?;
        let u = walk[(at + 1) % k].min(walk[(at + k - 1) % k]);
        let u_colour = lists
            .get(sub.backward[u])
            .without(anchor_colour)
            .min()
            .expect("five colours");
        let mut local_lists: Vec<ColourSet> = sub.backward.iter().map(|&w| lists.get(w)).collect();
        local_lists[a] = ColourSet::singleton(anchor_colour);
        local_lists[u] = ColourSet::singleton(u_colour);
        let local_lists = ListAssignment::new(local_lists, ell).expect("validated lists");
        let inst = PrecolouredInstance::new(
            tri.graph,
            tri.embedding,
            walk.clone(),
            (a, anchor_colour),
            (u, u_colour),
            local_lists,
        )?;
        let f = thomassen_colour(&inst)?;
        for (i, &w) in sub.backward.iter().enumerate() {
            colour[w] = f.get(i);
        }
    }
    // Triangulation edges no longer constrain anything: move every free
    // vertex to its lowest colour admissible in `g`.
    for u in (0..n).filter(|&u| u != v) {
        let mut free = lists.get(u);
        for &w in g.neighbours(u) {
            free.remove(colour[w]);
        }
        if let Some(low) = free.min() {
            colour[u] = low;
        }
    }
    Ok(Colouring::new(colour))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lists::verify_list_colouring;

    fn triangle() -> (Graph, PlaneEmbedding) {
        let g = Graph::complete(3);
        let emb = PlaneEmbedding::new(&g, vec![vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
        (g, emb)
    }

    fn k4() -> (Graph, PlaneEmbedding) {
        let g = Graph::complete(4);
        let emb = PlaneEmbedding::new(&g, vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]]).unwrap();
        (g, emb)
    }

    fn lists(ls: Vec<ColourSet>, ell: u8) -> ListAssignment {
        ListAssignment::new(ls, ell).unwrap()
    }

    #[test]
    fn triangle_third_vertex_forced() {
        let (g, emb) = triangle();
        let l = lists(
            vec![ColourSet::singleton(1), ColourSet::singleton(2), ColourSet::universe(3)],
            3,
        );
        let inst = PrecolouredInstance::new(g, emb, vec![0, 1, 2], (0, 1), (1, 2), l).unwrap();
        assert_eq!(thomassen_colour(&inst).unwrap().as_slice(), [1, 2, 3]);
    }

    #[test]
    fn k4_lowest_colours() {
        let (g, emb) = k4();
        let l = lists(vec![ColourSet::universe(5); 4], 5);
        let faces = trace_faces(&g, &emb).unwrap();
        let outer = faces.iter().find(|f| !f.walk.contains(&3)).unwrap().walk.clone();
        let inst = PrecolouredInstance::new(g.clone(), emb, outer, (0, 1), (1, 2), l.clone()).unwrap();
        let f = thomassen_colour(&inst).unwrap();
        assert_eq!(f.as_slice(), [1, 2, 3, 4]);
        assert!(verify_list_colouring(&g, &l, &f).is_valid());
    }

    #[test]
    fn rejects_bad_instances() {
        let (g, emb) = k4();
        let faces = trace_faces(&g, &emb).unwrap();
        let outer = faces.iter().find(|f| !f.walk.contains(&3)).unwrap().walk.clone();
        let small = lists(
            vec![
                ColourSet::universe(5),
                ColourSet::universe(5),
                ColourSet::universe(5),
                ColourSet::universe(4),
            ],
            5,
        );
        assert_eq!(
            PrecolouredInstance::new(g.clone(), emb.clone(), outer.clone(), (0, 1), (1, 2), small).unwrap_err(),
            ThomassenError::ListTooSmall {
                vertex: 3,
                size: 4,
                needed: 5
            }
        );
        let full = lists(vec![ColourSet::universe(5); 4], 5);
        assert_eq!(
            PrecolouredInstance::new(g.clone(), emb.clone(), outer.clone(), (0, 1), (1, 1), full.clone()).unwrap_err(),
            ThomassenError::PairSameColour(1)
        );
        assert_eq!(
            PrecolouredInstance::new(g.clone(), emb.clone(), outer, (0, 1), (3, 2), full.clone()).unwrap_err(),
            ThomassenError::PairNotAdjacent(0, 3)
        );
        // A face that is not the outer one leaves a non-triangle... use C4.
        let c4 = Graph::cycle(4);
        let e4 = PlaneEmbedding::new(&c4, vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]).unwrap();
        assert!(matches!(
            PrecolouredInstance::new(
                c4,
                e4,
                vec![0, 1, 2, 3],
                (0, 1),
                (1, 2),
                lists(vec![ColourSet::universe(5); 4], 5)
            ),
            Err(ThomassenError::NotNearTriangulation(_))
        ));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1);
        let emb = PlaneEmbedding::new(&g, vec![vec![]]).unwrap();
        let f = list_colour_planar_one_precoloured(&g, &emb, 0, 7, &ListAssignment::full(1, 10)).unwrap();
        assert_eq!(f.as_slice(), [7]);
    }

    #[test]
    fn star_leaves_take_lowest() {
        let mut g = Graph::new(7);
        for leaf in 1..7 {
            g.add_edge(0, leaf).unwrap();
        }
        let emb = PlaneEmbedding::new(
            &g,
            vec![(1..7).collect(), vec![0], vec![0], vec![0], vec![0], vec![0], vec![0]],
        )
        .unwrap();
        let mut ls = vec![ColourSet::universe(5); 7];
        ls[0] = ColourSet::singleton(2);
        let l = lists(ls, 5);
        let f = list_colour_planar_one_precoloured(&g, &emb, 0, 2, &l).unwrap();
        assert_eq!(f.as_slice(), [2, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn one_precoloured_rejects_short_lists() {
        let (g, emb) = triangle();
        let l = ListAssignment::full(3, 4);
        assert_eq!(
            list_colour_planar_one_precoloured(&g, &emb, 0, 1, &l).unwrap_err(),
            ThomassenError::ListTooSmall {
                vertex: 1,
                size: 4,
                needed: 5
            }
        );
    }
}
