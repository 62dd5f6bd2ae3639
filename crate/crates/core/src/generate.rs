//! Seeded instance generators: stacked triangulations, girth-5 planar graphs,
//! sparse planar graphs and random proper colourings.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::colour::{ColourSet, Colouring};
use crate::degeneracy::degeneracy_ordering;
use crate::embedding::PlaneEmbedding;
use crate::graph::{Graph, Vertex};

/// The generator used throughout; fixed so that seeds are portable.
pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("need at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
}

/// Stacked (Apollonian) triangulation: start from a triangle and repeatedly
/// insert a vertex into a uniformly chosen inner triangle, joining it to the
/// three corners. The outer triangle is `0, 1, 2`.
pub fn stacked_triangulation(n: usize, seed: u64) -> Result<(Graph, PlaneEmbedding), GenerateError> {
    if n < 3 {
        return Err(GenerateError::TooSmall { n, min: 3 });
    }
    let mut rng = rng(seed);
    let mut g = Graph::complete(3);
    let mut rot: Vec<Vec<Vertex>> = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
    // Faces are oriented so that after dart a→b comes b→c.
    let mut inner: Vec<[Vertex; 3]> = vec![[0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..inner.len());
        let [a, b, c] = inner[i];
        let mut grown = Graph::new(v + 1);
        for (x, y) in g.edges() {
            grown.add_edge(x, y).expect("copy");
        }
        g = grown;
        for w in [a, b, c] {
            g.add_edge(v, w).expect("new vertex");
        }
        insert_after(&mut rot[b], a, v);
        insert_after(&mut rot[c], b, v);
        insert_after(&mut rot[a], c, v);
        rot.push(vec![b, a, c]);
        inner[i] = [a, b, v];
        inner.push([b, c, v]);
        inner.push([c, a, v]);
    }
    let emb = PlaneEmbedding::new(&g, rot)
        .and_then(|e| e.with_outer(&g, (0, 2)))
        .expect("rotation built alongside the graph");
    Ok((g, emb))
}

fn insert_after(rot: &mut Vec<Vertex>, anchor: Vertex, w: Vertex) {
    let i = rot.iter().position(|&x| x == anchor).expect("anchor present");
    rot.insert(i + 1, w);
}

/// Near-triangulation on `n` vertices: a stacked triangulation on `n + 1`
/// vertices with one random vertex removed. The removed vertex's neighbours,
/// in rotation order, form the outer cycle (returned alongside).
pub fn near_triangulation(n: usize, seed: u64) -> Result<(Graph, PlaneEmbedding, Vec<Vertex>), GenerateError> {
    if n < 3 {
        return Err(GenerateError::TooSmall { n, min: 3 });
    }
    let (full, emb) = stacked_triangulation(n + 1, seed)?;
    let z = rng(seed.rotate_left(17) ^ 0x5851_f42d).gen_range(0..=n);
    let keep: Vec<Vertex> = (0..=n).filter(|&v| v != z).collect();
    let sub = full.induced_subgraph(&keep).expect("vertices exist");
    let outer: Vec<Vertex> = emb.rotation(z).iter().map(|&w| sub.forward[w].expect("kept")).collect();
    let sub_emb = emb.restrict(&sub);
    let sub_emb = sub_emb
        .with_outer(&sub.graph, (outer[0], outer[1]))
        .expect("consecutive link vertices are adjacent");
    Ok((sub.graph, sub_emb, outer))
}

/// Connected plane graph of girth at least 5: the edges of a stacked
/// triangulation are visited in random order and kept unless they would
/// close a cycle shorter than 5.
pub fn girth5_planar(n: usize, seed: u64) -> Result<(Graph, PlaneEmbedding), GenerateError> {
    let (full, emb) = stacked_triangulation(n, seed)?;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut edges: Vec<(Vertex, Vertex)> = full.edges().collect();
    edges.shuffle(&mut rng);
    let mut g = Graph::new(n);
    for (u, v) in edges {
        if distance_at_least(&g, u, v, 4) {
            g.add_edge(u, v).expect("edge of the triangulation");
        }
    }
    let sub = emb.spanning(&g);
    Ok((g, sub))
}

/// Plane graph obtained from a stacked triangulation by keeping each edge
/// independently with probability `keep`.
pub fn sparse_planar(n: usize, keep: f64, seed: u64) -> Result<(Graph, PlaneEmbedding), GenerateError> {
    let (full, emb) = stacked_triangulation(n, seed)?;
    let mut rng = rng(seed.wrapping_add(1));
    let mut g = Graph::new(n);
    for (u, v) in full.edges() {
        if rng.gen_bool(keep) {
            g.add_edge(u, v).expect("edge of the triangulation");
        }
    }
    let sub = emb.spanning(&g);
    Ok((g, sub))
}

/// All connected graphs on exactly `n` vertices up to isomorphism, each in
/// its lexicographically smallest labelling. Brute force over edge subsets
/// and permutations; intended for `n ≤ 6`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut perms = Vec::new();
    let mut current: Vec<Vertex> = (0..n).collect();
    heap_permutations(n, &mut current, &mut perms);
    let index = |u: Vertex, v: Vertex| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).expect("pair");
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|perm: &Vec<Vertex>| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &(u, v))| acc | 1 << index(perm[u], perm[v]))
            })
            .min()
            .unwrap_or(mask);
        if canon != mask || !seen.insert(canon) {
            continue;
        }
        let mut g = Graph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).expect("distinct pairs");
            }
        }
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn heap_permutations(k: usize, items: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, items, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

fn distance_at_least(g: &Graph, s: Vertex, t: Vertex, bound: usize) -> bool {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if dist[u] + 1 >= bound {
            continue;
        }
        for &w in g.neighbours(u) {
            if dist[w] == usize::MAX {
                if w == t {
                    return false;
                }
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Uniform choices along a degeneracy ordering: each vertex takes a random
/// colour of `1..=ell` unused by its earlier neighbours. `None` when some
/// vertex runs out of colours (only possible for `ell` ≤ degeneracy).
pub fn random_colouring<R: Rng + ?Sized>(g: &Graph, ell: u8, rng: &mut R) -> Option<Colouring> {
    let order = degeneracy_ordering(g);
    let mut colours = vec![0u8; g.n()];
    for &v in order.order() {
        let mut free = ColourSet::universe(ell);
        for &w in g.neighbours(v) {
            free.remove(colours[w]);
        }
        let options: Vec<u8> = free.iter().collect();
        colours[v] = *options.choose(rng)?;
    }
    Some(Colouring::new(colours))
}

/// Random list assignment: each vertex gets `size` distinct colours drawn
/// uniformly from `1..=ell`.
pub fn random_lists<R: Rng + ?Sized>(n: usize, size: usize, ell: u8, rng: &mut R) -> Vec<ColourSet> {
    let universe: Vec<u8> = (1..=ell).collect();
    (0..n)
        .map(|_| universe.choose_multiple(rng, size).copied().collect())
        .collect()
}
