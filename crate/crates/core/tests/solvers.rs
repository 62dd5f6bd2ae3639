use rand::seq::SliceRandom;
use rand::Rng;
use recolor_core::backtrack::backtrack_list_colour;
use recolor_core::embedding::{exhaustive_embedding, trace_faces};
use recolor_core::generate::{near_triangulation, random_lists, rng, sparse_planar, stacked_triangulation};
use recolor_core::thomassen::{
    list_colour_planar_one_precoloured, thomassen_colour, thomassen_colour_with_stats, PrecolouredInstance,
};
use recolor_core::{verify_list_colouring, ColourSet, Graph, ListAssignment};

/// Random precoloured instance on a near-triangulation with 5-lists from 1..=10.
fn instance(n: usize, seed: u64) -> PrecolouredInstance {
    let (g, emb, outer) = near_triangulation(n, seed).unwrap();
    let mut r = rng(seed.wrapping_mul(31).wrapping_add(7));
    let mut lists = random_lists(g.n(), 5, 10, &mut r);
    let i = r.gen_range(0..outer.len());
    let (p, q) = (outer[i], outer[(i + 1) % outer.len()]);
    let mut colours: Vec<u8> = (1..=10).collect();
    colours.shuffle(&mut r);
    lists[p] = ColourSet::singleton(colours[0]);
    lists[q] = ColourSet::singleton(colours[1]);
    PrecolouredInstance::new(
        g,
        emb,
        outer,
        (p, colours[0]),
        (q, colours[1]),
        ListAssignment::new(lists, 10).unwrap(),
    )
    .unwrap()
}

/// Exhaustive enumeration over all Π|L(v)| assignments.
fn enumerate_sat(g: &Graph, lists: &ListAssignment) -> bool {
    fn rec(g: &Graph, lists: &ListAssignment, v: usize, f: &mut Vec<u8>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in lists.get(v).iter() {
            if g.neighbours(v).iter().filter(|&&w| w < v).all(|&w| f[w] != c) {
                f.push(c);
                if rec(g, lists, v + 1, f) {
                    return true;
                }
                f.pop();
            }
        }
        false
    }
    rec(g, lists, 0, &mut Vec::new())
}

#[test]
fn thomassen_on_many_near_triangulations() {
    for seed in 0..300 {
        let n = 3 + (seed as usize * 7) % 58;
        let inst = instance(n, seed);
        let f = thomassen_colour(&inst).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let report = verify_list_colouring(inst.graph(), inst.lists(), &f);
        assert!(report.is_valid(), "seed {seed}: {report:?}");
        for (v, c) in inst.pair() {
            assert_eq!(f.get(v), c);
        }
    }
}

#[test]
fn thomassen_is_deterministic() {
    for seed in 0..20 {
        let a = thomassen_colour(&instance(40, seed)).unwrap();
        let b = thomassen_colour(&instance(40, seed)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn thomassen_work_is_quadratic() {
    let (mut splits, mut deletions) = (0, 0);
    for n in [10usize, 30, 60, 120] {
        for seed in 0..5 {
            let inst = instance(n, seed);
            let (_, stats) = thomassen_colour_with_stats(&inst).unwrap();
            splits += stats.splits;
            deletions += stats.deletions;
            assert!(stats.max_depth <= n, "depth {} > n {}", stats.max_depth, n);
            // vertices + adjacency scans per subproblem, ≤ n subproblems
            let bound = (n * n) as u64 * 8;
            assert!(stats.steps <= bound, "n={n}: {} steps > {bound}", stats.steps);
        }
    }
    assert!(splits > 0 && deletions > 0, "both branches exercised");
}

#[test]
fn oracle_agrees_on_thomassen_instances() {
    for seed in 0..60 {
        let inst = instance(5 + seed as usize % 36, 1000 + seed);
        assert!(
            backtrack_list_colour(inst.graph(), inst.lists()).is_some(),
            "seed {seed}"
        );
    }
}

#[test]
fn backtrack_matches_enumeration_on_small_planar() {
    for seed in 0..150 {
        let n = 10;
        let (g, _) = sparse_planar(n, 0.8, seed).unwrap();
        let mut r = rng(seed + 77);
        let ell = r.gen_range(3..=5);
        let lists = ListAssignment::new(random_lists(n, 3.min(ell as usize), ell, &mut r), ell).unwrap();
        assert!(lists.product() <= 1_000_000);
        let got = backtrack_list_colour(&g, &lists);
        assert_eq!(got.is_some(), enumerate_sat(&g, &lists), "seed {seed}");
        if let Some(f) = got {
            assert!(verify_list_colouring(&g, &lists, &f).is_valid());
        }
    }
}

#[test]
fn one_precoloured_on_sparse_planar_graphs() {
    for seed in 0..200 {
        let n = 1 + seed as usize % 50;
        let (g, emb) = if n >= 3 {
            sparse_planar(n, 0.3 + (seed % 7) as f64 / 10.0, seed).unwrap()
        } else {
            let g = Graph::path(n);
            let emb = exhaustive_embedding(&g, 10).unwrap();
            (g, emb)
        };
        let mut r = rng(seed ^ 0xabc);
        let v = r.gen_range(0..n);
        let c = r.gen_range(1..=10);
        let mut lists = random_lists(n, 5, 10, &mut r);
        lists[v] = ColourSet::singleton(c);
        let lists = ListAssignment::new(lists, 10).unwrap();
        let f =
            list_colour_planar_one_precoloured(&g, &emb, v, c, &lists).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(f.get(v), c);
        assert!(verify_list_colouring(&g, &lists, &f).is_valid(), "seed {seed}");
    }
}

#[test]
fn k5_minus_edge_extends_fixed_vertex() {
    let mut g = Graph::complete(5);
    g.remove_edge(3, 4);
    let emb = exhaustive_embedding(&g, 100_000).unwrap();
    let mut lists = vec![ColourSet::universe(5); 5];
    lists[0] = ColourSet::singleton(1);
    let lists = ListAssignment::new(lists, 5).unwrap();
    let f = list_colour_planar_one_precoloured(&g, &emb, 0, 1, &lists).unwrap();
    assert_eq!(f.get(0), 1);
    assert!(verify_list_colouring(&g, &lists, &f).is_valid());
    assert!(backtrack_list_colour(&g, &lists).is_some());
}

#[test]
fn one_precoloured_on_stacked_triangulations() {
    for seed in 0..30 {
        let (g, emb) = stacked_triangulation(80, seed).unwrap();
        trace_faces(&g, &emb).unwrap();
        let lists = ListAssignment::full(80, 10);
        let f = list_colour_planar_one_precoloured(&g, &emb, (seed as usize) % 80, 3, &lists).unwrap();
        assert!(f.is_proper(&g));
    }
}
