use proptest::prelude::*;
use recolor::formats::{
    parse_colouring, parse_graph, parse_sequence, serialize_colouring, serialize_graph, serialize_sequence,
};
use recolor::verify_sequence_text;
use recolor_core::generate::{random_colouring, rng, sparse_planar, stacked_triangulation};
use recolor_core::{recolour, Colouring, Graph, RecolourStep, Solver};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph_round_trip(g in graph_strategy()) {
        let text = serialize_graph(&g, None);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert!(parsed.embedding.is_none());
        prop_assert_eq!(serialize_graph(&parsed.graph, None), text);
    }

    #[test]
    fn embedded_round_trip(n in 3usize..40, seed in any::<u64>()) {
        let (g, emb) = sparse_planar(n, 0.7, seed).unwrap();
        let text = serialize_graph(&g, Some(&emb));
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        let pe = parsed.embedding.unwrap();
        prop_assert_eq!(pe.rotations(), emb.rotations());
    }

    #[test]
    fn colouring_round_trip(cs in proptest::collection::vec(1u8..=64, 0..50)) {
        let f = Colouring::new(cs);
        prop_assert_eq!(parse_colouring(&serialize_colouring(&f)).unwrap(), f);
    }

    #[test]
    fn sequence_round_trip(steps in proptest::collection::vec((0usize..30, 1u8..=10, 1u8..=10), 0..60)) {
        let steps: Vec<RecolourStep> = steps.into_iter().map(|(vertex, old, new)| RecolourStep { vertex, old, new }).collect();
        let text = serialize_sequence(30, 10, &steps);
        let parsed = parse_sequence(&text).unwrap();
        prop_assert_eq!(parsed.steps, steps);
        prop_assert_eq!((parsed.n, parsed.ell), (30, 10));
    }
}

#[test]
fn thousand_edge_header_matches_line_count() {
    let (g, emb) = stacked_triangulation(336, 5).unwrap();
    let text = serialize_graph(&g, Some(&emb));
    let edge_lines = text.lines().filter(|l| l.starts_with("e ")).count();
    assert_eq!(edge_lines, 1002);
    assert!(text.starts_with("p 336 1002\n"));
    assert_eq!(parse_graph(&text).unwrap().graph.m(), edge_lines);
}

fn tokens(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// Every single-bit flip of a valid sequence file either leaves the token
/// stream unchanged or is rejected by the parser, the header checks or the
/// verifier.
#[test]
fn bit_flips_are_rejected() {
    for seed in 0..4 {
        let (g, emb) = stacked_triangulation(12, seed).unwrap();
        let mut r = rng(seed + 50);
        let alpha = random_colouring(&g, 10, &mut r).unwrap();
        let beta = random_colouring(&g, 10, &mut r).unwrap();
        let out = recolour(&g, Some(&emb), &alpha, &beta, 10, Solver::Thomassen).unwrap();
        let text = serialize_sequence(g.n(), 10, &out.sequence.steps);
        assert!(verify_sequence_text(&g, &alpha, &beta, &text, 10).unwrap().is_valid());
        let mut rejected = 0;
        for i in 0..text.len() {
            for bit in 0..8 {
                let mut bytes = text.as_bytes().to_vec();
                bytes[i] ^= 1 << bit;
                let Ok(mutated) = String::from_utf8(bytes) else {
                    rejected += 1;
                    continue;
                };
                if tokens(&mutated) == tokens(&text) {
                    continue;
                }
                let accepted = verify_sequence_text(&g, &alpha, &beta, &mutated, 10).is_ok_and(|r| r.is_valid());
                assert!(!accepted, "byte {i} bit {bit} accepted:\n{mutated}");
                rejected += 1;
            }
        }
        assert!(rejected > text.len() * 7);
    }
}

/// Changing any single number of a step, including to values far away,
/// is caught.
#[test]
fn field_mutations_are_rejected() {
    let (g, emb) = stacked_triangulation(15, 9).unwrap();
    let mut r = rng(3);
    let alpha = random_colouring(&g, 10, &mut r).unwrap();
    let beta = random_colouring(&g, 10, &mut r).unwrap();
    let out = recolour(&g, Some(&emb), &alpha, &beta, 10, Solver::Thomassen).unwrap();
    let text = serialize_sequence(g.n(), 10, &out.sequence.steps);
    let lines: Vec<&str> = text.lines().collect();
    for li in 0..lines.len() {
        let fields: Vec<&str> = lines[li].split(' ').collect();
        for fi in 0..fields.len() {
            let Ok(value) = fields[fi].parse::<u64>() else { continue };
            for delta in [1u64, 2, 7, 100] {
                for replacement in [value + delta, value.wrapping_sub(delta)] {
                    if replacement == value || replacement > u32::MAX as u64 {
                        continue;
                    }
                    let mut f = fields.clone();
                    let rep = replacement.to_string();
                    f[fi] = &rep;
                    let mut l = lines.clone();
                    let joined = f.join(" ");
                    l[li] = &joined;
                    let mutated = l.join("\n") + "\n";
                    let accepted = verify_sequence_text(&g, &alpha, &beta, &mutated, 10).is_ok_and(|r| r.is_valid());
                    assert!(!accepted, "line {li} field {fi} -> {replacement} accepted");
                }
            }
        }
    }
}

#[test]
fn dropping_a_step_is_rejected() {
    let (g, emb) = stacked_triangulation(15, 2).unwrap();
    let mut r = rng(4);
    let alpha = random_colouring(&g, 10, &mut r).unwrap();
    let beta = random_colouring(&g, 10, &mut r).unwrap();
    let steps = recolour(&g, Some(&emb), &alpha, &beta, 10, Solver::Thomassen)
        .unwrap()
        .sequence
        .steps;
    for i in 0..steps.len() {
        let mut dropped = steps.clone();
        dropped.remove(i);
        // re-serialising makes header and checksum consistent, so only the verifier can object
        let text = serialize_sequence(g.n(), 10, &dropped);
        assert!(
            !verify_sequence_text(&g, &alpha, &beta, &text, 10).unwrap().is_valid(),
            "dropping step {i}"
        );
    }
}
