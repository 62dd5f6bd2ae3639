//! Text formats for graphs, colourings and recolouring sequences.
//!
//! All vertex indices are 1-based on disk and 0-based in memory.
//!
//! ```text
//! # K3 with its embedding
//! p 3 3
//! e 1 2
//! e 1 3
//! e 2 3
//! r 1 2 3
//! r 2 3 1
//! r 3 1 2
//! ```

use std::fmt::Write as _;

use recolor_core::engine::checksum;
use recolor_core::{Colour, Colouring, EmbeddingError, Graph, GraphError, PlaneEmbedding, RecolourStep, Vertex};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("DUPLICATE_EDGE {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("INDEX_OUT_OF_RANGE {index} (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge must be written with u < v, got {0} {1}")]
    Unordered(usize, usize),
    #[error("header announced {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("rotation lines must be given for every vertex or none")]
    PartialEmbedding,
    #[error("second rotation line for vertex {0}")]
    DuplicateRotation(usize),
    #[error("invalid embedding: {0}")]
    Embedding(EmbeddingError),
    #[error("checksum mismatch: file says {stated}, steps give {computed}")]
    Checksum { stated: u32, computed: u32 },
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

/// Whitespace-separated tokens of one line with their 1-based columns.
struct Tokens<'a> {
    line: usize,
    rest: std::iter::Peekable<std::vec::IntoIter<(usize, &'a str)>>,
    end: usize,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    toks.push((s + 1, &text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            toks.push((s + 1, &text[s..]));
        }
        Tokens {
            line,
            rest: toks.into_iter().peekable(),
            end: text.len() + 1,
        }
    }

    fn next_token(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        self.rest
            .next()
            .ok_or_else(|| err(self.line, self.end, ParseErrorKind::Expected(what)))
    }

    fn number<T: std::str::FromStr>(&mut self, what: &'static str) -> Result<(usize, T), ParseError> {
        let (col, tok) = self.next_token(what)?;
        tok.parse()
            .map(|v| (col, v))
            .map_err(|_| err(self.line, col, ParseErrorKind::Expected(what)))
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.rest.next() {
            Some((col, tok)) => Err(err(self.line, col, ParseErrorKind::Unexpected(tok.to_string()))),
            None => Ok(()),
        }
    }

    fn is_empty(&mut self) -> bool {
        self.rest.peek().is_none()
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub embedding: Option<PlaneEmbedding>,
}

fn vertex(tokens: &mut Tokens<'_>, n: usize) -> Result<(usize, Vertex), ParseError> {
    let (col, v) = tokens.number::<usize>("vertex index")?;
    if v == 0 || v > n {
        return Err(err(tokens.line, col, ParseErrorKind::IndexOutOfRange { index: v, n }));
    }
    Ok((col, v - 1))
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines
        .next()
        .ok_or_else(|| err(1, 1, ParseErrorKind::Expected("header `p <n> <m>`")))?;
    let mut t = Tokens::new(hline, htext);
    let (col, tag) = t.next_token("header `p <n> <m>`")?;
    if tag != "p" {
        return Err(err(hline, col, ParseErrorKind::Expected("header `p <n> <m>`")));
    }
    let (_, n) = t.number::<usize>("vertex count")?;
    let (_, m) = t.number::<usize>("edge count")?;
    t.finish()?;

    let mut graph = Graph::new(n);
    let mut rotation: Vec<Option<Vec<Vertex>>> = vec![None; n];
    let mut rotations = 0;
    let mut last_line = hline;
    for (ln, l) in lines {
        last_line = ln;
        let mut t = Tokens::new(ln, l);
        let (col, tag) = t.next_token("line tag")?;
        match tag {
            "e" => {
                let (ucol, u) = vertex(&mut t, n)?;
                let (_, v) = vertex(&mut t, n)?;
                t.finish()?;
                if u == v {
                    return Err(err(ln, ucol, ParseErrorKind::Loop(u + 1)));
                }
                if u > v {
                    return Err(err(ln, ucol, ParseErrorKind::Unordered(u + 1, v + 1)));
                }
                graph.add_edge(u, v).map_err(|e| match e {
                    GraphError::DuplicateEdge(..) => err(ln, col, ParseErrorKind::DuplicateEdge(u + 1, v + 1)),
                    other => err(ln, col, ParseErrorKind::Unexpected(other.to_string())),
                })?;
            }
            "r" => {
                let (vcol, v) = vertex(&mut t, n)?;
                let mut rot = Vec::new();
                while !t.is_empty() {
                    rot.push(vertex(&mut t, n)?.1);
                }
                if rotation[v].replace(rot).is_some() {
                    return Err(err(ln, vcol, ParseErrorKind::DuplicateRotation(v + 1)));
                }
                rotations += 1;
            }
            other => return Err(err(ln, col, ParseErrorKind::Unexpected(other.to_string()))),
        }
    }
    if graph.m() != m {
        return Err(err(
            last_line,
            1,
            ParseErrorKind::CountMismatch {
                what: "edges",
                expected: m,
                found: graph.m(),
            },
        ));
    }
    let embedding = match rotations {
        0 => None,
        r if r == n => {
            let rotation = rotation.into_iter().map(|r| r.unwrap_or_default()).collect();
            let emb =
                PlaneEmbedding::new(&graph, rotation).map_err(|e| err(last_line, 1, ParseErrorKind::Embedding(e)))?;
            Some(emb)
        }
        _ => return Err(err(last_line, 1, ParseErrorKind::PartialEmbedding)),
    };
    Ok(GraphFile { graph, embedding })
}

pub fn serialize_graph(g: &Graph, emb: Option<&PlaneEmbedding>) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if let Some(emb) = emb {
        for v in 0..g.n() {
            out.push_str(&format!("r {}", v + 1));
            for &w in emb.rotation(v) {
                let _ = write!(out, " {}", w + 1);
            }
            out.push('\n');
        }
    }
    out
}

/// Reads a colouring. Range checks against `ℓ` are left to the caller.
pub fn parse_colouring(text: &str) -> Result<Colouring, ParseError> {
    let mut lines = content_lines(text);
    let Some((ln, l)) = lines.next() else {
        return Ok(Colouring::new(Vec::new()));
    };
    let mut t = Tokens::new(ln, l);
    let mut colours = Vec::new();
    while !t.is_empty() {
        let (col, c) = t.number::<Colour>("colour in 1..=64")?;
        if c == 0 || c > 64 {
            return Err(err(ln, col, ParseErrorKind::Expected("colour in 1..=64")));
        }
        colours.push(c);
    }
    if let Some((ln, l)) = lines.next() {
        let (col, tok) = Tokens::new(ln, l).next_token("end of file")?;
        return Err(err(ln, col, ParseErrorKind::Unexpected(tok.to_string())));
    }
    Ok(Colouring::new(colours))
}

pub fn serialize_colouring(f: &Colouring) -> String {
    let mut out = f.as_slice().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub n: usize,
    pub ell: u8,
    pub steps: Vec<RecolourStep>,
    pub checksum: u32,
}

/// Parses a sequence file and checks its trailing checksum. Vertex indices
/// are checked against the header; everything else is the verifier's job.
pub fn parse_sequence(text: &str) -> Result<SequenceFile, ParseError> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines
        .next()
        .ok_or_else(|| err(1, 1, ParseErrorKind::Expected("header `s <n> <l> <steps>`")))?;
    let mut t = Tokens::new(hline, htext);
    let (col, tag) = t.next_token("header `s <n> <l> <steps>`")?;
    if tag != "s" {
        return Err(err(hline, col, ParseErrorKind::Expected("header `s <n> <l> <steps>`")));
    }
    let (_, n) = t.number::<usize>("vertex count")?;
    let (_, ell) = t.number::<u8>("colour count")?;
    let (_, count) = t.number::<usize>("step count")?;
    t.finish()?;

    let mut steps = Vec::with_capacity(count.min(1 << 20));
    let mut last = hline;
    for (ln, l) in lines.by_ref() {
        last = ln;
        let mut t = Tokens::new(ln, l);
        let (col, first) = t.next_token("step or `end`")?;
        if first == "end" {
            let (ccol, stated) = t.number::<u32>("checksum")?;
            t.finish()?;
            if steps.len() != count {
                return Err(err(
                    ln,
                    col,
                    ParseErrorKind::CountMismatch {
                        what: "steps",
                        expected: count,
                        found: steps.len(),
                    },
                ));
            }
            let computed = checksum(&steps);
            if computed != stated {
                return Err(err(ln, ccol, ParseErrorKind::Checksum { stated, computed }));
            }
            if let Some((ln, l)) = lines.next() {
                let (col, tok) = Tokens::new(ln, l).next_token("end of file")?;
                return Err(err(ln, col, ParseErrorKind::Unexpected(tok.to_string())));
            }
            return Ok(SequenceFile {
                n,
                ell,
                steps,
                checksum: stated,
            });
        }
        let v: usize = first
            .parse()
            .map_err(|_| err(ln, col, ParseErrorKind::Expected("vertex index")))?;
        if v == 0 || v > n {
            return Err(err(ln, col, ParseErrorKind::IndexOutOfRange { index: v, n }));
        }
        let (_, old) = t.number::<Colour>("old colour")?;
        let (_, new) = t.number::<Colour>("new colour")?;
        t.finish()?;
        steps.push(RecolourStep {
            vertex: v - 1,
            old,
            new,
        });
    }
    Err(err(last, 1, ParseErrorKind::Expected("trailing `end <checksum>`")))
}

pub fn serialize_sequence(n: usize, ell: u8, steps: &[RecolourStep]) -> String {
    let mut out = format!("s {} {} {}\n", n, ell, steps.len());
    for s in steps {
        let _ = writeln!(out, "{} {} {}", s.vertex + 1, s.old, s.new);
    }
    let _ = writeln!(out, "end {}", checksum(steps));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4: &str = "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\nr 1 2 4 3\nr 2 3 4 1\nr 3 1 4 2\nr 4 1 2 3\n";

    #[test]
    fn k4_round_trip() {
        let f = parse_graph(K4).unwrap();
        assert_eq!(f.graph.m(), 6);
        assert_eq!(serialize_graph(&f.graph, f.embedding.as_ref()), K4);
    }

    #[test]
    fn comments_and_blank_lines() {
        let f = parse_graph("# hi\n\np 2 1 # header\ne 1 2\n").unwrap();
        assert_eq!(f.graph.m(), 1);
        assert!(f.embedding.is_none());
    }

    #[test]
    fn rejects_loop() {
        let e = parse_graph("p 2 1\ne 1 1\n").unwrap_err();
        assert_eq!((e.line, e.column, e.kind), (2, 3, ParseErrorKind::Loop(1)));
    }

    #[test]
    fn rejects_duplicates_and_range() {
        let e = parse_graph("p 3 2\ne 1 2\ne 1 2\n").unwrap_err();
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::DuplicateEdge(1, 2)));
        let e = parse_graph("p 3 1\ne 1 4\n").unwrap_err();
        assert_eq!(
            (e.line, e.column, e.kind),
            (2, 5, ParseErrorKind::IndexOutOfRange { index: 4, n: 3 })
        );
        let e = parse_graph("p 3 1\ne 0 2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::IndexOutOfRange { index: 0, n: 3 });
    }

    #[test]
    fn rejects_partial_embedding_and_bad_counts() {
        assert_eq!(
            parse_graph("p 2 1\ne 1 2\nr 1 2\n").unwrap_err().kind,
            ParseErrorKind::PartialEmbedding
        );
        assert!(matches!(
            parse_graph("p 3 2\ne 1 2\n").unwrap_err().kind,
            ParseErrorKind::CountMismatch { .. }
        ));
        assert!(matches!(
            parse_graph("p 2 1\ne 2 1\n").unwrap_err().kind,
            ParseErrorKind::Unordered(2, 1)
        ));
        assert!(matches!(
            parse_graph("p 2 1\nx 1 2\n").unwrap_err().kind,
            ParseErrorKind::Unexpected(_)
        ));
        let e = parse_graph("p 2 1\ne 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
    }

    #[test]
    fn colouring_round_trip() {
        let f = parse_colouring("3 1 2\n").unwrap();
        assert_eq!(f.as_slice(), &[3, 1, 2]);
        assert_eq!(serialize_colouring(&f), "3 1 2\n");
        assert!(parse_colouring("1 0\n").is_err());
        assert!(parse_colouring("1 x\n").is_err());
        assert!(parse_colouring("1\n2\n").is_err());
    }

    #[test]
    fn sequence_round_trip_and_checksum() {
        let steps = vec![
            RecolourStep {
                vertex: 0,
                old: 1,
                new: 3,
            },
            RecolourStep {
                vertex: 2,
                old: 2,
                new: 1,
            },
        ];
        let text = serialize_sequence(3, 10, &steps);
        assert_eq!(text, "s 3 10 2\n1 1 3\n3 2 1\nend 6\n");
        let parsed = parse_sequence(&text).unwrap();
        assert_eq!(parsed.steps, steps);
        let tampered = text.replace("end 6", "end 7");
        assert!(matches!(
            parse_sequence(&tampered).unwrap_err().kind,
            ParseErrorKind::Checksum { .. }
        ));
        assert!(parse_sequence("s 3 10 1\n1 1 3\n").is_err());
    }
}
