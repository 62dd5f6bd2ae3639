//! Human-readable and `key=value` renderings of verifier and oracle output.
//! Vertices are printed 1-based, step indices 0-based.

use std::fmt::Write as _;

use recolor_core::reconfig::{DiameterReport, SequenceReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One `key=value` pair per line.
    Kv,
}

fn kv(pairs: &[(&str, String)]) -> String {
    pairs.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k}={v}");
        out
    })
}

pub fn violation_code(v: &Violation) -> &'static str {
    match v {
        Violation::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
        Violation::ColourOutOfRange { .. } => "COLOUR_OUT_OF_RANGE",
        Violation::ImproperStart { .. } => "IMPROPER_START",
        Violation::UnknownVertex { .. } => "UNKNOWN_VERTEX",
        Violation::OldColourMismatch { .. } => "OLD_COLOUR_MISMATCH",
        Violation::NoOpStep { .. } => "NO_OP_STEP",
        Violation::ImproperIntermediate { .. } => "IMPROPER_INTERMEDIATE",
        Violation::WrongEndpoint { .. } => "WRONG_ENDPOINT",
    }
}

fn violation_fields(v: &Violation) -> Vec<(&'static str, String)> {
    let edge = |(a, b): (usize, usize)| format!("{}-{}", a + 1, b + 1);
    match *v {
        Violation::DimensionMismatch { expected, got } => {
            vec![("expected", expected.to_string()), ("got", got.to_string())]
        }
        Violation::ColourOutOfRange { step, vertex, colour } => {
            let mut f = vec![("vertex", (vertex + 1).to_string()), ("colour", colour.to_string())];
            if let Some(s) = step {
                f.insert(0, ("step", s.to_string()));
            }
            f
        }
        Violation::ImproperStart { edge: e } => vec![("edge", edge(e))],
        Violation::UnknownVertex { step, vertex } => {
            vec![("step", step.to_string()), ("vertex", (vertex + 1).to_string())]
        }
        Violation::OldColourMismatch {
            step,
            vertex,
            expected,
            found,
        } => vec![
            ("step", step.to_string()),
            ("vertex", (vertex + 1).to_string()),
            ("expected", expected.to_string()),
            ("found", found.to_string()),
        ],
        Violation::NoOpStep { step, vertex } => vec![("step", step.to_string()), ("vertex", (vertex + 1).to_string())],
        Violation::ImproperIntermediate { step, edge: e } => vec![("step", step.to_string()), ("edge", edge(e))],
        Violation::WrongEndpoint {
            vertex,
            expected,
            found,
        } => vec![
            ("vertex", (vertex + 1).to_string()),
            ("expected", expected.to_string()),
            ("found", found.to_string()),
        ],
    }
}

pub fn render_sequence_report(r: &SequenceReport, format: Format) -> String {
    match (r, format) {
        (SequenceReport::Valid { steps, per_vertex }, Format::Text) => {
            let max = per_vertex.iter().copied().max().unwrap_or(0);
            format!("VALID: {steps} steps, at most {max} per vertex\n")
        }
        (SequenceReport::Valid { steps, per_vertex }, Format::Kv) => kv(&[
            ("status", "VALID".into()),
            ("steps", steps.to_string()),
            (
                "max_per_vertex",
                per_vertex.iter().copied().max().unwrap_or(0).to_string(),
            ),
        ]),
        (SequenceReport::Invalid(v), Format::Text) => {
            let fields: Vec<String> = violation_fields(v)
                .into_iter()
                .map(|(k, v)| format!("{k} {v}"))
                .collect();
            format!("INVALID: {} ({})\n", violation_code(v), fields.join(", "))
        }
        (SequenceReport::Invalid(v), Format::Kv) => {
            let mut pairs = vec![
                ("status", "INVALID".to_string()),
                ("violation", violation_code(v).to_string()),
            ];
            pairs.extend(violation_fields(v));
            kv(&pairs)
        }
    }
}

pub fn render_distance(d: Option<usize>, format: Format) -> String {
    match (d, format) {
        (Some(d), Format::Text) => format!("distance {d}\n"),
        (None, Format::Text) => "UNREACHABLE\n".into(),
        (Some(d), Format::Kv) => kv(&[("status", "REACHABLE".into()), ("distance", d.to_string())]),
        (None, Format::Kv) => kv(&[("status", "UNREACHABLE".into())]),
    }
}

pub fn render_diameter(r: &DiameterReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "{} proper colourings in {} components; largest has {} colourings and diameter {}\n",
                r.states, r.components, r.largest_component, r.diameter
            );
            let _ = writeln!(out, "{} frozen", r.frozen.len());
            for f in &r.frozen {
                let cs: Vec<String> = f.as_slice().iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  {}", cs.join(" "));
            }
            out
        }
        Format::Kv => kv(&[
            ("states", r.states.to_string()),
            ("components", r.components.to_string()),
            ("largest_component", r.largest_component.to_string()),
            ("diameter", r.diameter.to_string()),
            ("frozen", r.frozen.len().to_string()),
        ]),
    }
}
