//! Graphviz export of a blowup tree.

use std::fmt::Write;

use crate::resolution_engine::{BlowupTree, Step};

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes are labeled by chart id, invariant and status; edges by the
/// blowup center or the localization.
pub fn emit_dot(tree: &BlowupTree) -> String {
    let mut out = String::new();
    writeln!(out, "digraph blowups {{").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for n in &tree.nodes {
        let inv = n.invariant.as_ref().map_or_else(|| "-".to_string(), |i| i.to_string());
        let label = format!("{}\\ninv {}\\n{}", quote(&n.id), quote(&inv), n.status.as_str());
        writeln!(out, "  \"{}\" [label=\"{label}\"];", quote(&n.id)).unwrap();
    }
    for n in &tree.nodes {
        let Some(parent) = &n.parent else { continue };
        let label = match &n.step {
            Step::Root => String::new(),
            Step::Blowup { center_text, generator, .. } => format!("{center_text} [{generator}]"),
            Step::Localization { description } => description.clone(),
        };
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", quote(parent), quote(&n.id), quote(&label)).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
