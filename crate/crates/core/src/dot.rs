//! Graphviz export of `K_chi`.

use std::fmt::Write;

use crate::chi_graph::{support_vertices, CharGraph};

/// Undirected DOT with vertices `v1..vn` and edges labeled by their weight.
/// Vertices outside the support are drawn dotted.
pub fn to_dot(g: &CharGraph) -> String {
    let support = support_vertices(g);
    let mut out = String::from("graph K_chi {\n");
    for v in 1..=g.n() {
        if support.contains(&v) {
            writeln!(out, "  v{v};").unwrap();
        } else {
            writeln!(out, "  v{v} [style=dotted];").unwrap();
        }
    }
    for ((a, b), w) in g.labels() {
        writeln!(out, "  v{a} -- v{b} [label=\"{w}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
