use std::fmt::Write;

use crate::arith::NumberType;

use super::Quiver;

fn type_color(t: NumberType) -> &'static str {
    match t {
        NumberType::A => "teal",
        NumberType::B => "gold",
        NumberType::C => "purple",
    }
}

/// Renders the quiver as a DOT digraph. Nodes are colored by type and
/// edges labeled by rule. Output order follows node and edge order.
pub fn export_quiver_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n  node [shape=circle];\n");
    for (x, info) in &q.nodes {
        let _ = writeln!(
            out,
            "  \"{x}\" [color={}{}];",
            type_color(info.number_type),
            if info.ag { ", penwidth=2" } else { "" }
        );
    }
    for e in &q.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            e.lhs, e.rhs, e.rule
        );
    }
    out.push_str("}\n");
    out
}
