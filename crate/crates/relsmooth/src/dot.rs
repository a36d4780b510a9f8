//! Graphviz export.

use std::fmt::Write;

use relsmooth_core::graph::{Ramification, VertexRole};
use relsmooth_core::DualMapGraph;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per component, one edge per node of the curve. Marks are listed
/// inside the label of the component carrying them.
pub fn to_dot(g: &DualMapGraph) -> String {
    let mut out = String::from("graph dual_map {\n  node [shape=circle];\n");
    for v in &g.vertices {
        let (mut label, shape) = match &v.role {
            VertexRole::Active { degree } => (format!("A:d={degree}"), "circle"),
            VertexRole::Contracted { target } => (format!("E→{target}"), "box"),
        };
        for m in g.marks_on(v.id) {
            let _ = write!(label, "\\n{}", m.id);
            if m.tangency > 0 {
                let _ = write!(label, " t={}", m.tangency);
            }
            if let (Some(t), VertexRole::Active { .. }) = (&m.target, &v.role) {
                let _ = write!(label, "→{t}");
            }
        }
        let _ = writeln!(out, "  {} [label=\"{}\", shape={}];", v.id, escape(&label), shape);
    }
    for e in &g.edges {
        let ram = match e.ramification {
            Ramification::Single(r) => r.to_string(),
            Ramification::Pair(a, b) => format!("{a}/{b}"),
        };
        let mut label = format!("e={},μ{}", ram, e.stabilizer_order);
        if let Some(x) = &e.over {
            let _ = write!(label, " over {x}");
        }
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.endpoints.0, e.endpoints.1, escape(&label));
    }
    out.push_str("}\n");
    out
}
