//! Isomorphism-invariant keys for decorated dual trees.
//!
//! The tree is rooted at its center (one vertex, or the middle edge when
//! there are two centers) and every rooted subtree is encoded as a bracketed
//! string of its decoration followed by the sorted encodings of its
//! children. Two graphs get the same key iff they are isomorphic as
//! decorated trees.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::graph::{DualMapGraph, GraphError, MarkedPoint, Topology, VertexRole};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(pub String);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn label(s: &str) -> String {
    // Length prefix keeps arbitrary labels unambiguous.
    format!("{}:{}", s.len(), s)
}

fn mark_code(m: &MarkedPoint, labeled: bool) -> String {
    let mut s = format!(
        "m({},{},{},{}",
        m.tangency,
        m.target.as_ref().map(|t| label(t.as_str())).unwrap_or_default(),
        m.local_ramification(),
        m.stabilizer_order
    );
    if labeled {
        let _ = write!(s, ",#{}", m.id.0);
    }
    s.push(')');
    s
}

struct Encoder<'a> {
    g: &'a DualMapGraph,
    topo: Topology,
}

impl Encoder<'_> {
    fn vertex_code(&self, v: usize) -> String {
        let vertex = &self.g.vertices[v];
        let mut s = match &vertex.role {
            VertexRole::Active { degree } => format!("A{degree}"),
            VertexRole::Contracted { target } => format!("E{}", label(target.as_str())),
        };
        let mut marks: Vec<String> = self.topo.marks_at[v]
            .iter()
            .map(|&k| mark_code(&self.g.marks[k], self.g.flags.labeled_marks))
            .collect();
        marks.sort();
        for m in marks {
            s.push_str(&m);
        }
        s
    }

    fn edge_code(&self, e: usize, from: usize, to: usize) -> String {
        let edge = &self.g.edges[e];
        let a = edge.ramification_at(self.g.vertices[from].id);
        let b = edge.ramification_at(self.g.vertices[to].id);
        format!(
            "-({},{},{},{})",
            a,
            b,
            edge.stabilizer_order,
            edge.over.as_ref().map(|t| label(t.as_str())).unwrap_or_default()
        )
    }

    fn encode(&self, v: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = self.topo.adjacent[v]
            .iter()
            .filter(|&&(_, w)| Some(w) != parent)
            .map(|&(e, w)| {
                let mut c = self.edge_code(e, v, w);
                c.push_str(&self.encode(w, Some(v)));
                c
            })
            .collect();
        children.sort();
        let mut s = String::from("[");
        s.push_str(&self.vertex_code(v));
        s.push('|');
        for c in children {
            s.push_str(&c);
        }
        s.push(']');
        s
    }

    /// One or two central vertices, by repeated leaf removal.
    fn centers(&self) -> Vec<usize> {
        let n = self.g.vertices.len();
        let mut degree: Vec<usize> = self.topo.adjacent.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                removed[v] = true;
                for &(_, w) in &self.topo.adjacent[v] {
                    if !removed[w] {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        (0..n).filter(|&v| !removed[v]).collect()
    }
}

/// Canonical key of a valid graph; see the module docs.
pub fn canonical_form(g: &DualMapGraph) -> Result<CanonicalKey, GraphError> {
    g.ensure_valid()?;
    let enc = Encoder { g, topo: Topology::new(g) };
    let centers = enc.centers();
    let body = match centers.as_slice() {
        [c] => enc.encode(*c, None),
        [a, b] => {
            let e = enc.topo.adjacent[*a]
                .iter()
                .find(|&&(_, w)| w == *b)
                .map(|&(e, _)| e)
                .expect("two centers of a tree are adjacent");
            let one = format!("<{}{}{}>", enc.encode(*a, Some(*b)), enc.edge_code(e, *a, *b), enc.encode(*b, Some(*a)));
            let two = format!("<{}{}{}>", enc.encode(*b, Some(*a)), enc.edge_code(e, *b, *a), enc.encode(*a, Some(*b)));
            one.min(two)
        }
        _ => unreachable!("a tree has one or two centers"),
    };
    Ok(CanonicalKey(format!("d{};{}", g.degree, body)))
}
