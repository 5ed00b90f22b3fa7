//! Graphviz export of digraphs with optional path and cut highlighting.

use std::collections::HashMap;
use std::fmt::Write;

use crate::digraph::Digraph;

const PATH_COLORS: [&str; 6] = ["blue", "darkgreen", "orange", "purple", "brown", "teal"];

#[derive(Debug, Clone, Default)]
pub struct DotHighlight {
    /// Node sequences drawn as colored arc chains.
    pub paths: Vec<Vec<usize>>,
    /// Nodes filled red.
    pub cut: Vec<usize>,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn export_dot(d: &Digraph, highlight: &DotHighlight) -> String {
    let mut arc_color: HashMap<(usize, usize), &str> = HashMap::new();
    for (i, p) in highlight.paths.iter().enumerate() {
        for w in p.windows(2) {
            arc_color.entry((w[0], w[1])).or_insert(PATH_COLORS[i % PATH_COLORS.len()]);
        }
    }
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(d.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, label) in d.labels().iter().enumerate() {
        let mut attrs = Vec::new();
        if d.source() == Some(i) {
            attrs.push("shape=doublecircle".to_string());
        } else if d.sink() == Some(i) {
            attrs.push("shape=doubleoctagon".to_string());
        }
        if highlight.cut.contains(&i) {
            attrs.push("style=filled".to_string());
            attrs.push("fillcolor=red".to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  {};", quote(label)).unwrap();
        } else {
            writeln!(out, "  {} [{}];", quote(label), attrs.join(", ")).unwrap();
        }
    }
    for &(u, v) in d.arcs() {
        match arc_color.get(&(u, v)) {
            Some(c) => writeln!(out, "  {} -> {} [color={c}, penwidth=2];", quote(d.label(u)), quote(d.label(v))).unwrap(),
            None => writeln!(out, "  {} -> {};", quote(d.label(u)), quote(d.label(v))).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}
