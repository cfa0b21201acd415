//! Graphviz DOT export; each edge is labelled with its weight.

use std::io::{self, Write};

use wordgraph_core::SimilarityGraph;

use super::decimal;

pub fn write_dot<W: Write>(g: &SimilarityGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "graph wordgraph {{")?;
    for (v, label) in g.labels().iter().enumerate() {
        writeln!(out, "  n{v} [label=\"{}\"];", escape(label))?;
    }
    for (a, b, w) in g.edges() {
        writeln!(out, "  n{a} -- n{b} [label=\"{0}\", weight={0}];", decimal(w))?;
    }
    writeln!(out, "}}")?;
    out.flush()
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}
