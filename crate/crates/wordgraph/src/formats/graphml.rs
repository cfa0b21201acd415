//! GraphML export for external viewers.

use std::io::{self, Write};

use wordgraph_core::SimilarityGraph;

use super::decimal;

pub fn write_graphml<W: Write>(g: &SimilarityGraph, mut out: W) -> io::Result<()> {
    out.write_all(
        br#"<?xml version="1.0" encoding="UTF-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key id="label" for="node" attr.name="label" attr.type="string"/>
  <key id="weight" for="edge" attr.name="weight" attr.type="double"/>
  <graph id="G" edgedefault="undirected">
"#,
    )?;
    for (v, label) in g.labels().iter().enumerate() {
        writeln!(out, "    <node id=\"n{v}\"><data key=\"label\">{}</data></node>", escape(label))?;
    }
    for (a, b, w) in g.edges() {
        writeln!(
            out,
            "    <edge source=\"n{a}\" target=\"n{b}\"><data key=\"weight\">{}</data></edge>",
            decimal(w)
        )?;
    }
    out.write_all(b"  </graph>\n</graphml>\n")?;
    out.flush()
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_edges_with_escaped_labels() {
        let labels = vec!["a&b".to_string(), "<c>".to_string(), "lone".to_string()];
        let g = SimilarityGraph::from_edges(labels, [(0, 1, 0.25)]).unwrap();
        let mut out = Vec::new();
        write_graphml(&g, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains(r#"<node id="n0"><data key="label">a&amp;b</data></node>"#));
        assert!(text.contains(r#"<node id="n1"><data key="label">&lt;c&gt;</data></node>"#));
        assert!(text.contains(r#"<node id="n2">"#));
        assert!(text.contains(r#"<edge source="n0" target="n1"><data key="weight">0.250000</data></edge>"#));
        assert_eq!(text.matches("<edge ").count(), 1);
        assert!(text.ends_with("</graphml>\n"));
    }
}
