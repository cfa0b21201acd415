//! Canonical edge list: `word_a<TAB>word_b<TAB>weight` per undirected edge,
//! `word_a < word_b` bytewise, lines sorted, weights with six decimals.
//!
//! Isolated words have no line and therefore do not survive a round trip
//! through this format. Node ids of a loaded graph follow sorted word order.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead, Write};

use wordgraph_core::graph::{MAX_WEIGHT, MIN_WEIGHT};
use wordgraph_core::SimilarityGraph;

use super::{decimal, invalid_label, tsv_safe, Lines};
use crate::error::{ParseError, ParseErrorKind, ReadError};

pub fn load_edges<R: BufRead>(reader: R) -> Result<SimilarityGraph, ReadError> {
    let mut lines = Lines::new(reader);
    // Keyed by the canonical (smaller, larger) word pair.
    let mut edges: BTreeMap<(String, String), f64> = BTreeMap::new();
    while let Some((line, text)) = lines.next_line()? {
        let fail = |kind| ParseError::at(line, kind);
        let fields: Vec<&str> = text.split('\t').collect();
        let [a, b, w] = fields[..] else {
            return Err(fail(ParseErrorKind::Malformed("expected three tab-separated fields")).into());
        };
        if a.is_empty() || b.is_empty() {
            return Err(fail(ParseErrorKind::Malformed("empty word")).into());
        }
        if a == b {
            return Err(fail(ParseErrorKind::SelfLoop(a.to_string())).into());
        }
        let weight: f64 = w.parse().map_err(|_| fail(ParseErrorKind::InvalidNumber(w.to_string())))?;
        if !(weight > 0.0 && weight < 1.0) {
            return Err(fail(ParseErrorKind::WeightOutOfRange(weight)).into());
        }
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        if edges.contains_key(&key) {
            return Err(fail(ParseErrorKind::DuplicateEdge(key.0, key.1)).into());
        }
        edges.insert(key, weight);
    }

    let words: BTreeSet<&str> = edges.keys().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect();
    let id: BTreeMap<&str, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let labels = words.iter().map(|w| w.to_string()).collect();
    let triples: Vec<(usize, usize, f64)> =
        edges.iter().map(|((a, b), &w)| (id[a.as_str()], id[b.as_str()], w)).collect();
    // Every check the graph performs has already been made above.
    Ok(SimilarityGraph::from_edges(labels, triples).expect("validated edge list"))
}

/// Writes the canonical edge list. Weights are clamped to the representable
/// open interval so that six-decimal rounding never produces 0 or 1.
pub fn save_edges<W: Write>(g: &SimilarityGraph, mut out: W) -> io::Result<()> {
    if let Some(bad) = g.labels().iter().find(|l| !tsv_safe(l)) {
        return Err(invalid_label(bad));
    }
    let mut rows: Vec<(&str, &str, f64)> = g
        .edges()
        .map(|(a, b, w)| {
            let (la, lb) = (g.labels()[a].as_str(), g.labels()[b].as_str());
            if la < lb { (la, lb, w) } else { (lb, la, w) }
        })
        .collect();
    rows.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    for (a, b, w) in rows {
        writeln!(out, "{a}\t{b}\t{}", decimal(w.clamp(MIN_WEIGHT, MAX_WEIGHT)))?;
    }
    out.flush()
}
