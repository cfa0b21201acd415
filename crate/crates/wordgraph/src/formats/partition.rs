//! Partition TSV: `word<TAB>community_id`, sorted by word.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use wordgraph_core::{Partition, SimilarityGraph};

use super::{invalid_label, tsv_safe, Lines};
use crate::error::{ParseError, ParseErrorKind, ReadError};

pub fn write_partition<W: Write>(g: &SimilarityGraph, p: &Partition, mut out: W) -> io::Result<()> {
    if let Some(bad) = g.labels().iter().find(|l| !tsv_safe(l)) {
        return Err(invalid_label(bad));
    }
    let mut rows: Vec<(&str, usize)> =
        g.labels().iter().map(String::as_str).zip(p.assignment().iter().copied()).collect();
    rows.sort_unstable();
    for (word, c) in rows {
        writeln!(out, "{word}\t{c}")?;
    }
    out.flush()
}

/// Reads a partition of `g`'s nodes. Every node must be listed exactly once
/// and community ids must be `0..count` with none unused.
pub fn read_partition<R: BufRead>(g: &SimilarityGraph, reader: R) -> Result<Partition, ReadError> {
    let index: BTreeMap<&str, usize> = g.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut assignment: Vec<Option<usize>> = vec![None; g.node_count()];
    let mut lines = Lines::new(reader);
    while let Some((line, text)) = lines.next_line()? {
        let fail = |kind| ParseError::at(line, kind);
        let Some((word, id)) = text.split_once('\t') else {
            return Err(fail(ParseErrorKind::Malformed("expected word<TAB>community_id")).into());
        };
        let c: usize = id.parse().map_err(|_| fail(ParseErrorKind::InvalidNumber(id.to_string())))?;
        let node = *index.get(word).ok_or_else(|| fail(ParseErrorKind::UnknownWord(word.to_string())))?;
        if assignment[node].replace(c).is_some() {
            return Err(fail(ParseErrorKind::DuplicateWord(word.to_string())).into());
        }
    }
    let end = lines.position() + 1;
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| ParseError::at(end, ParseErrorKind::MissingWord(g.labels()[v].clone()))))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(g, assignment).map_err(|e| ParseError::at(end, ParseErrorKind::Invalid(e.to_string())).into())
}

/// Full membership listing: `community_id<TAB>word`, grouped by community,
/// words sorted within each.
pub fn write_members<W: Write>(g: &SimilarityGraph, p: &Partition, mut out: W) -> io::Result<()> {
    for (c, nodes) in p.members().into_iter().enumerate() {
        let mut words: Vec<&str> = nodes.iter().map(|&v| g.labels()[v].as_str()).collect();
        words.sort_unstable();
        for w in words {
            if !tsv_safe(w) {
                return Err(invalid_label(w));
            }
            writeln!(out, "{c}\t{w}")?;
        }
    }
    out.flush()
}
