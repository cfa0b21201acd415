//! word2vec text format.
//!
//! The first line is `<count> <dim>`; each following line is a token and
//! `dim` decimal components, separated by single spaces. Trailing spaces at
//! the end of a line are tolerated because the reference tool writes one.

use std::io::{BufRead, Write};

use wordgraph_core::{EmbeddingStore, Error as CoreError};

use super::{decimal, Lines};
use crate::error::{ParseError, ParseErrorKind, ReadError};

pub fn parse_vectors<R: BufRead>(reader: R) -> Result<EmbeddingStore, ReadError> {
    let mut lines = Lines::new(reader);
    let Some((hline, header)) = lines.next_line()? else {
        return Err(ParseError::at(1, ParseErrorKind::MalformedHeader(String::new())).into());
    };
    let (count, dim) = parse_header(&header)
        .ok_or_else(|| ParseError::at(hline, ParseErrorKind::MalformedHeader(header.clone())))?;
    let mut store = EmbeddingStore::new(dim).map_err(|_| {
        ParseError::at(hline, ParseErrorKind::MalformedHeader(header.clone()))
    })?;

    let mut row = Vec::with_capacity(dim);
    while let Some((line, text)) = lines.next_line()? {
        if store.len() == count {
            return Err(ParseError::at(
                line,
                ParseErrorKind::CountMismatch { declared: count, found: count + 1 },
            )
            .into());
        }
        let text = text.trim_end_matches(' ');
        let mut fields = text.split(' ');
        let token = fields.next().unwrap_or_default();
        if token.is_empty() {
            return Err(ParseError::at(line, ParseErrorKind::Malformed("empty token")).into());
        }
        row.clear();
        for field in fields {
            if field.is_empty() {
                return Err(ParseError::at(line, ParseErrorKind::Malformed("consecutive spaces")).into());
            }
            let x: f64 = field
                .parse()
                .map_err(|_| ParseError::at(line, ParseErrorKind::InvalidNumber(field.to_string())))?;
            row.push(x);
        }
        store.push(token, &row).map_err(|e| ParseError::at(line, row_error(e)))?;
    }
    if store.len() != count {
        return Err(ParseError::at(
            lines.position() + 1,
            ParseErrorKind::CountMismatch { declared: count, found: store.len() },
        )
        .into());
    }
    Ok(store)
}

fn parse_header(header: &str) -> Option<(usize, usize)> {
    let (count, dim) = header.trim_end_matches(' ').split_once(' ')?;
    Some((count.parse().ok()?, dim.parse().ok()?))
}

fn row_error(e: CoreError) -> ParseErrorKind {
    match e {
        CoreError::WrongComponentCount { expected, found, .. } => {
            ParseErrorKind::ComponentCount { expected, found }
        }
        CoreError::DuplicateWord { word } => ParseErrorKind::DuplicateToken(word),
        CoreError::NonFiniteComponent { position, .. } => ParseErrorKind::NonFinite(position),
        CoreError::ZeroVector { word } => ParseErrorKind::ZeroVector(word),
        other => ParseErrorKind::Invalid(other.to_string()),
    }
}

/// Writes the store with six-decimal components.
pub fn write_vectors<W: Write>(store: &EmbeddingStore, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", store.len(), store.dim())?;
    for (id, word) in store.words().iter().enumerate() {
        out.write_all(word.as_bytes())?;
        for &x in store.vector(id).expect("id in range") {
            write!(out, " {}", decimal(x))?;
        }
        out.write_all(b"\n")?;
    }
    out.flush()
}
