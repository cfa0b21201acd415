//! Readers and writers for every on-disk artifact.
//!
//! All text formats are UTF-8 with LF line endings on output; readers also
//! accept CRLF and ignore blank lines at the end of the input.

pub mod dot;
pub mod edges;
pub mod graphml;
pub mod partition;
pub mod word2vec;

use std::io::{self, BufRead};

use crate::error::{ParseError, ParseErrorKind, ReadError};

/// Yields `(line_number, line)` for every non-blank line, with line numbers
/// starting at 1. A blank line followed by more content is an error.
pub(crate) struct Lines<R> {
    inner: R,
    buf: Vec<u8>,
    line: usize,
    blank_at: Option<usize>,
}

impl<R: BufRead> Lines<R> {
    pub(crate) fn new(inner: R) -> Self {
        Self { inner, buf: Vec::new(), line: 0, blank_at: None }
    }

    /// Line number of the last line read (0 before any).
    pub(crate) fn position(&self) -> usize {
        self.line
    }

    pub(crate) fn next_line(&mut self) -> Result<Option<(usize, String)>, ReadError> {
        loop {
            self.buf.clear();
            if self.inner.read_until(b'\n', &mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line += 1;
            if self.buf.last() == Some(&b'\n') {
                self.buf.pop();
                if self.buf.last() == Some(&b'\r') {
                    self.buf.pop();
                }
            }
            if self.buf.is_empty() {
                self.blank_at.get_or_insert(self.line);
                continue;
            }
            if let Some(blank) = self.blank_at {
                return Err(ParseError::at(blank, ParseErrorKind::Malformed("blank line")).into());
            }
            let text = String::from_utf8(std::mem::take(&mut self.buf))
                .map_err(|_| ParseError::at(self.line, ParseErrorKind::InvalidUtf8))?;
            return Ok(Some((self.line, text)));
        }
    }
}

/// Fixed six-decimal rendering used by every text format.
pub(crate) fn decimal(x: f64) -> String {
    format!("{x:.6}")
}

pub(crate) fn invalid_label(label: &str) -> io::Error {
    io::Error::new(
        io::ErrorKind::InvalidInput,
        format!("label {label:?} cannot be written as a TSV field"),
    )
}

pub(crate) fn tsv_safe(label: &str) -> bool {
    !label.is_empty() && !label.contains(['\t', '\n', '\r'])
}
