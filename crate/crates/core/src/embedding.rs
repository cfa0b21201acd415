//! Word vector storage and cosine-similarity queries.
//!
//! Vectors are kept exactly as ingested; norms are cached as squared sums and
//! normalization happens inside the similarity computation.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::par;

/// A vocabulary of unique words, each mapped to a `dim`-component vector.
///
/// Insertion order defines node ids: the first word pushed is node 0.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingStore {
    dim: usize,
    words: Vec<String>,
    index: BTreeMap<String, usize>,
    data: Vec<f64>,
    sq_norms: Vec<f64>,
}

/// One entry of a neighbor query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarNeighbor {
    pub index: usize,
    /// Cosine similarity to the query, always in `(0, 1]`.
    pub similarity: f64,
}

impl EmbeddingStore {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            words: Vec::new(),
            index: BTreeMap::new(),
            data: Vec::new(),
            sq_norms: Vec::new(),
        })
    }

    /// Builds a store from `(word, vector)` rows, validating each one.
    pub fn from_rows<I, W, V>(dim: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, V)>,
        W: Into<String>,
        V: AsRef<[f64]>,
    {
        let mut store = Self::new(dim)?;
        for (word, vector) in rows {
            store.push(word, vector.as_ref())?;
        }
        Ok(store)
    }

    /// Appends a word and returns its node id.
    ///
    /// Rejects empty or duplicate words, vectors of the wrong length,
    /// non-finite components and the all-zeros vector.
    pub fn push(&mut self, word: impl Into<String>, vector: &[f64]) -> Result<usize> {
        let word = word.into();
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        if vector.len() != self.dim {
            return Err(Error::WrongComponentCount {
                word,
                expected: self.dim,
                found: vector.len(),
            });
        }
        if let Some(position) = vector.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteComponent { word, position });
        }
        if vector.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroVector { word });
        }
        if self.index.contains_key(&word) {
            return Err(Error::DuplicateWord { word });
        }
        let sq = dot(vector, vector);
        if sq == 0.0 {
            // Every component underflows when squared.
            return Err(Error::ZeroVector { word });
        }
        let id = self.words.len();
        self.index.insert(word.clone(), id);
        self.words.push(word);
        self.data.extend_from_slice(vector);
        self.sq_norms.push(sq);
        Ok(id)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word(&self, id: usize) -> Option<&str> {
        self.words.get(id).map(String::as_str)
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn vector(&self, id: usize) -> Option<&[f64]> {
        (id < self.len()).then(|| self.row(id))
    }

    fn row(&self, id: usize) -> &[f64] {
        &self.data[id * self.dim..(id + 1) * self.dim]
    }

    fn check(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: id, node_count: self.len() })
        }
    }

    /// Cosine similarity between two stored words.
    pub fn similarity(&self, a: usize, b: usize) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.similarity_unchecked(a, b))
    }

    fn similarity_unchecked(&self, a: usize, b: usize) -> f64 {
        let d = dot(self.row(a), self.row(b));
        cosine_from_parts(d, self.sq_norms[a], self.sq_norms[b])
    }

    /// The `k` most similar words to `query`, excluding the query itself.
    ///
    /// Only neighbors with similarity `>= floor` and `> 0` are returned.
    /// Results are sorted by descending similarity, ties by ascending id.
    pub fn top_k_neighbors(&self, query: usize, k: usize, floor: f64) -> Result<Vec<SimilarNeighbor>> {
        self.check(query)?;
        check_floor(floor)?;
        Ok(self.top_k_unchecked(query, k, floor))
    }

    /// Runs [`top_k_neighbors`](Self::top_k_neighbors) for every word.
    ///
    /// Queries are independent and run in parallel under the `parallel`
    /// feature; the output is indexed by query id either way.
    pub fn all_top_k(&self, k: usize, floor: f64) -> Result<Vec<Vec<SimilarNeighbor>>> {
        check_floor(floor)?;
        Ok(par::map_range(0..self.len(), |q| self.top_k_unchecked(q, k, floor)))
    }

    fn top_k_unchecked(&self, query: usize, k: usize, floor: f64) -> Vec<SimilarNeighbor> {
        if k == 0 {
            return Vec::new();
        }
        let q = self.row(query);
        let q_sq = self.sq_norms[query];
        let mut hits: Vec<SimilarNeighbor> = Vec::new();
        for (j, row) in self.data.chunks_exact(self.dim).enumerate() {
            if j == query {
                continue;
            }
            let similarity = cosine_from_parts(dot(q, row), q_sq, self.sq_norms[j]);
            if similarity > 0.0 && similarity >= floor {
                hits.push(SimilarNeighbor { index: j, similarity });
            }
        }
        if hits.len() > k {
            hits.select_nth_unstable_by(k - 1, rank_order);
            hits.truncate(k);
        }
        hits.sort_unstable_by(rank_order);
        hits
    }
}

fn rank_order(a: &SimilarNeighbor, b: &SimilarNeighbor) -> Ordering {
    b.similarity
        .total_cmp(&a.similarity)
        .then(a.index.cmp(&b.index))
}

fn check_floor(floor: f64) -> Result<()> {
    if floor > 0.0 && floor < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidFloor(floor))
    }
}

/// Cosine similarity of two equal-length, nonzero vectors.
///
/// The result is exactly symmetric in its arguments and exactly `1.0` for
/// `cosine_similarity(v, v)`.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let (sa, sb) = (dot(a, a), dot(b, b));
    if sa == 0.0 || sb == 0.0 || !sa.is_finite() || !sb.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok(cosine_from_parts(dot(a, b), sa, sb))
}

// sqrt(x * x) == |x| under round-to-nearest, so dividing by the root of the
// product of squared norms keeps self-similarity at exactly 1.
#[inline]
fn cosine_from_parts(dot: f64, sq_a: f64, sq_b: f64) -> f64 {
    (dot / libm::sqrt(sq_a * sq_b)).clamp(-1.0, 1.0)
}

/// Dot product with four independent accumulators so the loop vectorizes.
/// Each term is `a[i] * b[i]`, which is commutative, so `dot(a, b)` and
/// `dot(b, a)` agree bit for bit.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut tail = 0.0;
    for (x, y) in ra.iter().zip(rb) {
        tail += x * y;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}
