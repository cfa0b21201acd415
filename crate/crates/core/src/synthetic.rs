//! Deterministic synthetic embeddings with planted cluster structure.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::embedding::{dot, EmbeddingStore};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub clusters: usize,
    pub words_per_cluster: usize,
    pub dim: usize,
    /// Standard deviation of the per-component Gaussian noise.
    pub noise: f64,
    pub seed: u64,
}

/// Generates `clusters * words_per_cluster` words named `c<i>_w<j>`.
///
/// Each cluster has a unit-norm center; each word is its center plus
/// isotropic Gaussian noise, renormalized to unit length. When
/// `clusters <= dim` the centers are orthonormal, otherwise they are
/// independent random unit vectors. Returns the store and the planted
/// cluster of every word (indexed by node id).
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<(EmbeddingStore, Vec<usize>)> {
    let &SyntheticSpec { clusters, words_per_cluster, dim, noise, seed } = spec;
    if clusters == 0 {
        return Err(Error::InvalidParameter { name: "clusters", reason: "must be positive" });
    }
    if words_per_cluster == 0 {
        return Err(Error::InvalidParameter {
            name: "words_per_cluster",
            reason: "must be positive",
        });
    }
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(noise.is_finite() && noise >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "noise",
            reason: "must be finite and non-negative",
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers = cluster_centers(&mut rng, clusters, dim);

    let mut store = EmbeddingStore::new(dim)?;
    let mut labels = Vec::with_capacity(clusters * words_per_cluster);
    let mut v = vec![0.0; dim];
    for (c, center) in centers.iter().enumerate() {
        for w in 0..words_per_cluster {
            loop {
                for (x, &m) in v.iter_mut().zip(center) {
                    let e: f64 = rng.sample(StandardNormal);
                    *x = m + noise * e;
                }
                if normalize(&mut v) {
                    break;
                }
            }
            store.push(format!("c{c}_w{w}"), &v)?;
            labels.push(c);
        }
    }
    Ok((store, labels))
}

fn cluster_centers(rng: &mut ChaCha8Rng, clusters: usize, dim: usize) -> Vec<Vec<f64>> {
    let orthogonal = clusters <= dim;
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(clusters);
    while centers.len() < clusters {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if orthogonal {
            // Modified Gram-Schmidt, run twice for numerical orthogonality.
            for _ in 0..2 {
                for c in &centers {
                    let p = dot(&v, c);
                    for (x, y) in v.iter_mut().zip(c) {
                        *x -= p * y;
                    }
                }
            }
        }
        if normalize(&mut v) && (!orthogonal || libm::sqrt(dot(&v, &v)) > 0.5) {
            centers.push(v);
        }
    }
    centers
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = libm::sqrt(dot(v, v));
    if !(norm > 1e-12) {
        return false;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(clusters: usize, words: usize, dim: usize, noise: f64, seed: u64) -> SyntheticSpec {
        SyntheticSpec { clusters, words_per_cluster: words, dim, noise, seed }
    }

    #[test]
    fn zero_noise_collapses_clusters() {
        let (s, labels) = generate_synthetic(&spec(2, 3, 8, 0.0, 1)).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(s.word(4), Some("c1_w1"));
        for a in 0..6 {
            for b in 0..6 {
                let sim = s.similarity(a, b).unwrap();
                if labels[a] == labels[b] {
                    assert_eq!(sim, 1.0);
                } else {
                    assert!(sim < 1.0);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_store() {
        let a = generate_synthetic(&spec(3, 4, 5, 0.1, 99)).unwrap();
        let b = generate_synthetic(&spec(3, 4, 5, 0.1, 99)).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(&spec(3, 4, 5, 0.1, 100)).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn centers_are_orthonormal_when_they_fit() {
        let (s, _) = generate_synthetic(&spec(6, 1, 6, 0.0, 3)).unwrap();
        for a in 0..6 {
            for b in (a + 1)..6 {
                assert!(s.similarity(a, b).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_synthetic(&spec(0, 1, 2, 0.0, 0)).is_err());
        assert!(generate_synthetic(&spec(1, 0, 2, 0.0, 0)).is_err());
        assert!(generate_synthetic(&spec(1, 1, 0, 0.0, 0)).is_err());
        assert!(generate_synthetic(&spec(1, 1, 2, -0.1, 0)).is_err());
        assert!(generate_synthetic(&spec(1, 1, 2, f64::NAN, 0)).is_err());
    }
}
