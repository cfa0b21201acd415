//! Pair-counting agreement between two labelings.

use alloc::collections::BTreeMap;

use crate::error::{Error, Result};

/// Adjusted Rand index of two labelings of the same items.
///
/// 1 for identical clusterings (up to relabeling), close to 0 for
/// independent ones. Two trivial labelings (every item alone, or all items
/// together, on both sides) agree perfectly and score 1.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::PartitionSizeMismatch { expected: a.len(), found: b.len() });
    }
    let n = a.len() as u64;
    let mut joint: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut rows: BTreeMap<usize, u64> = BTreeMap::new();
    let mut cols: BTreeMap<usize, u64> = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let pairs = |c: u64| (c * c.saturating_sub(1) / 2) as f64;
    let index: f64 = joint.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.values().map(|&c| pairs(c)).sum();
    let total = pairs(n);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_a * sum_b / total;
    let max = (sum_a + sum_b) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_up_to_relabeling() {
        assert_eq!(adjusted_rand_index(&[0, 0, 1, 1, 2], &[5, 5, 3, 3, 9]).unwrap(), 1.0);
    }

    #[test]
    fn hand_computed_value() {
        // a = {0,1,2}{3,4,5}, b = {0,1}{2,3}{4,5}
        // cells (0,0)=2 (0,1)=1 (1,1)=1 (1,2)=2, so index = 1+0+0+1 = 2
        // sum_a = 3+3 = 6, sum_b = 1+1+1 = 3, total = 15
        // expected = 18/15 = 1.2, max = 4.5, ari = 0.8/3.3
        let ari = adjusted_rand_index(&[0, 0, 0, 1, 1, 1], &[0, 0, 1, 1, 2, 2]).unwrap();
        assert!((ari - 0.8 / 3.3).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        assert!(adjusted_rand_index(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn trivial_labelings() {
        assert_eq!(adjusted_rand_index(&[0, 0, 0], &[1, 1, 1]).unwrap(), 1.0);
        assert_eq!(adjusted_rand_index(&[], &[]).unwrap(), 1.0);
    }
}
