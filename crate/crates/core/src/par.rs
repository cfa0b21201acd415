//! Map over an index range, in parallel when the `parallel` feature is on.
//!
//! Output order always follows the input order, so callers that reduce the
//! results sequentially get the same bits either way.

use alloc::vec::Vec;
use core::ops::Range;

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    range.map(f).collect()
}
