//! Leaf sorts for small or narrow segments.

use crate::error::SortError;
use crate::record::Record;

/// Stable in-place insertion sort.
#[inline]
pub fn insertion_sort_in_place<P: Copy>(v: &mut [Record<P>]) {
    for i in 1..v.len() {
        let cur = v[i];
        let mut j = i;
        while j > 0 && v[j - 1].key > cur.key {
            v[j] = v[j - 1];
            j -= 1;
        }
        v[j] = cur;
    }
}

/// Insertion sorts `src` into `dst`, keeping equal keys in `src` order.
///
/// # Panics
/// If the slices differ in length.
pub fn insertion_sort_stable<P: Copy>(src: &[Record<P>], dst: &mut [Record<P>]) {
    dst.copy_from_slice(src);
    insertion_sort_in_place(dst);
}

/// Stable counting sort for segments whose keys lie in `[min_key, max_key]`
/// with `max_key - min_key < limit`.
pub fn counting_sort_stable<P: Copy>(
    src: &[Record<P>],
    min_key: i64,
    max_key: i64,
    limit: usize,
    dst: &mut [Record<P>],
) -> Result<(), SortError> {
    let range = max_key as i128 - min_key as i128;
    if range < 0 || range >= limit as i128 {
        return Err(SortError::RangeTooWide { range, limit });
    }
    let mut hist = Vec::new();
    counting_sort_with(src, min_key, range as usize + 1, dst, &mut hist);
    Ok(())
}

/// Counting sort core. `slots` is `max - min + 1`; `hist` is scratch that is
/// reused across calls.
pub(crate) fn counting_sort_with<P: Copy>(
    src: &[Record<P>],
    min_key: i64,
    slots: usize,
    dst: &mut [Record<P>],
    hist: &mut Vec<usize>,
) {
    assert_eq!(
        src.len(),
        dst.len(),
        "counting sort destination size mismatch"
    );
    hist.clear();
    hist.resize(slots, 0);
    let slot = |key: i64| key.wrapping_sub(min_key) as u64 as usize;
    for r in src {
        hist[slot(r.key)] += 1;
    }
    let mut running = 0;
    for h in hist.iter_mut() {
        let c = *h;
        *h = running;
        running += c;
    }
    for r in src {
        let s = slot(r.key);
        dst[hist[s]] = *r;
        hist[s] += 1;
    }
}
