//! Bottom-up stable merge sort. Serves as the termination fallback inside
//! zsort, as the comparison baseline in benchmarks, and as the reference
//! oracle in tests.

use crate::record::Record;

/// Runs of this length are insertion sorted before merging starts.
const RUN: usize = 16;

/// Returns a stably key-sorted copy of `records`.
pub fn merge_sort_stable<P: Copy>(records: &[Record<P>]) -> Vec<Record<P>> {
    let mut data = records.to_vec();
    if data.len() > 1 {
        let mut buf = data.clone();
        merge_sort_with_buffer(&mut data, &mut buf);
    }
    data
}

/// Sorts `src` into `dst`; `src` is used as scratch and left unspecified.
pub fn fallback_sort_stable<P: Copy>(src: &mut [Record<P>], dst: &mut [Record<P>]) {
    dst.copy_from_slice(src);
    merge_sort_with_buffer(dst, src);
}

/// Stable sort of `data` using `buf` (same length) as auxiliary storage.
pub fn merge_sort_with_buffer<P: Copy>(data: &mut [Record<P>], buf: &mut [Record<P>]) {
    let n = data.len();
    assert_eq!(n, buf.len(), "merge buffer size mismatch");
    if n < 2 {
        return;
    }
    for chunk in data.chunks_mut(RUN) {
        crate::small::insertion_sort_in_place(chunk);
    }
    let mut width = RUN;
    let mut in_data = true;
    while width < n {
        if in_data {
            merge_pass(data, buf, width);
        } else {
            merge_pass(buf, data, width);
        }
        in_data = !in_data;
        width *= 2;
    }
    if !in_data {
        data.copy_from_slice(buf);
    }
}

fn merge_pass<P: Copy>(src: &[Record<P>], dst: &mut [Record<P>], width: usize) {
    let n = src.len();
    let mut lo = 0;
    while lo < n {
        let mid = (lo + width).min(n);
        let hi = (lo + 2 * width).min(n);
        merge(&src[lo..mid], &src[mid..hi], &mut dst[lo..hi]);
        lo = hi;
    }
}

#[inline]
fn merge<P: Copy>(left: &[Record<P>], right: &[Record<P>], out: &mut [Record<P>]) {
    let (mut i, mut j, mut o) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        // ties take from the left run
        if right[j].key < left[i].key {
            out[o] = right[j];
            j += 1;
        } else {
            out[o] = left[i];
            i += 1;
        }
        o += 1;
    }
    let tail_left = left.len() - i;
    out[o..o + tail_left].copy_from_slice(&left[i..]);
    o += tail_left;
    out[o..].copy_from_slice(&right[j..]);
}
