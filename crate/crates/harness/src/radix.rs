//! LSD radix sort baseline: 8-bit digits, one counting pass per byte of the
//! key regardless of the data, so always eight passes for 64-bit keys.

use zsort::Record;

pub const DIGIT_BITS: u32 = 8;
pub const PASSES: usize = (64 / DIGIT_BITS) as usize;

/// Sign bit flipped so unsigned byte order matches signed key order.
#[inline(always)]
fn ordered(key: i64) -> u64 {
    (key as u64) ^ (1 << 63)
}

pub fn lsd_radix_sort_stable<P: Copy>(records: &[Record<P>]) -> Vec<Record<P>> {
    lsd_radix_sort_counted(records).0
}

/// Sorts and reports how many distribution passes ran.
pub fn lsd_radix_sort_counted<P: Copy>(records: &[Record<P>]) -> (Vec<Record<P>>, usize) {
    let mut a = records.to_vec();
    if a.is_empty() {
        return (a, 0);
    }
    let mut b = a.clone();
    let mut passes = 0;
    for pass in 0..PASSES {
        let shift = pass as u32 * DIGIT_BITS;
        let digit = |r: &Record<P>| ((ordered(r.key) >> shift) & 0xff) as usize;
        let mut offsets = [0usize; 256];
        for r in a.iter() {
            offsets[digit(r)] += 1;
        }
        let mut running = 0;
        for o in offsets.iter_mut() {
            let c = *o;
            *o = running;
            running += c;
        }
        for r in a.iter() {
            let d = digit(r);
            b[offsets[d]] = *r;
            offsets[d] += 1;
        }
        std::mem::swap(&mut a, &mut b);
        passes += 1;
    }
    (a, passes)
}
