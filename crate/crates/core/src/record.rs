/// A 64-bit signed key with an opaque payload that travels with it.
///
/// The sort never inspects `payload`. Tests and the harness use a `u64`
/// sequence number so stability can be checked structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Record<P = u64> {
    pub key: i64,
    pub payload: P,
}

impl<P> Record<P> {
    #[inline]
    pub const fn new(key: i64, payload: P) -> Self {
        Record { key, payload }
    }
}

/// Builds records from bare keys, numbering them `0..n` in input order.
pub fn sequenced(keys: &[i64]) -> Vec<Record<u64>> {
    keys.iter()
        .enumerate()
        .map(|(i, &key)| Record::new(key, i as u64))
        .collect()
}

pub fn keys_of<P>(records: &[Record<P>]) -> Vec<i64> {
    records.iter().map(|r| r.key).collect()
}
