#![allow(dead_code)]

use interaction_index::measure::TableMeasure;
use interaction_index::sampling::rng::{substream, Stream};
use interaction_index::Scalar;
use rand::Rng;

/// Random fuzzy measure on `n` elements with integer increments over the subset lattice,
/// normalised so that `μ(X) = 1`. Zero increments produce ties.
pub fn random_table<T: Scalar>(n: usize, seed: u64) -> TableMeasure<T> {
    let mut rng = substream(seed, Stream::User, n as u64);
    let mut raw = vec![0i64; 1 << n];
    for mask in 1..raw.len() {
        let floor = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| raw[mask ^ 1 << b]).max().unwrap();
        raw[mask] = floor + rng.gen_range(0..=12);
    }
    let full = raw[raw.len() - 1].max(1);
    let values = raw.iter().map(|&v| T::ratio(v, full)).collect();
    TableMeasure::new(n, values).expect("monotone by construction")
}

/// All subsets of `0..n` with between `lo` and `hi` elements.
pub fn subsets(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| (lo..=hi).contains(&(m.count_ones() as usize)))
        .map(|m| (0..n).filter(|b| m >> b & 1 == 1).collect())
        .collect()
}
