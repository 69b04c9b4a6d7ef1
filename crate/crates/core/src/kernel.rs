//! Per-order observations: the second difference `χ(o)_ij` and the alternating sum `χ(o)_T`.

use crate::coalition::Coalition;
use crate::error::{invalid, Error, Result};
use crate::measure::Measure;
use crate::scalar::Scalar;

/// Largest `|T|` accepted by the alternating-sum kernel (`2^|T|` evaluations).
pub const MAX_KERNEL_SET: usize = 20;

/// `μ(P∪{i,j}) − μ(P∪{i}) − μ(P∪{j}) + μ(P)` from its four values.
///
/// Averaging the two groupings makes the result exactly symmetric in `i` and `j`, and
/// exact whenever the first differences are.
pub fn second_difference<T: Scalar>(both: T, with_i: T, with_j: T, neither: T) -> T {
    let via_i = (both - with_i) - (with_j - neither);
    let via_j = (both - with_j) - (with_i - neither);
    (via_i + via_j) / (T::one() + T::one())
}

/// `Σ_{L ⊆ T} (−1)^{|T|−|L|} f(L)` where `L` is given as a bitmask over `T`'s elements.
pub(crate) fn alternating_sum<T: Scalar>(size: usize, mut value_of: impl FnMut(usize) -> T) -> T {
    match size {
        0 => value_of(0),
        1 => value_of(1) - value_of(0),
        2 => second_difference(value_of(3), value_of(1), value_of(2), value_of(0)),
        _ => {
            let mut lattice: Vec<T> = (0..1usize << size).map(&mut value_of).collect();
            for bit in 0..size {
                for mask in (0..lattice.len()).filter(|m| m >> bit & 1 == 1) {
                    let lower = lattice[mask ^ 1 << bit];
                    lattice[mask] -= lower;
                }
            }
            lattice[lattice.len() - 1]
        }
    }
}

/// Subsets of `set` as element lists, indexed by bitmask.
pub(crate) fn subset_lists(set: &[usize]) -> Vec<Vec<usize>> {
    (0..1usize << set.len())
        .map(|mask| set.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect())
        .collect()
}

fn check_outside<T: Scalar, M: Measure<T>>(measure: &M, pred: &Coalition, elements: &[usize]) -> Result<()> {
    pred.same_ground(measure.ground())?;
    let players = measure.players();
    if !pred.is_subset(&players) {
        return invalid("predecessor set contains non-players");
    }
    for &e in elements {
        if !players.contains(e) {
            return invalid(format!("element {} is not a player of the measure", e + 1));
        }
        if pred.contains(e) {
            return invalid(format!("element {} already belongs to the predecessor set", e + 1));
        }
    }
    Ok(())
}

pub fn chi_pair<T: Scalar, M: Measure<T>>(measure: &M, pred: &Coalition, i: usize, j: usize) -> Result<T> {
    if i == j {
        return invalid("interaction kernel needs two distinct elements");
    }
    check_outside(measure, pred, &[i, j])?;
    let with_i = pred.with(i);
    let both = with_i.with(j);
    Ok(second_difference(measure.value(&both), measure.value(&with_i), measure.value(&pred.with(j)), measure.value(pred)))
}

/// `χ_T = Σ_{L ⊆ T} (−1)^{|T|−|L|} μ(pred ∪ L)`.
pub fn chi_t<T: Scalar, M: Measure<T>>(measure: &M, pred: &Coalition, set: &Coalition) -> Result<T> {
    set.same_ground(measure.ground())?;
    let elements = set.to_vec();
    if elements.is_empty() {
        return invalid("interaction set must be non-empty");
    }
    if elements.len() > MAX_KERNEL_SET {
        return Err(Error::Capability(format!("alternating sums over more than {MAX_KERNEL_SET} elements")));
    }
    check_outside(measure, pred, &elements)?;
    let subsets = subset_lists(&elements);
    Ok(alternating_sum(elements.len(), |mask| {
        let mut s = pred.clone();
        for &e in &subsets[mask] {
            s.insert(e);
        }
        measure.value(&s)
    }))
}

/// `χ_T` at a cursor positioned on the predecessor set.
pub(crate) fn chi_t_at<T: Scalar, M: Measure<T>>(measure: &M, cursor: &M::Cursor, subsets: &[Vec<usize>]) -> T {
    let size = subsets.len().trailing_zeros() as usize;
    alternating_sum(size, |mask| measure.peek(cursor, &subsets[mask]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{presets, AdditiveMeasure, TableMeasure};
    use crate::{GroundSet, Rational};
    use proptest::prelude::*;

    fn prefix(n: usize, k: usize) -> Coalition {
        Coalition::from_elements(GroundSet::new(n).unwrap(), 0..k).unwrap()
    }

    fn unanimity3() -> TableMeasure<f64> {
        let mut v = vec![0.0; 8];
        v[7] = 1.0;
        TableMeasure::new(3, v).unwrap()
    }

    #[test]
    fn chi_pair_on_mu1_at_thresholds() {
        let mu1 = presets::mu1::<f64>();
        assert_eq!(chi_pair(&mu1, &prefix(100, 39), 98, 99).unwrap(), 0.05);
        assert!((chi_pair(&mu1, &prefix(100, 59), 98, 99).unwrap() + 0.05).abs() < 1e-15);
        assert_eq!(chi_pair(&mu1, &prefix(100, 20), 98, 99).unwrap(), 0.0);
    }

    #[test]
    fn chi_pair_is_zero_for_dyadic_additive() {
        let w: Vec<f64> = (1..=6).map(|k| k as f64 / 64.0).collect();
        let m = AdditiveMeasure::new(w).unwrap();
        for mask in 0u64..64 {
            let pred = Coalition::from_mask(m_ground(&m), mask).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    if i != j && !pred.contains(i) && !pred.contains(j) {
                        assert_eq!(chi_pair(&m, &pred, i, j).unwrap(), 0.0);
                    }
                }
            }
        }
    }

    fn m_ground<M: Measure<f64>>(m: &M) -> GroundSet {
        m.ground()
    }

    #[test]
    fn chi_pair_errors() {
        let mu1 = presets::mu1::<f64>();
        assert!(chi_pair(&mu1, &prefix(100, 3), 5, 5).is_err());
        assert!(chi_pair(&mu1, &prefix(100, 3), 1, 5).is_err());
        assert!(chi_pair(&mu1, &prefix(99, 3), 50, 60).is_err());
    }

    #[test]
    fn chi_t_hand_values() {
        let u = unanimity3();
        let ground = u.ground();
        let all = Coalition::full(ground);
        assert_eq!(chi_t(&u, &Coalition::empty(ground), &all).unwrap(), 1.0);

        let t = Coalition::from_elements(ground, [2]).unwrap();
        let pred = Coalition::from_elements(ground, [0, 1]).unwrap();
        assert_eq!(chi_t(&u, &pred, &t).unwrap(), 1.0);

        assert!(chi_t(&u, &Coalition::empty(ground), &Coalition::empty(ground)).is_err());
        assert!(chi_t(&u, &pred, &all).is_err());
    }

    #[test]
    fn rational_kernels_are_exact() {
        let w = vec![Rational::ratio(1, 3), Rational::ratio(1, 7), Rational::ratio(2, 11)];
        let m = AdditiveMeasure::new(w).unwrap();
        let ground = m.ground();
        let t = Coalition::full(ground);
        assert_eq!(chi_t(&m, &Coalition::empty(ground), &t).unwrap(), Rational::ratio(0, 1));
        assert_eq!(chi_pair(&m, &Coalition::empty(ground), 0, 2).unwrap(), Rational::ratio(0, 1));
    }

    fn random_table(n: usize, raw: &[u16]) -> TableMeasure<f64> {
        // sorted random values over a chain of sizes keep the table monotone
        let mut values: Vec<f64> = (0..1usize << n)
            .map(|mask| {
                let size = (mask as u32).count_ones() as f64;
                (size + (raw[mask % raw.len()] as f64 / 65536.0) * 0.9) / (n as f64 + 1.0)
            })
            .collect();
        values[0] = 0.0;
        TableMeasure::new(n, values).unwrap()
    }

    proptest! {
        #[test]
        fn chi_pair_is_symmetric(n in 3usize..=8, raw in prop::collection::vec(any::<u16>(), 1..64), i in 0usize..8, j in 0usize..8, mask in any::<u64>()) {
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let m = random_table(n, &raw);
            let mut pred = Coalition::from_mask(m.ground(), mask & ((1 << n) - 1)).unwrap();
            pred.remove(i);
            pred.remove(j);
            prop_assert_eq!(chi_pair(&m, &pred, i, j).unwrap(), chi_pair(&m, &pred, j, i).unwrap());
        }

        #[test]
        fn chi_t_collapses_to_lower_kernels(n in 3usize..=8, raw in prop::collection::vec(any::<u16>(), 1..64), i in 0usize..8, j in 0usize..8, mask in any::<u64>()) {
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let m = random_table(n, &raw);
            let ground = m.ground();
            let mut pred = Coalition::from_mask(ground, mask & ((1 << n) - 1)).unwrap();
            pred.remove(i);
            pred.remove(j);
            let single = Coalition::from_elements(ground, [i]).unwrap();
            prop_assert_eq!(chi_t(&m, &pred, &single).unwrap(), m.value(&pred.with(i)) - m.value(&pred));
            let pair = Coalition::from_elements(ground, [i, j]).unwrap();
            prop_assert_eq!(chi_t(&m, &pred, &pair).unwrap(), chi_pair(&m, &pred, i, j).unwrap());
        }

        #[test]
        fn chi_t_matches_signed_sum(n in 3usize..=8, raw in prop::collection::vec(any::<u16>(), 1..64), tmask in 1u64..8, shift in 0usize..6, mask in any::<u64>()) {
            let m = random_table(n, &raw);
            let ground = m.ground();
            let full = (1u64 << n) - 1;
            let t_bits = (tmask << shift.min(n - 3)) & full;
            let t = Coalition::from_mask(ground, t_bits).unwrap();
            let pred = Coalition::from_mask(ground, mask & full & !t_bits).unwrap();
            let elems = t.to_vec();
            let direct: f64 = (0..1usize << elems.len()).map(|l| {
                let mut s = pred.clone();
                let mut size = 0;
                for (b, &e) in elems.iter().enumerate() {
                    if l >> b & 1 == 1 { s.insert(e); size += 1; }
                }
                let sign = if (elems.len() - size).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * m.value(&s)
            }).sum();
            prop_assert!((chi_t(&m, &pred, &t).unwrap() - direct).abs() < 1e-14);
        }
    }
}
