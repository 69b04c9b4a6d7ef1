use rand::seq::SliceRandom;
use rand::Rng;

use crate::coalition::{Coalition, GroundSet, Order};
use crate::error::{invalid, Result};

/// Uniform random order of the whole ground set (Fisher-Yates).
pub fn sample_uniform_order<R: Rng + ?Sized>(ground: GroundSet, rng: &mut R) -> Order {
    sample_order_excluding(ground, &Coalition::empty(ground), rng).expect("empty exclusion is valid")
}

/// Uniform random order of the ground set minus `excluded`.
pub fn sample_order_excluding<R: Rng + ?Sized>(ground: GroundSet, excluded: &Coalition, rng: &mut R) -> Result<Order> {
    excluded.same_ground(ground)?;
    let mut sequence: Vec<usize> = ground.elements().filter(|&e| !excluded.contains(e)).collect();
    sequence.shuffle(rng);
    Ok(Order::from_parts_unchecked(ground, excluded.clone(), sequence))
}

/// Uniform random order of `X ∖ {i}` with `j` at (1-based) position `position`.
pub fn sample_stratum_order<R: Rng + ?Sized>(
    ground: GroundSet,
    i: usize,
    j: usize,
    position: usize,
    rng: &mut R,
) -> Result<Order> {
    ground.check(i)?;
    ground.check(j)?;
    if i == j {
        return invalid("stratum needs two distinct elements");
    }
    if !(1..ground.len()).contains(&position) {
        return invalid(format!("position {position} outside 1..={}", ground.len() - 1));
    }
    let mut sequence: Vec<usize> = ground.elements().filter(|&e| e != i && e != j).collect();
    sequence.shuffle(rng);
    sequence.insert(position - 1, j);
    Ok(Order::from_parts_unchecked(ground, Coalition::from_elements(ground, [i])?, sequence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng::{substream, Stream};
    use std::collections::HashMap;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn single_remaining_element() {
        let mut rng = substream(0, Stream::User, 0);
        let excluded = Coalition::from_elements(g(2), [0]).unwrap();
        let o = sample_order_excluding(g(2), &excluded, &mut rng).unwrap();
        assert_eq!(o.sequence(), &[1]);
    }

    #[test]
    fn uniform_over_six_orders() {
        let mut rng = substream(11, Stream::User, 0);
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        let draws = 60_000;
        for _ in 0..draws {
            *counts.entry(sample_uniform_order(g(3), &mut rng).sequence().to_vec()).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = draws as f64 / 6.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 5 degrees of freedom, upper 0.001 point
        assert!(chi2 < 20.515, "chi2 = {chi2}");
    }

    #[test]
    fn draws_are_reproducible() {
        let a = sample_uniform_order(g(20), &mut substream(5, Stream::User, 3));
        let b = sample_uniform_order(g(20), &mut substream(5, Stream::User, 3));
        assert_eq!(a, b);
        Order::full(g(20), a.sequence().to_vec()).unwrap();
    }

    #[test]
    fn stratum_orders() {
        let mut rng = substream(2, Stream::User, 0);
        let o = sample_stratum_order(g(3), 0, 1, 1, &mut rng).unwrap();
        assert_eq!(o.sequence(), &[1, 2]);
        for _ in 0..100 {
            let o = sample_stratum_order(g(9), 4, 7, 5, &mut rng).unwrap();
            assert_eq!(o.position(7), Some(4));
            assert_eq!(o.position(4), None);
            assert_eq!(o.sequence().len(), 8);
        }
        assert!(sample_stratum_order(g(4), 0, 1, 0, &mut rng).is_err());
        assert!(sample_stratum_order(g(4), 0, 1, 4, &mut rng).is_err());
        assert!(sample_stratum_order(g(4), 1, 1, 2, &mut rng).is_err());
    }

    #[test]
    fn stratum_binomial() {
        let mut rng = substream(9, Stream::User, 0);
        let draws = 20_000;
        let first = (0..draws)
            .filter(|_| sample_stratum_order(g(4), 0, 1, 2, &mut rng).unwrap().sequence() == [2, 1, 3])
            .count() as f64;
        let sd = (draws as f64 * 0.25).sqrt();
        assert!((first - draws as f64 / 2.0).abs() < 3.0 * sd, "{first}");
    }
}
