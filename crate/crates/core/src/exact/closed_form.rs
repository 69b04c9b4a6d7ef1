//! Polynomial-time interaction values for the cardinality, max-weight and
//! bi-cluster families.

use statrs::function::factorial::ln_binomial;

use crate::error::{invalid, Result};
use crate::kernel::second_difference;
use crate::measure::{BiClusterMeasure, CardinalityMeasure, MaxWeightMeasure, Measure};
use crate::scalar::Scalar;

/// Common `I_ij` of a cardinality measure: the mean over predecessor sizes
/// `k = 0..=n−2` of `v(k+2) − 2v(k+1) + v(k)`.
///
/// Mathematically this telescopes to `(v(n) − v(n−1) − v(1) + v(0)) / (n−1)`; the
/// per-size sum is kept so the result is bit-identical to a stratified estimate in
/// which every position stratum was sampled.
pub fn cardinality_exact_interaction<T: Scalar>(measure: &CardinalityMeasure<T>) -> T {
    let v = measure.values();
    let n = v.len() - 1;
    let chi = (0..=n - 2).map(|k| second_difference(v[k + 2], v[k + 1], v[k + 1], v[k]));
    T::exact_sum(chi) / T::from_count(n - 1)
}

/// `I_ij` of `μ(S) = max_{k∈S} w_k`.
///
/// With `h` the element of the pair with the larger weight, `I_ij` is minus the
/// Shapley value of the other element in the airport game on `X ∖ {h}`:
/// `−Σ_v (v − v⁻) / |{k ≠ h : w_k ≥ v}|` over the distinct weight levels
/// `v ≤ min(w_i, w_j)`, `v⁻` being the previous level (0 before the first).
pub fn maxweight_exact_interaction<T: Scalar>(measure: &MaxWeightMeasure<T>, i: usize, j: usize) -> Result<T> {
    let ground = measure.ground();
    ground.check(i)?;
    ground.check(j)?;
    if i == j {
        return invalid("interaction needs two distinct elements");
    }
    let w = measure.weights();
    let (high, low) = if w[i] >= w[j] { (i, j) } else { (j, i) };
    let mut others: Vec<T> = (0..w.len()).filter(|&k| k != high).map(|k| w[k]).collect();
    others.sort_by(|a, b| a.partial_cmp(b).expect("weights are comparable"));
    let cap = w[low];
    let mut terms = Vec::new();
    let mut previous = T::zero();
    for (idx, &level) in others.iter().enumerate() {
        if level > cap {
            break;
        }
        if level > previous && (idx + 1 == others.len() || others[idx + 1] != level) {
            let at_least = others.len() - others.partition_point(|x| *x < level);
            terms.push((level - previous) / T::from_count(at_least));
            previous = level;
        }
    }
    Ok(-T::exact_sum(terms))
}

/// `C(A1,a1) C(A2,a2) / C(A1+A2, a1+a2)`, computed through log-binomials.
pub fn hypergeometric_pmf(a1: u64, a2: u64, total1: u64, total2: u64) -> Result<f64> {
    if a1 > total1 || a2 > total2 {
        return invalid(format!("draw ({a1}, {a2}) exceeds population ({total1}, {total2})"));
    }
    let log_p = ln_binomial(total1, a1) + ln_binomial(total2, a2) - ln_binomial(total1 + total2, a1 + a2);
    Ok(log_p.exp().min(1.0))
}

/// `I_ij` of the bi-cluster measure by conditioning on the predecessor size `k` of `j`
/// in a uniform order of `X ∖ {i}` (uniform on `0..=n−2`) and on how many of those
/// predecessors fall in group 1 (hypergeometric).
pub fn bicluster_exact_interaction(measure: &BiClusterMeasure<f64>, i: usize, j: usize) -> Result<f64> {
    let ground = measure.ground();
    ground.check(i)?;
    ground.check(j)?;
    if i == j {
        return invalid("interaction needs two distinct elements");
    }
    let (g1, g2) = measure.group_sizes();
    let i1 = measure.in_group1(i) as usize;
    let j1 = measure.in_group1(j) as usize;
    let rest1 = g1 - i1 - j1;
    let rest2 = g2 - (2 - i1 - j1);
    let n = ground.len();
    let mut terms = Vec::new();
    for k in 0..=n - 2 {
        for a1 in k.saturating_sub(rest2)..=k.min(rest1) {
            let a2 = k - a1;
            let p = hypergeometric_pmf(a1 as u64, a2 as u64, rest1 as u64, rest2 as u64)?;
            let chi = second_difference(
                measure.value_of_counts(a1 + i1 + j1, a2 + 2 - i1 - j1),
                measure.value_of_counts(a1 + i1, a2 + 1 - i1),
                measure.value_of_counts(a1 + j1, a2 + 1 - j1),
                measure.value_of_counts(a1, a2),
            );
            terms.push(p * chi);
        }
    }
    Ok(f64::exact_sum(terms) / (n - 1) as f64)
}
