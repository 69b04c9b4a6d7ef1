//! Exact indices by brute force (subset and order formulas) and closed forms for
//! the built-in measure families.
//!
//! All routines work over the *players* of a measure, so derived measures are
//! handled with their reduced ground set.

mod closed_form;

pub use closed_form::{
    bicluster_exact_interaction, cardinality_exact_interaction, hypergeometric_pmf, maxweight_exact_interaction,
};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{invalid, Error, Result};
use crate::kernel::{alternating_sum, subset_lists, MAX_KERNEL_SET};
use crate::measure::Measure;
use crate::scalar::{ExactSum, Scalar};

/// Largest player count for the subset formulas.
pub const MAX_SUBSET_PLAYERS: usize = 26;
/// Largest number of permuted elements for the order formulas.
pub const MAX_ORDER_ELEMENTS: usize = 9;

/// `ζ_k^t = (n−k−t)! k! / (n−t+1)!` for `k = 0..=n−t`, by the ratio
/// `ζ_{k+1}^t / ζ_k^t = (k+1) / (n−k−t)`.
///
/// `t = 1` gives the Shapley weights `γ_k`, `t = 2` the interaction weights `ζ_k`.
pub fn stratum_weights<T: Scalar>(n: usize, t: usize) -> Result<Vec<T>> {
    if t == 0 || t > n {
        return invalid(format!("set size {t} outside 1..={n}"));
    }
    let free = n - t;
    let mut w = Vec::with_capacity(free + 1);
    let mut current = T::one() / T::from_count(free + 1);
    w.push(current);
    for k in 0..free {
        current = current * T::from_count(k + 1) / T::from_count(free - k);
        w.push(current);
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactWeights<T> {
    pub gamma: Vec<T>,
    pub zeta: Vec<T>,
    pub zeta_t: Vec<T>,
}

impl<T: Scalar> ExactWeights<T> {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n < 2 {
            return invalid("weights need at least two elements");
        }
        Ok(Self { gamma: stratum_weights(n, 1)?, zeta: stratum_weights(n, 2)?, zeta_t: stratum_weights(n, t)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactMethod {
    SubsetFormula,
    OrderEnumeration,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult<T> {
    pub value: T,
    pub method: ExactMethod,
    /// Measure evaluations performed.
    pub evaluations: u64,
}

fn check_set<T: Scalar, M: Measure<T>>(measure: &M, set: &Coalition) -> Result<(Vec<usize>, Vec<usize>)> {
    set.same_ground(measure.ground())?;
    let players = measure.players();
    if set.is_empty() {
        return invalid("interaction set must be non-empty");
    }
    if !set.is_subset(&players) {
        return invalid("interaction set contains non-players");
    }
    if set.len() > MAX_KERNEL_SET {
        return Err(Error::Capability(format!("sets larger than {MAX_KERNEL_SET} elements")));
    }
    Ok((set.to_vec(), players.difference(set).to_vec()))
}

fn pair_set<T: Scalar, M: Measure<T>>(measure: &M, i: usize, j: usize) -> Result<Coalition> {
    let ground = measure.ground();
    ground.check(i)?;
    ground.check(j)?;
    if i == j {
        return invalid("interaction needs two distinct elements");
    }
    Coalition::from_elements(ground, [i, j])
}

/// `I_T = Σ_{K ⊆ X∖T} ζ_{|K|}^{|T|} χ_T(K)`, enumerating `K` in Gray-code order.
pub fn interaction_t_exact<T: Scalar, M: Measure<T>>(measure: &M, set: &Coalition) -> Result<ExactResult<T>> {
    let (members, rest) = check_set(measure, set)?;
    let n = members.len() + rest.len();
    if n > MAX_SUBSET_PLAYERS {
        return Err(Error::Capability(format!(
            "subset formula supports at most {MAX_SUBSET_PLAYERS} players, got {n}; use the sampling estimators"
        )));
    }
    let weights = stratum_weights::<T>(n, members.len())?;
    let subsets = subset_lists(&members);
    let mut by_size: Vec<ExactSum<T>> = (0..=rest.len()).map(|_| ExactSum::new()).collect();
    let mut current = Coalition::empty(measure.ground());
    let mut scratch = current.clone();
    let mut size = 0;
    for step in 0u64..1 << rest.len() {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            let e = rest[bit];
            if current.contains(e) {
                current.remove(e);
                size -= 1;
            } else {
                current.insert(e);
                size += 1;
            }
        }
        let chi = alternating_sum(members.len(), |mask| {
            scratch.clone_from(&current);
            for &e in &subsets[mask] {
                scratch.insert(e);
            }
            measure.value(&scratch)
        });
        by_size[size].add(chi);
    }
    let value = T::exact_sum(by_size.iter().zip(&weights).map(|(s, &w)| s.value() * w));
    Ok(ExactResult {
        value,
        method: ExactMethod::SubsetFormula,
        evaluations: (1u64 << rest.len()) << members.len(),
    })
}

pub fn shapley_exact<T: Scalar, M: Measure<T>>(measure: &M, i: usize) -> Result<ExactResult<T>> {
    measure.ground().check(i)?;
    interaction_t_exact(measure, &Coalition::from_elements(measure.ground(), [i])?)
}

pub fn interaction_exact<T: Scalar, M: Measure<T>>(measure: &M, i: usize, j: usize) -> Result<ExactResult<T>> {
    interaction_t_exact(measure, &pair_set(measure, i, j)?)
}

/// Average of `χ_T` over all orders of `X ∖ (T ∖ {pivot})`, predecessors taken at `pivot`.
pub fn interaction_t_exact_orders_with_pivot<T: Scalar, M: Measure<T>>(
    measure: &M,
    set: &Coalition,
    pivot: usize,
) -> Result<ExactResult<T>> {
    let (members, rest) = check_set(measure, set)?;
    if !set.contains(pivot) {
        return invalid(format!("pivot {} is not in the interaction set", pivot + 1));
    }
    let permuted = rest.len() + 1;
    if permuted > MAX_ORDER_ELEMENTS {
        return Err(Error::Capability(format!(
            "order enumeration supports at most {MAX_ORDER_ELEMENTS} permuted elements, got {permuted}"
        )));
    }
    let subsets = subset_lists(&members);
    let mut elements = rest;
    elements.push(pivot);
    let mut total = ExactSum::new();
    let mut orders = 0u64;
    let mut scratch = Coalition::empty(measure.ground());
    for order in elements.iter().copied().permutations(permuted) {
        let mut pred = Coalition::empty(measure.ground());
        for &e in order.iter().take_while(|&&e| e != pivot) {
            pred.insert(e);
        }
        total.add(alternating_sum(members.len(), |mask| {
            scratch.clone_from(&pred);
            for &e in &subsets[mask] {
                scratch.insert(e);
            }
            measure.value(&scratch)
        }));
        orders += 1;
    }
    Ok(ExactResult {
        value: total.value() / T::from_count(orders as usize),
        method: ExactMethod::OrderEnumeration,
        evaluations: orders << members.len(),
    })
}

/// Order form of `I_T` with the smallest element of `T` as pivot.
pub fn interaction_t_exact_orders<T: Scalar, M: Measure<T>>(measure: &M, set: &Coalition) -> Result<ExactResult<T>> {
    let pivot = set.iter().next().ok_or_else(|| Error::InvalidArgument("interaction set must be non-empty".into()))?;
    interaction_t_exact_orders_with_pivot(measure, set, pivot)
}

/// Average of `χ(o)_ij` over all orders `o` of `X ∖ {i}`.
pub fn interaction_exact_orders<T: Scalar, M: Measure<T>>(measure: &M, i: usize, j: usize) -> Result<ExactResult<T>> {
    interaction_t_exact_orders_with_pivot(measure, &pair_set(measure, i, j)?, j)
}
