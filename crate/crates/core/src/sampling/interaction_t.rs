use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::estimate::EstimatorConfig;
use super::moments::Moments;
use super::parallel::for_each_block;
use super::rng::{substream, Stream};
use super::stratified::{two_stage, PositionStrata};
use crate::coalition::Coalition;
use crate::error::{invalid, Error, Result};
use crate::kernel::{chi_t_at, subset_lists, MAX_KERNEL_SET};
use crate::measure::Measure;
use crate::scalar::{ExactSum, Scalar};

const ORDERS_PER_BLOCK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetSampling {
    /// Uniform orders of `X ∖ (T ∖ {t₁})`.
    Simple,
    /// Two-stage sampling over the positions of `t₁`.
    Stratified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetEstimate<T> {
    pub estimate: T,
    pub std_error: f64,
    pub samples: u64,
}

/// Estimate of `I_T` from `config.total_data` observations of `χ_T`, pivot `t₁ = min T`.
///
/// With `|T| = 1` this is a sampled Shapley value.
pub fn estimate_interaction_t<T: Scalar, M: Measure<T>>(
    measure: &M,
    set: &Coalition,
    config: &EstimatorConfig,
    sampling: SetSampling,
) -> Result<SetEstimate<T>> {
    config.validate()?;
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
    let members = set.to_vec();
    let players = players.to_vec();
    match sampling {
        SetSampling::Simple => simple(measure, &members, &players, config),
        SetSampling::Stratified => {
            let design = PositionStrata::new(measure, &players, vec![members]);
            let (stages, _) = two_stage(&design, config.total_data, config.pilot_fraction, config.seed, config.workers)?;
            let positions = design.positions();
            let mut means = ExactSum::new();
            let mut var_sum = 0.0;
            let mut samples = 0;
            for s in 0..positions {
                let m = stages.combined(s);
                means.add(m.mean().expect("every stratum has pilot draws"));
                var_sum += m.variance().map_or(0.0, |v| v.to_f64().max(0.0)) / m.count() as f64;
                samples += m.count();
            }
            Ok(SetEstimate {
                estimate: means.value() / T::from_count(positions),
                std_error: var_sum.sqrt() / positions as f64,
                samples,
            })
        }
    }
}

fn simple<T: Scalar, M: Measure<T>>(
    measure: &M,
    members: &[usize],
    players: &[usize],
    config: &EstimatorConfig,
) -> Result<SetEstimate<T>> {
    let pivot = members[0];
    let subsets = subset_lists(members);
    let permuted: Vec<usize> = players.iter().copied().filter(|e| *e == pivot || !members.contains(e)).collect();
    let orders = config.total_data;
    let blocks = orders.div_ceil(ORDERS_PER_BLOCK) as usize;
    let run_block = |block: usize| {
        let mut moments = Moments::new();
        let mut rng = substream(config.seed, Stream::SetBlock, block as u64);
        let mut order = permuted.clone();
        let start = block as u64 * ORDERS_PER_BLOCK;
        for _ in start..orders.min(start + ORDERS_PER_BLOCK) {
            order.shuffle(&mut rng);
            let mut cursor = measure.cursor();
            for &e in order.iter().take_while(|&&e| e != pivot) {
                measure.advance(&mut cursor, e);
            }
            moments.push(chi_t_at(measure, &cursor, &subsets));
        }
        moments
    };
    let mut total = Moments::new();
    for_each_block(blocks, config.workers, run_block, |m| total.merge(&m))?;
    Ok(SetEstimate {
        estimate: total.mean().expect("at least one order"),
        std_error: total.std_error().unwrap_or(0.0),
        samples: total.count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{presets, AdditiveMeasure};

    #[test]
    fn additive_pairs_vanish() {
        let w: Vec<f64> = (0..10).map(|k| (k + 1) as f64 / 64.0).collect();
        let m = AdditiveMeasure::new(w).unwrap();
        let t = Coalition::from_elements(m.ground(), [2, 7]).unwrap();
        for sampling in [SetSampling::Simple, SetSampling::Stratified] {
            for seed in 0..3 {
                let e = estimate_interaction_t(&m, &t, &EstimatorConfig::new(1000, seed), sampling).unwrap();
                assert_eq!(e.estimate, 0.0);
            }
        }
    }

    #[test]
    fn symmetric_shapley() {
        let m = presets::mu2::<f64>();
        let t = Coalition::from_elements(m.ground(), [41]).unwrap();
        for sampling in [SetSampling::Simple, SetSampling::Stratified] {
            let e = estimate_interaction_t(&m, &t, &EstimatorConfig::new(200_000, 7), sampling).unwrap();
            assert!((e.estimate - 0.01).abs() < 4.0 * e.std_error + 1e-15, "{sampling:?} {e:?}");
        }
    }

    #[test]
    fn rejects_bad_sets() {
        let m = presets::mu2::<f64>();
        let ground = m.ground();
        let config = EstimatorConfig::new(100, 1);
        assert!(estimate_interaction_t(&m, &Coalition::empty(ground), &config, SetSampling::Simple).is_err());
        let t = Coalition::from_elements(ground, [1, 2]).unwrap();
        assert!(matches!(
            estimate_interaction_t(&m, &t, &config, SetSampling::Stratified),
            Err(Error::Capability(_))
        ));
    }
}
