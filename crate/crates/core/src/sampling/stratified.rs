use rand::seq::SliceRandom;

use super::estimate::{EstimatorConfig, EstimatorMethod, InteractionEstimate, StratumRecord};
use super::moments::Moments;
use super::parallel::for_each_block;
use super::rng::{substream, Stream};
use crate::error::{invalid, Error, Result};
use crate::kernel::{chi_t_at, subset_lists};
use crate::measure::Measure;
use crate::scalar::{ExactSum, Scalar};

/// Strata handled by one parallel work item.
const STRATA_PER_BLOCK: usize = 256;

/// Position strata for a family of sets `T` sharing one size.
///
/// For a set with pivot `t₁` (its first listed element), stratum `ℓ` holds the orders of
/// `X ∖ (T ∖ {t₁})` with `t₁` at position `ℓ`; its predecessor set is a uniform
/// `(ℓ−1)`-subset of `X ∖ T`. Strata are numbered set-major.
pub(crate) struct PositionStrata<'a, M> {
    measure: &'a M,
    sets: Vec<Vec<usize>>,
    outside: Vec<Vec<usize>>,
    subsets: Vec<Vec<Vec<usize>>>,
    positions: usize,
}

impl<'a, M> PositionStrata<'a, M> {
    pub(crate) fn new(measure: &'a M, players: &[usize], sets: Vec<Vec<usize>>) -> Self {
        let outside: Vec<Vec<usize>> =
            sets.iter().map(|t| players.iter().copied().filter(|e| !t.contains(e)).collect()).collect();
        let positions = outside.first().map_or(1, |o| o.len() + 1);
        let subsets = sets.iter().map(|t| subset_lists(t)).collect();
        Self { measure, sets, outside, subsets, positions }
    }

    pub(crate) fn len(&self) -> usize {
        self.sets.len() * self.positions
    }

    pub(crate) fn positions(&self) -> usize {
        self.positions
    }

    /// `(set index, 1-based position)` of a stratum.
    pub(crate) fn locate(&self, stratum: usize) -> (usize, usize) {
        (stratum / self.positions, stratum % self.positions + 1)
    }

    pub(crate) fn set(&self, index: usize) -> &[usize] {
        &self.sets[index]
    }

    fn draw<T: Scalar>(&self, stratum: usize, count: u64, stream: Stream, seed: u64) -> Moments<T>
    where
        M: Measure<T>,
    {
        let mut moments = Moments::new();
        if count == 0 {
            return moments;
        }
        let (set, position) = self.locate(stratum);
        let mut rng = substream(seed, stream, stratum as u64);
        let mut pool = self.outside[set].clone();
        for _ in 0..count {
            let (pred, _) = pool.partial_shuffle(&mut rng, position - 1);
            let mut cursor = self.measure.cursor();
            for &e in pred.iter() {
                self.measure.advance(&mut cursor, e);
            }
            moments.push(chi_t_at(self.measure, &cursor, &self.subsets[set]));
        }
        moments
    }
}

/// Per-stratum pilot and second-stage moments.
pub(crate) struct TwoStage<T> {
    pub pilot: Vec<Moments<T>>,
    pub second: Vec<Moments<T>>,
}

impl<T: Scalar> TwoStage<T> {
    pub(crate) fn combined(&self, stratum: usize) -> Moments<T> {
        let mut m = self.pilot[stratum];
        m.merge(&self.second[stratum]);
        m
    }
}

/// Smallest budget whose pilot share gives two draws per stratum.
pub fn minimum_stratified_budget(strata: usize, pilot_fraction: f64) -> u64 {
    (2.0 * strata as f64 / pilot_fraction).ceil() as u64
}

/// Splits `budget` proportionally to `weights` by largest remainder (ties to the lower index).
pub(crate) fn largest_remainder(budget: u64, weights: &[f64]) -> Vec<u64> {
    let total: f64 = weights.iter().sum();
    if budget == 0 || total <= 0.0 {
        return vec![0; weights.len()];
    }
    let quotas: Vec<f64> = weights.iter().map(|w| budget as f64 * w / total).collect();
    let mut alloc: Vec<u64> = quotas.iter().map(|q| q.floor() as u64).collect();
    let assigned: u64 = alloc.iter().sum();
    let mut by_remainder: Vec<usize> = (0..weights.len()).filter(|&k| weights[k] > 0.0).collect();
    by_remainder.sort_by(|&a, &b| {
        let (ra, rb) = (quotas[a] - quotas[a].floor(), quotas[b] - quotas[b].floor());
        rb.partial_cmp(&ra).expect("finite quotas").then(a.cmp(&b))
    });
    if assigned <= budget {
        for &k in by_remainder.iter().cycle().take((budget - assigned) as usize) {
            alloc[k] += 1;
        }
    } else {
        let mut excess = assigned - budget;
        for &k in by_remainder.iter().rev().cycle() {
            if excess == 0 {
                break;
            }
            if alloc[k] > 0 {
                alloc[k] -= 1;
                excess -= 1;
            }
        }
    }
    alloc
}

/// Pilot sampling followed by variance-proportional allocation of the rest of the budget.
///
/// Stage 1 draws `m_exp = max(2, ⌊pilot_fraction · total / #strata⌋)` observations per
/// stratum. Stage 2 targets `total · s²_h / Σ s²` per stratum, tops up the strata whose
/// target exceeds `m_exp` in proportion to the shortfall, and spends exactly
/// `total − m_exp · #strata` further draws. If every pilot variance is zero the second
/// stage is skipped.
pub(crate) fn two_stage<T: Scalar, M: Measure<T>>(
    design: &PositionStrata<'_, M>,
    total: u64,
    pilot_fraction: f64,
    seed: u64,
    workers: usize,
) -> Result<(TwoStage<T>, u64)> {
    let strata = design.len();
    let minimum = minimum_stratified_budget(strata, pilot_fraction);
    if total < minimum {
        return Err(Error::Capability(format!(
            "stratified sampling over {strata} strata needs a budget of at least {minimum} observations, got {total}"
        )));
    }
    let m_exp = ((pilot_fraction * total as f64 / strata as f64).floor() as u64).max(2);
    let blocks = strata.div_ceil(STRATA_PER_BLOCK);
    let block_range = |b: usize| b * STRATA_PER_BLOCK..strata.min((b + 1) * STRATA_PER_BLOCK);

    let mut pilot = Vec::with_capacity(strata);
    for_each_block(
        blocks,
        workers,
        |b| block_range(b).map(|s| design.draw(s, m_exp, Stream::Pilot, seed)).collect::<Vec<_>>(),
        |chunk| pilot.extend(chunk),
    )?;

    let variances: Vec<f64> = pilot.iter().map(|m| m.variance().map_or(0.0, |v| v.to_f64().max(0.0))).collect();
    let variance_total: f64 = variances.iter().sum();
    let remaining = total.saturating_sub(m_exp * strata as u64);
    let allocation = if variance_total > 0.0 && remaining > 0 {
        let shortfall: Vec<f64> =
            variances.iter().map(|v| (total as f64 * v / variance_total - m_exp as f64).max(0.0)).collect();
        largest_remainder(remaining, &shortfall)
    } else {
        vec![0; strata]
    };

    let mut second = Vec::with_capacity(strata);
    for_each_block(
        blocks,
        workers,
        |b| block_range(b).map(|s| design.draw(s, allocation[s], Stream::Allocation, seed)).collect::<Vec<_>>(),
        |chunk| second.extend(chunk),
    )?;
    Ok((TwoStage { pilot, second }, m_exp))
}

/// Stratified estimator of every `I_ij`.
///
/// Strata are the unordered pairs `i < j` crossed with the position `ℓ = 1..=n−1` of
/// `j` in an order of `X ∖ {i}`. `Î_ij` is the mean over `ℓ` of the per-stratum means,
/// each pooling pilot and second-stage draws.
pub fn stratified_appro_interaction<T: Scalar, M: Measure<T>>(
    measure: &M,
    config: &EstimatorConfig,
) -> Result<(InteractionEstimate<T>, Vec<StratumRecord<T>>)> {
    config.validate()?;
    let ground = measure.ground();
    let players = measure.players().to_vec();
    if players.len() < 2 {
        return invalid("sampling needs at least two players");
    }
    let pairs: Vec<Vec<usize>> = players
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| players[a + 1..].iter().map(move |&j| vec![j, i]))
        .collect();
    let design = PositionStrata::new(measure, &players, pairs);
    let (stages, m_exp) = two_stage(&design, config.total_data, config.pilot_fraction, config.seed, config.workers)?;

    let positions = design.positions();
    let mut estimate = InteractionEstimate::new(ground, EstimatorMethod::Stratified, config.seed);
    let mut records = Vec::with_capacity(design.len());
    for p in 0..design.len() / positions {
        let (j, i) = (design.set(p)[0], design.set(p)[1]);
        let mut means = ExactSum::new();
        let mut var_sum = 0.0;
        let mut samples = 0;
        for s in p * positions..(p + 1) * positions {
            let combined = stages.combined(s);
            means.add(combined.mean().expect("every stratum has pilot draws"));
            var_sum += combined.variance().map_or(0.0, |v| v.to_f64().max(0.0)) / combined.count() as f64;
            samples += combined.count();
            let (pilot, second) = (&stages.pilot[s], &stages.second[s]);
            records.push(StratumRecord {
                i,
                j,
                position: design.locate(s).1,
                m_exp,
                mean_exp: pilot.mean().expect("pilot draws"),
                s2: pilot.variance().expect("two pilot draws"),
                m_st: second.count(),
                mean_st: second.mean(),
            });
        }
        let value = means.value() / T::from_count(positions);
        estimate.set(i, j, Some(value), samples, Some(var_sum.sqrt() / positions as f64));
    }
    Ok((estimate, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cardinality_exact_interaction;
    use crate::measure::{presets, AdditiveMeasure, CardinalityMeasure};

    #[test]
    fn largest_remainder_hits_budget() {
        assert_eq!(largest_remainder(10, &[1.0, 1.0, 1.0]), vec![4, 3, 3]);
        assert_eq!(largest_remainder(7, &[0.0, 2.0, 5.0]), vec![0, 2, 5]);
        assert_eq!(largest_remainder(5, &[0.0, 0.0]), vec![0, 0]);
        let w = [0.1, 0.7, 0.2, 1e-9, 0.0, 3.3];
        for budget in [0, 1, 17, 1000, 12345] {
            assert_eq!(largest_remainder(budget, &w).iter().sum::<u64>(), budget);
        }
    }

    #[test]
    fn pilot_budget_floor() {
        let m = CardinalityMeasure::new((0..=6).map(|s| s as f64 / 6.0).collect()).unwrap();
        // 15 pairs × 5 positions = 75 strata, at least 300 observations at fraction 1/2
        assert_eq!(minimum_stratified_budget(75, 0.5), 300);
        let err = stratified_appro_interaction(&m, &EstimatorConfig::new(299, 1)).unwrap_err();
        assert!(matches!(err, Error::Capability(ref msg) if msg.contains("300")), "{err}");
        assert!(stratified_appro_interaction(&m, &EstimatorConfig::new(300, 1)).is_ok());
    }

    #[test]
    fn cardinality_measures_are_exact() {
        for m in [presets::mu1::<f64>(), presets::mu2::<f64>()] {
            let exact = cardinality_exact_interaction(&m);
            let (e, records) = stratified_appro_interaction(&m, &EstimatorConfig::new(2_000_000, 5)).unwrap();
            assert!(e.iter().all(|(_, _, v, _, _)| v == Some(exact)));
            assert!(records.iter().all(|r| r.s2 == 0.0 && r.m_st == 0));
        }
    }

    #[test]
    fn additive_skips_second_stage() {
        let w: Vec<f64> = (0..8).map(|k| (k + 1) as f64 / 64.0).collect();
        let m = AdditiveMeasure::new(w).unwrap();
        let (e, records) = stratified_appro_interaction(&m, &EstimatorConfig::new(10_000, 2)).unwrap();
        assert!(e.iter().all(|(_, _, v, _, _)| v == Some(0.0)));
        assert!(records.iter().all(|r| r.m_st == 0 && r.m_exp == 25));
        assert_eq!(e.total_data_used(), 25 * 28 * 7);
    }

    #[test]
    fn budget_is_spent_exactly() {
        let small = crate::measure::MaxWeightMeasure::new((1..=10).map(|k| k as f64 / 10.0).collect()).unwrap();
        let (e, records) = stratified_appro_interaction(&small, &EstimatorConfig::new(50_000, 3)).unwrap();
        assert_eq!(e.total_data_used(), 50_000);
        assert_eq!(records.len(), 45 * 9);
        assert!(records.iter().all(|r| r.m_exp == 61));
    }
}
