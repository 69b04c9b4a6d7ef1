use rand::seq::SliceRandom;

use super::estimate::{pair_index, EstimatorConfig, EstimatorMethod, InteractionEstimate};
use super::moments::Moments;
use super::parallel::for_each_block;
use super::rng::{substream, Stream};
use crate::error::{invalid, Result};
use crate::kernel::second_difference;
use crate::measure::Measure;
use crate::scalar::Scalar;

/// Orders drawn from one random stream.
pub const ORDERS_PER_BLOCK: u64 = 512;

/// Simple random sampling of orders.
///
/// `m = ⌊total_data / (n−1)⌋` uniform orders of the players are drawn. In each order
/// `o`, every adjacent pair `(o_k, o_{k+1})` contributes `χ` with the predecessors of
/// `o_k` as base set, so one order yields `n−1` observations at two new measure
/// evaluations each. `Î_ij` is the mean of the observations of the pair.
pub fn appro_interaction<T: Scalar, M: Measure<T>>(
    measure: &M,
    config: &EstimatorConfig,
) -> Result<InteractionEstimate<T>> {
    config.validate()?;
    let ground = measure.ground();
    let n = ground.len();
    let players = measure.players().to_vec();
    if players.len() < 2 {
        return invalid("sampling needs at least two players");
    }
    let per_order = players.len() as u64 - 1;
    if config.total_data < per_order {
        return invalid(format!(
            "budget of {} observations is below one order ({per_order} observations)",
            config.total_data
        ));
    }
    let orders = config.total_data / per_order;
    let blocks = orders.div_ceil(ORDERS_PER_BLOCK) as usize;

    let run_block = |block: usize| {
        let mut acc = vec![Moments::<T>::new(); ground.pairs()];
        let mut rng = substream(config.seed, Stream::OrderBlock, block as u64);
        let mut order = players.clone();
        let start = block as u64 * ORDERS_PER_BLOCK;
        for _ in start..orders.min(start + ORDERS_PER_BLOCK) {
            order.shuffle(&mut rng);
            let mut cursor = measure.cursor();
            let mut base = measure.peek(&cursor, &[]);
            let mut with_first = measure.peek(&cursor, &order[..1]);
            for k in 0..order.len() - 1 {
                let (a, b) = (order[k], order[k + 1]);
                let both = measure.peek(&cursor, &[a, b]);
                let with_second = measure.peek(&cursor, &[b]);
                acc[pair_index(n, a, b)].push(second_difference(both, with_first, with_second, base));
                measure.advance(&mut cursor, a);
                base = with_first;
                with_first = both;
            }
        }
        acc
    };

    let mut total = vec![Moments::<T>::new(); ground.pairs()];
    for_each_block(blocks, config.workers, run_block, |acc| {
        total.iter_mut().zip(&acc).for_each(|(t, a)| t.merge(a));
    })?;

    let mut estimate = InteractionEstimate::new(ground, EstimatorMethod::Simple, config.seed);
    for i in 0..n {
        for j in i + 1..n {
            let m = &total[pair_index(n, i, j)];
            estimate.set(i, j, m.mean(), m.count(), m.std_error());
        }
    }
    Ok(estimate)
}
