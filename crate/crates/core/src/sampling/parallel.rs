use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use crate::error::{invalid, Error, Result};

/// Maps `0..blocks` on `workers` threads and folds the results in block order.
///
/// Each block draws from its own random stream, so the folded result depends only on
/// the block layout, never on `workers`. Blocks are processed in waves to bound the
/// number of partial results held at once.
pub(crate) fn for_each_block<A, F, G>(blocks: usize, workers: usize, map: F, mut fold: G) -> Result<()>
where
    A: Send,
    F: Fn(usize) -> A + Sync,
    G: FnMut(A),
{
    if workers == 0 {
        return invalid("worker count must be positive");
    }
    if workers == 1 || blocks <= 1 {
        (0..blocks).for_each(|b| fold(map(b)));
        return Ok(());
    }
    let pool = ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Capability(format!("cannot start worker threads: {e}")))?;
    let wave = 4 * workers;
    for start in (0..blocks).step_by(wave) {
        let results: Vec<A> = pool.install(|| (start..blocks.min(start + wave)).into_par_iter().map(&map).collect());
        results.into_iter().for_each(&mut fold);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_order_is_block_order() {
        for workers in [1, 2, 3, 8] {
            let mut seen = Vec::new();
            for_each_block(37, workers, |b| b * b, |x| seen.push(x)).unwrap();
            assert_eq!(seen, (0..37).map(|b| b * b).collect::<Vec<_>>());
        }
        assert!(for_each_block(3, 0, |b| b, |_| ()).is_err());
    }
}
