use rand::seq::SliceRandom;

use super::Measure;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::sampling::rng::{substream, Stream};
use crate::scalar::Scalar;

pub const MAX_EXHAUSTIVE: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonotoneCheck {
    /// Every `S ⊂ S ∪ {i}` over the players; needs at most 15 players.
    Exhaustive,
    /// `trials` random maximal chains `∅ ⊂ .. ⊂ X`.
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub is_monotone: bool,
    /// `(S, S ∪ {i})` with `μ(S) > μ(S ∪ {i})`.
    pub witness: Option<(Coalition, Coalition)>,
    pub comparisons: u64,
}

pub fn check_monotone<T: Scalar, M: Measure<T>>(measure: &M, mode: MonotoneCheck) -> Result<MonotonicityReport> {
    let players = measure.players().to_vec();
    let ground = measure.ground();
    let mut comparisons = 0u64;
    let subset = |mask: usize| {
        Coalition::from_elements(ground, players.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e))
    };
    match mode {
        MonotoneCheck::Exhaustive => {
            if players.len() > MAX_EXHAUSTIVE {
                return Err(Error::Capability(format!(
                    "exhaustive monotonicity check supports at most {MAX_EXHAUSTIVE} players, got {}",
                    players.len()
                )));
            }
            let values = (0..1usize << players.len())
                .map(|mask| Ok(measure.value(&subset(mask)?)))
                .collect::<Result<Vec<T>>>()?;
            for mask in 0..values.len() {
                for b in (0..players.len()).filter(|b| mask >> b & 1 == 0) {
                    comparisons += 1;
                    let up = mask | 1 << b;
                    if values[mask] > values[up] {
                        return Ok(MonotonicityReport {
                            is_monotone: false,
                            witness: Some((subset(mask)?, subset(up)?)),
                            comparisons,
                        });
                    }
                }
            }
        }
        MonotoneCheck::Sampled { trials, seed } => {
            let mut order = players.clone();
            for trial in 0..trials {
                let mut rng = substream(seed, Stream::MonotoneChain, trial as u64);
                order.shuffle(&mut rng);
                let mut cursor = measure.cursor();
                let mut prev = measure.peek(&cursor, &[]);
                for (k, &e) in order.iter().enumerate() {
                    measure.advance(&mut cursor, e);
                    let next = measure.peek(&cursor, &[]);
                    comparisons += 1;
                    if prev > next {
                        let smaller = Coalition::from_elements(ground, order[..k].iter().copied())?;
                        let larger = smaller.with(e);
                        return Ok(MonotonicityReport { is_monotone: false, witness: Some((smaller, larger)), comparisons });
                    }
                    prev = next;
                }
            }
        }
    }
    Ok(MonotonicityReport { is_monotone: true, witness: None, comparisons })
}

/// Fuzzy-measure axioms: `μ(∅) = 0`, `μ(X) ≤ 1`, monotonicity.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<T> {
    pub empty_value: T,
    pub full_value: T,
    pub monotonicity: MonotonicityReport,
}

impl<T: Scalar> AxiomReport<T> {
    pub fn empty_is_zero(&self) -> bool {
        self.empty_value == T::zero()
    }

    pub fn full_at_most_one(&self) -> bool {
        self.full_value <= T::one()
    }

    pub fn holds(&self) -> bool {
        self.empty_is_zero() && self.full_at_most_one() && self.monotonicity.is_monotone
    }
}

pub fn check_axioms<T: Scalar, M: Measure<T>>(measure: &M, mode: MonotoneCheck) -> Result<AxiomReport<T>> {
    let players = measure.players();
    Ok(AxiomReport {
        empty_value: measure.value(&Coalition::empty(measure.ground())),
        full_value: measure.value(&players),
        monotonicity: check_monotone(measure, mode)?,
    })
}
