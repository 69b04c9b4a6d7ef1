use serde::{Deserialize, Serialize};

use crate::coalition::GroundSet;
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Total number of `χ` observations to draw.
    pub total_data: u64,
    pub seed: u64,
    pub alpha: f64,
    /// Share of the budget spent on the stratified pilot stage.
    pub pilot_fraction: f64,
    pub workers: usize,
}

impl EstimatorConfig {
    pub fn new(total_data: u64, seed: u64) -> Self {
        Self { total_data, seed, alpha: 0.001, pilot_fraction: 0.5, workers: 1 }
    }

    /// Budget of `avg_data` observations per pair: `avg_data · n(n−1)/2`.
    pub fn from_avg_data(avg_data: u64, n: usize, seed: u64) -> Self {
        Self::new(avg_data * (n * (n - 1) / 2) as u64, seed)
    }

    pub fn avg_data(&self, n: usize) -> f64 {
        self.total_data as f64 / (n * (n - 1) / 2) as f64
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_pilot_fraction(mut self, pilot_fraction: f64) -> Self {
        self.pilot_fraction = pilot_fraction;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return invalid(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(self.pilot_fraction > 0.0 && self.pilot_fraction < 1.0) {
            return invalid(format!("pilot fraction must lie in (0, 1), got {}", self.pilot_fraction));
        }
        if self.workers == 0 {
            return invalid("worker count must be positive");
        }
        if self.total_data == 0 {
            return invalid("sampling budget must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMethod {
    Simple,
    Stratified,
}

/// Position of the unordered pair `i < j` in the packed upper triangle.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Estimated `I_ij` for every unordered pair, stored as a packed upper triangle.
///
/// Pairs without observations are undefined and report `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionEstimate<T> {
    ground: GroundSet,
    method: EstimatorMethod,
    seed: u64,
    total_data_used: u64,
    values: Vec<Option<T>>,
    samples: Vec<u64>,
    std_errors: Vec<Option<f64>>,
}

impl<T: Scalar> InteractionEstimate<T> {
    pub(crate) fn new(ground: GroundSet, method: EstimatorMethod, seed: u64) -> Self {
        let pairs = ground.pairs();
        Self {
            ground,
            method,
            seed,
            total_data_used: 0,
            values: vec![None; pairs],
            samples: vec![0; pairs],
            std_errors: vec![None; pairs],
        }
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: Option<T>, samples: u64, std_error: Option<f64>) {
        let k = pair_index(self.ground.len(), i, j);
        self.values[k] = value;
        self.samples[k] = samples;
        self.std_errors[k] = std_error;
        self.total_data_used += samples;
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn method(&self) -> EstimatorMethod {
        self.method
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn total_data_used(&self) -> u64 {
        self.total_data_used
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.ground.len();
        (i != j && i < n && j < n).then(|| pair_index(n, i, j))
    }

    /// `Î_ij`; symmetric in its arguments.
    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        self.index(i, j).and_then(|k| self.values[k])
    }

    pub fn samples(&self, i: usize, j: usize) -> u64 {
        self.index(i, j).map_or(0, |k| self.samples[k])
    }

    pub fn std_error(&self, i: usize, j: usize) -> Option<f64> {
        self.index(i, j).and_then(|k| self.std_errors[k])
    }

    /// `(i, j, estimate, samples, std_error)` for every `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Option<T>, u64, Option<f64>)> + '_ {
        let n = self.ground.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j))).enumerate().map(|(k, (i, j))| {
            (i, j, self.values[k], self.samples[k], self.std_errors[k])
        })
    }

    pub fn undefined_pairs(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    /// Dense symmetric matrix; the diagonal and undefined pairs are `None`.
    pub fn matrix(&self) -> Vec<Vec<Option<T>>> {
        let n = self.ground.len();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// Pilot and second-stage summary of one stratum `(i, j, ℓ)`: orders of `X ∖ {i}`
/// with `j` at position `ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumRecord<T> {
    pub i: usize,
    pub j: usize,
    pub position: usize,
    pub m_exp: u64,
    pub mean_exp: T,
    pub s2: T,
    pub m_st: u64,
    pub mean_st: Option<T>,
}
