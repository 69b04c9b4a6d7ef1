use serde::{Deserialize, Serialize};

use super::estimate::InteractionEstimate;
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorMetrics {
    pub e_max: f64,
    pub e_av: f64,
    pub defined: usize,
    pub undefined: usize,
}

/// Largest and mean absolute error over the defined pairs, against `exact(i, j)`.
pub fn error_metrics<T: Scalar>(estimate: &InteractionEstimate<T>, exact: impl Fn(usize, usize) -> T) -> Result<ErrorMetrics> {
    let mut errors = Vec::new();
    let mut undefined = 0;
    for (i, j, value, _, _) in estimate.iter() {
        match value {
            Some(v) => errors.push((v - exact(i, j)).abs()),
            None => undefined += 1,
        }
    }
    if errors.is_empty() {
        return invalid("estimate has no defined pairs");
    }
    let e_max = errors.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a });
    let e_av = T::exact_sum(errors.iter().copied()) / T::from_count(errors.len());
    Ok(ErrorMetrics { e_max: e_max.to_f64(), e_av: e_av.to_f64(), defined: errors.len(), undefined })
}
