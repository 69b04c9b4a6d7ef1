//! The four reference measures on `n = 100` elements.
//!
//! * `mu1`: symmetric stepped, zero up to 40 members, linear ramp to 1 at 60.
//! * `mu2`: symmetric piecewise linear with slopes 1/200, 1/120, 1/60, 1/20.
//! * `mu3`: airport game with ten weight levels 0.1 .. 1.
//! * `mu4`: two groups of 50, each cross-group pair worth 0.02.

use super::{AnyMeasure, BiClusterMeasure, CardinalityMeasure, MaxWeightMeasure};
use crate::scalar::Scalar;

pub const PRESET_GROUND: usize = 100;

pub const NAMES: [&str; 4] = ["mu1", "mu2", "mu3", "mu4"];

fn size<T: Scalar>(s: usize) -> T {
    T::from_count(s)
}

pub fn mu1<T: Scalar>() -> CardinalityMeasure<T> {
    let values = (0..=PRESET_GROUND)
        .map(|s| match s {
            0..=39 => T::zero(),
            40..=60 => size::<T>(s - 40) / size(20),
            _ => T::one(),
        })
        .collect();
    CardinalityMeasure::new(values).expect("mu1 is a fuzzy measure")
}

pub fn mu2<T: Scalar>() -> CardinalityMeasure<T> {
    let values = (0..=PRESET_GROUND)
        .map(|s| match s {
            0..=50 => size::<T>(s) / size(200),
            51..=80 => T::ratio(1, 4) + size::<T>(s - 50) / size(120),
            81..=95 => T::ratio(1, 2) + size::<T>(s - 80) / size(60),
            _ => T::ratio(3, 4) + size::<T>(s - 95) / size(20),
        })
        .collect();
    CardinalityMeasure::new(values).expect("mu2 is a fuzzy measure")
}

/// Upper (1-based) label of each weight level `0.1, 0.2, .., 1.0`.
const MU3_LEVEL_ENDS: [usize; 10] = [8, 20, 26, 40, 48, 57, 70, 80, 90, 100];

pub fn mu3<T: Scalar>() -> MaxWeightMeasure<T> {
    let weights = (1..=PRESET_GROUND)
        .map(|label| {
            let level = MU3_LEVEL_ENDS.iter().position(|&end| label <= end).unwrap() + 1;
            T::ratio(level as i64, 10)
        })
        .collect();
    MaxWeightMeasure::new(weights).expect("mu3 is a fuzzy measure")
}

pub fn mu4<T: Scalar>() -> BiClusterMeasure<T> {
    BiClusterMeasure::split(50, 50, T::ratio(1, 50)).expect("mu4 is a fuzzy measure")
}

pub fn preset<T: Scalar>(name: &str) -> Option<AnyMeasure<T>> {
    Some(match name {
        "mu1" => mu1().into(),
        "mu2" => mu2().into(),
        "mu3" => mu3().into(),
        "mu4" => mu4().into(),
        _ => return None,
    })
}
