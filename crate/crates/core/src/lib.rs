//! Shapley values, pairwise interaction indices `I_ij` and representation indices `I_T`
//! of fuzzy measures (capacities).
//!
//! * [`measure`]: capacities, built-in families and axiom checks.
//! * [`kernel`]: the per-order observations `χ(o)_ij` and `χ(o)_T`.
//! * [`exact`]: brute-force subset and order formulas, closed forms.
//! * [`sampling`]: simple and stratified estimators, error bounds.
//!
//! Everything numeric is generic over [`Scalar`] (`f32`, `f64`, [`Rational`]).
//! Elements are 0-based in the API.
//!
//! ```
//! use interaction_index::{exact, measure::presets, sampling};
//!
//! let mu2 = presets::mu2::<f64>();
//! let exact = exact::cardinality_exact_interaction(&mu2);
//! assert!((exact - 1.0 / 2200.0).abs() < 1e-15);
//!
//! let config = sampling::EstimatorConfig::new(100_000, 42);
//! let estimate = sampling::appro_interaction(&mu2, &config).unwrap();
//! assert!(estimate.undefined_pairs() < 4950);
//! ```

pub mod coalition;
pub mod error;
pub mod exact;
pub mod kernel;
pub mod measure;
pub mod sampling;
pub mod scalar;

pub use coalition::{Coalition, GroundSet, Order};
pub use error::{Error, Result};
pub use measure::{AnyMeasure, Measure, MeasureSpec};
pub use scalar::{ExactSum, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i128>;

pub type Measure64 = AnyMeasure<f64>;
pub type MeasureRational = AnyMeasure<Rational>;
pub type InteractionEstimate64 = sampling::InteractionEstimate<f64>;
pub type ExactResult64 = exact::ExactResult<f64>;
pub type ExactResultRational = exact::ExactResult<Rational>;
