//! Monte Carlo estimators of `I_ij` and `I_T`, and the normal-approximation error bound.
//!
//! Every estimator is deterministic given its seed: work is cut into fixed blocks
//! (of orders or of strata), each with its own random stream, and partial results are
//! merged in block order. The worker count therefore never changes the output.

mod bounds;
mod estimate;
mod interaction_t;
mod metrics;
mod moments;
mod order;
mod parallel;
pub mod rng;
mod simple;
mod stratified;

pub use bounds::{
    required_sample_size, required_sample_size_with_z, theoretical_error_bound, theoretical_error_bound_with_z,
    z_quantile, ChiBounds, ErrorBoundSpec,
};
pub use estimate::{pair_index, EstimatorConfig, EstimatorMethod, InteractionEstimate, StratumRecord};
pub use interaction_t::{estimate_interaction_t, SetEstimate, SetSampling};
pub use metrics::{error_metrics, ErrorMetrics};
pub use moments::Moments;
pub use order::{sample_order_excluding, sample_stratum_order, sample_uniform_order};
pub use simple::{appro_interaction, ORDERS_PER_BLOCK};
pub use stratified::{minimum_stratified_budget, stratified_appro_interaction};
