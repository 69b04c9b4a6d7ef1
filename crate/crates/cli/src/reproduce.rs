//! Error tables for the four reference measures: both estimators against the exact
//! values, errors scaled by 1000.

use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use interaction_index::measure::presets;
use interaction_index::sampling::{
    appro_interaction, error_metrics, pair_index, stratified_appro_interaction, theoretical_error_bound_with_z,
    ChiBounds, EstimatorConfig,
};
use interaction_index::{Measure, Measure64};
use serde::{Deserialize, Serialize};

use crate::experiment::ExactOracle;

/// Quantile used by the reference tables (`Z_{0.0005}` rounded).
pub const REFERENCE_Z: f64 = 3.29;
pub const ALPHA: f64 = 0.001;
pub const SCALE: f64 = 1000.0;
/// Largest number of `χ` observations a single run may draw without `--force`.
pub const MAX_OBSERVATIONS: u64 = 1_000_000_000;
/// Reference cross-group interaction of the bi-cluster example.
pub const REFERENCE_CROSS_GROUP: f64 = 0.00251290258037098;

pub struct ExampleSetup {
    pub example: u8,
    pub measure: Measure64,
    pub bounds: ChiBounds,
    /// Exact `I_ij` in packed upper-triangle order.
    pub exact: Vec<f64>,
}

impl ExampleSetup {
    pub fn new(example: u8) -> Result<Self> {
        let (name, lo, hi) = match example {
            1 => ("mu1", -0.05, 0.05),
            2 => ("mu2", 0.0, 1.0 / 30.0),
            3 => ("mu3", -1.0, 0.0),
            4 => ("mu4", -0.02, 0.02),
            _ => bail!("example must be 1, 2, 3 or 4, got {example}"),
        };
        let measure = presets::preset::<f64>(name).expect("preset exists");
        let exact = ExactOracle::new(&measure).all_pairs()?;
        Ok(Self { example, measure, bounds: ChiBounds::new(lo, hi)?, exact })
    }

    pub fn n(&self) -> usize {
        self.measure.ground().len()
    }

    pub fn exact_pair(&self, i: usize, j: usize) -> f64 {
        self.exact[pair_index(self.n(), i, j)]
    }

    /// Reference-table bound at `avg_data` observations per pair, scaled.
    pub fn e_th(&self, avg_data: u64) -> Result<f64> {
        Ok(theoretical_error_bound_with_z(self.bounds, avg_data, ALPHA, REFERENCE_Z)?.e * SCALE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Methods {
    pub simple: bool,
    pub stratified: bool,
}

impl Default for Methods {
    fn default() -> Self {
        Self { simple: true, stratified: true }
    }
}

/// One table row; error columns are scaled by [`SCALE`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub avg_data: u64,
    /// `None` for rows averaged over seeds.
    pub seed: Option<u64>,
    pub e_max: Option<f64>,
    pub e_av: Option<f64>,
    pub e_max_st: Option<f64>,
    pub e_av_st: Option<f64>,
    pub e_th: f64,
    pub seconds_simple: Option<f64>,
    pub seconds_stratified: Option<f64>,
    pub undefined_pairs: usize,
}

pub fn run_row(setup: &ExampleSetup, avg_data: u64, seed: u64, workers: usize, methods: Methods, force: bool) -> Result<BenchmarkRow> {
    let n = setup.n();
    let config = EstimatorConfig::from_avg_data(avg_data, n, seed).with_workers(workers);
    let observations = config.total_data * (methods.simple as u64 + methods.stratified as u64);
    if observations > MAX_OBSERVATIONS && !force {
        bail!("AvgData {avg_data} needs {observations} observations per seed (limit {MAX_OBSERVATIONS}); pass --force to run it");
    }
    let mut row = BenchmarkRow {
        avg_data,
        seed: Some(seed),
        e_max: None,
        e_av: None,
        e_max_st: None,
        e_av_st: None,
        e_th: setup.e_th(avg_data)?,
        seconds_simple: None,
        seconds_stratified: None,
        undefined_pairs: 0,
    };
    if methods.simple {
        let start = Instant::now();
        let estimate = appro_interaction(&setup.measure, &config)?;
        row.seconds_simple = Some(start.elapsed().as_secs_f64());
        let m = error_metrics(&estimate, |i, j| setup.exact_pair(i, j))?;
        row.e_max = Some(m.e_max * SCALE);
        row.e_av = Some(m.e_av * SCALE);
        row.undefined_pairs = m.undefined;
    }
    if methods.stratified {
        let start = Instant::now();
        let (estimate, _) = stratified_appro_interaction(&setup.measure, &config)?;
        row.seconds_stratified = Some(start.elapsed().as_secs_f64());
        let m = error_metrics(&estimate, |i, j| setup.exact_pair(i, j))?;
        row.e_max_st = Some(m.e_max * SCALE);
        row.e_av_st = Some(m.e_av * SCALE);
    }
    Ok(row)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReproduceConfig {
    pub example: u8,
    pub avg_data: Vec<u64>,
    pub seeds: Vec<u64>,
    pub aggregate: bool,
    pub force: bool,
    pub workers: usize,
    pub methods: Methods,
}

impl ReproduceConfig {
    pub fn new(example: u8) -> Self {
        Self {
            example,
            avg_data: vec![1_000, 10_000],
            seeds: vec![0],
            aggregate: false,
            force: false,
            workers: 1,
            methods: Methods::default(),
        }
    }
}

fn mean_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Option<Vec<f64>> = values.collect();
    v.filter(|v| !v.is_empty()).map(|v| v.iter().sum::<f64>() / v.len() as f64)
}

fn aggregate(rows: &[BenchmarkRow]) -> BenchmarkRow {
    BenchmarkRow {
        avg_data: rows[0].avg_data,
        seed: None,
        e_max: mean_of(rows.iter().map(|r| r.e_max)),
        e_av: mean_of(rows.iter().map(|r| r.e_av)),
        e_max_st: mean_of(rows.iter().map(|r| r.e_max_st)),
        e_av_st: mean_of(rows.iter().map(|r| r.e_av_st)),
        e_th: rows[0].e_th,
        seconds_simple: mean_of(rows.iter().map(|r| r.seconds_simple)),
        seconds_stratified: mean_of(rows.iter().map(|r| r.seconds_stratified)),
        undefined_pairs: rows.iter().map(|r| r.undefined_pairs).max().unwrap_or(0),
    }
}

pub fn reproduce(config: &ReproduceConfig) -> Result<Vec<BenchmarkRow>> {
    if config.seeds.is_empty() || config.avg_data.is_empty() {
        bail!("reproduce needs at least one seed and one AvgData value");
    }
    let setup = ExampleSetup::new(config.example)?;
    let mut rows = Vec::new();
    for &avg in &config.avg_data {
        let per_seed = config
            .seeds
            .iter()
            .map(|&seed| run_row(&setup, avg, seed, config.workers, config.methods, config.force))
            .collect::<Result<Vec<_>>>()?;
        if config.aggregate {
            rows.push(aggregate(&per_seed));
        } else {
            rows.extend(per_seed);
        }
    }
    Ok(rows)
}

/// Exact cross-group value of the bi-cluster example next to the reference figure.
pub fn cross_group_comparison() -> Result<(f64, f64)> {
    let setup = ExampleSetup::new(4)?;
    Ok((setup.exact_pair(0, setup.n() - 1), REFERENCE_CROSS_GROUP))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Header `avg_data,e_max,e_av,e_max_st,e_av_st,e_th,seconds_simple,seconds_stratified`.
pub fn write_benchmark_csv<W: Write>(out: W, rows: &[BenchmarkRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["avg_data", "e_max", "e_av", "e_max_st", "e_av_st", "e_th", "seconds_simple", "seconds_stratified"])?;
    for r in rows {
        w.write_record([
            r.avg_data.to_string(),
            opt(r.e_max),
            opt(r.e_av),
            opt(r.e_max_st),
            opt(r.e_av_st),
            r.e_th.to_string(),
            opt(r.seconds_simple),
            opt(r.seconds_stratified),
        ])?;
    }
    w.flush()?;
    Ok(())
}
