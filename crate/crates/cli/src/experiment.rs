use std::collections::HashMap;
use std::time::Instant;

use anyhow::{bail, Result};
use interaction_index::exact::{
    bicluster_exact_interaction, cardinality_exact_interaction, interaction_exact, interaction_t_exact,
    maxweight_exact_interaction,
};
use interaction_index::sampling::{
    appro_interaction, estimate_interaction_t, stratified_appro_interaction, EstimatorConfig, SetSampling,
};
use interaction_index::{AnyMeasure, Coalition, Measure, Measure64, MeasureSpec};

use crate::report::{pair_records, stratum_rows, version, Meta, PairRecord, Report, RunConfig, SetRecord};
use crate::source::load_measure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exact,
    Simple,
    Stratified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    /// Observations per pair; `total = avg · n(n−1)/2`.
    AvgData(u64),
    TotalData(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub measure: String,
    pub method: Method,
    pub budget: Option<Budget>,
    pub seed: u64,
    pub alpha: f64,
    pub pilot_fraction: f64,
    pub workers: usize,
    /// 0-based pair for exact runs; all pairs if absent.
    pub pair: Option<(usize, usize)>,
    /// 0-based set: switches to the representation index `I_T`.
    pub set: Option<Vec<usize>>,
}

impl ExperimentConfig {
    pub fn new(measure: impl Into<String>, method: Method) -> Self {
        Self {
            measure: measure.into(),
            method,
            budget: None,
            seed: 0,
            alpha: 0.001,
            pilot_fraction: 0.5,
            workers: 1,
            pair: None,
            set: None,
        }
    }

    pub fn estimator_config(&self, n: usize) -> Result<EstimatorConfig> {
        let total = match self.budget {
            Some(Budget::AvgData(avg)) => avg * (n * (n - 1) / 2) as u64,
            Some(Budget::TotalData(total)) => total,
            None => bail!("sampling methods need --avg-data or --total-data"),
        };
        let mut config = EstimatorConfig::new(total, self.seed);
        config.alpha = self.alpha;
        config.pilot_fraction = self.pilot_fraction;
        config.workers = self.workers;
        config.validate()?;
        Ok(config)
    }
}

/// Exact `I_ij`, by closed form for the parametric families and by the subset formula otherwise.
pub struct ExactOracle<'a> {
    measure: &'a Measure64,
    bicluster_cache: HashMap<(bool, bool), f64>,
}

impl<'a> ExactOracle<'a> {
    pub fn new(measure: &'a Measure64) -> Self {
        Self { measure, bicluster_cache: HashMap::new() }
    }

    pub fn pair(&mut self, i: usize, j: usize) -> Result<f64> {
        let ground = self.measure.ground();
        ground.check(i)?;
        ground.check(j)?;
        if i == j {
            bail!("interaction needs two distinct elements");
        }
        Ok(match self.measure {
            AnyMeasure::Cardinality(m) => cardinality_exact_interaction(m),
            AnyMeasure::MaxWeight(m) => maxweight_exact_interaction(m, i, j)?,
            AnyMeasure::BiCluster(m) => {
                let key = (m.in_group1(i), m.in_group1(j));
                match self.bicluster_cache.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = bicluster_exact_interaction(m, i, j)?;
                        self.bicluster_cache.insert(key, v);
                        v
                    }
                }
            }
            AnyMeasure::Additive(_) => 0.0,
            AnyMeasure::Table(m) => interaction_exact(m, i, j)?.value,
        })
    }

    /// `I_ij` for all `i < j`, packed like an estimate's upper triangle.
    pub fn all_pairs(&mut self) -> Result<Vec<f64>> {
        let n = self.measure.ground().len();
        if let AnyMeasure::Cardinality(m) = self.measure {
            return Ok(vec![cardinality_exact_interaction(m); n * (n - 1) / 2]);
        }
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.pair(i, j)?);
            }
        }
        Ok(out)
    }
}

fn set_coalition(measure: &Measure64, set: &[usize]) -> Result<Coalition> {
    let ground = measure.ground();
    for &e in set {
        ground.check(e)?;
    }
    Ok(Coalition::from_elements(ground, set.iter().copied())?)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    let measure = load_measure(&config.measure)?;
    let n = measure.ground().len();
    let started = Instant::now();
    let mut run = RunConfig {
        method: format!("{:?}", config.method).to_lowercase(),
        measure: config.measure.clone(),
        estimator: None,
        set: config.set.as_ref().map(|s| s.iter().map(|e| e + 1).collect()),
    };
    let mut results = Vec::new();
    let mut strata = None;
    let mut set_result = None;
    let mut seed = None;

    match (&config.set, config.method) {
        (Some(set), Method::Exact) => {
            let t = set_coalition(&measure, set)?;
            let value = interaction_t_exact(&measure, &t)?.value;
            set_result = Some(SetRecord { set: run.set.clone().unwrap(), estimate: value, samples: 0, std_error: None });
        }
        (Some(set), method) => {
            let t = set_coalition(&measure, set)?;
            let estimator = config.estimator_config(n)?;
            let sampling = if method == Method::Simple { SetSampling::Simple } else { SetSampling::Stratified };
            let e = estimate_interaction_t(&measure, &t, &estimator, sampling)?;
            set_result = Some(SetRecord {
                set: run.set.clone().unwrap(),
                estimate: e.estimate,
                samples: e.samples,
                std_error: Some(e.std_error),
            });
            seed = Some(estimator.seed);
            run.estimator = Some(estimator);
        }
        (None, Method::Exact) => {
            let mut oracle = ExactOracle::new(&measure);
            let record = |i: usize, j: usize, v: f64| PairRecord { i: i + 1, j: j + 1, estimate: Some(v), samples: 0, std_error: None };
            match config.pair {
                Some((i, j)) => results.push(record(i.min(j), i.max(j), oracle.pair(i, j)?)),
                None => {
                    let values = oracle.all_pairs()?;
                    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                    results = pairs.zip(values).map(|((i, j), v)| record(i, j, v)).collect();
                }
            }
        }
        (None, Method::Simple) => {
            let estimator = config.estimator_config(n)?;
            results = pair_records(&appro_interaction(&measure, &estimator)?);
            seed = Some(estimator.seed);
            run.estimator = Some(estimator);
        }
        (None, Method::Stratified) => {
            let estimator = config.estimator_config(n)?;
            let (estimate, records) = stratified_appro_interaction(&measure, &estimator)?;
            results = pair_records(&estimate);
            strata = Some(stratum_rows(&records));
            seed = Some(estimator.seed);
            run.estimator = Some(estimator);
        }
    }

    Ok(Report {
        config: run,
        measure: MeasureSpec::describe(&measure),
        results,
        set_result,
        strata,
        meta: Meta { seed, workers: config.workers, version: version(), seconds: Some(started.elapsed().as_secs_f64()) },
    })
}
