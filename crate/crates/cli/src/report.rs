use std::io::Write;

use anyhow::Result;
use interaction_index::measure::MeasureSpec;
use interaction_index::sampling::{EstimatorConfig, InteractionEstimate, StratumRecord};
use serde::{Deserialize, Serialize};

/// One pair (or set) result with 1-based labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub estimate: Option<f64>,
    pub samples: u64,
    pub std_error: Option<f64>,
}

/// Result for a set `T` (1-based labels).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetRecord {
    pub set: Vec<usize>,
    pub estimate: f64,
    pub samples: u64,
    pub std_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumRow {
    pub i: usize,
    pub j: usize,
    pub position: usize,
    pub m_exp: u64,
    pub mean_exp: f64,
    pub s2: f64,
    pub m_st: u64,
    pub mean_st: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: Option<u64>,
    pub workers: usize,
    pub version: String,
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub method: String,
    pub measure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimator: Option<EstimatorConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub measure: MeasureSpec,
    pub results: Vec<PairRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_result: Option<SetRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumRow>>,
    pub meta: Meta,
}

pub fn pair_records(estimate: &InteractionEstimate<f64>) -> Vec<PairRecord> {
    estimate
        .iter()
        .map(|(i, j, estimate, samples, std_error)| PairRecord { i: i + 1, j: j + 1, estimate, samples, std_error })
        .collect()
}

pub fn stratum_rows(records: &[StratumRecord<f64>]) -> Vec<StratumRow> {
    records
        .iter()
        .map(|r| StratumRow {
            i: r.i + 1,
            j: r.j + 1,
            position: r.position,
            m_exp: r.m_exp,
            mean_exp: r.mean_exp,
            s2: r.s2,
            m_st: r.m_st,
            mean_st: r.mean_st,
        })
        .collect()
}

pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Header `i,j,estimate,samples,std_error`; undefined values are empty fields.
pub fn write_estimates_csv<W: Write>(out: W, records: &[PairRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "j", "estimate", "samples", "std_error"])?;
    for r in records {
        w.write_record([r.i.to_string(), r.j.to_string(), opt(r.estimate), r.samples.to_string(), opt(r.std_error)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_estimates_csv<R: std::io::Read>(input: R) -> Result<Vec<PairRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let parse = |s: &str| -> Result<Option<f64>> { Ok(if s.is_empty() { None } else { Some(s.parse()?) }) };
    r.records()
        .map(|row| {
            let row = row?;
            Ok(PairRecord {
                i: row[0].parse()?,
                j: row[1].parse()?,
                estimate: parse(&row[2])?,
                samples: row[3].parse()?,
                std_error: parse(&row[4])?,
            })
        })
        .collect()
}

pub fn write_report<W: Write>(mut out: W, report: &Report, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => match &report.set_result {
            Some(r) => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["set", "estimate", "samples", "std_error"])?;
                let set = r.set.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
                w.write_record([set, r.estimate.to_string(), r.samples.to_string(), opt(r.std_error)])?;
                w.flush()?;
            }
            None => write_estimates_csv(out, &report.results)?,
        },
    }
    Ok(())
}
