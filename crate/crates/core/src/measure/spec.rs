use serde::{Deserialize, Serialize};

use super::{AdditiveMeasure, AnyMeasure, BiClusterMeasure, CardinalityMeasure, MaxWeightMeasure, TableMeasure};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Serialized measure definition, one JSON object per measure.
///
/// Weight lists are in element order (element 1 first); table values are indexed by
/// bitmask with bit `k` standing for element `k + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Cardinality { n: usize, values: Vec<f64> },
    MaxWeight { weights: Vec<f64> },
    Bicluster { group1_size: usize, group2_size: usize, pair_value: f64 },
    Additive { weights: Vec<f64> },
    Table { n: usize, values: Vec<f64> },
}

fn convert<T: Scalar>(xs: &[f64]) -> Result<Vec<T>> {
    xs.iter()
        .map(|&x| T::from_f64(x).ok_or_else(|| Error::InvalidMeasure(format!("value {x} not representable"))))
        .collect()
}

impl MeasureSpec {
    /// Builds the measure, enforcing the fuzzy-measure axioms.
    pub fn build<T: Scalar>(&self) -> Result<AnyMeasure<T>> {
        self.construct(true)
    }

    /// Builds the measure checking only its shape, so that invalid measures can be inspected.
    pub fn build_unchecked<T: Scalar>(&self) -> Result<AnyMeasure<T>> {
        self.construct(false)
    }

    fn construct<T: Scalar>(&self, validate: bool) -> Result<AnyMeasure<T>> {
        Ok(match self {
            MeasureSpec::Cardinality { n, values } => {
                if values.len() != n + 1 {
                    return Err(Error::InvalidMeasure(format!("cardinality measure with n = {n} needs {} values", n + 1)));
                }
                let v = convert(values)?;
                if validate { CardinalityMeasure::new(v) } else { CardinalityMeasure::new_unchecked(v) }?.into()
            }
            MeasureSpec::MaxWeight { weights } => {
                let w = convert(weights)?;
                if validate { MaxWeightMeasure::new(w) } else { MaxWeightMeasure::new_unchecked(w) }?.into()
            }
            MeasureSpec::Bicluster { group1_size, group2_size, pair_value } => {
                let c = convert::<T>(&[*pair_value])?[0];
                let m = BiClusterMeasure::split(*group1_size, *group2_size, c);
                match (m, validate) {
                    (Ok(m), _) => m.into(),
                    (Err(e), true) => return Err(e),
                    (Err(_), false) => {
                        let ground = crate::GroundSet::new(group1_size + group2_size)?;
                        let g1 = crate::Coalition::from_elements(ground, 0..*group1_size)?;
                        let g2 = crate::Coalition::from_elements(ground, *group1_size..ground.len())?;
                        BiClusterMeasure::new_unchecked(g1, g2, c)?.into()
                    }
                }
            }
            MeasureSpec::Additive { weights } => {
                let w = convert(weights)?;
                if validate { AdditiveMeasure::new(w) } else { AdditiveMeasure::new_unchecked(w) }?.into()
            }
            MeasureSpec::Table { n, values } => {
                let v = convert(values)?;
                if validate { TableMeasure::new(*n, v) } else { TableMeasure::new_unchecked(*n, v) }?.into()
            }
        })
    }

    /// Spec describing an existing `f64` measure.
    pub fn describe(measure: &AnyMeasure<f64>) -> Self {
        match measure {
            AnyMeasure::Cardinality(m) => {
                MeasureSpec::Cardinality { n: m.values().len() - 1, values: m.values().to_vec() }
            }
            AnyMeasure::MaxWeight(m) => MeasureSpec::MaxWeight { weights: m.weights().to_vec() },
            AnyMeasure::BiCluster(m) => {
                let (g1, g2) = m.group_sizes();
                MeasureSpec::Bicluster { group1_size: g1, group2_size: g2, pair_value: m.pair_value() }
            }
            AnyMeasure::Additive(m) => MeasureSpec::Additive { weights: m.weights().to_vec() },
            AnyMeasure::Table(m) => {
                use crate::measure::Measure;
                MeasureSpec::Table { n: m.ground().len(), values: m.values().to_vec() }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{presets, Measure};
    use crate::Coalition;

    #[test]
    fn parses_every_documented_form() {
        let docs = [
            r#"{"type":"cardinality","n":2,"values":[0,0.5,1]}"#,
            r#"{"type":"max_weight","weights":[0.1,0.9,0.4]}"#,
            r#"{"type":"bicluster","group1_size":50,"group2_size":50,"pair_value":0.02}"#,
            r#"{"type":"additive","weights":[0.2,0.3,0.5]}"#,
            r#"{"type":"table","n":2,"values":[0,0.25,0.5,1]}"#,
        ];
        for doc in docs {
            let spec: MeasureSpec = serde_json::from_str(doc).unwrap();
            spec.build::<f64>().unwrap();
        }
    }

    #[test]
    fn table_bit_k_is_element_k_plus_one() {
        let spec: MeasureSpec = serde_json::from_str(r#"{"type":"table","n":2,"values":[0,0.25,0.5,1]}"#).unwrap();
        let m = spec.build::<f64>().unwrap();
        let second = Coalition::from_elements(m.ground(), [1]).unwrap();
        assert_eq!(m.value(&second), 0.5);
    }

    #[test]
    fn bicluster_spec_matches_preset() {
        let spec: MeasureSpec =
            serde_json::from_str(r#"{"type":"bicluster","group1_size":50,"group2_size":50,"pair_value":0.02}"#).unwrap();
        assert_eq!(spec.build::<f64>().unwrap(), presets::mu4::<f64>().into());
        assert_eq!(MeasureSpec::describe(&presets::mu4::<f64>().into()), spec);
    }

    #[test]
    fn validation_can_be_deferred() {
        let spec: MeasureSpec = serde_json::from_str(r#"{"type":"additive","weights":[0.6,0.6]}"#).unwrap();
        assert!(spec.build::<f64>().is_err());
        assert!(spec.build_unchecked::<f64>().is_ok());
        let bad_shape: MeasureSpec = serde_json::from_str(r#"{"type":"table","n":2,"values":[0,1]}"#).unwrap();
        assert!(bad_shape.build_unchecked::<f64>().is_err());
        assert!(serde_json::from_str::<MeasureSpec>(r#"{"type":"mystery"}"#).is_err());
    }
}
