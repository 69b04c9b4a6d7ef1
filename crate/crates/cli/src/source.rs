use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use interaction_index::measure::presets;
use interaction_index::{Measure64, MeasureSpec};

/// Reads a measure spec file.
pub fn read_spec(path: &Path) -> Result<MeasureSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read measure spec {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed measure spec {}", path.display()))
}

/// A preset name (`mu1`..`mu4`) or the path of a spec file, validated.
pub fn load_measure(source: &str) -> Result<Measure64> {
    if let Some(m) = presets::preset(source) {
        return Ok(m);
    }
    let spec = read_spec(Path::new(source))?;
    Ok(spec.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use interaction_index::Measure;

    #[test]
    fn presets_and_files() {
        assert_eq!(load_measure("mu3").unwrap().ground().len(), 100);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        fs::write(&path, r#"{"type":"additive","weights":[0.25,0.5]}"#).unwrap();
        assert_eq!(load_measure(path.to_str().unwrap()).unwrap().ground().len(), 2);
        fs::write(&path, r#"{"type":"additive","weights":[0.75,0.5]}"#).unwrap();
        assert!(load_measure(path.to_str().unwrap()).is_err());
        assert!(load_measure("no-such-file.json").is_err());
    }
}
