//! Optional TOML run configuration; unknown keys are rejected.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::quad::QuadConfig;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub quad: QuadSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSection {
    pub rel_tol: Option<f64>,
    pub t_floor: Option<f64>,
    pub tail_window: Option<[f64; 2]>,
    pub delta_margin: Option<f64>,
    pub max_subdivisions: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<String>,
    pub out: Option<String>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Apply the file-level quad settings on top of defaults; explicit CLI
    /// flags are merged afterwards by the caller.
    pub fn quad_config(&self) -> Result<QuadConfig> {
        let mut cfg = QuadConfig::default();
        if let Some(v) = self.quad.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.quad.t_floor {
            cfg.t_floor = v;
        }
        if let Some([lo, hi]) = self.quad.tail_window {
            cfg.tail_window = (lo, hi);
        }
        if let Some(v) = self.quad.delta_margin {
            cfg.delta_margin = v;
        }
        if let Some(v) = self.quad.max_subdivisions {
            cfg.max_subdivisions = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_merges() {
        let text = r#"
            [quad]
            rel_tol = 1e-7
            t_floor = -2e6
            tail_window = [-1e4, -1e2]

            [output]
            format = "json"
            seed = 7
        "#;
        let fc = FileConfig::parse(text).unwrap();
        let qc = fc.quad_config().unwrap();
        assert_eq!(qc.rel_tol, 1e-7);
        assert_eq!(qc.t_floor, -2e6);
        assert_eq!(qc.tail_window, (-1e4, -1e2));
        assert_eq!(fc.output.seed, Some(7));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(FileConfig::parse("[quad]\nbogus = 1\n").is_err());
        assert!(FileConfig::parse("[mystery]\nx = 1\n").is_err());
    }

    #[test]
    fn invalid_values_rejected() {
        let fc = FileConfig::parse("[quad]\ntail_window = [-1e2, -1e4]\n").unwrap();
        assert!(fc.quad_config().is_err());
    }
}
