//! Run manifest: provenance written next to every output so a run can be
//! audited and reproduced.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use idiomeval_core::extraction::ExtractionConfig;
use idiomeval_core::formats::write_atomic;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ExtractionConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
    pub unix_time: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            config: None,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            unix_time: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn input(mut self, name: &str, path: &Path) -> Self {
        self.inputs
            .insert(name.to_string(), path.display().to_string());
        self
    }

    pub fn input_opt(self, name: &str, path: Option<&PathBuf>) -> Self {
        match path {
            Some(p) => self.input(name, p),
            None => self,
        }
    }

    pub fn output(mut self, name: &str, path: &Path) -> Self {
        self.outputs
            .insert(name.to_string(), path.display().to_string());
        self
    }

    pub fn output_opt(self, name: &str, path: Option<&PathBuf>) -> Self {
        match path {
            Some(p) => self.output(name, p),
            None => self,
        }
    }

    pub fn config(mut self, config: &ExtractionConfig) -> Self {
        self.seed = Some(config.seed);
        self.config = Some(config.clone());
        self
    }

    /// Write the manifest next to the primary output as
    /// `<output>.manifest.json`.
    pub fn write_next_to(&self, primary_output: &Path) -> anyhow::Result<()> {
        let mut name = primary_output.file_name().unwrap_or_default().to_owned();
        name.push(".manifest.json");
        let path = primary_output.with_file_name(name);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        write_atomic(&path, &text)?;
        Ok(())
    }
}
