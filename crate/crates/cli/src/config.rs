use serde::Deserialize;
use std::path::Path;

pub const CONFIG_ENV: &str = "SL2LAB_CONFIG";
pub const MAX_RING_ORDER_CAP: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub ring_order_cap: usize,
    pub group_order_cap: usize,
    /// Upper bound on the number of class sets evaluated by `delta`.
    pub delta_budget: Option<u64>,
    pub output_format: Format,
    /// Worker threads; `None` lets rayon decide.
    pub parallelism: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ring_order_cap: sl2lab::finring::DEFAULT_RING_ORDER_CAP,
            group_order_cap: sl2lab::group::DEFAULT_GROUP_ORDER_CAP,
            delta_budget: None,
            output_format: Format::Json,
            parallelism: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.ring_order_cap == 0 || self.group_order_cap == 0 {
            return Err("caps must be positive".into());
        }
        if self.ring_order_cap > MAX_RING_ORDER_CAP {
            return Err(format!(
                "ring order cap {} exceeds the maximum {MAX_RING_ORDER_CAP}",
                self.ring_order_cap
            ));
        }
        if self.delta_budget == Some(0) {
            return Err("delta budget must be positive".into());
        }
        if self.parallelism == Some(0) {
            return Err("parallelism must be positive".into());
        }
        Ok(())
    }
}
