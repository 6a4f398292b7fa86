//! Optional TOML configuration, read from the file named by `GTSEQ_CONFIG`.
//!
//! ```toml
//! [verify]
//! n = 3            # check a single order
//! grid = "-2..2"
//! trees = 5        # random tree sequences per order
//! seed = 0
//! threads = 8      # worker threads
//! memo_cap = 1000000
//! ```
//!
//! Every key is optional and command line flags take precedence.

use std::path::Path;

use serde::Deserialize;

pub const ENV_VAR: &str = "GTSEQ_CONFIG";

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub verify: VerifySection,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub n: Option<usize>,
    pub grid: Option<String>,
    pub trees: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub memo_cap: Option<usize>,
}

impl Config {
    pub fn load_from(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    /// The file named by the environment variable, or defaults when unset.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(ENV_VAR) {
            Some(p) if !p.is_empty() => Config::load_from(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }
}
