use std::path::{Path, PathBuf};

use hilbertforge::asymptotics::{DEFAULT_K_MAX, DEFAULT_WINDOW};
use hilbertforge::monomial::DEFAULT_ENUMERATION_CAP;
use serde::Deserialize;

pub const CONFIG_FILE: &str = "hilbertforge.toml";
pub const CAP_ENV: &str = "HF_ENUM_CAP";

/// Settings read from `hilbertforge.toml`. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub enumeration_cap: Option<u64>,
    pub k_max: Option<u32>,
    pub window: Option<usize>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// An explicit path must exist; otherwise `./hilbertforge.toml` is used
    /// when present.
    pub fn discover(explicit: Option<&Path>) -> Result<Self, String> {
        match explicit {
            Some(p) => Self::load(p),
            None => {
                let p = PathBuf::from(CONFIG_FILE);
                if p.is_file() {
                    Self::load(&p)
                } else {
                    Ok(Self::default())
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub enumeration_cap: u64,
    pub k_max: u32,
    pub window: usize,
    pub threads: Option<usize>,
}

/// Precedence: command line, then `HF_ENUM_CAP` for the cap, then the
/// config file, then built-in defaults.
pub fn resolve(
    file: &FileConfig,
    env_cap: Option<&str>,
    cap: Option<u64>,
    k_max: Option<u32>,
    window: Option<usize>,
    threads: Option<usize>,
) -> Result<Settings, String> {
    let env_cap = match env_cap {
        Some(s) => Some(
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("{CAP_ENV}: expected a non-negative integer, got {s:?}"))?,
        ),
        None => None,
    };
    Ok(Settings {
        enumeration_cap: cap
            .or(env_cap)
            .or(file.enumeration_cap)
            .unwrap_or(DEFAULT_ENUMERATION_CAP),
        k_max: k_max.or(file.k_max).unwrap_or(DEFAULT_K_MAX),
        window: window.or(file.window).unwrap_or(DEFAULT_WINDOW),
        threads: threads.or(file.threads),
    })
}
