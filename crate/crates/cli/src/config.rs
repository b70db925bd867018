//! Run parameters, with optional `key = value` config files.

use std::path::{Path, PathBuf};

/// Seed used when neither `--seed` nor a config file provides one.
pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub max_weight: Option<u32>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub order: Option<usize>,
    pub fixture: Option<PathBuf>,
}

impl Params {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// Fill unset fields from `other`.
    pub fn or(self, other: Params) -> Params {
        Params {
            max_weight: self.max_weight.or(other.max_weight),
            trials: self.trials.or(other.trials),
            seed: self.seed.or(other.seed),
            n: self.n.or(other.n),
            order: self.order.or(other.order),
            fixture: self.fixture.or(other.fixture),
        }
    }
}

/// Parse `key = value` lines; `#` starts a comment, keys match the long flag names.
/// A relative fixture path is resolved against `base`.
pub fn parse_config(text: &str, base: Option<&Path>) -> Result<Params, String> {
    let mut p = Params::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| format!("config line {}: expected `key = value`", idx + 1))?;
        let value = value.trim().trim_matches('"');
        let bad = |what: &str| format!("config line {}: bad {what} `{value}`", idx + 1);
        match key.trim() {
            "max-weight" | "max_weight" => p.max_weight = Some(value.parse().map_err(|_| bad("max-weight"))?),
            "trials" => p.trials = Some(value.parse().map_err(|_| bad("trials"))?),
            "seed" => p.seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "n" => p.n = Some(value.parse().map_err(|_| bad("n"))?),
            "order" => p.order = Some(value.parse().map_err(|_| bad("order"))?),
            "fixture" => {
                let path = PathBuf::from(value);
                p.fixture = Some(match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path,
                });
            }
            other => return Err(format!("config line {}: unknown key `{other}`", idx + 1)),
        }
    }
    Ok(p)
}

pub fn load_config(path: &Path) -> Result<Params, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_config(&text, path.parent())
}
