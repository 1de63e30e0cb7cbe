//! Run configuration: defaults, then an optional `key = value` file, then
//! command-line flags.

use std::fs;
use std::path::PathBuf;

use crate::error::CliError;

pub const MAX_SIZE_CAP: i64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: i64,
    pub max_size: i64,
    pub t_max: i64,
    pub format: Format,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub unsafe_scale: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { n: 2, max_size: 4, t_max: 2, format: Format::Text, seed: 0, out: None, unsafe_scale: false }
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<i64>,
    pub max_size: Option<i64>,
    pub t_max: Option<i64>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub unsafe_scale: bool,
}

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str, line: usize) -> Result<T, CliError> {
    raw.parse().map_err(|_| CliError::usage(format!("config line {line}: bad value {raw:?} for {key}")))
}

fn apply_file(cfg: &mut RunConfig, text: &str) -> Result<(), CliError> {
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, raw)) = line.split_once('=') else {
            return Err(CliError::usage(format!("config line {}: expected `key = value`", k + 1)));
        };
        let (key, raw) = (key.trim().replace('-', "_"), raw.trim());
        match key.as_str() {
            "n" => cfg.n = parse_value(&key, raw, k + 1)?,
            "max_size" => cfg.max_size = parse_value(&key, raw, k + 1)?,
            "t" | "t_max" => cfg.t_max = parse_value(&key, raw, k + 1)?,
            "seed" => cfg.seed = parse_value(&key, raw, k + 1)?,
            "out" => cfg.out = Some(PathBuf::from(raw)),
            "unsafe_scale" => cfg.unsafe_scale = parse_value(&key, raw, k + 1)?,
            "format" => {
                cfg.format = <Format as clap::ValueEnum>::from_str(raw, true)
                    .map_err(|_| CliError::usage(format!("config line {}: unknown format {raw:?}", k + 1)))?
            }
            _ => return Err(CliError::usage(format!("config line {}: unknown key {key:?}", k + 1))),
        }
    }
    Ok(())
}

impl RunConfig {
    pub fn resolve(file: Option<&PathBuf>, flags: Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
            apply_file(&mut cfg, &text)?;
        }
        cfg.n = flags.n.unwrap_or(cfg.n);
        cfg.max_size = flags.max_size.unwrap_or(cfg.max_size);
        cfg.t_max = flags.t_max.unwrap_or(cfg.t_max);
        cfg.format = flags.format.unwrap_or(cfg.format);
        cfg.seed = flags.seed.unwrap_or(cfg.seed);
        cfg.out = flags.out.or(cfg.out);
        cfg.unsafe_scale |= flags.unsafe_scale;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::usage("n must be ≥ 2"));
        }
        if self.max_size < 0 {
            return Err(CliError::usage("max-size must be ≥ 0"));
        }
        if self.max_size > MAX_SIZE_CAP && !self.unsafe_scale {
            return Err(CliError::usage(format!(
                "max-size {} exceeds the cap of {MAX_SIZE_CAP}; pass --unsafe-scale to run anyway",
                self.max_size
            )));
        }
        if self.t_max < 1 {
            return Err(CliError::usage("t must be ≥ 1"));
        }
        Ok(())
    }
}
