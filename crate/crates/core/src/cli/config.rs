use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::report::Format;
use crate::error::{Error, Result};

/// Settings read from a `key = value` file. Blank lines and lines starting
/// with `#` are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub max_degree: Option<u32>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub slow: Option<bool>,
    pub timing: Option<bool>,
    pub fixtures: Option<PathBuf>,
    pub reference: Option<PathBuf>,
}

const KEYS: &[&str] = &["max_degree", "seed", "format", "out", "slow", "timing", "fixtures", "reference"];

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw: BTreeMap<String, String> = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!(
                    "line {}: unknown key {key:?}; known keys: {}",
                    i + 1,
                    KEYS.join(", ")
                )));
            }
            raw.insert(key, value.trim().to_string());
        }
        let number = |key: &str| -> Result<Option<u64>> {
            raw.get(key)
                .map(|v| v.parse::<u64>().map_err(|_| Error::Config(format!("{key}: not a number: {v:?}"))))
                .transpose()
        };
        let boolean = |key: &str| -> Result<Option<bool>> {
            raw.get(key)
                .map(|v| match v.as_str() {
                    "true" | "yes" | "1" => Ok(true),
                    "false" | "no" | "0" => Ok(false),
                    _ => Err(Error::Config(format!("{key}: not a boolean: {v:?}"))),
                })
                .transpose()
        };
        Ok(FileConfig {
            max_degree: number("max_degree")?
                .map(|v| u32::try_from(v).map_err(|_| Error::Config("max_degree: too large".into())))
                .transpose()?,
            seed: number("seed")?,
            format: raw.get("format").map(|v| v.parse()).transpose()?,
            out: raw.get("out").map(PathBuf::from),
            slow: boolean("slow")?,
            timing: boolean("timing")?,
            fixtures: raw.get("fixtures").map(PathBuf::from),
            reference: raw.get("reference").map(PathBuf::from),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = FileConfig::parse("# run settings\nmax_degree = 12\nseed=7\nformat = json\nslow = yes\n").unwrap();
        assert_eq!(c.max_degree, Some(12));
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.format, Some(Format::Json));
        assert_eq!(c.slow, Some(true));
        assert_eq!(c.out, None);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("seed = many").is_err());
        assert!(FileConfig::parse("no equals sign").is_err());
    }
}
