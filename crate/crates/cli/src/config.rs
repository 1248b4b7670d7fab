use std::path::{Path, PathBuf};

use eqku_core::charts::CubicPair;
use eqku_core::poly::parse_rational;
use serde::Deserialize;

pub const DEFAULT_PRIMES: [u64; 3] = [5, 7, 13];

/// Environment variable overriding where emitted files go.
pub const OUT_DIR_ENV: &str = "EQKU_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A coefficient written either as an integer or as a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubicsFile {
    f0: Vec<Coefficient>,
    f1: Vec<Coefficient>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    primes: Option<Vec<u64>>,
    format: Option<Format>,
    output_dir: Option<PathBuf>,
    cubics: Option<CubicsFile>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cubics: CubicPair,
    pub primes: Vec<u64>,
    pub format: Format,
    pub output_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cubics: CubicPair::fermat(),
            primes: DEFAULT_PRIMES.to_vec(),
            format: Format::Text,
            output_dir: None,
        }
    }
}

fn coefficients(list: &[Coefficient]) -> Result<Vec<eqku_core::poly::Rational>, String> {
    list.iter()
        .map(|c| match c {
            Coefficient::Int(n) => Ok(eqku_core::poly::rational(*n)),
            Coefficient::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
        })
        .collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| e.to_string())?;
        let mut cfg = Self::default();
        if let Some(p) = file.primes {
            cfg.primes = p;
        }
        if let Some(f) = file.format {
            cfg.format = f;
        }
        cfg.output_dir = file.output_dir;
        if let Some(c) = file.cubics {
            cfg.cubics = CubicPair::from_coefficients(&coefficients(&c.f0)?, &coefficients(&c.f1)?)
                .map_err(|e| e.to_string())?;
        }
        Ok(cfg)
    }

    /// Where a relative output path lands: the environment override wins,
    /// then the config file's directory, then the working directory.
    pub fn resolve_output(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            return path.to_path_buf();
        }
        match std::env::var_os(OUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
            _ => match &self.output_dir {
                Some(dir) => dir.join(path),
                None => path.to_path_buf(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_coefficients() {
        let cfg = RunConfig::parse(
            r#"
primes = [5, 11]
format = "json"
[cubics]
f0 = [1, 0, 0, 0, 0, 0, 1, 0, 0, "2/3"]
f1 = [1, 0, 0, 0, 0, 0, 1, 0, 0, 1]
"#,
        )
        .unwrap();
        assert_eq!(cfg.primes, [5, 11]);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.cubics.f0().to_string(), "x0^3 + x1^3 + 2/3*x2^3");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("primes = \"x\"").is_err());
        assert!(RunConfig::parse("[cubics]\nf0 = [1]\nf1 = [1]").is_err());
        assert!(RunConfig::parse("[cubics]\nf0 = [\"a\",0,0,0,0,0,0,0,0,0]\nf1 = []").is_err());
        assert!(RunConfig::parse("colour = 1").is_err());
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::parse("").unwrap();
        assert_eq!(cfg.primes, DEFAULT_PRIMES);
        assert_eq!(cfg.cubics, CubicPair::fermat());
    }
}
