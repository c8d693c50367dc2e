use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use num_rational::BigRational;
use randgap_core::cube::{format_rational, parse_rational};

use crate::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (text, json, csv)")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Names {
    Base,
    Extended,
}

impl FromStr for Names {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "base" => Ok(Names::Base),
            "extended" => Ok(Names::Extended),
            _ => Err(format!("unknown names {s:?} (base, extended)")),
        }
    }
}

impl fmt::Display for Names {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Names::Base => "base",
            Names::Extended => "extended",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Souslin pair search with both finders.
    Pair,
    /// Conditional chain-condition extraction.
    Extract,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pair" => Ok(Mode::Pair),
            "extract" => Ok(Mode::Extract),
            _ => Err(format!("unknown mode {s:?} (pair, extract)")),
        }
    }
}

/// Raw settings; each may also come from the config file, under the same
/// name with dashes.
#[derive(Args, Debug, Default, Clone)]
pub struct Options {
    /// Flat `key = value` file; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Number of generators A
    #[arg(long, global = true)]
    pub generators: Option<String>,
    /// Horizon M
    #[arg(long, global = true)]
    pub horizon: Option<String>,
    /// Family size N
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Threshold delta for extraction, as p/q
    #[arg(long, global = true)]
    pub delta: Option<String>,
    /// Tolerance epsilon for the pair pipeline, as p/q
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    /// Seed of the instance generator
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// text, json or csv
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Artifact directory for construct; report file otherwise
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Artifact directory to verify instead of constructing in-process
    #[arg(long, global = true)]
    pub artifacts: Option<String>,
    /// Instance file for search
    #[arg(long, global = true)]
    pub instance: Option<String>,
    /// base or extended
    #[arg(long, global = true)]
    pub names: Option<String>,
    /// pair or extract
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// |Gamma| of generated conditions
    #[arg(long, global = true)]
    pub gamma: Option<String>,
    /// First index of the forbidden event
    #[arg(long, global = true)]
    pub cut: Option<String>,
    /// Noise coordinates per generated condition
    #[arg(long, global = true)]
    pub noise: Option<String>,
    /// Cross-term samples drawn by verify
    #[arg(long, global = true)]
    pub samples: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub generators: usize,
    pub horizon: usize,
    pub family: usize,
    pub delta: BigRational,
    pub epsilon: BigRational,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub artifacts: Option<PathBuf>,
    pub instance: Option<PathBuf>,
    pub names: Names,
    pub mode: Mode,
    pub gamma: usize,
    pub cut: usize,
    pub noise: u64,
    pub samples: usize,
}

const KEYS: [&str; 16] = [
    "generators", "horizon", "family", "delta", "epsilon", "seed", "format", "out", "artifacts", "instance", "names",
    "mode", "gamma", "cut", "noise", "samples",
];

fn parse_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Invalid(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn value<T: FromStr>(key: &str, raw: Option<String>, default: T) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    match raw {
        None => Ok(default),
        Some(s) => s.parse().map_err(|e| CliError::Invalid(format!("{key}: {e}"))),
    }
}

fn unit_rational(key: &str, raw: Option<String>, default: &str) -> Result<BigRational, CliError> {
    let text = raw.unwrap_or_else(|| default.to_string());
    let q = parse_rational(&text).map_err(|e| CliError::Invalid(format!("{key}: {e}")))?;
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if q <= zero || q >= one {
        return Err(CliError::Invalid(format!("{key} = {} is not in (0, 1)", format_rational(&q))));
    }
    Ok(q)
}

impl RunConfig {
    pub fn resolve(opts: Options) -> Result<Self, CliError> {
        let mut file = match &opts.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))?;
                parse_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut pick = |key: &str, flag: Option<String>| flag.or_else(|| file.remove(key));
        let generators = pick("generators", opts.generators);
        let horizon = pick("horizon", opts.horizon);
        let family = pick("family", opts.family);
        let delta = pick("delta", opts.delta);
        let epsilon = pick("epsilon", opts.epsilon);
        let seed = pick("seed", opts.seed);
        let format = pick("format", opts.format);
        let out = pick("out", opts.out);
        let artifacts = pick("artifacts", opts.artifacts);
        let instance = pick("instance", opts.instance);
        let names = pick("names", opts.names);
        let mode = pick("mode", opts.mode);
        let gamma = pick("gamma", opts.gamma);
        let cut = pick("cut", opts.cut);
        let noise = pick("noise", opts.noise);
        let samples = pick("samples", opts.samples);

        let config = RunConfig {
            generators: value("generators", generators, 8)?,
            horizon: value("horizon", horizon, 128)?,
            family: value("family", family, 40)?,
            delta: unit_rational("delta", delta, "3/10")?,
            epsilon: unit_rational("epsilon", epsilon, "1/4")?,
            seed: value("seed", seed, 0)?,
            format: value("format", format, Format::Text)?,
            out: out.map(PathBuf::from),
            artifacts: artifacts.map(PathBuf::from),
            instance: instance.map(PathBuf::from),
            names: value("names", names, Names::Base)?,
            mode: value("mode", mode, Mode::Pair)?,
            gamma: value("gamma", gamma, 1)?,
            cut: value("cut", cut, 2)?,
            noise: value("noise", noise, 2)?,
            samples: value("samples", samples, 100)?,
        };
        if config.generators == 0 {
            return Err(CliError::Invalid("generators must be positive".into()));
        }
        if config.horizon == 0 {
            return Err(CliError::Invalid("horizon must be positive".into()));
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let c = RunConfig::resolve(Options::default()).unwrap();
        assert_eq!((c.generators, c.horizon, c.family), (8, 128, 40));
        assert_eq!(format_rational(&c.epsilon), "1/4");
        let opts = Options {
            horizon: Some("0".into()),
            ..Options::default()
        };
        assert!(matches!(RunConfig::resolve(opts), Err(CliError::Invalid(_))));
        let opts = Options {
            epsilon: Some("5/4".into()),
            ..Options::default()
        };
        assert!(RunConfig::resolve(opts).is_err());
    }

    #[test]
    fn file_keys() {
        let map = parse_file("# run\ngenerators = 4\nhorizon=64 # short\n").unwrap();
        assert_eq!(map["generators"], "4");
        assert_eq!(map["horizon"], "64");
        assert!(parse_file("colour = red").is_err());
        assert!(parse_file("generators 4").is_err());
    }
}
