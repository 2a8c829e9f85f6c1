//! Run configuration: defaults, key=value config files, flag overrides.

use std::fmt;
use std::path::{Path, PathBuf};

use pagesum_core::{EmbeddingConfig, NetworkConfig};

/// Everything a command needs to run, resolved from three layers:
/// built-in defaults, then a config file, then command-line flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub page_len: usize,
    pub embed_dim: usize,
    pub hidden_size: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    pub ngram_min: usize,
    pub ngram_max: usize,
    pub bucket_count: usize,
    pub summary_len: usize,
    pub train_fraction: f64,
    pub corpus_root: PathBuf,
    pub model_path: PathBuf,
    pub body_tag: String,
    /// CSV output path for `eval` / `sweep`; each command picks its own
    /// default file name when unset.
    pub csv_out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let net = NetworkConfig::default();
        let emb = EmbeddingConfig::default();
        RunConfig {
            page_len: net.page_len,
            embed_dim: net.embed_dim,
            hidden_size: net.hidden_size,
            learning_rate: net.learning_rate,
            epochs: net.epochs,
            seed: net.seed,
            ngram_min: emb.ngram_min,
            ngram_max: emb.ngram_max,
            bucket_count: emb.bucket_count,
            summary_len: 5,
            train_fraction: 0.75,
            corpus_root: PathBuf::from("corpus"),
            model_path: PathBuf::from("model.bin"),
            body_tag: pagesum_core::DEFAULT_BODY_TAG.to_string(),
            csv_out: None,
        }
    }
}

/// Flag-level overrides collected from the command line. `None` means the
/// flag was not given and the file value (or default) stands.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub page_len: Option<usize>,
    pub summary_len: Option<usize>,
    pub model: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Debug)]
pub enum ConfigError {
    Io { path: PathBuf, source: std::io::Error },
    Syntax { path: PathBuf, line: usize, reason: String },
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, source } => {
                write!(f, "cannot read config {}: {source}", path.display())
            }
            ConfigError::Syntax { path, line, reason } => {
                write!(f, "{}:{line}: {reason}", path.display())
            }
            ConfigError::Invalid(reason) => write!(f, "invalid configuration: {reason}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Resolve the effective configuration: defaults, overlaid with the
    /// config file if one was given, overlaid with explicit flags.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        cfg.apply_flags(flags);
        cfg.validate().map_err(ConfigError::Invalid)?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    reason: format!("expected key=value, got {line:?}"),
                });
            };
            self.apply_entry(key.trim(), value.trim()).map_err(|reason| {
                ConfigError::Syntax { path: path.to_path_buf(), line: idx + 1, reason }
            })?;
        }
        Ok(())
    }

    fn apply_entry(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
        where
            T::Err: fmt::Display,
        {
            value.parse().map_err(|e| format!("bad value for {key}: {e}"))
        }
        match key {
            "page_len" => self.page_len = parse(key, value)?,
            "embed_dim" => self.embed_dim = parse(key, value)?,
            "hidden_size" => self.hidden_size = parse(key, value)?,
            "learning_rate" => self.learning_rate = parse(key, value)?,
            "epochs" => self.epochs = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "ngram_min" => self.ngram_min = parse(key, value)?,
            "ngram_max" => self.ngram_max = parse(key, value)?,
            "bucket_count" => self.bucket_count = parse(key, value)?,
            "summary_len" => self.summary_len = parse(key, value)?,
            "train_fraction" => self.train_fraction = parse(key, value)?,
            "corpus_root" => self.corpus_root = PathBuf::from(value),
            "model_path" => self.model_path = PathBuf::from(value),
            "body_tag" => self.body_tag = value.to_string(),
            "csv_out" => self.csv_out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown config key {key:?}")),
        }
        Ok(())
    }

    fn apply_flags(&mut self, flags: &Overrides) {
        if let Some(seed) = flags.seed {
            self.seed = seed;
        }
        if let Some(page_len) = flags.page_len {
            self.page_len = page_len;
        }
        if let Some(summary_len) = flags.summary_len {
            self.summary_len = summary_len;
        }
        if let Some(model) = &flags.model {
            self.model_path = model.clone();
        }
        if let Some(corpus) = &flags.corpus {
            self.corpus_root = corpus.clone();
        }
        if let Some(csv) = &flags.csv {
            self.csv_out = Some(csv.clone());
        }
    }

    fn validate(&self) -> Result<(), String> {
        self.network_config().validate().map_err(|e| e.to_string())?;
        self.embedding_config().validate().map_err(|e| e.to_string())?;
        if self.summary_len == 0 {
            return Err("summary_len must be at least 1".into());
        }
        if self.summary_len > self.page_len {
            return Err(format!(
                "summary_len {} exceeds page_len {}",
                self.summary_len, self.page_len
            ));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(format!(
                "train_fraction must be strictly between 0 and 1, got {}",
                self.train_fraction
            ));
        }
        if self.body_tag.is_empty() {
            return Err("body_tag must not be empty".into());
        }
        Ok(())
    }

    pub fn network_config(&self) -> NetworkConfig {
        NetworkConfig {
            page_len: self.page_len,
            embed_dim: self.embed_dim,
            hidden_size: self.hidden_size,
            learning_rate: self.learning_rate,
            epochs: self.epochs,
            seed: self.seed,
        }
    }

    pub fn embedding_config(&self) -> EmbeddingConfig {
        EmbeddingConfig {
            dim: self.embed_dim,
            ngram_min: self.ngram_min,
            ngram_max: self.ngram_max,
            bucket_count: self.bucket_count,
            seed: self.seed,
        }
    }

    /// Embedding settings matching a loaded model's dimensions. Summarize
    /// and eval embed with the model's own width so shapes always agree.
    pub fn embedding_config_for(&self, embed_dim: usize) -> EmbeddingConfig {
        EmbeddingConfig { dim: embed_dim, ..self.embedding_config() }
    }
}
