//! Fixed-dimension sentence vectors from character n-grams, with optional
//! pretrained word vectors.
//!
//! Tokens without a pretrained vector are encoded as the mean of hashed
//! n-gram bucket vectors. Bucket rows are derived deterministically from
//! `(seed, bucket index)` on demand, so the conceptual
//! `bucket_count x dim` matrix is never materialized.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hash::fnv1a64;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("failed to read vector file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("vector file line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid embedding config: {0}")]
    InvalidConfig(String),
}

/// Parameters of the n-gram sentence encoder.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingConfig {
    /// Sentence vector dimensionality.
    pub dim: usize,
    pub ngram_min: usize,
    pub ngram_max: usize,
    /// Number of hashed n-gram buckets.
    pub bucket_count: usize,
    /// Seed for the bucket-table derivation.
    pub seed: u64,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        Self {
            dim: 100,
            ngram_min: 3,
            ngram_max: 6,
            bucket_count: 2_000_000,
            seed: 42,
        }
    }
}

impl EmbeddingConfig {
    pub fn validate(&self) -> Result<(), EmbeddingError> {
        if self.dim < 1 {
            return Err(EmbeddingError::InvalidConfig("dim must be >= 1".into()));
        }
        if self.ngram_min < 1 || self.ngram_min > self.ngram_max {
            return Err(EmbeddingError::InvalidConfig(
                "ngram range must satisfy 1 <= ngram_min <= ngram_max".into(),
            ));
        }
        if self.bucket_count < 1 {
            return Err(EmbeddingError::InvalidConfig(
                "bucket_count must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Word vectors plus the derived n-gram bucket table. Immutable once built.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    word_vectors: HashMap<String, Vec<f64>>,
    config: EmbeddingConfig,
}

/// Character n-grams of the `<`/`>`-wrapped token: all windows of length
/// `nmin..=nmax` strictly shorter than the wrapped form, shortest length
/// first and left to right within a length, then the full wrapped token.
pub fn char_ngrams(token: &str, nmin: usize, nmax: usize) -> Vec<String> {
    let wrapped: Vec<char> = std::iter::once('<')
        .chain(token.chars())
        .chain(std::iter::once('>'))
        .collect();
    let mut out = Vec::new();
    let upper = nmax.min(wrapped.len().saturating_sub(1));
    for n in nmin..=upper {
        for window in wrapped.windows(n) {
            out.push(window.iter().collect());
        }
    }
    out.push(wrapped.iter().collect());
    out
}

/// Bucket index of an n-gram: FNV-1a 64 of its UTF-8 bytes mod `bucket_count`.
pub fn hash_ngram(ngram: &str, bucket_count: usize) -> usize {
    (fnv1a64(ngram.as_bytes()) % bucket_count as u64) as usize
}

impl EmbeddingTable {
    /// A purely hashed table with no pretrained vectors.
    pub fn hashed(config: EmbeddingConfig) -> Result<Self, EmbeddingError> {
        config.validate()?;
        Ok(Self {
            word_vectors: HashMap::new(),
            config,
        })
    }

    /// Loads pretrained word vectors in the text format: an optional
    /// `<count> <dim>` header, then one `<token> <f1> ... <fdim>` row per
    /// line. Rows with wrong arity or non-numeric components are errors.
    pub fn load_pretrained(path: &Path, config: EmbeddingConfig) -> Result<Self, EmbeddingError> {
        config.validate()?;
        let content = std::fs::read_to_string(path).map_err(|source| EmbeddingError::Io {
            path: path.to_path_buf(),
            source,
        })?;

        let mut word_vectors = HashMap::new();
        let mut saw_first = false;
        for (line_no, line) in content.lines().enumerate() {
            let line_no = line_no + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if !saw_first {
                saw_first = true;
                // Header = exactly two unsigned integers, unless that is
                // also a plausible row shape for this dimension.
                if fields.len() == 2
                    && config.dim != 1
                    && fields.iter().all(|f| f.parse::<u64>().is_ok())
                {
                    let header_dim: usize =
                        fields[1].parse().map_err(|_| EmbeddingError::Parse {
                            line: line_no,
                            reason: "header dimension is not an integer".into(),
                        })?;
                    if header_dim != config.dim {
                        return Err(EmbeddingError::Parse {
                            line: line_no,
                            reason: format!(
                                "header dimension {} does not match configured dimension {}",
                                header_dim, config.dim
                            ),
                        });
                    }
                    continue;
                }
            }
            if fields.len() != 1 + config.dim {
                return Err(EmbeddingError::Parse {
                    line: line_no,
                    reason: format!(
                        "expected {} vector components, found {}",
                        config.dim,
                        fields.len().saturating_sub(1)
                    ),
                });
            }
            let mut vector = Vec::with_capacity(config.dim);
            for field in &fields[1..] {
                let value: f64 = field.parse().map_err(|_| EmbeddingError::Parse {
                    line: line_no,
                    reason: format!("non-numeric component {:?}", field),
                })?;
                if !value.is_finite() {
                    return Err(EmbeddingError::Parse {
                        line: line_no,
                        reason: format!("non-finite component {:?}", field),
                    });
                }
                vector.push(value);
            }
            word_vectors.insert(fields[0].to_string(), vector);
        }

        Ok(Self {
            word_vectors,
            config,
        })
    }

    pub fn config(&self) -> &EmbeddingConfig {
        &self.config
    }

    pub fn word_vector(&self, token: &str) -> Option<&[f64]> {
        self.word_vectors.get(token).map(Vec::as_slice)
    }

    pub fn word_count(&self) -> usize {
        self.word_vectors.len()
    }

    /// Row `bucket` of the conceptual bucket matrix: `dim` values uniform in
    /// `[-1/dim, 1/dim]`, derived from `(seed, bucket)`.
    pub fn bucket_vector(&self, bucket: usize) -> Vec<f64> {
        let mut key = [0u8; 16];
        key[..8].copy_from_slice(&self.config.seed.to_le_bytes());
        key[8..].copy_from_slice(&(bucket as u64).to_le_bytes());
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a64(&key));
        let scale = 1.0 / self.config.dim as f64;
        (0..self.config.dim)
            .map(|_| (rng.random::<f64>() * 2.0 - 1.0) * scale)
            .collect()
    }

    /// Vector for one token: the pretrained vector if present, else the mean
    /// of its hashed n-gram bucket vectors.
    pub fn token_vector(&self, token: &str) -> Vec<f64> {
        if let Some(v) = self.word_vectors.get(token) {
            return v.clone();
        }
        let ngrams = char_ngrams(token, self.config.ngram_min, self.config.ngram_max);
        let mut sum = vec![0.0; self.config.dim];
        for ngram in &ngrams {
            let row = self.bucket_vector(hash_ngram(ngram, self.config.bucket_count));
            for (s, r) in sum.iter_mut().zip(&row) {
                *s += r;
            }
        }
        let inv = 1.0 / ngrams.len() as f64;
        for s in &mut sum {
            *s *= inv;
        }
        sum
    }

    /// Sentence vector: mean over token vectors, L2-normalized. The zero
    /// vector (empty token list, or exact cancellation) is left as zero.
    pub fn embed_sentence(&self, tokens: &[String]) -> Vec<f64> {
        let mut sum = vec![0.0; self.config.dim];
        if tokens.is_empty() {
            return sum;
        }
        for token in tokens {
            let v = self.token_vector(token);
            for (s, x) in sum.iter_mut().zip(&v) {
                *s += x;
            }
        }
        let inv = 1.0 / tokens.len() as f64;
        for s in &mut sum {
            *s *= inv;
        }
        let norm = sum.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            for s in &mut sum {
                *s /= norm;
            }
        }
        sum
    }
}
