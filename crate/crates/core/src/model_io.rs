//! Binary model persistence.
//!
//! Layout: magic `PSUM1`; `page_len`, `embed_dim`, `hidden_size` as u32
//! little-endian; then W1, b1, W2, b2 as f64 little-endian in row-major
//! order; then a u64 FNV-1a hash of every preceding byte. Training
//! hyperparameters are not persisted; loading fills them with defaults.

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::hash::fnv1a64;
use crate::network::{NetworkConfig, NetworkParams};

const MAGIC: &[u8; 5] = b"PSUM1";
const HEADER_LEN: usize = MAGIC.len() + 3 * 4;

#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("bad magic: not a model file")]
    BadMagic,
    #[error("model file corrupt: {0}")]
    Truncated(String),
    #[error("model header invalid: {0}")]
    InvalidHeader(String),
    #[error("checksum mismatch: stored {stored:#018x}, computed {computed:#018x}")]
    ChecksumMismatch { stored: u64, computed: u64 },
}

/// Serializes parameters to the on-disk byte layout.
pub fn to_bytes(params: &NetworkParams) -> Vec<u8> {
    let c = &params.config;
    let tensor_len = params.w1.len() + params.b1.len() + params.w2.len() + params.b2.len();
    let mut bytes = Vec::with_capacity(HEADER_LEN + 8 * tensor_len + 8);
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&(c.page_len as u32).to_le_bytes());
    bytes.extend_from_slice(&(c.embed_dim as u32).to_le_bytes());
    bytes.extend_from_slice(&(c.hidden_size as u32).to_le_bytes());
    for tensor in [&params.w1, &params.b1, &params.w2, &params.b2] {
        for &v in tensor.iter() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    }
    let checksum = fnv1a64(&bytes);
    bytes.extend_from_slice(&checksum.to_le_bytes());
    bytes
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

fn read_f64_vec(bytes: &[u8], at: usize, count: usize) -> Vec<f64> {
    bytes[at..at + 8 * count]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect()
}

/// Parses the byte layout back into parameters, verifying structure and
/// checksum. Non-architectural config fields take their defaults.
pub fn from_bytes(bytes: &[u8]) -> Result<NetworkParams, ModelIoError> {
    if bytes.len() < MAGIC.len() {
        return Err(ModelIoError::Truncated(format!(
            "{} bytes is shorter than the magic",
            bytes.len()
        )));
    }
    if &bytes[..MAGIC.len()] != MAGIC {
        return Err(ModelIoError::BadMagic);
    }
    if bytes.len() < HEADER_LEN + 8 {
        return Err(ModelIoError::Truncated(format!(
            "{} bytes is shorter than header plus checksum",
            bytes.len()
        )));
    }
    let page_len = read_u32(bytes, 5) as usize;
    let embed_dim = read_u32(bytes, 9) as usize;
    let hidden_size = read_u32(bytes, 13) as usize;
    if page_len == 0 || embed_dim == 0 || hidden_size == 0 {
        return Err(ModelIoError::InvalidHeader(format!(
            "zero dimension in header: page_len={page_len} embed_dim={embed_dim} hidden_size={hidden_size}"
        )));
    }

    let input_dim = page_len
        .checked_mul(embed_dim)
        .ok_or_else(|| ModelIoError::InvalidHeader("dimension product overflows".into()))?;
    let tensor_len = input_dim
        .checked_mul(hidden_size)
        .and_then(|w1| w1.checked_add(hidden_size))
        .and_then(|n| page_len.checked_mul(hidden_size).and_then(|w2| n.checked_add(w2)))
        .and_then(|n| n.checked_add(page_len))
        .ok_or_else(|| ModelIoError::InvalidHeader("tensor sizes overflow".into()))?;
    let expected_len = HEADER_LEN + 8 * tensor_len + 8;
    if bytes.len() < expected_len {
        return Err(ModelIoError::Truncated(format!(
            "expected {} bytes, found {}",
            expected_len,
            bytes.len()
        )));
    }
    if bytes.len() > expected_len {
        return Err(ModelIoError::Truncated(format!(
            "{} unexpected trailing bytes",
            bytes.len() - expected_len
        )));
    }

    let body_end = expected_len - 8;
    let stored = u64::from_le_bytes(bytes[body_end..].try_into().unwrap());
    let computed = fnv1a64(&bytes[..body_end]);
    if stored != computed {
        return Err(ModelIoError::ChecksumMismatch { stored, computed });
    }

    let mut at = HEADER_LEN;
    let w1 = read_f64_vec(bytes, at, hidden_size * input_dim);
    at += 8 * hidden_size * input_dim;
    let b1 = read_f64_vec(bytes, at, hidden_size);
    at += 8 * hidden_size;
    let w2 = read_f64_vec(bytes, at, page_len * hidden_size);
    at += 8 * page_len * hidden_size;
    let b2 = read_f64_vec(bytes, at, page_len);

    Ok(NetworkParams {
        w1,
        b1,
        w2,
        b2,
        config: NetworkConfig {
            page_len,
            embed_dim,
            hidden_size,
            ..NetworkConfig::default()
        },
    })
}

pub fn save_model(params: &NetworkParams, path: &Path) -> Result<(), ModelIoError> {
    std::fs::write(path, to_bytes(params)).map_err(|source| ModelIoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<NetworkParams, ModelIoError> {
    let bytes = std::fs::read(path).map_err(|source| ModelIoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_bytes(&bytes)
}
