//! Document embeddings: the binary interchange file and the deterministic
//! stand-in used when no encoder output is available.
//!
//! File layout, all integers little-endian:
//!
//! ```text
//! "JGEMB1"                      6 bytes magic
//! count: u32, dim: u32
//! count x { id_len: u16, id: id_len bytes UTF-8, dim x f32 }
//! ```

use std::borrow::Cow;
use std::collections::HashMap;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hash::Fnv64;
use crate::vector::l2_normalize;

pub const EMBEDDING_MAGIC: &[u8; 6] = b"JGEMB1";

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EmbeddingError {
    #[error("bad magic, expected JGEMB1")]
    BadMagic,
    #[error("file truncated at byte {0}")]
    Truncated(usize),
    #[error("record {0}: id is not valid UTF-8")]
    InvalidId(usize),
    #[error("record {0}: non-finite value")]
    NonFinite(usize),
    #[error("{0} trailing bytes after the last record")]
    TrailingBytes(usize),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("dimension must be >= 1")]
    ZeroDimension,
    #[error("record `{id}` has {got} values, expected {expected}")]
    DimensionMismatch {
        id: String,
        expected: usize,
        got: usize,
    },
    #[error("id `{0}` longer than 65535 bytes")]
    IdTooLong(String),
    #[error("no embedding for id `{0}`")]
    MissingId(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingRecord {
    pub id: String,
    pub vector: Vec<f32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingFile {
    pub dim: usize,
    pub records: Vec<EmbeddingRecord>,
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], EmbeddingError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.data.len());
        match end {
            Some(end) => {
                let s = &self.data[self.pos..end];
                self.pos = end;
                Ok(s)
            }
            None => Err(EmbeddingError::Truncated(self.data.len())),
        }
    }

    fn u16(&mut self) -> Result<u16, EmbeddingError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, EmbeddingError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

pub fn decode_embeddings(data: &[u8]) -> Result<EmbeddingFile, EmbeddingError> {
    let mut r = Reader { data, pos: 0 };
    if r.take(6).map_err(|_| EmbeddingError::BadMagic)? != EMBEDDING_MAGIC {
        return Err(EmbeddingError::BadMagic);
    }
    let count = r.u32()? as usize;
    let dim = r.u32()? as usize;
    if dim == 0 && count > 0 {
        return Err(EmbeddingError::ZeroDimension);
    }
    // each record needs at least 2 + 4*dim bytes; cap the reservation by that
    let min_record = 2usize.saturating_add(dim.saturating_mul(4));
    let mut records = Vec::with_capacity(count.min(data.len() / min_record.max(1)));
    let mut seen = std::collections::HashSet::new();
    for i in 0..count {
        let id_len = r.u16()? as usize;
        let id = std::str::from_utf8(r.take(id_len)?)
            .map_err(|_| EmbeddingError::InvalidId(i))?
            .to_string();
        let raw = r.take(dim.checked_mul(4).ok_or(EmbeddingError::Truncated(data.len()))?)?;
        let vector: Vec<f32> = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(EmbeddingError::NonFinite(i));
        }
        if !seen.insert(id.clone()) {
            return Err(EmbeddingError::DuplicateId(id));
        }
        records.push(EmbeddingRecord { id, vector });
    }
    if r.pos != data.len() {
        return Err(EmbeddingError::TrailingBytes(data.len() - r.pos));
    }
    Ok(EmbeddingFile { dim, records })
}

pub fn encode_embeddings(file: &EmbeddingFile) -> Result<Vec<u8>, EmbeddingError> {
    let mut out = Vec::with_capacity(14 + file.records.len() * (2 + 4 * file.dim));
    out.extend_from_slice(EMBEDDING_MAGIC);
    out.extend_from_slice(&(file.records.len() as u32).to_le_bytes());
    out.extend_from_slice(&(file.dim as u32).to_le_bytes());
    for rec in &file.records {
        if rec.vector.len() != file.dim {
            return Err(EmbeddingError::DimensionMismatch {
                id: rec.id.clone(),
                expected: file.dim,
                got: rec.vector.len(),
            });
        }
        let len = u16::try_from(rec.id.len()).map_err(|_| EmbeddingError::IdTooLong(rec.id.clone()))?;
        out.extend_from_slice(&len.to_le_bytes());
        out.extend_from_slice(rec.id.as_bytes());
        for v in &rec.vector {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

pub fn load_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingFile, EmbeddingError> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| EmbeddingError::Io(format!("{}: {e}", path.display())))?;
    decode_embeddings(&data)
}

pub fn save_embeddings(file: &EmbeddingFile, path: impl AsRef<Path>) -> Result<(), EmbeddingError> {
    let path = path.as_ref();
    fs::write(path, encode_embeddings(file)?)
        .map_err(|e| EmbeddingError::Io(format!("{}: {e}", path.display())))
}

/// Deterministic unit-norm vector derived from `(id, seed)`.
///
/// The FNV-1a hash of the id and seed seeds a ChaCha8 stream; components
/// are uniform in `[-1, 1)` and the result is L2-normalized.
pub fn pseudo_embed(id: &str, d: usize, seed: u64) -> Vec<f64> {
    let key = Fnv64::new().write_field(id.as_bytes()).write_u64(seed).finish();
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if v.iter().all(|&x| x == 0.0) {
        if let Some(first) = v.first_mut() {
            *first = 1.0;
        }
    }
    l2_normalize(&mut v);
    v
}

/// Where a detector gets the embedding for an article.
#[derive(Debug, Clone, PartialEq)]
pub enum EmbeddingSource {
    Table {
        dim: usize,
        vectors: HashMap<String, Vec<f64>>,
    },
    /// [`pseudo_embed`] keyed by the article id, or by `"{id}#{tag}"` when a
    /// tag is set (e.g. `post` for post-attack stand-ins).
    Pseudo {
        dim: usize,
        seed: u64,
        tag: Option<String>,
    },
}

impl EmbeddingSource {
    pub fn pseudo(dim: usize, seed: u64) -> Self {
        EmbeddingSource::Pseudo { dim, seed, tag: None }
    }

    pub fn pseudo_tagged(dim: usize, seed: u64, tag: &str) -> Self {
        EmbeddingSource::Pseudo {
            dim,
            seed,
            tag: Some(tag.to_string()),
        }
    }

    pub fn from_file(file: EmbeddingFile) -> Self {
        EmbeddingSource::Table {
            dim: file.dim,
            vectors: file
                .records
                .into_iter()
                .map(|r| (r.id, r.vector.into_iter().map(f64::from).collect()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            EmbeddingSource::Table { dim, .. } | EmbeddingSource::Pseudo { dim, .. } => *dim,
        }
    }

    pub fn get(&self, id: &str) -> Result<Cow<'_, [f64]>, EmbeddingError> {
        match self {
            EmbeddingSource::Table { vectors, .. } => vectors
                .get(id)
                .map(|v| Cow::Borrowed(v.as_slice()))
                .ok_or_else(|| EmbeddingError::MissingId(id.to_string())),
            EmbeddingSource::Pseudo { dim, seed, tag } => {
                let key = match tag {
                    Some(t) => Cow::Owned(format!("{id}#{t}")),
                    None => Cow::Borrowed(id),
                };
                Ok(Cow::Owned(pseudo_embed(&key, *dim, *seed)))
            }
        }
    }
}
