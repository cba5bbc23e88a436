//! Key files.
//!
//! * `.bin`: little-endian `i64` keys, 8 bytes each.
//! * `.txt`: one decimal key per line; blank lines are skipped.
//! * `.rec`: little-endian `(i64 key, u64 payload)` pairs, 16 bytes each.
//!   Lets a sorted output keep the input positions so stability can be
//!   verified from files alone.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use zsort::Record;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyFormat {
    Binary,
    Text,
    Records,
}

impl KeyFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("bin") => Ok(KeyFormat::Binary),
            Some("txt") => Ok(KeyFormat::Text),
            Some("rec") => Ok(KeyFormat::Records),
            _ => Err(HarnessError::UnknownFormat {
                path: path.to_path_buf(),
            }),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn corrupt(path: &Path, reason: String) -> HarnessError {
    HarnessError::Corrupt {
        path: PathBuf::from(path),
        reason,
    }
}

/// Reads records. `.bin`/`.txt` files get payload = line/slot index.
pub fn read_records(path: &Path) -> Result<Vec<Record<u64>>> {
    let format = KeyFormat::from_path(path)?;
    match format {
        KeyFormat::Binary => {
            let bytes = fs::read(path).map_err(io_err(path))?;
            if bytes.len() % 8 != 0 {
                return Err(corrupt(
                    path,
                    format!("size {} is not a multiple of 8", bytes.len()),
                ));
            }
            Ok(bytes
                .chunks_exact(8)
                .enumerate()
                .map(|(i, c)| Record::new(i64::from_le_bytes(c.try_into().unwrap()), i as u64))
                .collect())
        }
        KeyFormat::Records => {
            let bytes = fs::read(path).map_err(io_err(path))?;
            if bytes.len() % 16 != 0 {
                return Err(corrupt(
                    path,
                    format!("size {} is not a multiple of 16", bytes.len()),
                ));
            }
            Ok(bytes
                .chunks_exact(16)
                .map(|c| {
                    Record::new(
                        i64::from_le_bytes(c[..8].try_into().unwrap()),
                        u64::from_le_bytes(c[8..].try_into().unwrap()),
                    )
                })
                .collect())
        }
        KeyFormat::Text => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let mut out = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let t = line.trim();
                if t.is_empty() {
                    continue;
                }
                let key = t
                    .parse::<i64>()
                    .map_err(|e| corrupt(path, format!("line {}: `{t}`: {e}", lineno + 1)))?;
                out.push(Record::new(key, out.len() as u64));
            }
            Ok(out)
        }
    }
}

pub fn read_keys(path: &Path) -> Result<Vec<i64>> {
    Ok(read_records(path)?.into_iter().map(|r| r.key).collect())
}

/// Writes records; `.bin`/`.txt` drop the payloads.
pub fn write_records(path: &Path, records: &[Record<u64>]) -> Result<()> {
    let format = KeyFormat::from_path(path)?;
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    let res = (|| -> std::io::Result<()> {
        for r in records {
            match format {
                KeyFormat::Binary => w.write_all(&r.key.to_le_bytes())?,
                KeyFormat::Text => writeln!(w, "{}", r.key)?,
                KeyFormat::Records => {
                    w.write_all(&r.key.to_le_bytes())?;
                    w.write_all(&r.payload.to_le_bytes())?;
                }
            }
        }
        w.flush()
    })();
    res.map_err(io_err(path))
}

pub fn write_keys(path: &Path, keys: &[i64]) -> Result<()> {
    write_records(path, &zsort::sequenced(keys))
}
