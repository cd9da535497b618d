//! File formats: truth-table binaries and atomic file output.

use std::io::Write;
use std::path::Path;

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};

/// Leading bytes of a truth-table file.
pub const TABLE_MAGIC: [u8; 8] = *b"HSTTBL01";

/// `magic ‖ N (u32 LE) ‖ ceil(2^N / 8)` bytes; bit `i` of the stream
/// (byte `i / 8`, bit `i % 8`) is `f(x_i)`.
pub fn encode_table(f: &TruthTable) -> Vec<u8> {
    let n_bytes = (f.len() as usize).div_ceil(8);
    let mut out = Vec::with_capacity(12 + n_bytes);
    out.extend_from_slice(&TABLE_MAGIC);
    out.extend_from_slice(&f.n_vars().to_le_bytes());
    let bytes: Vec<u8> = f.words().iter().flat_map(|w| w.to_le_bytes()).collect();
    out.extend_from_slice(&bytes[..n_bytes]);
    out
}

pub fn decode_table(data: &[u8]) -> Result<TruthTable> {
    if data.len() < 12 || data[..8] != TABLE_MAGIC {
        return Err(Error::Format("missing truth-table magic".into()));
    }
    let n = u32::from_le_bytes(data[8..12].try_into().unwrap());
    if n > crate::boolfn::MAX_VARS {
        return Err(Error::BudgetExceeded {
            what: "truth table variables",
            limit: crate::boolfn::MAX_VARS as usize,
            actual: n as usize,
        });
    }
    let n_bytes = (1usize << n).div_ceil(8);
    let body = &data[12..];
    if body.len() != n_bytes {
        return Err(Error::Format(format!(
            "expected {n_bytes} table bytes for N = {n}, found {}",
            body.len()
        )));
    }
    let words: Vec<u64> = body
        .chunks(8)
        .map(|c| {
            let mut b = [0u8; 8];
            b[..c.len()].copy_from_slice(c);
            u64::from_le_bytes(b)
        })
        .collect();
    if n < 6 && words[0] >> (1u32 << n) != 0 {
        return Err(Error::Format("padding bits must be zero".into()));
    }
    TruthTable::from_words(n, words)
}

pub fn read_table(path: &Path) -> Result<TruthTable> {
    decode_table(&std::fs::read(path)?)
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let or3 = TruthTable::or(3).unwrap();
        let bytes = encode_table(&or3);
        assert_eq!(&bytes[..8], b"HSTTBL01");
        assert_eq!(&bytes[8..12], &[3, 0, 0, 0]);
        assert_eq!(&bytes[12..], &[0b1111_1110]);
        assert_eq!(decode_table(&bytes).unwrap(), or3);
    }

    #[test]
    fn table_round_trip_and_errors() {
        for n in [0u32, 2, 6, 7, 10] {
            let f = TruthTable::from_fn(n, |x| x % 3 == 1).unwrap();
            assert_eq!(decode_table(&encode_table(&f)).unwrap(), f);
        }
        let mut bad = encode_table(&TruthTable::or(4).unwrap());
        bad.pop();
        assert!(decode_table(&bad).is_err());
        assert!(decode_table(b"nope").is_err());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
    }
}
