//! On-disk table cache.
//!
//! Each table is one little-endian file:
//!
//! ```text
//! offset size  field
//!      0    4  magic "RKBT"
//!      4    2  format version
//!      6    1  phase id (1 or 2)
//!      7    1  element width in bytes (2 = move table, 1 = pruning table)
//!      8    4  row count
//!     12    4  column count
//!     16    8  FNV-1a 64 checksum of the payload
//!     24    -  payload, rows * cols elements
//! ```

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::tables::*;

pub const MAGIC: [u8; 4] = *b"RKBT";
pub const FORMAT_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 24;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "RUBIK_KB_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("file is shorter than its header declares")]
    Truncated,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("format version {found}, expected {FORMAT_VERSION}")]
    Version { found: u16 },
    #[error("header mismatch: expected {expected}, found {found}")]
    Header { expected: String, found: String },
    #[error("payload checksum mismatch")]
    Checksum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Header {
    phase: u8,
    width: u8,
    rows: u32,
    cols: u32,
    checksum: u64,
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes.iter().fold(OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(PRIME))
}

fn encode(h: Header, payload: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(h.phase);
    out.push(h.width);
    out.extend_from_slice(&h.rows.to_le_bytes());
    out.extend_from_slice(&h.cols.to_le_bytes());
    out.extend_from_slice(&h.checksum.to_le_bytes());
    out.extend_from_slice(payload);
    out
}

fn decode(bytes: &[u8], expect: Header) -> Result<&[u8], CacheError> {
    if bytes.len() < HEADER_LEN {
        return Err(CacheError::Truncated);
    }
    if bytes[..4] != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(CacheError::Version { found: version });
    }
    let found = Header {
        phase: bytes[6],
        width: bytes[7],
        rows: u32::from_le_bytes(bytes[8..12].try_into().unwrap()),
        cols: u32::from_le_bytes(bytes[12..16].try_into().unwrap()),
        checksum: u64::from_le_bytes(bytes[16..24].try_into().unwrap()),
    };
    if (found.phase, found.width, found.rows, found.cols) != (expect.phase, expect.width, expect.rows, expect.cols) {
        return Err(CacheError::Header {
            expected: format!(
                "phase {} width {} {}x{}",
                expect.phase, expect.width, expect.rows, expect.cols
            ),
            found: format!(
                "phase {} width {} {}x{}",
                found.phase, found.width, found.rows, found.cols
            ),
        });
    }
    let payload = &bytes[HEADER_LEN..];
    if payload.len() != (found.rows as usize) * (found.cols as usize) * found.width as usize {
        return Err(CacheError::Truncated);
    }
    if fnv1a64(payload) != found.checksum {
        return Err(CacheError::Checksum);
    }
    Ok(payload)
}

impl MoveTable {
    pub fn to_bytes(&self, phase: Phase) -> Vec<u8> {
        let payload: Vec<u8> = self.data().iter().flat_map(|v| v.to_le_bytes()).collect();
        let h = Header {
            phase: phase as u8,
            width: 2,
            rows: self.rows() as u32,
            cols: self.cols() as u32,
            checksum: fnv1a64(&payload),
        };
        encode(h, &payload)
    }

    pub fn from_bytes(bytes: &[u8], phase: Phase, rows: usize, cols: usize) -> Result<MoveTable, CacheError> {
        let expect = Header {
            phase: phase as u8,
            width: 2,
            rows: rows as u32,
            cols: cols as u32,
            checksum: 0,
        };
        let payload = decode(bytes, expect)?;
        let data = payload
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]))
            .collect();
        Ok(MoveTable::from_raw(rows, cols, data))
    }
}

impl PruneTable {
    pub fn to_bytes(&self, phase: Phase) -> Vec<u8> {
        let h = Header {
            phase: phase as u8,
            width: 1,
            rows: self.rows() as u32,
            cols: self.cols() as u32,
            checksum: fnv1a64(self.data()),
        };
        encode(h, self.data())
    }

    pub fn from_bytes(bytes: &[u8], phase: Phase, rows: usize, cols: usize) -> Result<PruneTable, CacheError> {
        let expect = Header {
            phase: phase as u8,
            width: 1,
            rows: rows as u32,
            cols: cols as u32,
            checksum: 0,
        };
        let payload = decode(bytes, expect)?;
        Ok(PruneTable::from_raw(rows, cols, payload.to_vec()))
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CacheError> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(bytes).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Cache directory: `$RUBIK_KB_CACHE`, else `$XDG_CACHE_HOME/rubikai`, else
/// `$HOME/.cache/rubikai`, else a `rubikai` directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(d).join("rubikai");
    }
    if let Some(h) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(h).join(".cache").join("rubikai");
    }
    std::env::temp_dir().join("rubikai")
}

struct Entry {
    name: &'static str,
    phase: Phase,
}

const FILES: [Entry; 10] = [
    Entry {
        name: "p1_twist_move.bin",
        phase: Phase::One,
    },
    Entry {
        name: "p1_flip_move.bin",
        phase: Phase::One,
    },
    Entry {
        name: "p1_slice_move.bin",
        phase: Phase::One,
    },
    Entry {
        name: "p2_corner_perm_move.bin",
        phase: Phase::Two,
    },
    Entry {
        name: "p2_ud_edge_perm_move.bin",
        phase: Phase::Two,
    },
    Entry {
        name: "p2_slice_perm_move.bin",
        phase: Phase::Two,
    },
    Entry {
        name: "p1_twist_slice_prune.bin",
        phase: Phase::One,
    },
    Entry {
        name: "p1_flip_slice_prune.bin",
        phase: Phase::One,
    },
    Entry {
        name: "p2_corner_slice_prune.bin",
        phase: Phase::Two,
    },
    Entry {
        name: "p2_edge_slice_prune.bin",
        phase: Phase::Two,
    },
];

impl Tables {
    fn move_tables(&self) -> [&MoveTable; 6] {
        [
            &self.move1.twist,
            &self.move1.flip,
            &self.move1.slice,
            &self.move2.corner_perm,
            &self.move2.ud_edge_perm,
            &self.move2.slice_perm,
        ]
    }

    fn prune_tables(&self) -> [&PruneTable; 4] {
        [
            &self.prune1.twist_slice,
            &self.prune1.flip_slice,
            &self.prune2.corner_slice,
            &self.prune2.edge_slice,
        ]
    }

    /// Serialised form of every table, in a fixed order, with file names.
    pub fn to_files(&self) -> Vec<(&'static str, Vec<u8>)> {
        let moves = self.move_tables();
        let prunes = self.prune_tables();
        FILES
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let bytes = if i < 6 {
                    moves[i].to_bytes(e.phase)
                } else {
                    prunes[i - 6].to_bytes(e.phase)
                };
                (e.name, bytes)
            })
            .collect()
    }

    pub fn save(&self, dir: &Path) -> Result<(), CacheError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        for (name, bytes) in self.to_files() {
            write_atomic(&dir.join(name), &bytes)?;
        }
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Tables, CacheError> {
        use super::coords::*;
        let read = |i: usize| {
            let p = dir.join(FILES[i].name);
            fs::read(&p).map_err(io_err(&p))
        };
        let mt = |i: usize, rows: usize, cols: usize| MoveTable::from_bytes(&read(i)?, FILES[i].phase, rows, cols);
        let pt = |i: usize, rows: usize, cols: usize| PruneTable::from_bytes(&read(i)?, FILES[i].phase, rows, cols);
        Ok(Tables {
            move1: Phase1MoveTables {
                twist: mt(0, N_TWIST, 18)?,
                flip: mt(1, N_FLIP, 18)?,
                slice: mt(2, N_SLICE, 18)?,
            },
            move2: Phase2MoveTables {
                corner_perm: mt(3, N_CORNER_PERM, 10)?,
                ud_edge_perm: mt(4, N_UD_EDGE_PERM, 10)?,
                slice_perm: mt(5, N_SLICE_PERM, 10)?,
            },
            prune1: Phase1PruneTables {
                twist_slice: pt(6, N_TWIST, N_SLICE)?,
                flip_slice: pt(7, N_FLIP, N_SLICE)?,
            },
            prune2: Phase2PruneTables {
                corner_slice: pt(8, N_CORNER_PERM, N_SLICE_PERM)?,
                edge_slice: pt(9, N_UD_EDGE_PERM, N_SLICE_PERM)?,
            },
        })
    }

    /// Loads the cache in `dir`; on any failure rebuilds and rewrites it.
    /// A failed write is returned as an error alongside usable tables.
    pub fn load_or_build(dir: &Path) -> (Tables, Option<CacheError>) {
        match Tables::load(dir) {
            Ok(t) => (t, None),
            Err(_) => {
                let t = Tables::build();
                let err = t.save(dir).err();
                (t, err)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_are_byte_identical() {
        let a = Tables::build();
        let b = Tables::build();
        assert_eq!(a.to_files(), b.to_files());
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let t = Tables::shared();
        t.save(dir.path()).unwrap();
        let back = Tables::load(dir.path()).unwrap();
        assert_eq!(&back, t);
        let (again, err) = Tables::load_or_build(dir.path());
        assert!(err.is_none());
        assert_eq!(&again, t);
    }

    #[test]
    fn header_guards() {
        let t = Tables::shared();
        let bytes = t.move1.twist.to_bytes(Phase::One);
        assert_eq!(&bytes[..4], b"RKBT");
        assert_eq!(bytes.len(), HEADER_LEN + 2187 * 18 * 2);
        assert!(MoveTable::from_bytes(&bytes, Phase::One, 2187, 18).is_ok());

        assert!(matches!(
            MoveTable::from_bytes(&bytes, Phase::Two, 2187, 18),
            Err(CacheError::Header { .. })
        ));
        assert!(matches!(
            MoveTable::from_bytes(&bytes, Phase::One, 2048, 18),
            Err(CacheError::Header { .. })
        ));

        let mut corrupt = bytes.clone();
        *corrupt.last_mut().unwrap() ^= 0xff;
        assert!(matches!(
            MoveTable::from_bytes(&corrupt, Phase::One, 2187, 18),
            Err(CacheError::Checksum)
        ));

        let mut magic = bytes.clone();
        magic[0] = b'X';
        assert!(matches!(
            MoveTable::from_bytes(&magic, Phase::One, 2187, 18),
            Err(CacheError::BadMagic)
        ));

        let mut version = bytes.clone();
        version[4] = 9;
        assert!(matches!(
            MoveTable::from_bytes(&version, Phase::One, 2187, 18),
            Err(CacheError::Version { found: 9 })
        ));

        assert!(matches!(
            MoveTable::from_bytes(&bytes[..bytes.len() - 1], Phase::One, 2187, 18),
            Err(CacheError::Truncated)
        ));
    }

    #[test]
    fn stale_cache_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let t = Tables::shared();
        t.save(dir.path()).unwrap();
        let victim = dir.path().join("p2_edge_slice_prune.bin");
        let mut bytes = fs::read(&victim).unwrap();
        bytes[30] ^= 1;
        fs::write(&victim, bytes).unwrap();
        assert!(Tables::load(dir.path()).is_err());
        let (rebuilt, err) = Tables::load_or_build(dir.path());
        assert!(err.is_none());
        assert_eq!(&rebuilt, t);
        assert!(Tables::load(dir.path()).is_ok());
    }
}
