//! Grid files and trajectory JSON.
//!
//! Grid file layout, little-endian:
//!
//! | bytes | field |
//! |---|---|
//! | 4 | magic `RKVG` |
//! | 2 | format version (1) |
//! | 2 | reserved, zero |
//! | 12 | dims as three `u32` |
//! | 8 | resolution `f64` |
//! | 24 | origin as three `f64` |
//! | 8 | FNV-1a 64 checksum of the payload |
//! | 8·n | values as `f64` |

use std::hash::Hasher;
use std::path::Path;

use fnv::FnvHasher;

use crate::{Geometry, Grid, MotionError, Real, Trajectory, Vec3, VoxelGrid};

pub const GRID_MAGIC: [u8; 4] = *b"RKVG";
pub const GRID_VERSION: u16 = 1;
pub const GRID_HEADER_LEN: usize = 60;

fn checksum(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

fn f64_of<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn grid_to_bytes<T: Real>(g: &VoxelGrid<T>) -> Vec<u8> {
    let geo = g.geometry();
    let payload: Vec<u8> = g.values().iter().flat_map(|&v| f64_of(v).to_le_bytes()).collect();
    let mut out = Vec::with_capacity(GRID_HEADER_LEN + payload.len());
    out.extend_from_slice(&GRID_MAGIC);
    out.extend_from_slice(&GRID_VERSION.to_le_bytes());
    out.extend_from_slice(&[0, 0]);
    for d in geo.dims {
        out.extend_from_slice(&(d as u32).to_le_bytes());
    }
    out.extend_from_slice(&f64_of(geo.resolution).to_le_bytes());
    for v in [geo.origin.x, geo.origin.y, geo.origin.z] {
        out.extend_from_slice(&f64_of(v).to_le_bytes());
    }
    out.extend_from_slice(&checksum(&payload).to_le_bytes());
    out.extend_from_slice(&payload);
    out
}

pub fn grid_from_bytes<T: Real>(bytes: &[u8]) -> Result<VoxelGrid<T>, MotionError> {
    let bad = |m: &str| MotionError::Format(m.to_string());
    if bytes.len() < GRID_HEADER_LEN {
        return Err(bad("truncated header"));
    }
    if bytes[0..4] != GRID_MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != GRID_VERSION {
        return Err(MotionError::Format(format!("unsupported version {version}")));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes")) as usize;
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
    let dims = [u32_at(8), u32_at(12), u32_at(16)];
    let conv = |v: f64| T::from_f64(v).ok_or_else(|| bad("value not representable"));
    let geo = Geometry::new(
        dims,
        conv(f64_at(20))?,
        Vec3::new(conv(f64_at(28))?, conv(f64_at(36))?, conv(f64_at(44))?),
    )?;
    let sum = u64::from_le_bytes(bytes[52..60].try_into().expect("8 bytes"));
    let payload = &bytes[GRID_HEADER_LEN..];
    if payload.len() != geo.len() * 8 {
        return Err(bad("payload length does not match dims"));
    }
    if checksum(payload) != sum {
        return Err(bad("checksum mismatch"));
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| conv(f64::from_le_bytes(c.try_into().expect("8 bytes"))))
        .collect::<Result<Vec<T>, _>>()?;
    Grid::from_values(geo, values)
}

pub fn write_grid<T: Real>(path: &Path, g: &VoxelGrid<T>) -> Result<(), MotionError> {
    std::fs::write(path, grid_to_bytes(g))?;
    Ok(())
}

pub fn read_grid<T: Real>(path: &Path) -> Result<VoxelGrid<T>, MotionError> {
    grid_from_bytes(&std::fs::read(path)?)
}

pub fn trajectory_to_json<T: Real>(t: &Trajectory<T>) -> Result<String, MotionError> {
    Ok(serde_json::to_string_pretty(t)?)
}

pub fn trajectory_from_json<T: Real>(s: &str) -> Result<Trajectory<T>, MotionError> {
    Ok(serde_json::from_str(s)?)
}
