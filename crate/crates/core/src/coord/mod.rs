//! Coordinate encodings and the precomputed tables behind the two-phase search.

mod cache;
mod coords;
mod tables;

pub use cache::{default_cache_dir, fnv1a64, CacheError, CACHE_ENV, FORMAT_VERSION, HEADER_LEN, MAGIC};
pub use coords::*;
pub use tables::*;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordError {
    #[error("state is outside the subgroup <U, D, R2, L2, F2, B2>")]
    NotInSubgroup,
}
