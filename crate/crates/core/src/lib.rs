//! Exact knot invariants, crossing-change bounds and unknotting certificates.
//!
//! The modules follow the data flow: `algebra` (exact rings and Smith forms),
//! `diagram` (PD diagrams, Seifert surfaces), `braid`, `invariants`,
//! `algebraic` (algebraic unknotting certificates), `search`, `family`, `catalog`.

pub mod algebra;
pub mod algebraic;
pub mod braid;
pub mod catalog;
pub mod diagram;
pub mod error;
pub mod family;
pub mod invariants;
pub mod knots;
pub mod search;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of raw bytes, used to stamp inputs in reports.
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}
