//! Network analysis toolkit for undirected, unweighted social graphs.
//!
//! The crate covers the full pipeline from raw edge lists to comparison
//! artifacts:
//!
//! - [`graph`] — graph ingestion, largest-connected-component extraction,
//!   and topological statistics (degree, path lengths, transitivity,
//!   assortativity).
//! - [`community`] — community detection by two-level map-equation
//!   minimization or label propagation, partition import/export, modularity
//!   and mixing parameter.
//! - [`centrality`] — five classical measures (degree, betweenness,
//!   closeness, Katz, PageRank) and five community-aware measures (bridging,
//!   community hub-bridge, participation coefficient, community-based
//!   mediator, number of neighboring communities).
//! - [`ranking`] — rankings with explicit tie groups, Kendall tau-b
//!   correlation and rank-biased overlap (RBO).
//! - [`matrix`] / [`heatmap`] — 5x5 classical-vs-community comparison
//!   matrices with CSV/JSON/SVG export.
//! - [`pipeline`] — end-to-end per-network runs and multi-network suites
//!   with deterministic, reproducible artifacts.

pub mod centrality;
pub mod community;
pub mod error;
pub mod graph;
pub mod heatmap;
pub mod matrix;
pub mod pipeline;
pub mod ranking;
pub mod stats;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// FNV-1a 64-bit hash, used for stable fingerprints in artifacts.
///
/// Not cryptographic; it only has to be deterministic across runs and
/// platforms so that provenance fields byte-reproduce.
pub fn stable_hash_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// SplitMix64-style mixing for deriving independent per-stage RNG seeds
/// from a single run seed.
pub fn mix_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
