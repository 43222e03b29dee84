//! Worked examples shipped with the crate.
//!
//! The JSON documents under `fixtures/` are embedded so the CLI can verify
//! them without a data directory; the builders below produce the same maps
//! for an arbitrary prime.

use serde::{Deserialize, Serialize};

use crate::altmap::AltMap;

pub const SAMPLE_G_JSON: &str = include_str!("../fixtures/sample_g.json");
pub const SAMPLE_H_JSON: &str = include_str!("../fixtures/sample_h.json");
pub const SPECIAL_D5_K3_JSON: &str = include_str!("../fixtures/special_d5_k3.json");
pub const FOUR_PAIR_JSON: &str = include_str!("../fixtures/four_pair.json");
pub const FIVE_PAIR_JSON: &str = include_str!("../fixtures/five_pair.json");
pub const COMPARISON_TABLE_JSON: &str = include_str!("../fixtures/comparison_table.json");

/// One row of the bound-comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u32,
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    pub k: u64,
    pub kprime: u64,
    pub thm33: i64,
    pub comparison: i64,
}

pub fn comparison_table() -> Vec<TableRow> {
    serde_json::from_str(COMPARISON_TABLE_JSON).expect("embedded table parses")
}

fn build(p: u64, n: usize, m: usize, entries: &[(usize, usize, &[i64])]) -> AltMap {
    AltMap::from_one_based(p, n, m, entries).expect("fixture is well formed")
}

/// Five generators, four-dimensional target; pair basis `{1,2},{1,3},{2,4},{2,5}`.
pub fn four_pair_map(p: u64) -> AltMap {
    build(
        p,
        5,
        4,
        &[
            (1, 2, &[1, 0, 0, 0]),
            (1, 3, &[0, 1, 0, 0]),
            (2, 4, &[0, 0, 1, 0]),
            (1, 5, &[-1, -1, 0, 0]),
            (2, 5, &[0, 0, 0, 1]),
            (4, 5, &[0, 0, 1, 0]),
        ],
    )
}

/// A map where a hand-picked pair basis gives a dependent `W`, unlike the greedy one.
pub fn five_pair_map(p: u64) -> AltMap {
    build(
        p,
        5,
        5,
        &[
            (1, 2, &[1, 0, 0, 0, 0]),
            (1, 3, &[0, 1, 0, 0, 0]),
            (1, 4, &[1, 1, 0, 0, 0]),
            (2, 4, &[0, 0, 1, 0, 0]),
            (2, 5, &[0, 0, 0, -1, 1]),
            (3, 5, &[0, 0, 0, 1, 0]),
            (4, 5, &[0, 0, 0, 0, 1]),
        ],
    )
}

/// Commutator map of the order-`p^10` group with `[g1,g2]=[g1,g6]=q1`,
/// `[g1,g3]=q2`, `[g3,g4]=q3`, `[g1,g5]=q4`.
pub fn sample_group_map(p: u64) -> AltMap {
    build(
        p,
        6,
        4,
        &[
            (1, 2, &[1, 0, 0, 0]),
            (1, 6, &[1, 0, 0, 0]),
            (1, 3, &[0, 1, 0, 0]),
            (3, 4, &[0, 0, 1, 0]),
            (1, 5, &[0, 0, 0, 1]),
        ],
    )
}

/// Commutator map of the special group with `d = 5`, `k = 3`.
pub fn special_group_map(p: u64) -> AltMap {
    build(
        p,
        5,
        3,
        &[
            (1, 2, &[1, 0, 0]),
            (1, 5, &[1, 0, 0]),
            (2, 5, &[1, 0, 0]),
            (2, 3, &[0, 1, 0]),
            (3, 4, &[0, 0, 1]),
        ],
    )
}
