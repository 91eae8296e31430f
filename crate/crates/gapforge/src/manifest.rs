//! Build manifests: which construction produced a graph, from which input
//! (by content digest), with which parameters, and how vertex ids map onto
//! gadget families. Together with the source instance a manifest is enough
//! to re-derive the whole edge set independently.

use serde::{Deserialize, Serialize};

/// FNV-1a, 64-bit. Stable content fingerprint for manifests and reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

pub fn digest_hex(bytes: &[u8]) -> String {
    format!("{:016x}", fnv1a64(bytes))
}

/// Run of consecutive vertex ids carrying the same role family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleSection {
    pub role: String,
    pub start: u32,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub construction: String,
    pub parameters: serde_json::Value,
    pub source_digest: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Role table, run-length encoded in vertex-id order.
    pub sections: Vec<RoleSection>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
