use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CensusRow, PosetError, QuotientPoset};
use crate::positroid::DecoratedPermutation;

/// Canonical JSON form of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub elements: Vec<DecoratedPermutation>,
    pub covers: Vec<[usize; 2]>,
}

impl QuotientPoset {
    pub fn to_json_repr(&self) -> PosetJson {
        PosetJson {
            n: self.n(),
            elements: self.elements().to_vec(),
            covers: self.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_repr()).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let repr: PosetJson = serde_json::from_str(text).map_err(|e| PosetError::Malformed(e.to_string()))?;
        QuotientPoset::from_parts(repr.n, repr.elements, repr.covers.into_iter().map(|[a, b]| (a, b)).collect())
    }

    /// Hasse diagram in DOT, one `rank=same` group per rank, edges pointing up.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph P{} {{\n  rankdir=BT;\n  node [shape=plaintext];\n", self.n());
        for (idx, e) in self.elements().iter().enumerate() {
            writeln!(out, "  n{idx} [label=\"{e}\"];").unwrap();
        }
        for k in 0..=self.n() {
            let ids: Vec<String> = (0..self.len()).filter(|&i| self.rank(i) == k).map(|i| format!("n{i}")).collect();
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
        for &(lo, hi) in self.covers() {
            writeln!(out, "  n{lo} -> n{hi};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Census rows as CSV with header `n,k,total,characterized,missing`.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["n", "k", "total", "characterized", "missing"]).expect("in-memory write");
    for r in rows {
        writer
            .write_record([r.n, r.k, r.total, r.characterized, r.missing].map(|v| v.to_string()))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("ascii output")
}
