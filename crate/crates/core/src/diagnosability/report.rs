use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    BruteForce,
    Witness,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::BruteForce => "brute_force",
            Method::Witness => "witness",
        }
    }
}

/// Result of one diagnosability computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagReport {
    pub n: u32,
    pub g: u32,
    pub model: String,
    pub method: Method,
    /// `t_g`, an upper bound on it (witness), or the search bound when no
    /// indistinguishable pair was found (`exact = false`).
    pub value: u64,
    pub witness: Option<(VertexSet, VertexSet)>,
    pub pairs_checked: u64,
    pub elapsed: Duration,
    /// True when the search was exhaustive over the relevant bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagReportJson {
    pub n: u32,
    pub g: u32,
    pub model: String,
    pub method: String,
    pub value: u64,
    pub exact: bool,
    pub witness: Option<[Vec<String>; 2]>,
    pub pairs_checked: u64,
    pub elapsed_ms: u64,
}

impl DiagReport {
    pub fn to_json(&self) -> DiagReportJson {
        DiagReportJson {
            n: self.n,
            g: self.g,
            model: self.model.clone(),
            method: self.method.as_str().to_string(),
            value: self.value,
            exact: self.exact,
            witness: self
                .witness
                .as_ref()
                .map(|(a, b)| [a.to_binary_labels(), b.to_binary_labels()]),
            pairs_checked: self.pairs_checked,
            elapsed_ms: self.elapsed.as_millis() as u64,
        }
    }
}
