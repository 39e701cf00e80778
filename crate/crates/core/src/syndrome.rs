//! Syndromes, faulty-unit policies, and the syndrome JSON format.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::vertex_set::VertexId;

pub const DEFAULT_SEED: u64 = 20240001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    AllZero,
    AllOne,
    Random,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 3] = [PolicyKind::AllZero, PolicyKind::AllOne, PolicyKind::Random];

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "all_zero" | "zero" => Ok(PolicyKind::AllZero),
            "all_one" | "one" => Ok(PolicyKind::AllOne),
            "random" => Ok(PolicyKind::Random),
            other => Err(Error::Unknown {
                kind: "policy",
                name: other.to_string(),
            }),
        }
    }
}

/// How a faulty tester or comparator fills in its unconstrained outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaultyUnitPolicy {
    pub kind: PolicyKind,
    pub seed: u64,
}

impl Default for FaultyUnitPolicy {
    fn default() -> Self {
        FaultyUnitPolicy {
            kind: PolicyKind::Random,
            seed: DEFAULT_SEED,
        }
    }
}

impl FaultyUnitPolicy {
    pub fn new(kind: PolicyKind, seed: u64) -> Self {
        FaultyUnitPolicy { kind, seed }
    }

    pub fn all_zero() -> Self {
        Self::new(PolicyKind::AllZero, DEFAULT_SEED)
    }

    pub fn all_one() -> Self {
        Self::new(PolicyKind::AllOne, DEFAULT_SEED)
    }

    pub fn random(seed: u64) -> Self {
        Self::new(PolicyKind::Random, seed)
    }

    /// Outcome source for one generation pass; draws happen in storage order.
    pub fn source(&self) -> OutcomeSource {
        OutcomeSource {
            kind: self.kind,
            rng: ChaCha8Rng::seed_from_u64(self.seed),
        }
    }
}

pub struct OutcomeSource {
    kind: PolicyKind,
    rng: ChaCha8Rng,
}

impl OutcomeSource {
    pub fn next_outcome(&mut self) -> bool {
        match self.kind {
            PolicyKind::AllZero => false,
            PolicyKind::AllOne => true,
            PolicyKind::Random => self.rng.gen(),
        }
    }
}

/// PMC outcomes: `outcomes[u * n + k]` is `sigma(u, v)` for the
/// dimension-`k` neighbor `v` of tester `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmcSyndrome {
    pub n: u32,
    pub outcomes: Vec<bool>,
}

impl PmcSyndrome {
    pub fn get(&self, graph: &LtqGraph, tester: VertexId, testee: VertexId) -> Option<bool> {
        (0..self.n)
            .find(|&k| graph.neighbor(tester, k) == testee)
            .map(|k| self.outcomes[(tester.0 * self.n + k) as usize])
    }
}

/// Number of unordered neighbor pairs per comparator.
pub fn pairs_per_comparator(n: u32) -> u32 {
    n * (n - 1) / 2
}

/// Dimension pairs `(i, j)`, `i < j`, in storage order.
pub fn dimension_pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// MM* outcomes: `outcomes[w * P + p]`, where `p` indexes the dimension pair
/// `(i, j)` in [`dimension_pairs`] order and `P = n(n-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmSyndrome {
    pub n: u32,
    pub outcomes: Vec<bool>,
}

impl MmSyndrome {
    pub fn get(
        &self,
        graph: &LtqGraph,
        comparator: VertexId,
        u: VertexId,
        v: VertexId,
    ) -> Option<bool> {
        let p = pairs_per_comparator(self.n);
        dimension_pairs(self.n).enumerate().find_map(|(idx, (i, j))| {
            let a = graph.neighbor(comparator, i);
            let b = graph.neighbor(comparator, j);
            ((a, b) == (u, v) || (a, b) == (v, u))
                .then(|| self.outcomes[(comparator.0 * p) as usize + idx])
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syndrome {
    Pmc(PmcSyndrome),
    Mm(MmSyndrome),
}

impl Syndrome {
    pub fn model_name(&self) -> &'static str {
        match self {
            Syndrome::Pmc(_) => "pmc",
            Syndrome::Mm(_) => "mm*",
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            Syndrome::Pmc(s) => s.n,
            Syndrome::Mm(s) => s.n,
        }
    }

    pub fn to_file(&self, graph: &LtqGraph) -> SyndromeFile {
        let n = graph.dimension();
        let label = |v: VertexId| v.to_binary(n);
        match self {
            Syndrome::Pmc(s) => {
                let mut tests = Vec::with_capacity(s.outcomes.len());
                for u in graph.vertices() {
                    let mut row: Vec<(VertexId, bool)> = (0..n)
                        .map(|k| (graph.neighbor(u, k), s.outcomes[(u.0 * n + k) as usize]))
                        .collect();
                    row.sort_unstable();
                    tests.extend(row.into_iter().map(|(v, out)| PmcTest {
                        u: label(u),
                        v: label(v),
                        out: out as u8,
                    }));
                }
                SyndromeFile::Pmc { n, tests }
            }
            Syndrome::Mm(s) => {
                let p = pairs_per_comparator(n);
                let mut tests = Vec::with_capacity(s.outcomes.len());
                for w in graph.vertices() {
                    let mut row: Vec<(VertexId, VertexId, bool)> = dimension_pairs(n)
                        .enumerate()
                        .map(|(idx, (i, j))| {
                            let a = graph.neighbor(w, i);
                            let b = graph.neighbor(w, j);
                            let out = s.outcomes[(w.0 * p) as usize + idx];
                            (a.min(b), a.max(b), out)
                        })
                        .collect();
                    row.sort_unstable();
                    tests.extend(row.into_iter().map(|(a, b, out)| MmTest {
                        w: label(w),
                        u: label(a),
                        v: label(b),
                        out: out as u8,
                    }));
                }
                SyndromeFile::Mm { n, tests }
            }
        }
    }

    pub fn to_json(&self, graph: &LtqGraph) -> String {
        serde_json::to_string(&self.to_file(graph)).expect("syndrome serializes")
    }

    pub fn from_json(graph: &LtqGraph, text: &str) -> Result<Self> {
        let file: SyndromeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(graph, &file)
    }

    /// Validates a parsed file against `graph`: matching dimension, adjacent
    /// labels, and every test of the model's domain present exactly once.
    pub fn from_file(graph: &LtqGraph, file: &SyndromeFile) -> Result<Self> {
        let n = graph.dimension();
        let parse = |s: &str| VertexId::parse_binary(s, n);
        match file {
            SyndromeFile::Pmc { n: fn_, tests } => {
                check_dimension(n, *fn_)?;
                let mut slots: Vec<Option<bool>> = vec![None; graph.vertex_count() * n as usize];
                for t in tests {
                    let (u, v) = (parse(&t.u)?, parse(&t.v)?);
                    let k = (0..n).find(|&k| graph.neighbor(u, k) == v).ok_or_else(|| {
                        Error::DomainMismatch(format!("{} and {} are not adjacent", t.u, t.v))
                    })?;
                    let slot = &mut slots[(u.0 * n + k) as usize];
                    if slot.is_some() {
                        return Err(Error::DomainMismatch(format!(
                            "duplicate test ({}, {})",
                            t.u, t.v
                        )));
                    }
                    *slot = Some(parse_outcome(t.out)?);
                }
                Ok(Syndrome::Pmc(PmcSyndrome {
                    n,
                    outcomes: fill_all(slots)?,
                }))
            }
            SyndromeFile::Mm { n: fn_, tests } => {
                check_dimension(n, *fn_)?;
                let p = pairs_per_comparator(n);
                let mut slots: Vec<Option<bool>> = vec![None; graph.vertex_count() * p as usize];
                for t in tests {
                    let (w, u, v) = (parse(&t.w)?, parse(&t.u)?, parse(&t.v)?);
                    let idx = dimension_pairs(n)
                        .position(|(i, j)| {
                            let a = graph.neighbor(w, i);
                            let b = graph.neighbor(w, j);
                            (a, b) == (u, v) || (a, b) == (v, u)
                        })
                        .ok_or_else(|| {
                            Error::DomainMismatch(format!(
                                "{} is not a comparator of {{{}, {}}}",
                                t.w, t.u, t.v
                            ))
                        })?;
                    let slot = &mut slots[(w.0 * p) as usize + idx];
                    if slot.is_some() {
                        return Err(Error::DomainMismatch(format!(
                            "duplicate comparison ({}, {})_{}",
                            t.u, t.v, t.w
                        )));
                    }
                    *slot = Some(parse_outcome(t.out)?);
                }
                Ok(Syndrome::Mm(MmSyndrome {
                    n,
                    outcomes: fill_all(slots)?,
                }))
            }
        }
    }
}

fn check_dimension(expected: u32, found: u32) -> Result<()> {
    if expected != found {
        return Err(Error::DomainMismatch(format!(
            "syndrome is for n = {found}, graph has n = {expected}"
        )));
    }
    Ok(())
}

fn parse_outcome(out: u8) -> Result<bool> {
    match out {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(Error::Parse(format!("outcome must be 0 or 1, got {other}"))),
    }
}

fn fill_all(slots: Vec<Option<bool>>) -> Result<Vec<bool>> {
    let missing = slots.iter().filter(|s| s.is_none()).count();
    if missing > 0 {
        return Err(Error::DomainMismatch(format!("{missing} tests missing")));
    }
    Ok(slots.into_iter().map(|s| s.unwrap_or(false)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum SyndromeFile {
    #[serde(rename = "pmc")]
    Pmc { n: u32, tests: Vec<PmcTest> },
    #[serde(rename = "mm*")]
    Mm { n: u32, tests: Vec<MmTest> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmcTest {
    pub u: String,
    pub v: String,
    pub out: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmTest {
    pub w: String,
    pub u: String,
    pub v: String,
    pub out: u8,
}
