//! Fault diagnosis on the locally twisted cube `LTQ_n`.
//!
//! The crate builds `LTQ_n`, simulates PMC and MM* syndromes, decides
//! distinguishability of fault-set pairs, and computes g-good-neighbor
//! conditional diagnosability by closed form, extremal witnesses, or bounded
//! exhaustive search.

pub mod diagnosability;
pub mod diagnose;
pub mod error;
pub mod fault;
pub mod graph;
pub mod kernel;
pub mod model;
pub mod pattern;
pub mod search;
pub mod suite;
pub mod syndrome;
pub mod vertex_set;

pub use diagnosability::{
    classical_diagnosability, enumerate_gng_sets, methods, tg_bruteforce, tg_formula,
    verify_theorem, witness_pair, DiagReport, Method, TgMethod, TgRequest, Verdict,
};
pub use diagnose::{diagnose, Diagnosis};
pub use error::{Error, Result};
pub use fault::{
    components, is_g_good_neighbor_set, kappa_g, neighborhood_of_set, verify_min_subgraph_order,
    CutReport, GoodNeighborReport,
};
pub use graph::LtqGraph;
pub use model::{model, registry, TestModel};
pub use search::SearchConfig;
pub use syndrome::{FaultyUnitPolicy, PolicyKind, Syndrome};
pub use vertex_set::{VertexId, VertexSet};
