//! Diagnosis models behind a common trait, looked up by name.
//!
//! Two models ship: `pmc` (processors test their neighbors) and `mm*`
//! (every processor compares every pair of its neighbors). Each model offers
//! a structural distinguishability test and an independent per-test
//! joint-consistency test; the two must agree.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::syndrome::{FaultyUnitPolicy, Syndrome};
use crate::vertex_set::VertexSet;

mod mm;
mod pmc;

pub use mm::{
    distinguishable_mm, jointly_consistent_mm, mm_consistent, mm_syndrome, MmStarModel,
};
pub use pmc::{
    distinguishable_pmc, jointly_consistent_pmc, pmc_consistent, pmc_syndrome, PmcModel,
};

/// Consistency test of candidate fault masks against one fixed syndrome.
pub type MaskChecker<'a> = Box<dyn Fn(u64) -> bool + Send + Sync + 'a>;

pub trait TestModel: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    /// Smallest dimension for which the closed-form `t_g` is established.
    fn theorem_min_dimension(&self) -> u32;

    fn generate(&self, graph: &LtqGraph, faults: &VertexSet, policy: &FaultyUnitPolicy)
        -> Syndrome;

    fn is_consistent(&self, graph: &LtqGraph, faults: &VertexSet, syndrome: &Syndrome)
        -> Result<bool>;

    /// Structural distinguishability condition on the graph and the two sets.
    fn distinguishable(&self, graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool>;

    /// Whether some syndrome is consistent with both sets, decided test by test.
    fn jointly_consistent(&self, graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet)
        -> Result<bool>;

    /// Kernel fast path of `!distinguishable` for distinct masks.
    fn indistinguishable_masks(&self, kernel: &Kernel, a: u64, b: u64) -> bool;

    /// Index of the first mask in `pools` (taken in order, as one sequence)
    /// forming an indistinguishable pair with `b`.
    fn first_indistinguishable(&self, kernel: &Kernel, b: u64, pools: &[&[u64]]) -> Option<usize> {
        let mut offset = 0;
        for pool in pools {
            if let Some(j) = pool
                .iter()
                .position(|&a| self.indistinguishable_masks(kernel, a, b))
            {
                return Some(offset + j);
            }
            offset += pool.len();
        }
        None
    }

    fn mask_checker<'a>(
        &self,
        kernel: &'a Kernel,
        graph: &LtqGraph,
        syndrome: &Syndrome,
    ) -> Result<MaskChecker<'a>>;
}

pub(crate) fn check_pair(graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<()> {
    for f in [f1, f2] {
        if f.dimension() != graph.dimension() {
            return Err(Error::WidthMismatch {
                expected: graph.dimension(),
                found: f.dimension(),
            });
        }
    }
    if f1 == f2 {
        return Err(Error::EqualSets);
    }
    Ok(())
}

pub(crate) fn check_faults(graph: &LtqGraph, faults: &VertexSet) -> Result<()> {
    if faults.dimension() != graph.dimension() {
        return Err(Error::WidthMismatch {
            expected: graph.dimension(),
            found: faults.dimension(),
        });
    }
    Ok(())
}

struct Entry {
    aliases: Vec<&'static str>,
    model: Arc<dyn TestModel>,
}

#[derive(Default)]
pub struct ModelRegistry {
    entries: Vec<Entry>,
}

impl ModelRegistry {
    pub fn standard() -> Self {
        let mut r = ModelRegistry::default();
        r.register(&["pmc"], Arc::new(PmcModel));
        r.register(&["mm*", "mmstar", "mm"], Arc::new(MmStarModel));
        r
    }

    pub fn register(&mut self, aliases: &[&'static str], model: Arc<dyn TestModel>) {
        let mut aliases = aliases.to_vec();
        if !aliases.contains(&model.name()) {
            aliases.insert(0, model.name());
        }
        self.entries.push(Entry { aliases, model });
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn TestModel>> {
        let key = name.to_ascii_lowercase();
        self.entries
            .iter()
            .find(|e| e.aliases.iter().any(|a| *a == key))
            .map(|e| Arc::clone(&e.model))
            .ok_or_else(|| Error::Unknown {
                kind: "model",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.model.name()).collect()
    }

    pub fn models(&self) -> impl Iterator<Item = &Arc<dyn TestModel>> {
        self.entries.iter().map(|e| &e.model)
    }
}

pub fn registry() -> &'static ModelRegistry {
    static REGISTRY: OnceLock<ModelRegistry> = OnceLock::new();
    REGISTRY.get_or_init(ModelRegistry::standard)
}

pub fn model(name: &str) -> Result<Arc<dyn TestModel>> {
    registry().get(name)
}
