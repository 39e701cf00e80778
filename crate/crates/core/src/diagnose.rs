//! Syndrome-driven diagnosis by exhaustive candidate enumeration.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::model::TestModel;
use crate::search::{binomial, SearchConfig};
use crate::syndrome::Syndrome;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnosis {
    Unique(VertexSet),
    /// Every consistent candidate, in canonical order; at least two.
    Ambiguous(Vec<VertexSet>),
    NoCandidate,
}

impl Diagnosis {
    pub fn to_json(&self) -> Value {
        match self {
            Diagnosis::Unique(f) => json!({ "faulty": f.to_binary_labels() }),
            Diagnosis::Ambiguous(cands) => json!({
                "ambiguous": cands.iter().map(VertexSet::to_binary_labels).collect::<Vec<_>>()
            }),
            Diagnosis::NoCandidate => json!({ "no_candidate": true }),
        }
    }
}

/// Enumerates every g-good-neighbor faulty set of size at most `t` that is
/// consistent with `syndrome`, smallest first.
pub fn diagnose(
    graph: &LtqGraph,
    model: &dyn TestModel,
    syndrome: &Syndrome,
    g: u32,
    t: usize,
    config: &SearchConfig,
) -> Result<Diagnosis> {
    if syndrome.model_name() != model.name() {
        return Err(Error::DomainMismatch(format!(
            "{} syndrome given to the {} model",
            syndrome.model_name(),
            model.name()
        )));
    }
    let n = graph.dimension();
    if g > n {
        return Err(Error::GOutOfRange {
            g,
            n,
            reason: "g must not exceed n",
        });
    }
    let kernel = Kernel::new(graph)?;
    let consistent = model.mask_checker(&kernel, graph, syndrome)?;
    let order = kernel.order();
    let top = t.min(order as usize) as u32;
    let mut meter = config.meter();
    let found = config.install(|| -> Result<Vec<u64>> {
        let mut found = Vec::new();
        for size in 0..=top {
            meter.charge(binomial(order as u64, size as u64))?;
            let level = kernel.good_sets_par(g, size);
            found.extend(level.into_par_iter().filter(|&m| consistent(m)).collect::<Vec<_>>());
        }
        Ok(found)
    })?;
    let mut sets: Vec<VertexSet> = found.into_iter().map(|m| VertexSet::from_mask(n, m)).collect();
    Ok(match sets.len() {
        0 => Diagnosis::NoCandidate,
        1 => Diagnosis::Unique(sets.remove(0)),
        _ => Diagnosis::Ambiguous(sets),
    })
}
