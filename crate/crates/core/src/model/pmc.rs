use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::syndrome::{FaultyUnitPolicy, PmcSyndrome, Syndrome};
use crate::vertex_set::VertexSet;

use super::{check_faults, check_pair, MaskChecker, TestModel};

#[derive(Debug, Clone, Copy, Default)]
pub struct PmcModel;

/// Fault-free testers report the testee's status; faulty testers follow `policy`.
pub fn pmc_syndrome(graph: &LtqGraph, faults: &VertexSet, policy: &FaultyUnitPolicy) -> PmcSyndrome {
    let n = graph.dimension();
    let mut source = policy.source();
    let mut outcomes = Vec::with_capacity(graph.vertex_count() * n as usize);
    for u in graph.vertices() {
        let faulty = faults.contains(u);
        for v in graph.neighbor_iter(u) {
            outcomes.push(if faulty {
                source.next_outcome()
            } else {
                faults.contains(v)
            });
        }
    }
    PmcSyndrome { n, outcomes }
}

fn check_domain(graph: &LtqGraph, s: &PmcSyndrome) -> Result<()> {
    let expected = graph.vertex_count() * graph.dimension() as usize;
    if s.n != graph.dimension() || s.outcomes.len() != expected {
        return Err(Error::DomainMismatch(format!(
            "PMC syndrome for n = {} with {} outcomes, graph needs {expected}",
            s.n,
            s.outcomes.len()
        )));
    }
    Ok(())
}

pub fn pmc_consistent(graph: &LtqGraph, faults: &VertexSet, s: &PmcSyndrome) -> Result<bool> {
    check_faults(graph, faults)?;
    check_domain(graph, s)?;
    let n = graph.dimension();
    Ok(graph.vertices().filter(|u| !faults.contains(*u)).all(|u| {
        graph
            .neighbor_iter(u)
            .enumerate()
            .all(|(k, v)| s.outcomes[u.0 as usize * n as usize + k] == faults.contains(v))
    }))
}

/// Distinguishable iff some edge joins a vertex outside `F1 ∪ F2` to a vertex
/// of `F1 △ F2`.
pub fn distinguishable_pmc(graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    check_pair(graph, f1, f2)?;
    let both = f1.union(f2);
    let disputed = f1.symmetric_difference(f2);
    let hit = disputed
        .iter()
        .any(|v| graph.neighbor_iter(v).any(|u| !both.contains(u)));
    Ok(hit)
}

/// Every test whose tester is fault-free under both hypotheses must have the
/// same forced outcome under both.
pub fn jointly_consistent_pmc(graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    check_pair(graph, f1, f2)?;
    for u in graph.vertices() {
        if f1.contains(u) || f2.contains(u) {
            continue;
        }
        for v in graph.neighbor_iter(u) {
            if f1.contains(v) != f2.contains(v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl TestModel for PmcModel {
    fn name(&self) -> &'static str {
        "pmc"
    }

    fn theorem_min_dimension(&self) -> u32 {
        4
    }

    fn generate(&self, graph: &LtqGraph, faults: &VertexSet, policy: &FaultyUnitPolicy) -> Syndrome {
        Syndrome::Pmc(pmc_syndrome(graph, faults, policy))
    }

    fn is_consistent(&self, graph: &LtqGraph, faults: &VertexSet, syndrome: &Syndrome) -> Result<bool> {
        match syndrome {
            Syndrome::Pmc(s) => pmc_consistent(graph, faults, s),
            Syndrome::Mm(_) => Err(Error::DomainMismatch(
                "MM* syndrome given to the PMC model".into(),
            )),
        }
    }

    fn distinguishable(&self, graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
        distinguishable_pmc(graph, f1, f2)
    }

    fn jointly_consistent(&self, graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
        jointly_consistent_pmc(graph, f1, f2)
    }

    #[inline]
    fn indistinguishable_masks(&self, kernel: &Kernel, a: u64, b: u64) -> bool {
        let free = kernel.full() & !(a | b);
        kernel.nb(a ^ b) & free == 0
    }

    fn mask_checker<'a>(
        &self,
        kernel: &'a Kernel,
        graph: &LtqGraph,
        syndrome: &Syndrome,
    ) -> Result<MaskChecker<'a>> {
        let Syndrome::Pmc(s) = syndrome else {
            return Err(Error::DomainMismatch(
                "MM* syndrome given to the PMC model".into(),
            ));
        };
        check_domain(graph, s)?;
        let n = graph.dimension() as usize;
        // ones[u]: testees that tester u reports as faulty.
        let ones: Vec<u64> = graph
            .vertices()
            .map(|u| {
                graph
                    .neighbor_iter(u)
                    .enumerate()
                    .filter(|(k, _)| s.outcomes[u.0 as usize * n + k])
                    .fold(0u64, |m, (_, v)| m | (1u64 << v.0))
            })
            .collect();
        Ok(Box::new(move |f: u64| {
            let mut free = kernel.full() & !f;
            while free != 0 {
                let u = free.trailing_zeros();
                free &= free - 1;
                if ones[u as usize] != kernel.neighbors(u) & f {
                    return false;
                }
            }
            true
        }))
    }
}
