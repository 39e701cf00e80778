use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::syndrome::{dimension_pairs, pairs_per_comparator, FaultyUnitPolicy, MmSyndrome, Syndrome};
use crate::vertex_set::VertexSet;

use super::{check_faults, check_pair, MaskChecker, TestModel};

#[derive(Debug, Clone, Copy, Default)]
pub struct MmStarModel;

/// A fault-free comparator reports 1 iff either compared unit is faulty;
/// faulty comparators follow `policy`.
pub fn mm_syndrome(graph: &LtqGraph, faults: &VertexSet, policy: &FaultyUnitPolicy) -> MmSyndrome {
    let n = graph.dimension();
    let mut source = policy.source();
    let mut outcomes =
        Vec::with_capacity(graph.vertex_count() * pairs_per_comparator(n) as usize);
    for w in graph.vertices() {
        let faulty = faults.contains(w);
        for (i, j) in dimension_pairs(n) {
            outcomes.push(if faulty {
                source.next_outcome()
            } else {
                faults.contains(graph.neighbor(w, i)) || faults.contains(graph.neighbor(w, j))
            });
        }
    }
    MmSyndrome { n, outcomes }
}

fn check_domain(graph: &LtqGraph, s: &MmSyndrome) -> Result<()> {
    let expected = graph.vertex_count() * pairs_per_comparator(graph.dimension()) as usize;
    if s.n != graph.dimension() || s.outcomes.len() != expected {
        return Err(Error::DomainMismatch(format!(
            "MM* syndrome for n = {} with {} outcomes, graph needs {expected}",
            s.n,
            s.outcomes.len()
        )));
    }
    Ok(())
}

pub fn mm_consistent(graph: &LtqGraph, faults: &VertexSet, s: &MmSyndrome) -> Result<bool> {
    check_faults(graph, faults)?;
    check_domain(graph, s)?;
    let p = pairs_per_comparator(graph.dimension()) as usize;
    Ok(graph.vertices().filter(|w| !faults.contains(*w)).all(|w| {
        dimension_pairs(graph.dimension())
            .enumerate()
            .all(|(idx, (i, j))| {
                let forced =
                    faults.contains(graph.neighbor(w, i)) || faults.contains(graph.neighbor(w, j));
                s.outcomes[w.0 as usize * p + idx] == forced
            })
    }))
}

/// Distinguishable iff one of:
/// 1. a vertex `u` outside `F1 ∪ F2` is adjacent to some `v` in `F1 △ F2`
///    and to some other `w` outside `F1 ∪ F2`;
/// 2. a vertex `w` outside `F1 ∪ F2` has two neighbors in `F1 - F2`;
/// 3. a vertex `w` outside `F1 ∪ F2` has two neighbors in `F2 - F1`.
pub fn distinguishable_mm(graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    check_pair(graph, f1, f2)?;
    let both = f1.union(f2);
    let disputed = f1.symmetric_difference(f2);
    let only1 = f1.difference(f2);
    let only2 = f2.difference(f1);
    for u in graph.vertices().filter(|u| !both.contains(*u)) {
        let near_disputed = graph.neighbor_iter(u).any(|v| disputed.contains(v));
        let near_free = graph.neighbor_iter(u).any(|w| !both.contains(w));
        if near_disputed && near_free {
            return Ok(true);
        }
        for side in [&only1, &only2] {
            if graph.neighbor_iter(u).filter(|v| side.contains(*v)).count() >= 2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Every comparison whose comparator is fault-free under both hypotheses must
/// have the same forced outcome under both.
pub fn jointly_consistent_mm(graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
    check_pair(graph, f1, f2)?;
    let n = graph.dimension();
    for w in graph.vertices() {
        if f1.contains(w) || f2.contains(w) {
            continue;
        }
        for (i, j) in dimension_pairs(n) {
            let (u, v) = (graph.neighbor(w, i), graph.neighbor(w, j));
            let hit1 = f1.contains(u) || f1.contains(v);
            let hit2 = f2.contains(u) || f2.contains(v);
            if hit1 != hit2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl TestModel for MmStarModel {
    fn name(&self) -> &'static str {
        "mm*"
    }

    fn theorem_min_dimension(&self) -> u32 {
        5
    }

    fn generate(&self, graph: &LtqGraph, faults: &VertexSet, policy: &FaultyUnitPolicy) -> Syndrome {
        Syndrome::Mm(mm_syndrome(graph, faults, policy))
    }

    fn is_consistent(&self, graph: &LtqGraph, faults: &VertexSet, syndrome: &Syndrome) -> Result<bool> {
        match syndrome {
            Syndrome::Mm(s) => mm_consistent(graph, faults, s),
            Syndrome::Pmc(_) => Err(Error::DomainMismatch(
                "PMC syndrome given to the MM* model".into(),
            )),
        }
    }

    fn distinguishable(&self, graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
        distinguishable_mm(graph, f1, f2)
    }

    fn jointly_consistent(&self, graph: &LtqGraph, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
        jointly_consistent_mm(graph, f1, f2)
    }

    #[inline]
    fn indistinguishable_masks(&self, kernel: &Kernel, a: u64, b: u64) -> bool {
        let free = kernel.full() & !(a | b);
        if free & kernel.nb(a ^ b) & kernel.nb(free) != 0 {
            return false;
        }
        free & (kernel.at_least_two(a & !b) | kernel.at_least_two(b & !a)) == 0
    }

    fn mask_checker<'a>(
        &self,
        kernel: &'a Kernel,
        graph: &LtqGraph,
        syndrome: &Syndrome,
    ) -> Result<MaskChecker<'a>> {
        let Syndrome::Mm(s) = syndrome else {
            return Err(Error::DomainMismatch(
                "PMC syndrome given to the MM* model".into(),
            ));
        };
        check_domain(graph, s)?;
        let n = graph.dimension();
        let p = pairs_per_comparator(n) as usize;
        // Per comparator: (mask of the compared pair, reported outcome).
        let rows: Vec<Vec<(u64, bool)>> = graph
            .vertices()
            .map(|w| {
                dimension_pairs(n)
                    .enumerate()
                    .map(|(idx, (i, j))| {
                        let pair = (1u64 << graph.neighbor(w, i).0) | (1u64 << graph.neighbor(w, j).0);
                        (pair, s.outcomes[w.0 as usize * p + idx])
                    })
                    .collect()
            })
            .collect();
        Ok(Box::new(move |f: u64| {
            let mut free = kernel.full() & !f;
            while free != 0 {
                let w = free.trailing_zeros();
                free &= free - 1;
                if rows[w as usize].iter().any(|&(pair, out)| out != (pair & f != 0)) {
                    return false;
                }
            }
            true
        }))
    }
}
