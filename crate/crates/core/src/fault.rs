//! Fault-set predicates: neighborhoods, g-good-neighbor conditions,
//! components, R_g-connectivity and minimum-degree subgraph orders.

use std::collections::HashSet;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::search::{binomial, SearchConfig};
use crate::vertex_set::{VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodNeighborReport {
    pub is_gng: bool,
    pub violating_vertex: Option<VertexId>,
    pub free_neighbor_count: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodNeighborJson {
    pub is_gng: bool,
    pub violating_vertex: Option<String>,
    pub free_neighbor_count: Option<u32>,
}

impl GoodNeighborReport {
    pub fn to_json(&self, n: u32) -> GoodNeighborJson {
        GoodNeighborJson {
            is_gng: self.is_gng,
            violating_vertex: self.violating_vertex.map(|v| v.to_binary(n)),
            free_neighbor_count: self.free_neighbor_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    pub size: usize,
    pub cut: VertexSet,
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReportJson {
    pub size: usize,
    pub cut: Vec<String>,
    pub component_sizes: Vec<usize>,
}

impl CutReport {
    pub fn from_cut(graph: &LtqGraph, cut: VertexSet) -> Self {
        let parts = components(graph, &cut);
        CutReport {
            size: cut.len(),
            component_count: parts.len(),
            component_sizes: parts.iter().map(VertexSet::len).collect(),
            cut,
        }
    }

    pub fn to_json(&self) -> CutReportJson {
        CutReportJson {
            size: self.size,
            cut: self.cut.to_binary_labels(),
            component_sizes: self.component_sizes.clone(),
        }
    }
}

fn check_width(graph: &LtqGraph, set: &VertexSet) -> Result<()> {
    if set.dimension() != graph.dimension() {
        return Err(Error::WidthMismatch {
            expected: graph.dimension(),
            found: set.dimension(),
        });
    }
    Ok(())
}

/// `N(A)`: all neighbors of members of `A`, minus `A`.
pub fn neighborhood_of_set(graph: &LtqGraph, set: &VertexSet) -> Result<VertexSet> {
    check_width(graph, set)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut out = VertexSet::empty(graph.dimension());
    for v in set.iter() {
        for w in graph.neighbor_iter(v) {
            if !set.contains(w) {
                out.insert(w);
            }
        }
    }
    Ok(out)
}

pub fn is_g_good_neighbor_set(
    graph: &LtqGraph,
    faults: &VertexSet,
    g: u32,
) -> Result<GoodNeighborReport> {
    check_width(graph, faults)?;
    let n = graph.dimension();
    if g > n {
        return Err(Error::GOutOfRange {
            g,
            n,
            reason: "g must not exceed n",
        });
    }
    for v in graph.vertices().filter(|v| !faults.contains(*v)) {
        let free = graph.neighbor_iter(v).filter(|w| !faults.contains(*w)).count() as u32;
        if free < g {
            return Ok(GoodNeighborReport {
                is_gng: false,
                violating_vertex: Some(v),
                free_neighbor_count: Some(free),
            });
        }
    }
    Ok(GoodNeighborReport {
        is_gng: true,
        violating_vertex: None,
        free_neighbor_count: None,
    })
}

/// Connected components of `G - F`, ordered by (size, smallest label).
pub fn components(graph: &LtqGraph, faults: &VertexSet) -> Vec<VertexSet> {
    let n = graph.dimension();
    let mut seen = faults.clone();
    let mut parts = Vec::new();
    for root in graph.vertices() {
        if seen.contains(root) {
            continue;
        }
        let mut part = VertexSet::empty(n);
        let mut stack = vec![root];
        seen.insert(root);
        while let Some(v) = stack.pop() {
            part.insert(v);
            for w in graph.neighbor_iter(v) {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        parts.push(part);
    }
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.first().cmp(&b.first())));
    parts
}

/// Minimum g-good-neighbor conditional cut among subsets of size at most
/// `size_bound`, searched level by level in canonical order. `Ok(None)`
/// means no cut exists below the bound.
pub fn kappa_g(
    graph: &LtqGraph,
    g: u32,
    size_bound: usize,
    config: &SearchConfig,
) -> Result<Option<CutReport>> {
    let n = graph.dimension();
    if g + 2 > n {
        return Err(Error::GOutOfRange {
            g,
            n,
            reason: "R_g-connectivity search requires n >= g + 2",
        });
    }
    if size_bound < 1 {
        return Err(Error::InvalidBound("size bound must be at least 1".into()));
    }
    let kernel = Kernel::new(graph)?;
    let order = kernel.order();
    let bound = size_bound.min(order as usize) as u32;
    // The whole range is charged up front so an infeasible bound fails before
    // any search work.
    let mut meter = config.meter();
    for size in 0..=bound {
        meter.charge(binomial(order as u64, size as u64))?;
    }
    let found = config.install(|| -> Result<Option<u64>> {
        for size in 0..=bound {
            let hit = if size == 0 {
                first_cut(&kernel, g, 0, None)
            } else {
                (0..order)
                    .into_par_iter()
                    .find_map_first(|c| first_cut(&kernel, g, size, Some(c)))
            };
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    })?;
    Ok(found.map(|mask| CutReport::from_cut(graph, VertexSet::from_mask(n, mask))))
}

fn first_cut(kernel: &Kernel, g: u32, size: u32, first: Option<u32>) -> Option<u64> {
    let full = kernel.full();
    match kernel.for_each_good_set(g, size, first, |mask| {
        let free = full & !mask;
        if free != 0 && !kernel.is_connected(free) {
            ControlFlow::Break(mask)
        } else {
            ControlFlow::Continue(())
        }
    }) {
        ControlFlow::Break(m) => Some(m),
        ControlFlow::Continue(()) => None,
    }
}

/// True iff no vertex subset `S` with `1 <= |S| < order_bound` induces a
/// subgraph of minimum degree at least `g`.
pub fn verify_min_subgraph_order(
    graph: &LtqGraph,
    g: u32,
    order_bound: u64,
    config: &SearchConfig,
) -> Result<bool> {
    let n = graph.dimension();
    if g > n {
        return Err(Error::GOutOfRange {
            g,
            n,
            reason: "g must not exceed n",
        });
    }
    if order_bound > 1u64 << g {
        return Err(Error::InvalidBound(format!(
            "order bound {order_bound} exceeds 2^g = {}",
            1u64 << g
        )));
    }
    if order_bound <= 1 {
        return Ok(true);
    }
    Ok(find_min_degree_subgraph(graph, g, (order_bound - 1) as usize, config.budget)?.is_none())
}

/// Finds a vertex set of size at most `max_order` whose induced subgraph has
/// minimum degree at least `g`, or `None`. The search roots at each vertex in
/// turn and repeatedly extends a deficient member by one of its remaining
/// neighbors; earlier alternatives are excluded in later branches, so every
/// candidate set is reached at most once. `budget` caps search nodes.
pub fn find_min_degree_subgraph(
    graph: &LtqGraph,
    g: u32,
    max_order: usize,
    budget: u64,
) -> Result<Option<VertexSet>> {
    if max_order == 0 {
        return Ok(None);
    }
    let mut search = DenseSearch {
        graph,
        g: g as usize,
        max_order,
        budget,
        nodes: 0,
        members: Vec::new(),
        inside: HashSet::new(),
        excluded: HashSet::new(),
        root: 0,
    };
    for root in graph.vertices() {
        search.root = root.0;
        search.members = vec![root.0];
        search.inside = HashSet::from([root.0]);
        search.excluded.clear();
        if search.extend()? {
            return Ok(Some(VertexSet::from_labels(
                graph.dimension(),
                search.members.iter().copied(),
            )));
        }
    }
    Ok(None)
}

struct DenseSearch<'a> {
    graph: &'a LtqGraph,
    g: usize,
    max_order: usize,
    budget: u64,
    nodes: u64,
    members: Vec<u32>,
    inside: HashSet<u32>,
    excluded: HashSet<u32>,
    root: u32,
}

impl DenseSearch<'_> {
    fn inner_degree(&self, v: u32) -> usize {
        self.graph
            .neighbor_iter(VertexId(v))
            .filter(|w| self.inside.contains(&w.0))
            .count()
    }

    fn extend(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                needed: self.nodes as u128,
                budget: self.budget,
            });
        }
        let deficient = self
            .members
            .iter()
            .map(|&v| (v, self.inner_degree(v)))
            .find(|&(_, d)| d < self.g);
        let Some((u, degree)) = deficient else {
            return Ok(true);
        };
        let need = self.g - degree;
        if self.members.len() + need > self.max_order {
            return Ok(false);
        }
        let candidates: Vec<u32> = self
            .graph
            .neighbor_iter(VertexId(u))
            .map(|w| w.0)
            .filter(|w| *w > self.root && !self.inside.contains(w) && !self.excluded.contains(w))
            .collect();
        if candidates.len() < need {
            return Ok(false);
        }
        let mut newly_excluded = Vec::new();
        let mut found = false;
        for &c in &candidates {
            self.members.push(c);
            self.inside.insert(c);
            let hit = self.extend()?;
            if hit {
                found = true;
                break;
            }
            self.members.pop();
            self.inside.remove(&c);
            self.excluded.insert(c);
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            self.excluded.remove(&c);
        }
        Ok(found)
    }
}
