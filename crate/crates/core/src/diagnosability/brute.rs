use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::model::TestModel;
use crate::search::{binomial, SearchConfig};
use crate::vertex_set::VertexSet;

use super::enumerate::enumerate_gng_sets;
use super::report::{DiagReport, Method};

/// First indistinguishable pair in search order, with the number of pairs
/// examined up to and including it.
struct PairHit {
    max_size: usize,
    smaller: u64,
    larger: u64,
}

/// Scans unordered pairs of distinct candidates by increasing
/// `max(|A|, |B|)`. Within a level, the larger set `B` runs in canonical order
/// and its partner `A` over all smaller sets, then over earlier sets of the
/// same size.
fn first_indistinguishable_pair(
    kernel: &Kernel,
    model: &dyn TestModel,
    levels: &[Vec<u64>],
) -> (Option<PairHit>, u64) {
    let mut prefix: Vec<u64> = Vec::new();
    let mut checked: u64 = 0;
    for (size, level) in levels.iter().enumerate() {
        let p = prefix.len() as u64;
        let hit = level.par_iter().enumerate().find_map_first(|(i, &b)| {
            model
                .first_indistinguishable(kernel, b, &[&prefix, &level[..i]])
                .map(|j| (i, j))
        });
        match hit {
            Some((i, j)) => {
                let i = i as u64;
                checked += i * p + i * i.saturating_sub(1) / 2 + j as u64 + 1;
                let a = if (j as u64) < p {
                    prefix[j]
                } else {
                    level[j - p as usize]
                };
                return (
                    Some(PairHit {
                        max_size: size,
                        smaller: a,
                        larger: level[i as usize],
                    }),
                    checked,
                );
            }
            None => {
                let m = level.len() as u64;
                checked += m * p + m * m.saturating_sub(1) / 2;
            }
        }
        prefix.extend_from_slice(level);
    }
    (None, checked)
}

fn report_from(
    graph: &LtqGraph,
    g: u32,
    model: &dyn TestModel,
    size_bound: usize,
    hit: Option<PairHit>,
    checked: u64,
    started: Instant,
) -> DiagReport {
    let n = graph.dimension();
    let (value, witness, exact) = match hit {
        Some(h) => (
            h.max_size as u64 - 1,
            Some((
                VertexSet::from_mask(n, h.smaller),
                VertexSet::from_mask(n, h.larger),
            )),
            true,
        ),
        None => (size_bound as u64, None, false),
    };
    DiagReport {
        n,
        g,
        model: model.name().to_string(),
        method: Method::BruteForce,
        value,
        witness,
        pairs_checked: checked,
        elapsed: started.elapsed(),
        exact,
    }
}

fn check_bound(graph: &LtqGraph, size_bound: usize) -> Result<()> {
    let half = graph.vertex_count() / 2;
    if size_bound > half {
        return Err(Error::InvalidBound(format!(
            "size bound {size_bound} exceeds 2^(n-1) = {half}"
        )));
    }
    Ok(())
}

/// Exhaustive `t_g` over g-good-neighbor faulty sets of size at most
/// `size_bound`: one less than the smallest `max(|F1|, |F2|)` over
/// indistinguishable pairs. When no such pair exists within the bound the
/// report carries `value = size_bound` and `exact = false`.
pub fn tg_bruteforce(
    graph: &LtqGraph,
    g: u32,
    model: &dyn TestModel,
    size_bound: usize,
    config: &SearchConfig,
) -> Result<DiagReport> {
    check_bound(graph, size_bound)?;
    let started = Instant::now();
    let sets = enumerate_gng_sets(graph, g, size_bound, config)?;
    let kernel = Kernel::new(graph)?;
    let (hit, checked) =
        config.install(|| first_indistinguishable_pair(&kernel, model, sets.levels()));
    Ok(report_from(graph, g, model, size_bound, hit, checked, started))
}

/// Classical diagnosability over unrestricted fault sets of size at most
/// `size_bound`. Candidates come from plain subset enumeration rather than the
/// g-good-neighbor walker.
pub fn classical_diagnosability(
    graph: &LtqGraph,
    model: &dyn TestModel,
    size_bound: usize,
    config: &SearchConfig,
) -> Result<DiagReport> {
    check_bound(graph, size_bound)?;
    let started = Instant::now();
    let kernel = Kernel::new(graph)?;
    let order = kernel.order();
    let mut meter = config.meter();
    let mut levels = Vec::with_capacity(size_bound + 1);
    for size in 0..=size_bound as u32 {
        meter.charge(binomial(order as u64, size as u64))?;
        levels.push(subsets_of_size(order, size));
    }
    let (hit, checked) = config.install(|| first_indistinguishable_pair(&kernel, model, &levels));
    Ok(report_from(graph, 0, model, size_bound, hit, checked, started))
}

/// All `size`-subsets of `[0, order)` as masks, in canonical order.
fn subsets_of_size(order: u32, size: u32) -> Vec<u64> {
    if size == 0 {
        return vec![0];
    }
    if size > order {
        return Vec::new();
    }
    let mut out = Vec::new();
    let limit: u128 = 1u128 << order;
    let mut m: u128 = (1u128 << size) - 1;
    while m < limit {
        out.push(m as u64);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    // Colex order from the bit trick; lexicographic order of member lists is
    // ascending order of the bit-reversed masks, descending.
    out.sort_unstable_by_key(|&m| std::cmp::Reverse(m.reverse_bits()));
    out
}
