use crate::error::{Error, Result};
use crate::graph::LtqGraph;
use crate::kernel::Kernel;
use crate::search::{binomial, SearchConfig};
use crate::vertex_set::VertexSet;

/// All g-good-neighbor faulty sets up to a size bound, grouped by size, each
/// level in canonical order.
#[derive(Debug, Clone)]
pub struct GngSets {
    n: u32,
    levels: Vec<Vec<u64>>,
}

impl GngSets {
    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn level(&self, size: usize) -> &[u64] {
        self.levels.get(size).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<u64>] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<Vec<u64>> {
        self.levels
    }

    /// Sets in increasing (size, canonical) order.
    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.levels
            .iter()
            .flatten()
            .map(move |&m| VertexSet::from_mask(self.n, m))
    }
}

pub fn enumerate_gng_sets(
    graph: &LtqGraph,
    g: u32,
    max_size: usize,
    config: &SearchConfig,
) -> Result<GngSets> {
    let n = graph.dimension();
    if g > n {
        return Err(Error::GOutOfRange {
            g,
            n,
            reason: "g must not exceed n",
        });
    }
    if max_size > graph.vertex_count() {
        return Err(Error::InvalidBound(format!(
            "max size {max_size} exceeds 2^n = {}",
            graph.vertex_count()
        )));
    }
    let kernel = Kernel::new(graph)?;
    let mut meter = config.meter();
    let levels = config.install(|| -> Result<Vec<Vec<u64>>> {
        (0..=max_size as u32)
            .map(|size| {
                meter.charge(binomial(kernel.order() as u64, size as u64))?;
                Ok(kernel.good_sets_par(g, size))
            })
            .collect()
    })?;
    Ok(GngSets { n, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::is_g_good_neighbor_set;

    #[test]
    fn four_cycle_g1() {
        let g = LtqGraph::build(2).unwrap();
        let sets: Vec<VertexSet> = enumerate_gng_sets(&g, 1, 4, &SearchConfig::default())
            .unwrap()
            .iter()
            .collect();
        assert!(sets.contains(&VertexSet::empty(2)));
        assert!(sets.contains(&VertexSet::full(2)));
        assert!(!sets.contains(&VertexSet::from_binary(2, &["01", "10"]).unwrap()));
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn g0_yields_every_subset() {
        let g = LtqGraph::build(3).unwrap();
        let sets = enumerate_gng_sets(&g, 0, 3, &SearchConfig::default()).unwrap();
        assert_eq!(sets.len(), 1 + 8 + 28 + 56);
    }

    #[test]
    fn count_matches_filtered_subsets_on_ltq4() {
        let g = LtqGraph::build(4).unwrap();
        let sets = enumerate_gng_sets(&g, 1, 7, &SearchConfig::default()).unwrap();
        let oracle = (0u64..1 << 16)
            .filter(|m| m.count_ones() <= 7)
            .filter(|&m| {
                is_g_good_neighbor_set(&g, &VertexSet::from_mask(4, m), 1)
                    .unwrap()
                    .is_gng
            })
            .count();
        assert_eq!(sets.len(), oracle);
    }

    #[test]
    fn errors() {
        let g = LtqGraph::build(3).unwrap();
        let cfg = SearchConfig::default();
        assert!(matches!(enumerate_gng_sets(&g, 4, 2, &cfg), Err(Error::GOutOfRange { .. })));
        assert!(matches!(enumerate_gng_sets(&g, 1, 9, &cfg), Err(Error::InvalidBound(_))));
        assert!(matches!(
            enumerate_gng_sets(&g, 1, 8, &SearchConfig::with_budget(10)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
