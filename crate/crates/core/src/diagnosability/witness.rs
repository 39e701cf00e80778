use crate::error::{Error, Result};
use crate::fault::neighborhood_of_set;
use crate::graph::LtqGraph;
use crate::model::TestModel;
use crate::pattern::BitPattern;
use crate::vertex_set::VertexSet;

/// Closed-form `t_g(LTQ_n)`: `2^g (n - g + 1) - 1` for `1 <= g <= n - 3`,
/// `2^{n-1} - 1` for `n - 2 <= g <= n - 1`.
pub fn tg_formula(n: u32, g: u32, model: &dyn TestModel) -> Result<u64> {
    if n < model.theorem_min_dimension() || g < 1 || g + 1 > n {
        return Err(Error::OutOfTheoremRange {
            n,
            g,
            model: model.name().to_string(),
        });
    }
    Ok(if g + 3 <= n {
        (1u64 << g) * (n - g + 1) as u64 - 1
    } else {
        (1u64 << (n - 1)) - 1
    })
}

/// The set `A = 0^{n-g-1} X^g 0` (its members keep exactly `g` neighbors in `A`).
pub fn core_pattern(n: u32, g: u32) -> BitPattern {
    BitPattern::new().zeros(n - g - 1).free(g).zeros(1)
}

/// `N(A)` written as a union of patterns:
/// `1 0^{n-g-2} X^g 0`, `0 1 0^{n-g-3} X^g 0`, ..., `0^{n-g-2} 1 X^g 0`, `0^{n-g-1} X^g 1`.
pub fn neighborhood_patterns(n: u32, g: u32) -> Vec<BitPattern> {
    let prefix = n - g - 1;
    let mut out: Vec<BitPattern> = (0..prefix)
        .map(|i| {
            BitPattern::new()
                .zeros(i)
                .ones(1)
                .zeros(prefix - 1 - i)
                .free(g)
                .zeros(1)
        })
        .collect();
    out.push(BitPattern::new().zeros(prefix).free(g).ones(1));
    out
}

/// Indistinguishable pair of g-good-neighbor faulty sets bounding `t_g` from
/// above. For `g <= n - 3`: `(N(A), N(A) ∪ A)` with `A = 0^{n-g-1} X^g 0`.
/// For `g >= n - 2`: the two half cubes `0X^{n-1}` and `1X^{n-1}`.
pub fn witness_pair(graph: &LtqGraph, g: u32) -> Result<(VertexSet, VertexSet)> {
    let n = graph.dimension();
    if g < 1 || g + 1 > n {
        return Err(Error::GOutOfRange {
            g,
            n,
            reason: "witness pairs need 1 <= g <= n - 1",
        });
    }
    if g + 3 <= n {
        let a = core_pattern(n, g).to_set(n)?;
        let f1 = neighborhood_of_set(graph, &a)?;
        let f2 = f1.union(&a);
        Ok((f1, f2))
    } else {
        let low = BitPattern::new().zeros(1).free(n - 1).to_set(n)?;
        let high = BitPattern::new().ones(1).free(n - 1).to_set(n)?;
        Ok((low, high))
    }
}

/// Expected witness sizes.
pub fn witness_sizes(n: u32, g: u32) -> (usize, usize) {
    if g + 3 <= n {
        let base = 1usize << g;
        (base * (n - g) as usize, base * (n - g + 1) as usize)
    } else {
        (1usize << (n - 1), 1usize << (n - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::model;

    #[test]
    fn formula_values() {
        let pmc = model("pmc").unwrap();
        let mm = model("mm*").unwrap();
        assert_eq!(tg_formula(4, 1, pmc.as_ref()).unwrap(), 7);
        assert_eq!(tg_formula(5, 1, mm.as_ref()).unwrap(), 9);
        assert_eq!(tg_formula(5, 3, pmc.as_ref()).unwrap(), 15);
        assert_eq!(tg_formula(5, 2, mm.as_ref()).unwrap(), 15);
        assert!(matches!(
            tg_formula(4, 1, mm.as_ref()),
            Err(Error::OutOfTheoremRange { .. })
        ));
        assert!(tg_formula(5, 0, pmc.as_ref()).is_err());
        assert!(tg_formula(5, 5, pmc.as_ref()).is_err());
    }

    #[test]
    fn ltq4_g1_witness_labels() {
        let g = LtqGraph::build(4).unwrap();
        let (f1, f2) = witness_pair(&g, 1).unwrap();
        let expect = VertexSet::from_binary(4, &["1000", "1010", "0100", "0110", "0001", "0011"]).unwrap();
        assert_eq!(f1, expect);
        let a = VertexSet::from_binary(4, &["0000", "0010"]).unwrap();
        assert_eq!(f2, expect.union(&a));
        assert_eq!((f1.len(), f2.len()), (6, 8));
    }

    #[test]
    fn half_cube_witness() {
        let g = LtqGraph::build(4).unwrap();
        let (f1, f2) = witness_pair(&g, 3).unwrap();
        assert_eq!((f1.len(), f2.len()), (8, 8));
        assert!(f1.is_disjoint(&f2));
        assert!(f1.iter().all(|v| !v.bit(3)));
        assert!(matches!(witness_pair(&g, 4), Err(Error::GOutOfRange { .. })));
        assert!(matches!(witness_pair(&g, 0), Err(Error::GOutOfRange { .. })));
    }

    #[test]
    fn pattern_union_is_the_neighborhood() {
        for n in 4..=8 {
            let graph = LtqGraph::build(n).unwrap();
            for g in 1..=n - 3 {
                let (f1, _) = witness_pair(&graph, g).unwrap();
                let mut union = VertexSet::empty(n);
                for p in neighborhood_patterns(n, g) {
                    union = union.union(&p.to_set(n).unwrap());
                }
                assert_eq!(union, f1, "n={n} g={g}");
            }
        }
    }
}
