//! Bitmask kernel for exhaustive searches on `LTQ_n` with `n <= 6`.
//!
//! A vertex set is a `u64` whose bit `v` marks vertex `v`. Neighborhood
//! unions are served from 16-bit chunk tables so pair checks in the
//! diagnosability search cost a handful of table lookups.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::LtqGraph;

pub const KERNEL_MAX_DIMENSION: u32 = 6;
const CHUNK_BITS: u32 = 16;

#[derive(Debug, Clone)]
pub struct Kernel {
    n: u32,
    order: u32,
    full: u64,
    nbr: Vec<u64>,
    chunk_bits: u32,
    /// Per chunk: union of neighborhoods of the chunk's members.
    nb_tab: Vec<Vec<u64>>,
    /// Per chunk: vertices with at least two neighbors among the chunk's members.
    at2_tab: Vec<Vec<u64>>,
}

impl Kernel {
    pub fn new(graph: &LtqGraph) -> Result<Self> {
        let n = graph.dimension();
        if n > KERNEL_MAX_DIMENSION {
            return Err(Error::SearchDimension {
                n,
                max: KERNEL_MAX_DIMENSION,
            });
        }
        let order = 1u32 << n;
        let full = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
        let nbr: Vec<u64> = graph
            .vertices()
            .map(|v| graph.neighbor_iter(v).fold(0u64, |m, w| m | (1u64 << w.0)))
            .collect();
        let chunk_bits = order.min(CHUNK_BITS);
        let chunks = order / chunk_bits;
        let mut nb_tab = Vec::with_capacity(chunks as usize);
        let mut at2_tab = Vec::with_capacity(chunks as usize);
        for c in 0..chunks {
            let len = 1usize << chunk_bits;
            let mut nb = vec![0u64; len];
            let mut at2 = vec![0u64; len];
            for x in 1..len {
                let low = x.trailing_zeros();
                let rest = x & (x - 1);
                let vn = nbr[(c * chunk_bits + low) as usize];
                nb[x] = nb[rest] | vn;
                at2[x] = at2[rest] | (nb[rest] & vn);
            }
            nb_tab.push(nb);
            at2_tab.push(at2);
        }
        Ok(Kernel {
            n,
            order,
            full,
            nbr,
            chunk_bits,
            nb_tab,
            at2_tab,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn full(&self) -> u64 {
        self.full
    }

    pub fn neighbors(&self, v: u32) -> u64 {
        self.nbr[v as usize]
    }

    /// Union of the neighborhoods of the members of `m` (may intersect `m`).
    #[inline]
    pub fn nb(&self, m: u64) -> u64 {
        let mask = (1u64 << self.chunk_bits) - 1;
        let mut acc = 0;
        for (c, tab) in self.nb_tab.iter().enumerate() {
            acc |= tab[((m >> (c as u32 * self.chunk_bits)) & mask) as usize];
        }
        acc
    }

    /// Vertices with at least two neighbors in `m`.
    #[inline]
    pub fn at_least_two(&self, m: u64) -> u64 {
        let mask = (1u64 << self.chunk_bits) - 1;
        let (mut one, mut two) = (0u64, 0u64);
        for (c, (nb, at2)) in self.nb_tab.iter().zip(&self.at2_tab).enumerate() {
            let idx = ((m >> (c as u32 * self.chunk_bits)) & mask) as usize;
            two |= at2[idx] | (one & nb[idx]);
            one |= nb[idx];
        }
        two
    }

    pub fn is_connected(&self, set: u64) -> bool {
        if set == 0 {
            return true;
        }
        let start = set & set.wrapping_neg();
        self.reach(start, set) == set
    }

    /// Vertices of `within` reachable from `seed` inside `within`.
    pub fn reach(&self, seed: u64, within: u64) -> u64 {
        let mut seen = seed & within;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros();
            frontier &= frontier - 1;
            let fresh = self.nbr[v as usize] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// Every `g`-good-neighbor faulty set of cardinality `size`, in
    /// lexicographic order of the ascending member lists. With
    /// `first = Some(c)` only sets whose smallest member is `c` are visited.
    pub fn for_each_good_set<B, F>(
        &self,
        g: u32,
        size: u32,
        first: Option<u32>,
        mut visit: F,
    ) -> ControlFlow<B>
    where
        F: FnMut(u64) -> ControlFlow<B>,
    {
        if size > self.order {
            return ControlFlow::Continue(());
        }
        let mut walk = GoodSetWalk {
            kernel: self,
            limit: self.n.saturating_sub(g) as u8,
            counts: [0; 64],
            over: 0,
        };
        if g > self.n {
            // No vertex can keep more than n free neighbors; only F = V qualifies.
            if size == self.order && first.is_none_or(|c| c == 0) {
                return visit(self.full);
            }
            return ControlFlow::Continue(());
        }
        walk.descend(0, size, 0, first, &mut visit)
    }

    pub fn good_sets(&self, g: u32, size: u32) -> Vec<u64> {
        let mut out = Vec::new();
        let _ = self.for_each_good_set::<(), _>(g, size, None, |m| {
            out.push(m);
            ControlFlow::Continue(())
        });
        out
    }

    /// Same as [`Kernel::good_sets`], split across the current rayon pool by
    /// smallest member.
    pub fn good_sets_par(&self, g: u32, size: u32) -> Vec<u64> {
        use rayon::prelude::*;
        if size == 0 {
            return self.good_sets(g, 0);
        }
        (0..self.order)
            .into_par_iter()
            .map(|c| {
                let mut out = Vec::new();
                let _ = self.for_each_good_set::<(), _>(g, size, Some(c), |m| {
                    out.push(m);
                    ControlFlow::Continue(())
                });
                out
            })
            .collect::<Vec<_>>()
            .concat()
    }
}

struct GoodSetWalk<'a> {
    kernel: &'a Kernel,
    /// A free vertex may have at most this many faulty neighbors.
    limit: u8,
    counts: [u8; 64],
    /// Vertices whose faulty-neighbor count exceeds `limit`; all must be faulty.
    over: u64,
}

impl GoodSetWalk<'_> {
    fn add(&mut self, c: u32) {
        let mut m = self.kernel.nbr[c as usize];
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            self.counts[w] += 1;
            if self.counts[w] == self.limit + 1 {
                self.over |= 1u64 << w;
            }
        }
    }

    fn remove(&mut self, c: u32) {
        let mut m = self.kernel.nbr[c as usize];
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.counts[w] == self.limit + 1 {
                self.over &= !(1u64 << w);
            }
            self.counts[w] -= 1;
        }
    }

    fn descend<B, F>(
        &mut self,
        start: u32,
        remaining: u32,
        mask: u64,
        only: Option<u32>,
        visit: &mut F,
    ) -> ControlFlow<B>
    where
        F: FnMut(u64) -> ControlFlow<B>,
    {
        if remaining == 0 {
            if self.over & !mask == 0 {
                return visit(mask);
            }
            return ControlFlow::Continue(());
        }
        let order = self.kernel.order;
        let last = order - remaining;
        let (lo, hi) = match only {
            Some(c) if c < start || c > last => return ControlFlow::Continue(()),
            Some(c) => (c, c),
            None => (start, last),
        };
        for c in lo..=hi {
            // Everything below c that is not in the set is now fault-free.
            if self.over & !mask & below(c) != 0 {
                break;
            }
            self.add(c);
            let next = mask | (1u64 << c);
            let pending = self.over & !next;
            let feasible = pending & below(c + 1) == 0 && pending.count_ones() < remaining;
            if feasible {
                if let ControlFlow::Break(b) = self.descend(c + 1, remaining - 1, next, None, visit)
                {
                    self.remove(c);
                    return ControlFlow::Break(b);
                }
            }
            self.remove(c);
        }
        ControlFlow::Continue(())
    }
}

#[inline]
fn below(c: u32) -> u64 {
    if c >= 64 {
        u64::MAX
    } else {
        (1u64 << c) - 1
    }
}
