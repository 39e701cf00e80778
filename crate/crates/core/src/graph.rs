//! The locally twisted cube `LTQ_n`.
//!
//! Production adjacency uses the non-recursive rule: a vertex `u` has one
//! neighbor per dimension `k`. For `k` in `{0, 1}` the neighbor flips bit `k`.
//! For `k >= 2` it flips bit `k` and additionally flips bit `k - 1` when
//! `u_0 = 1`. The recursive two-copy construction is kept as an oracle in
//! [`LtqGraph::neighbors_recursive`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexId, VertexSet};

pub const MIN_DIMENSION: u32 = 2;
pub const MAX_DIMENSION: u32 = 30;
/// Neighbor tables are materialized up to this dimension.
pub const TABLE_DIMENSION_LIMIT: u32 = 20;

/// Neighbor of `label` along dimension `k` in `LTQ_n` (any `n > k`).
#[inline]
pub fn neighbor_along(label: u32, k: u32) -> u32 {
    if k < 2 {
        label ^ (1 << k)
    } else {
        label ^ (1 << k) ^ ((label & 1) << (k - 1))
    }
}

#[derive(Debug, Clone)]
pub struct LtqGraph {
    n: u32,
    /// `table[v * n + k]` is the dimension-`k` neighbor of `v`.
    table: Option<Vec<u32>>,
}

impl LtqGraph {
    pub fn build(n: u32) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&n) {
            return Err(Error::DimensionOutOfRange {
                n,
                min: MIN_DIMENSION,
                max: MAX_DIMENSION,
            });
        }
        let table = (n <= TABLE_DIMENSION_LIMIT).then(|| {
            let mut t = Vec::with_capacity((1usize << n) * n as usize);
            for v in 0..(1u32 << n) {
                for k in 0..n {
                    t.push(neighbor_along(v, k));
                }
            }
            t
        });
        Ok(LtqGraph { n, table })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.n
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() * self.n as usize / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..(1u32 << self.n)).map(VertexId)
    }

    pub fn is_materialized(&self) -> bool {
        self.table.is_some()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v.0 as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                label: v.0 as u64,
                n: self.n,
            })
        }
    }

    /// Neighbor along dimension `k`; callers guarantee `v` is valid and `k < n`.
    #[inline]
    pub fn neighbor(&self, v: VertexId, k: u32) -> VertexId {
        match &self.table {
            Some(t) => VertexId(t[v.0 as usize * self.n as usize + k as usize]),
            None => VertexId(neighbor_along(v.0, k)),
        }
    }

    /// Neighbors of `v` in dimension order `0..n`. Unchecked.
    pub fn neighbor_iter(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(move |k| self.neighbor(v, k))
    }

    pub fn neighbor_ids(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.check_vertex(v)?;
        Ok(self.neighbor_iter(v).collect())
    }

    pub fn neighbors(&self, v: VertexId) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s = VertexSet::empty(self.n);
        for w in self.neighbor_iter(v) {
            s.insert(w);
        }
        Ok(s)
    }

    /// Adjacency predicate read directly off the label difference.
    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        let d = u.0 ^ v.0;
        if d == 1 || d == 2 {
            return true;
        }
        (2..self.n).any(|k| d == (1 << k) | ((u.0 & 1) << (k - 1)))
    }

    /// Neighborhood computed through the recursive construction: `LTQ_n` is
    /// two prefixed copies of `LTQ_{n-1}` joined by the edges
    /// `0 x_{n-2} ... x_0 -- 1 (x_{n-2} ^ x_0) x_{n-3} ... x_0`.
    pub fn neighbors_recursive(&self, v: VertexId) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut out = Vec::with_capacity(self.n as usize);
        recursive_neighbors(self.n, v.0, &mut out);
        Ok(VertexSet::from_labels(self.n, out))
    }

    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex);
        }
        Ok(self.neighbors(u)?.intersection(&self.neighbors(v)?))
    }

    pub fn has_triangle(&self) -> bool {
        for u in self.vertices() {
            for v in self.neighbor_iter(u).filter(|&v| v > u) {
                if self
                    .neighbor_iter(v)
                    .filter(|&w| w > v)
                    .any(|w| self.is_adjacent(u, w))
                {
                    return true;
                }
            }
        }
        false
    }

    /// Undirected edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges: Vec<_> = self
            .vertices()
            .flat_map(|u| {
                self.neighbor_iter(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn label(&self, v: VertexId) -> String {
        v.to_binary(self.n)
    }

    /// One line per edge: two binary labels separated by a space, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&self.label(u));
            out.push(' ');
            out.push_str(&self.label(v));
            out.push('\n');
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph LTQ_{} {{\n", self.n);
        for v in self.vertices() {
            out.push_str(&format!("  \"{}\";\n", self.label(v)));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.label(u), self.label(v)));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.label(u), self.label(v)])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: u32,
    pub edges: Vec<[String; 2]>,
}

fn recursive_neighbors(dim: u32, x: u32, out: &mut Vec<u32>) {
    if dim == 2 {
        // (00,01), (01,11), (11,10), (10,00)
        let base: [[u32; 2]; 4] = [[0b01, 0b10], [0b00, 0b11], [0b11, 0b00], [0b01, 0b10]];
        out.extend_from_slice(&base[x as usize]);
        return;
    }
    let top = (x >> (dim - 1)) & 1;
    let low = x & ((1 << (dim - 1)) - 1);
    let start = out.len();
    recursive_neighbors(dim - 1, low, out);
    for w in &mut out[start..] {
        *w |= top << (dim - 1);
    }
    let twisted = low ^ ((low & 1) << (dim - 2));
    out.push(twisted | ((1 - top) << (dim - 1)));
}
