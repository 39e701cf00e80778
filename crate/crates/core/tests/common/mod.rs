//! Reference implementations used as oracles by the integration tests. They
//! share no code with the library: adjacency comes from the recursive
//! construction, and every predicate is evaluated directly from its
//! definition.

#![allow(dead_code)]

use ltq_diag::syndrome::SyndromeFile;

/// LTQ_n built from two copies of LTQ_{n-1}: node `0x` is joined to
/// `1(x_{n-2} ^ x_0)x_{n-3}...x_0` in the other copy.
pub fn recursive_edges(n: u32) -> Vec<(u32, u32)> {
    if n == 2 {
        return vec![(0b00, 0b01), (0b01, 0b11), (0b11, 0b10), (0b10, 0b00)];
    }
    let lower = recursive_edges(n - 1);
    let top = 1u32 << (n - 1);
    let mut edges = lower.clone();
    edges.extend(lower.iter().map(|&(a, b)| (a | top, b | top)));
    for x in 0..top {
        let twisted = x ^ ((x & 1) << (n - 2));
        edges.push((x, top | twisted));
    }
    edges
}

pub fn normalized(mut edges: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    edges
}

pub fn label(v: u32, n: u32) -> String {
    (0..n).rev().map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_label(s: &str) -> u32 {
    u32::from_str_radix(s, 2).expect("binary label")
}

pub struct Oracle {
    pub n: u32,
    pub adj: Vec<Vec<u32>>,
}

impl Oracle {
    pub fn new(n: u32) -> Self {
        let mut adj = vec![Vec::new(); 1 << n];
        for (a, b) in recursive_edges(n) {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Oracle { n, adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    pub fn set(&self, members: impl IntoIterator<Item = u32>) -> Vec<bool> {
        let mut s = vec![false; self.order()];
        for v in members {
            s[v as usize] = true;
        }
        s
    }

    /// Every fault-free vertex keeps at least `g` fault-free neighbors.
    pub fn is_good(&self, f: &[bool], g: usize) -> bool {
        (0..self.order()).all(|v| {
            f[v] || self.adj[v].iter().filter(|&&u| !f[u as usize]).count() >= g
        })
    }

    /// The fault-free vertices (if any) form more than one component.
    pub fn disconnects(&self, f: &[bool]) -> bool {
        let Some(start) = (0..self.order()).find(|&v| !f[v]) else {
            return false;
        };
        let mut seen = vec![false; self.order()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                let u = u as usize;
                if !f[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        (0..self.order()).any(|v| !f[v] && !seen[v])
    }

    /// Some PMC syndrome fits both sets: every tester fault-free under both
    /// predicts the same outcome for each testee.
    pub fn pmc_joint(&self, a: &[bool], b: &[bool]) -> bool {
        (0..self.order()).all(|u| {
            a[u] || b[u] || self.adj[u].iter().all(|&v| a[v as usize] == b[v as usize])
        })
    }

    /// Some MM* syndrome fits both sets: every comparator fault-free under both
    /// predicts the same outcome for each pair of its neighbors.
    pub fn mm_joint(&self, a: &[bool], b: &[bool]) -> bool {
        (0..self.order()).all(|w| {
            if a[w] || b[w] {
                return true;
            }
            let nb = &self.adj[w];
            (0..nb.len()).all(|i| {
                (i + 1..nb.len()).all(|j| {
                    let (u, v) = (nb[i] as usize, nb[j] as usize);
                    (a[u] || a[v]) == (b[u] || b[v])
                })
            })
        })
    }

    pub fn joint(&self, model: &str, a: &[bool], b: &[bool]) -> bool {
        match model {
            "pmc" => self.pmc_joint(a, b),
            _ => self.mm_joint(a, b),
        }
    }

    /// Checks a serialized syndrome against `f`: correct test count, only
    /// real edges, and the truthful outcome from every fault-free unit.
    pub fn syndrome_fits(&self, file: &SyndromeFile, f: &[bool]) -> bool {
        let n = self.n as usize;
        match file {
            SyndromeFile::Pmc { tests, .. } => {
                tests.len() == n * self.order()
                    && tests.iter().all(|t| {
                        let (u, v) = (parse_label(&t.u), parse_label(&t.v));
                        self.adjacent(u, v)
                            && (f[u as usize] || (t.out == 1) == f[v as usize])
                    })
            }
            SyndromeFile::Mm { tests, .. } => {
                tests.len() == self.order() * n * (n - 1) / 2
                    && tests.iter().all(|t| {
                        let (w, u, v) = (parse_label(&t.w), parse_label(&t.u), parse_label(&t.v));
                        u != v
                            && self.adjacent(w, u)
                            && self.adjacent(w, v)
                            && (f[w as usize] || (t.out == 1) == (f[u as usize] || f[v as usize]))
                    })
            }
        }
    }
}

/// Mask-based oracle for the exhaustive checks at `n <= 6`.
pub struct MaskOracle {
    pub order: u32,
    pub full: u64,
    pub nbr: Vec<u64>,
    /// Per comparator, the masks of each pair of its neighbors.
    pub pairs: Vec<Vec<u64>>,
}

impl MaskOracle {
    pub fn new(o: &Oracle) -> Self {
        assert!(o.n <= 6);
        let nbr = o
            .adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let pairs = o
            .adj
            .iter()
            .map(|l| {
                let mut p = Vec::new();
                for i in 0..l.len() {
                    for j in i + 1..l.len() {
                        p.push(1u64 << l[i] | 1u64 << l[j]);
                    }
                }
                p
            })
            .collect();
        let order = o.order() as u32;
        MaskOracle {
            order,
            full: if order == 64 { u64::MAX } else { (1 << order) - 1 },
            nbr,
            pairs,
        }
    }

    fn bits(mut m: u64) -> impl Iterator<Item = usize> {
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                v
            })
        })
    }

    pub fn is_good(&self, f: u64, g: u32) -> bool {
        Self::bits(self.full & !f).all(|v| (self.nbr[v] & !f).count_ones() >= g)
    }

    pub fn disconnects(&self, f: u64) -> bool {
        let free = self.full & !f;
        if free == 0 {
            return false;
        }
        let mut seen = free & free.wrapping_neg();
        loop {
            let grown = Self::bits(seen).fold(seen, |m, v| m | (self.nbr[v] & free));
            if grown == seen {
                return seen != free;
            }
            seen = grown;
        }
    }

    /// Induced subgraph on `s` has minimum degree at least `g`.
    pub fn min_degree_at_least(&self, s: u64, g: u32) -> bool {
        Self::bits(s).all(|v| (self.nbr[v] & s).count_ones() >= g)
    }

    pub fn pmc_joint(&self, a: u64, b: u64) -> bool {
        let both_free = self.full & !(a | b);
        Self::bits(both_free).all(|u| self.nbr[u] & (a ^ b) == 0)
    }

    pub fn mm_joint(&self, a: u64, b: u64) -> bool {
        let both_free = self.full & !(a | b);
        Self::bits(both_free).all(|w| {
            self.pairs[w]
                .iter()
                .all(|&pair| (pair & a != 0) == (pair & b != 0))
        })
    }

    /// All g-good-neighbor sets of size at most `max`, by plain subset filtering.
    pub fn good_sets(&self, g: u32, max: u32) -> Vec<u64> {
        assert!(self.order <= 16);
        (0..1u64 << self.order)
            .filter(|&m| m.count_ones() <= max && self.is_good(m, g))
            .collect()
    }
}
