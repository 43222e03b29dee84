//! Graphs of pair sets, triangle counts, and graphs with the most triangles
//! for a given number of edges.

use serde::Serialize;

use crate::altmap::Pair;
use crate::error::{Error, Result};

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Undirected simple graph on vertices `0..v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: usize,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    pub fn empty(vertices: usize) -> Self {
        Self {
            vertices,
            adj: vec![vec![false; vertices]; vertices],
        }
    }

    pub fn complete(vertices: usize) -> Self {
        let mut g = Self::empty(vertices);
        for i in 0..vertices {
            for j in i + 1..vertices {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Returns false if the edge was already present. Panics on loops or
    /// out-of-range endpoints.
    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        assert!(a != b && a < self.vertices && b < self.vertices, "bad edge ({a},{b})");
        let fresh = !self.adj[a][b];
        self.adj[a][b] = true;
        self.adj[b][a] = true;
        fresh
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Edges `(a, b)` with `a < b`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertices {
            for b in a + 1..self.vertices {
                if self.adj[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.vertices);
        for a in 0..self.vertices {
            for b in a + 1..self.vertices {
                if !self.adj[a][b] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn count_triangles(&self) -> u64 {
        let mut count = 0;
        for a in 0..self.vertices {
            for b in a + 1..self.vertices {
                if !self.adj[a][b] {
                    continue;
                }
                for c in b + 1..self.vertices {
                    if self.adj[a][c] && self.adj[b][c] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, &adjacent) in self.adj[v].iter().enumerate() {
                if adjacent && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Graph on `n` vertices with an edge for each pair.
pub fn graph_of_pairset(pairs: &[Pair], n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for p in pairs {
        g.add_edge(p.i, p.j);
    }
    g
}

pub fn count_triangles(g: &SimpleGraph) -> u64 {
    g.count_triangles()
}

/// `value = C(r, 2) + t` with `0 <= t < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RTDecomposition {
    pub value: u64,
    pub r: u64,
    pub t: u64,
}

pub fn rt_decompose(value: u64) -> RTDecomposition {
    // r = floor((1 + sqrt(1 + 8 value)) / 2), then fix rounding
    let mut r = ((1.0 + (1.0 + 8.0 * value as f64).sqrt()) / 2.0) as u64;
    r = r.max(1);
    while binomial(r, 2) > value {
        r -= 1;
    }
    while binomial(r + 1, 2) <= value {
        r += 1;
    }
    RTDecomposition {
        value,
        r,
        t: value - binomial(r, 2),
    }
}

/// Largest number of triangles in a graph with `edge_count` edges.
pub fn max_triangles_formula(edge_count: u64) -> u64 {
    let RTDecomposition { r, t, .. } = rt_decompose(edge_count);
    binomial(r, 3) + binomial(t, 2)
}

/// `K_r`, plus (when `t > 0`) one more vertex joined to the first `t`
/// vertices of `K_r`. For `edge_count = 0` this is a single vertex.
pub fn extremal_graph(edge_count: u64) -> SimpleGraph {
    let RTDecomposition { r, t, .. } = rt_decompose(edge_count);
    let (r, t) = (r as usize, t as usize);
    let mut g = clique_plus(r, usize::from(t > 0));
    for a in 0..t {
        g.add_edge(a, r);
    }
    g
}

/// The disconnected `K_2 + K_r` alternative, available only when `t = 1`.
pub fn extremal_graph_split(edge_count: u64) -> Option<SimpleGraph> {
    let RTDecomposition { r, t, .. } = rt_decompose(edge_count);
    if t != 1 {
        return None;
    }
    let r = r as usize;
    let mut g = clique_plus(r, 2);
    g.add_edge(r, r + 1);
    Some(g)
}

/// `K_r` with `extra` isolated vertices appended.
fn clique_plus(r: usize, extra: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(r + extra);
    for a in 0..r {
        for b in a + 1..r {
            g.add_edge(a, b);
        }
    }
    g
}

/// Default cap on the number of edge subsets the brute-force search visits.
pub const DEFAULT_WORK_CAP: u128 = 50_000_000;

/// Maximum triangle count over all graphs on `max_vertices` labelled vertices
/// with exactly `edge_count` edges, by exhaustive search.
pub fn brute_force_max_triangles(edge_count: usize, max_vertices: usize) -> Result<u64> {
    brute_force_max_triangles_capped(edge_count, max_vertices, DEFAULT_WORK_CAP)
}

pub fn brute_force_max_triangles_capped(edge_count: usize, max_vertices: usize, cap: u128) -> Result<u64> {
    if max_vertices > 32 {
        return Err(Error::EnumerationTooLarge {
            work: u128::MAX,
            cap,
        });
    }
    let slots: Vec<(usize, usize)> = (0..max_vertices)
        .flat_map(|a| (a + 1..max_vertices).map(move |b| (a, b)))
        .collect();
    if edge_count > slots.len() {
        return Err(Error::InvalidParams(format!(
            "{edge_count} edges do not fit on {max_vertices} vertices"
        )));
    }
    let work = u128::from(binomial(slots.len() as u64, edge_count as u64));
    if work > cap {
        return Err(Error::EnumerationTooLarge { work, cap });
    }
    let mut search = Search {
        slots: &slots,
        adj: vec![0u32; max_vertices],
        best: 0,
    };
    search.run(0, edge_count, 0);
    Ok(search.best)
}

struct Search<'a> {
    slots: &'a [(usize, usize)],
    adj: Vec<u32>,
    best: u64,
}

impl Search<'_> {
    fn run(&mut self, start: usize, remaining: usize, triangles: u64) {
        if remaining == 0 {
            self.best = self.best.max(triangles);
            return;
        }
        for s in start..=self.slots.len() - remaining {
            let (a, b) = self.slots[s];
            let gained = u64::from((self.adj[a] & self.adj[b]).count_ones());
            self.adj[a] |= 1 << b;
            self.adj[b] |= 1 << a;
            self.run(s + 1, remaining - 1, triangles + gained);
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
    }
}
