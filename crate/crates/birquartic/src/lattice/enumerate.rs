//! Exhaustive enumeration of connected simple graphs up to isomorphism,
//! used to cross-validate the two star-condition implementations on every
//! simply-laced (−2) configuration of bounded size.
//!
//! Graphs are grown one vertex at a time: every graph on `n` vertices
//! extends each graph on `n − 1` by a new vertex attached to a nonempty
//! neighbor set, and candidates are deduplicated by cheap invariants plus a
//! backtracking isomorphism test. Connected components suffice: both star
//! checks factor through components.

use super::{CurveConfig, Vertex};

/// Small simple graph as adjacency bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl SmallGraph {
    fn single() -> Self {
        SmallGraph { n: 1, adj: vec![0] }
    }

    fn extend_with(&self, neighbors: u32) -> Self {
        let mut adj = self.adj.clone();
        adj.push(neighbors);
        for (i, row) in adj.iter_mut().enumerate().take(self.n) {
            if neighbors & (1 << i) != 0 {
                *row |= 1 << self.n;
            }
        }
        SmallGraph { n: self.n + 1, adj }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Invariant used for bucketing before the exact isomorphism test:
    /// sorted list of (degree, sorted neighbor degrees), plus the triangle
    /// count.
    fn invariant(&self) -> (Vec<(usize, Vec<usize>)>, usize) {
        let degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut sig: Vec<(usize, Vec<usize>)> = (0..self.n)
            .map(|v| {
                let mut nd: Vec<usize> = (0..self.n)
                    .filter(|&w| self.adj[v] & (1 << w) != 0)
                    .map(|w| degs[w])
                    .collect();
                nd.sort_unstable();
                (degs[v], nd)
            })
            .collect();
        sig.sort();
        let mut triangles = 0;
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.adj[a] & (1 << b) == 0 {
                    continue;
                }
                triangles +=
                    (self.adj[a] & self.adj[b] & !((1 << (b + 1)) - 1)).count_ones() as usize;
            }
        }
        (sig, triangles)
    }

    fn isomorphic(&self, other: &SmallGraph) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.try_map(other, 0, &mut mapping, &mut used)
    }

    fn try_map(
        &self,
        other: &SmallGraph,
        v: usize,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == self.n {
            return true;
        }
        for w in 0..self.n {
            if used[w] || self.degree(v) != other.degree(w) {
                continue;
            }
            // Adjacency with already-mapped vertices must match.
            let ok = (0..v).all(|u| {
                let e1 = self.adj[v] & (1 << u) != 0;
                let e2 = other.adj[w] & (1 << mapping[u]) != 0;
                e1 == e2
            });
            if !ok {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if self.try_map(other, v + 1, mapping, used) {
                return true;
            }
            used[w] = false;
            mapping[v] = usize::MAX;
        }
        false
    }

    /// As a (−2) curve configuration with unit edges.
    pub fn to_curve_config(&self) -> CurveConfig {
        let vertices = (0..self.n)
            .map(|i| Vertex {
                id: format!("v{}", i + 1),
                self_int: -2,
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.adj[a] & (1 << b) != 0 {
                    edges.push((format!("v{}", a + 1), format!("v{}", b + 1), 1));
                }
            }
        }
        CurveConfig::new(vertices, edges).unwrap()
    }
}

/// All connected simple graphs with `1..=max_n` vertices, one representative
/// per isomorphism class.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<SmallGraph> {
    assert!((1..=16).contains(&max_n));
    let mut all = vec![SmallGraph::single()];
    let mut level = vec![SmallGraph::single()];
    for n in 2..=max_n {
        type Invariant = (Vec<(usize, Vec<usize>)>, usize);
        let mut buckets: std::collections::HashMap<Invariant, Vec<SmallGraph>> =
            std::collections::HashMap::new();
        for g in &level {
            for neighbors in 1u32..(1 << (n - 1)) {
                let candidate = g.extend_with(neighbors);
                let key = candidate.invariant();
                let bucket = buckets.entry(key).or_default();
                if !bucket.iter().any(|h| h.isomorphic(&candidate)) {
                    bucket.push(candidate);
                }
            }
        }
        level = buckets.into_values().flatten().collect();
        // Deterministic order for downstream consumers.
        level.sort_by_key(|g| g.adj.clone());
        all.extend(level.iter().cloned());
    }
    all
}
