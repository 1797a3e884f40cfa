//! Dense-bitset graphs and exact combinatorial algorithms.
//!
//! Everything here targets small graphs (n ≤ 64, one `u64` neighbor mask per
//! vertex) and is exact: independence, clique and chromatic numbers are
//! computed by complete search, never by heuristics. Vertex labels are
//! 0..n−1 and all tie-breaking is in ascending label order, so results are
//! reproducible.

mod cliques;
mod coloring;
mod graph6;
mod iso;

pub use cliques::CliqueList;
pub use graph6::{from_graph6, read_graph6_lines, to_graph6, Graph6Error};

use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameters for {generator}: {reason}")]
    BadGeneratorParams {
        generator: &'static str,
        reason: String,
    },
}

/// A finite simple undirected graph on vertices 0..n−1.
///
/// Adjacency is one neighbor bitset per vertex; symmetry and irreflexivity
/// are maintained by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The empty graph (no edges) on n vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for &x in &[u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    /// Neighbor bitset of v.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            // neighbors strictly above u
            let mut m = if u + 1 >= 64 {
                0
            } else {
                self.adj[u] & !((1u64 << (u + 1)) - 1)
            };
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Bitmask with the low n bits set.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn complement(&self) -> Self {
        let mask = self.full_mask();
        let adj = (0..self.n)
            .map(|v| mask & !self.adj[v] & !(1 << v))
            .collect();
        Self { n: self.n, adj }
    }

    /// Induced subgraph on the given vertices, relabeled 0..k−1 in the order
    /// they appear in `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut g = Self::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            if u >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u,
                    n: self.n,
                });
            }
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut m = frontier;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.full_mask()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        ds.sort_unstable();
        ds
    }

    pub fn is_regular(&self) -> bool {
        (1..self.n).all(|v| self.degree(v) == self.degree(0))
    }

    /// Relabel vertices: vertex i of the result is vertex perm[i] of self.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: perm.len(),
                n: self.n,
            });
        }
        self.induced_subgraph(perm)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// The Johnson graph J(m,k): vertices are the k-subsets of {0,..,m−1} in
/// lexicographic order, adjacent when the subsets share k−1 elements.
pub fn johnson_graph(m: usize, k: usize) -> Result<Graph, GraphError> {
    if k == 0 || k >= m {
        return Err(GraphError::BadGeneratorParams {
            generator: "johnson",
            reason: format!("need 1 <= k < m, got m={m} k={k}"),
        });
    }
    let subsets = k_subsets(m, k);
    let mut g = Graph::empty(subsets.len())?;
    for i in 0..subsets.len() {
        for j in (i + 1)..subsets.len() {
            if (subsets[i] & subsets[j]).count_ones() as usize == k - 1 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// k-subsets of {0,..,m−1} as bitmasks, in lexicographic order of the
/// sorted element lists.
pub fn k_subsets(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<u64>) {
        if current.len() == k {
            out.push(current.iter().fold(0u64, |acc, &e| acc | (1 << e)));
            return;
        }
        for e in start..m {
            current.push(e);
            rec(m, k, e + 1, current, out);
            current.pop();
        }
    }
    rec(m, k, 0, &mut current, &mut out);
    out
}

/// Circulant graph on n vertices: i ~ j iff (i−j) mod n is in the connection
/// set (closed under negation; offsets are taken mod n).
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for &s in offsets {
        let s = s % n;
        if s == 0 {
            return Err(GraphError::BadGeneratorParams {
                generator: "circulant",
                reason: "offset 0 (mod n) would be a self-loop".into(),
            });
        }
        for i in 0..n {
            g.add_edge(i, (i + s) % n)?;
        }
    }
    Ok(g)
}

pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    Ok(Graph::empty(n)?.complement())
}

pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadGeneratorParams {
            generator: "cycle",
            reason: format!("need n >= 3, got {n}"),
        });
    }
    circulant(n, &[1])
}

pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// The Petersen graph, as the complement of J(5,2).
pub fn petersen_graph() -> Graph {
    johnson_graph(5, 2).expect("valid parameters").complement()
}

// Re-export the algorithm entry points at module level.
pub use cliques::{
    clique_number, independence_number, max_clique, max_independent_set, maximum_cliques,
};
pub use coloring::chromatic_number;
pub use iso::{automorphism_orbits, find_isomorphism, is_isomorphic, is_vertex_transitive};
