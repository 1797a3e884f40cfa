//! Exact clique and independence computations.
//!
//! `max_clique` is a branch-and-bound search with a greedy-coloring bound;
//! `maximum_cliques` enumerates every clique of maximum size with a pivoting
//! Bron–Kerbosch restricted to that size. Both explore vertices in ascending
//! label order so the output is deterministic.

use super::Graph;

/// All cliques of one size, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueList {
    pub size: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueList {
    /// How many listed cliques contain each vertex.
    pub fn per_vertex_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for c in &self.cliques {
            for &v in c {
                counts[v] += 1;
            }
        }
        counts
    }
}

struct MaxCliqueSearch<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MaxCliqueSearch<'_> {
    /// Greedy coloring of the candidate set; returns vertices ordered by
    /// color class together with their color numbers (1-based). A vertex
    /// with color c can extend the clique to at most |current| + c.
    fn color_sort(&self, candidates: u64) -> Vec<(usize, usize)> {
        let mut ordered = Vec::with_capacity(candidates.count_ones() as usize);
        let mut uncolored = candidates;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut class_pool = uncolored;
            while class_pool != 0 {
                let v = class_pool.trailing_zeros() as usize;
                class_pool &= class_pool - 1;
                class_pool &= !self.g.neighbors(v);
                uncolored &= !(1 << v);
                ordered.push((v, color));
            }
        }
        ordered
    }

    fn expand(&mut self, candidates: u64) {
        if candidates == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let ordered = self.color_sort(candidates);
        let mut remaining = candidates;
        for &(v, color) in ordered.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return;
            }
            self.current.push(v);
            self.expand(remaining & self.g.neighbors(v));
            self.current.pop();
            remaining &= !(1u64 << v);
        }
    }
}

/// One maximum clique (sorted ascending) found by branch and bound.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let mut search = MaxCliqueSearch {
        g,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.expand(g.full_mask());
    search.best.sort_unstable();
    search.best
}

/// ω(g), the clique number.
pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

/// α(g), the independence number, as the clique number of the complement.
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// One maximum independent set (sorted ascending).
pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    max_clique(&g.complement())
}

/// Every clique of size ω(g), in lexicographic order.
pub fn maximum_cliques(g: &Graph) -> CliqueList {
    let omega = clique_number(g);
    let mut cliques = Vec::new();
    let mut current = Vec::new();
    bron_kerbosch(g, omega, &mut current, g.full_mask(), 0, &mut cliques);
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    CliqueList {
        size: omega,
        cliques,
    }
}

/// Pivoting Bron–Kerbosch over (P, X), pruned to cliques reaching `target`.
fn bron_kerbosch(
    g: &Graph,
    target: usize,
    current: &mut Vec<usize>,
    p: u64,
    x: u64,
    out: &mut Vec<Vec<usize>>,
) {
    if p == 0 && x == 0 {
        if current.len() == target {
            out.push(current.clone());
        }
        return;
    }
    if current.len() + (p.count_ones() as usize) < target {
        return;
    }
    // pivot: vertex of P ∪ X with most neighbors in P
    let mut pivot = usize::MAX;
    let mut best_cover = usize::MAX;
    let mut pool = p | x;
    while pool != 0 {
        let v = pool.trailing_zeros() as usize;
        pool &= pool - 1;
        let uncovered = (p & !g.neighbors(v)).count_ones() as usize;
        if uncovered < best_cover {
            best_cover = uncovered;
            pivot = v;
        }
    }
    let mut candidates = p & !g.neighbors(pivot);
    let mut p = p;
    let mut x = x;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        current.push(v);
        bron_kerbosch(
            g,
            target,
            current,
            p & g.neighbors(v),
            x & g.neighbors(v),
            out,
        );
        current.pop();
        p &= !(1u64 << v);
        x |= 1u64 << v;
    }
}
