//! Exact chromatic number by backtracking.
//!
//! Lower bound: max(ω, ⌈n/α⌉). Upper bound: greedy on descending degree.
//! Between the two, k-colorability is decided by saturation-ordered
//! backtracking with a maximum clique pre-colored, introducing at most one
//! fresh color at a time.

use super::cliques::{independence_number, max_clique};
use super::Graph;

pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    if g.edge_count() == 0 {
        return 1;
    }
    let clique = max_clique(g);
    let omega = clique.len();
    let alpha = independence_number(g);
    let lower = omega.max(n.div_ceil(alpha));
    let upper = greedy_bound(g);
    for k in lower..upper {
        if colorable(g, k, &clique) {
            return k;
        }
    }
    upper
}

/// Greedy coloring in descending-degree order; returns the color count.
fn greedy_bound(g: &Graph) -> usize {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut colors = vec![usize::MAX; n];
    let mut used = 0;
    for &v in &order {
        let mut taken = 0u64;
        let mut m = g.neighbors(v);
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if colors[u] != usize::MAX {
                taken |= 1 << colors[u];
            }
        }
        let c = (!taken).trailing_zeros() as usize;
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}

struct ColorSearch<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<usize>,
    /// Bitmask of colors already present in each vertex's neighborhood.
    neighbor_colors: Vec<u64>,
    uncolored: u64,
    max_used: usize,
}

const UNCOLORED: usize = usize::MAX;

impl ColorSearch<'_> {
    fn assign(&mut self, v: usize, c: usize) -> Vec<usize> {
        self.colors[v] = c;
        self.uncolored &= !(1u64 << v);
        let mut flipped = Vec::new();
        let mut m = self.g.neighbors(v);
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if (self.neighbor_colors[u] >> c) & 1 == 0 {
                self.neighbor_colors[u] |= 1 << c;
                flipped.push(u);
            }
        }
        flipped
    }

    fn unassign(&mut self, v: usize, c: usize, flipped: &[usize]) {
        self.colors[v] = UNCOLORED;
        self.uncolored |= 1 << v;
        for &u in flipped {
            self.neighbor_colors[u] &= !(1u64 << c);
        }
    }

    fn solve(&mut self) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        // most saturated first, ties by degree then ascending label
        let mut v = usize::MAX;
        let mut best = (0usize, 0usize);
        let mut m = self.uncolored;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            let key = (
                self.neighbor_colors[u].count_ones() as usize,
                self.g.degree(u),
            );
            if v == usize::MAX || key > best {
                best = key;
                v = u;
            }
        }
        if best.0 >= self.k {
            return false; // wipeout: every color blocked
        }
        let limit = self.k.min(self.max_used + 2);
        for c in 0..limit {
            if (self.neighbor_colors[v] >> c) & 1 == 1 {
                continue;
            }
            let saved_max = self.max_used;
            self.max_used = self.max_used.max(c);
            let flipped = self.assign(v, c);
            if self.solve() {
                return true;
            }
            self.unassign(v, c, &flipped);
            self.max_used = saved_max;
        }
        false
    }
}

/// Is g properly colorable with k colors? The supplied clique is pre-colored
/// with distinct colors, which is safe because its vertices must receive
/// distinct colors in any proper coloring.
fn colorable(g: &Graph, k: usize, clique: &[usize]) -> bool {
    if clique.len() > k {
        return false;
    }
    let mut search = ColorSearch {
        g,
        k,
        colors: vec![UNCOLORED; g.n()],
        neighbor_colors: vec![0; g.n()],
        uncolored: g.full_mask(),
        max_used: 0,
    };
    for (c, &v) in clique.iter().enumerate() {
        search.max_used = c;
        search.assign(v, c);
    }
    search.solve()
}
