//! Isomorphism testing and automorphism orbits.
//!
//! Both are driven by the same backtracking mapper: vertices are first
//! partitioned by iterated neighborhood-color refinement (computed jointly
//! over the two graphs so color ids are comparable), then a most-constrained
//! search extends a partial vertex map, checking adjacency incrementally.
//! Orbits come from pinned automorphism queries merged through a union-find:
//! u and v share an orbit exactly when some automorphism maps u to v.

use std::collections::BTreeMap;

use super::Graph;

const UNSET: usize = usize::MAX;

/// Joint stable coloring of two graphs. Pinned vertices get unique seed
/// colors (pair i of `pins` gets the same seed in both graphs). Returns
/// `None` when the color histograms diverge, which already rules out any
/// isomorphism honoring the pins.
fn joint_stable_colors(
    g: &Graph,
    h: &Graph,
    pins: &[(usize, usize)],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut gcol = vec![0usize; n];
    let mut hcol = vec![0usize; n];
    for (i, &(u, v)) in pins.iter().enumerate() {
        gcol[u] = i + 1;
        hcol[v] = i + 1;
    }
    let mut ncolors = count_colors_pair(&gcol, &hcol);
    loop {
        // signature: (own color, sorted neighbor colors)
        let signature = |graph: &Graph, col: &[usize], v: usize| {
            let mut ns: Vec<usize> = {
                let mut m = graph.neighbors(v);
                let mut out = Vec::with_capacity(graph.degree(v));
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    out.push(col[u]);
                }
                out
            };
            ns.sort_unstable();
            (col[v], ns)
        };
        let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut next_g = Vec::with_capacity(n);
        let mut next_h = Vec::with_capacity(n);
        for v in 0..n {
            let sig = signature(g, &gcol, v);
            let next_id = ids.len();
            next_g.push(*ids.entry(sig).or_insert(next_id));
        }
        for v in 0..n {
            let sig = signature(h, &hcol, v);
            let next_id = ids.len();
            next_h.push(*ids.entry(sig).or_insert(next_id));
        }
        let mut ghist = vec![0usize; ids.len()];
        let mut hhist = vec![0usize; ids.len()];
        for v in 0..n {
            ghist[next_g[v]] += 1;
            hhist[next_h[v]] += 1;
        }
        if ghist != hhist {
            return None;
        }
        // each round refines the previous partition, so an unchanged class
        // count means the coloring is stable
        let new_count = ids.len();
        gcol = next_g;
        hcol = next_h;
        if new_count == ncolors {
            return Some((gcol, hcol));
        }
        ncolors = new_count;
    }
}

fn count_colors_pair(g: &[usize], h: &[usize]) -> usize {
    let mut sorted: Vec<usize> = g.iter().chain(h).copied().collect();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

struct Mapper<'a> {
    g: &'a Graph,
    h: &'a Graph,
    gcol: Vec<usize>,
    hcol: Vec<usize>,
    map: Vec<usize>,
    used: u64,
    mapped: Vec<usize>,
}

impl Mapper<'_> {
    fn candidates(&self, u: usize) -> Vec<usize> {
        let n = self.g.n();
        let mut out = Vec::new();
        'next: for v in 0..n {
            if (self.used >> v) & 1 == 1 || self.hcol[v] != self.gcol[u] {
                continue;
            }
            for &w in &self.mapped {
                if self.g.has_edge(u, w) != self.h.has_edge(v, self.map[w]) {
                    continue 'next;
                }
            }
            out.push(v);
        }
        out
    }

    fn extend(&mut self) -> bool {
        let n = self.g.n();
        if self.mapped.len() == n {
            return true;
        }
        // most-constrained unmapped vertex, ties by ascending label
        let mut pick = UNSET;
        let mut pick_cands: Vec<usize> = Vec::new();
        for u in 0..n {
            if self.map[u] != UNSET {
                continue;
            }
            let cands = self.candidates(u);
            if pick == UNSET || cands.len() < pick_cands.len() {
                pick = u;
                pick_cands = cands;
                if pick_cands.is_empty() {
                    return false;
                }
            }
        }
        for v in pick_cands {
            self.map[pick] = v;
            self.used |= 1 << v;
            self.mapped.push(pick);
            if self.extend() {
                return true;
            }
            self.mapped.pop();
            self.used &= !(1u64 << v);
            self.map[pick] = UNSET;
        }
        false
    }
}

/// An isomorphism g → h honoring the pinned pairs, if one exists.
/// The returned vector sends vertex u of g to map[u] of h.
pub fn find_isomorphism_pinned(
    g: &Graph,
    h: &Graph,
    pins: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    for &(u, v) in pins {
        if g.degree(u) != h.degree(v) {
            return None;
        }
    }
    let (gcol, hcol) = joint_stable_colors(g, h, pins)?;
    let n = g.n();
    let mut mapper = Mapper {
        g,
        h,
        gcol,
        hcol,
        map: vec![UNSET; n],
        used: 0,
        mapped: Vec::with_capacity(n),
    };
    for &(u, v) in pins {
        if mapper.map[u] != UNSET || (mapper.used >> v) & 1 == 1 {
            return None; // conflicting pins
        }
        // pins must already be mutually consistent
        for &w in &mapper.mapped {
            if g.has_edge(u, w) != h.has_edge(v, mapper.map[w]) {
                return None;
            }
        }
        mapper.map[u] = v;
        mapper.used |= 1 << v;
        mapper.mapped.push(u);
    }
    if mapper.extend() {
        Some(mapper.map)
    } else {
        None
    }
}

pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    find_isomorphism_pinned(g, h, &[])
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins, keeping representatives deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbit partition of the automorphism group, classes sorted by least member.
pub fn automorphism_orbits(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if uf.find(u) == uf.find(v) {
                continue;
            }
            if let Some(f) = find_isomorphism_pinned(g, g, &[(u, v)]) {
                for (i, &fi) in f.iter().enumerate() {
                    uf.union(i, fi);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(uf.find(v)).or_default().push(v);
    }
    classes.into_values().collect()
}

/// A graph is vertex-transitive when its automorphism group has one orbit.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    if !g.is_regular() {
        return false;
    }
    automorphism_orbits(g).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_graph, cycle_graph, johnson_graph, path_graph, petersen_graph, Graph,
    };

    #[test]
    fn pentagon_isomorphic_to_relabeled_pentagon() {
        let g = cycle_graph(5).unwrap();
        let h = g.relabeled(&[2, 4, 1, 3, 0]).unwrap();
        assert!(is_isomorphic(&g, &h));
        let f = find_isomorphism(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(f[u], f[v]));
        }
    }

    #[test]
    fn pentagon_not_isomorphic_to_path() {
        let g = cycle_graph(5).unwrap();
        let h = path_graph(5).unwrap();
        assert!(!is_isomorphic(&g, &h));
    }

    #[test]
    fn cycle_not_isomorphic_to_disjoint_triangles() {
        // same degree sequence, different structure
        let c6 = cycle_graph(6).unwrap();
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&c6, &tt));
    }

    #[test]
    fn pentagon_has_one_orbit() {
        let orbits = automorphism_orbits(&cycle_graph(5).unwrap());
        assert_eq!(orbits, vec![vec![0, 1, 2, 3, 4]]);
        assert!(is_vertex_transitive(&cycle_graph(5).unwrap()));
    }

    #[test]
    fn path_orbits_split_ends_and_middle() {
        let orbits = automorphism_orbits(&path_graph(3).unwrap());
        assert_eq!(orbits, vec![vec![0, 2], vec![1]]);
        assert!(!is_vertex_transitive(&path_graph(3).unwrap()));
    }

    #[test]
    fn star_orbits() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let orbits = automorphism_orbits(&g);
        assert_eq!(orbits, vec![vec![0], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn johnson_graphs_are_vertex_transitive() {
        assert!(is_vertex_transitive(&johnson_graph(5, 2).unwrap()));
        assert!(is_vertex_transitive(&johnson_graph(7, 2).unwrap()));
    }

    #[test]
    fn petersen_is_vertex_transitive() {
        assert!(is_vertex_transitive(&petersen_graph()));
    }

    #[test]
    fn complete_graph_transitive() {
        assert!(is_vertex_transitive(&complete_graph(7).unwrap()));
    }

    #[test]
    fn vertex_transitivity_implies_regularity() {
        for g in [
            cycle_graph(6).unwrap(),
            johnson_graph(6, 2).unwrap(),
            petersen_graph(),
            path_graph(4).unwrap(),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
        ] {
            if is_vertex_transitive(&g) {
                assert!(g.is_regular());
            }
        }
    }

    #[test]
    fn johnson_not_isomorphic_to_random_regular() {
        // complement of J(5,2) is Petersen, not isomorphic to J(5,2) itself
        assert!(!is_isomorphic(
            &johnson_graph(5, 2).unwrap(),
            &petersen_graph()
        ));
    }

    #[test]
    fn isomorphism_found_between_relabeled_johnson() {
        let g = johnson_graph(7, 2).unwrap();
        let perm: Vec<usize> = (0..21).map(|i| (i * 13 + 5) % 21).collect();
        let h = g.relabeled(&perm).unwrap();
        assert!(is_isomorphic(&g, &h));
    }

    /// 4×4 rook's graph: (i,j) ~ (k,l) iff same row or same column.
    fn rook_4x4() -> Graph {
        let mut g = Graph::empty(16).unwrap();
        for a in 0..16 {
            for b in (a + 1)..16 {
                let (i, j) = (a / 4, a % 4);
                let (k, l) = (b / 4, b % 4);
                if i == k || j == l {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        g
    }

    /// Shrikhande graph: Cayley graph of Z4×Z4 with connection set
    /// {±(1,0), ±(0,1), ±(1,1)}.
    fn shrikhande() -> Graph {
        let mut g = Graph::empty(16).unwrap();
        let diffs = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
        for a in 0..16 {
            let (i, j) = (a / 4, a % 4);
            for (di, dj) in diffs {
                let b = ((i + di) % 4) * 4 + (j + dj) % 4;
                if a != b {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        g
    }

    /// The two strongly regular (16,6,2,2) graphs are indistinguishable to
    /// plain color refinement, so deciding them apart exercises the full
    /// backtracking search.
    #[test]
    fn strongly_regular_pair_is_distinguished() {
        let rook = rook_4x4();
        let shri = shrikhande();
        for g in [&rook, &shri] {
            assert_eq!(g.n(), 16);
            assert_eq!(g.edge_count(), 48);
            assert!(g.is_regular());
            assert_eq!(g.degree(0), 6);
        }
        // independent separation: their clique numbers differ
        assert_eq!(crate::graph::clique_number(&rook), 4);
        assert_eq!(crate::graph::clique_number(&shri), 3);
        assert!(!is_isomorphic(&rook, &shri));
        assert!(is_isomorphic(&rook, &rook.relabeled(&[5, 3, 11, 0, 15, 8, 2, 14, 7, 1, 13, 4, 9, 6, 10, 12]).unwrap()));
    }

    #[test]
    fn strongly_regular_pair_is_vertex_transitive() {
        assert!(is_vertex_transitive(&rook_4x4()));
        assert!(is_vertex_transitive(&shrikhande()));
    }
}
