//! Context sets, KS colorability, and contextuality classification.
//!
//! A [`ContextSet`] is a deduplicated list of exact rays together with the
//! orthogonal bases (contexts) they form. On top of it sit the KS-coloring
//! decision, the parity predicates, the fully-contextual test and the
//! classification pipeline used for census scans. Graph-level predicates
//! treat every maximum clique as a context; set-level predicates use the
//! declared bases. The two conventions coincide on the built-in data.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{inner_product, ray_equal, ExactError, Ket};
use crate::graph::{self, Graph, GraphError};
use crate::theta::{self, ThetaError, COMPARISON_SLACK};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContextualityError {
    #[error("context {context} has {got} rays, expected the dimension {expected}")]
    WrongContextSize {
        context: String,
        expected: usize,
        got: usize,
    },
    #[error(
        "context {context} contains a non-orthogonal pair ({ray_a}, {ray_b}): ⟨a,b⟩ = {product}"
    )]
    NonOrthogonalPair {
        context: String,
        ray_a: usize,
        ray_b: usize,
        product: String,
    },
    #[error("rays {0} and {1} coincide and should have been merged")]
    DuplicateRays(usize, usize),
    #[error("ket dimension {got} does not match the declared dimension {expected}")]
    KetDimension { expected: usize, got: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation requires a vertex-transitive graph")]
    NotVertexTransitive,
    #[error("parameter out of domain: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

// ---------------------------------------------------------------------------
// ContextSet
// ---------------------------------------------------------------------------

/// A set of exact rays in fixed dimension, organized into orthogonal bases.
///
/// Rays are deduplicated up to nonzero scalar multiples; contexts are index
/// lists into the ray table. Construction validates that every declared
/// context has exactly `dimension` pairwise-orthogonal members.
#[derive(Debug, Clone)]
pub struct ContextSet {
    dimension: usize,
    rays: Vec<Ket>,
    contexts: Vec<Vec<usize>>,
    context_names: Vec<String>,
}

impl ContextSet {
    /// Builds a context set from bases, merging rays that agree up to a
    /// scalar. Bases are named B1, B2, … unless names are supplied.
    pub fn from_bases(
        dimension: usize,
        bases: Vec<Vec<Ket>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, ContextualityError> {
        let context_names = match names {
            Some(ns) => ns,
            None => (1..=bases.len()).map(|i| format!("B{i}")).collect(),
        };
        let mut rays: Vec<Ket> = Vec::new();
        let mut contexts = Vec::with_capacity(bases.len());
        for (basis, name) in bases.into_iter().zip(&context_names) {
            if basis.len() != dimension {
                return Err(ContextualityError::WrongContextSize {
                    context: name.clone(),
                    expected: dimension,
                    got: basis.len(),
                });
            }
            let mut indices = Vec::with_capacity(dimension);
            for ket in basis {
                if ket.dim() != dimension {
                    return Err(ContextualityError::KetDimension {
                        expected: dimension,
                        got: ket.dim(),
                    });
                }
                let mut found = None;
                for (i, existing) in rays.iter().enumerate() {
                    if ray_equal(existing, &ket)? {
                        found = Some(i);
                        break;
                    }
                }
                let idx = match found {
                    Some(i) => i,
                    None => {
                        rays.push(ket);
                        rays.len() - 1
                    }
                };
                indices.push(idx);
            }
            contexts.push(indices);
        }
        let cs = Self {
            dimension,
            rays,
            contexts,
            context_names,
        };
        cs.check_orthogonality()?;
        Ok(cs)
    }

    fn check_orthogonality(&self) -> Result<(), ContextualityError> {
        for (ctx, name) in self.contexts.iter().zip(&self.context_names) {
            for (a, &i) in ctx.iter().enumerate() {
                for &j in &ctx[a + 1..] {
                    if i == j {
                        return Err(ContextualityError::NonOrthogonalPair {
                            context: name.clone(),
                            ray_a: i,
                            ray_b: j,
                            product: self.rays[i].norm_sq().to_string(),
                        });
                    }
                    let ip = inner_product(&self.rays[i], &self.rays[j])?;
                    if !ip.is_zero() {
                        return Err(ContextualityError::NonOrthogonalPair {
                            context: name.clone(),
                            ray_a: i,
                            ray_b: j,
                            product: ip.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rays(&self) -> &[Ket] {
        &self.rays
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn context_names(&self) -> &[String] {
        &self.context_names
    }

    /// For each ray, the indices of the contexts containing it.
    pub fn ray_memberships(&self) -> Vec<Vec<usize>> {
        let mut memberships = vec![Vec::new(); self.rays.len()];
        for (c, ctx) in self.contexts.iter().enumerate() {
            for &r in ctx {
                memberships[r].push(c);
            }
        }
        memberships
    }

    /// Display labels for rays: "ij" (1-based) when a ray belongs to exactly
    /// the two contexts i < j, otherwise "r<index>".
    pub fn ray_labels(&self) -> Vec<String> {
        self.ray_memberships()
            .iter()
            .enumerate()
            .map(|(r, ms)| {
                if let [i, j] = ms[..] {
                    format!("{}{}", i + 1, j + 1)
                } else {
                    format!("r{r}")
                }
            })
            .collect()
    }

    /// Materializes the declared bases as ket lists.
    pub fn bases(&self) -> Vec<Vec<Ket>> {
        self.contexts
            .iter()
            .map(|ctx| ctx.iter().map(|&r| self.rays[r].clone()).collect())
            .collect()
    }

    /// The same set with one declared context removed. Rays appearing only
    /// in the removed context are dropped.
    pub fn without_context(&self, index: usize) -> Result<Self, ContextualityError> {
        let mut bases = self.bases();
        let mut names = self.context_names.clone();
        if index >= bases.len() {
            return Err(ContextualityError::BadParameter(format!(
                "context index {index} out of range"
            )));
        }
        bases.remove(index);
        names.remove(index);
        Self::from_bases(self.dimension, bases, Some(names))
    }
}

/// Structural statistics of a context set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub dimension: usize,
    pub ray_count: usize,
    pub context_count: usize,
    /// How many contexts contain each ray.
    pub per_ray_context_counts: Vec<usize>,
    /// True when every ray belongs to exactly two contexts and distinct rays
    /// belong to distinct context pairs (the shared-ray labeling is then a
    /// bijection onto context pairs).
    pub pairwise_shared: bool,
}

/// Re-checks every context and reports the sharing structure.
pub fn validate_context_set(cs: &ContextSet) -> Result<ValidationReport, ContextualityError> {
    cs.check_orthogonality()?;
    let memberships = cs.ray_memberships();
    let per_ray: Vec<usize> = memberships.iter().map(Vec::len).collect();
    let mut pairs: Vec<&[usize]> = memberships
        .iter()
        .filter(|m| m.len() == 2)
        .map(|m| m.as_slice())
        .collect();
    pairs.sort();
    pairs.dedup();
    let pairwise_shared = per_ray.iter().all(|&c| c == 2) && pairs.len() == cs.rays().len();
    Ok(ValidationReport {
        dimension: cs.dimension(),
        ray_count: cs.rays().len(),
        context_count: cs.contexts().len(),
        per_ray_context_counts: per_ray,
        pairwise_shared,
    })
}

/// Exact orthogonality graph: one vertex per ray, edges join rays with
/// vanishing inner product, whether or not they share a context. Returns the
/// graph and the ray labels in vertex order.
pub fn orthogonality_graph(cs: &ContextSet) -> Result<(Graph, Vec<String>), ContextualityError> {
    let rays = cs.rays();
    for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            if ray_equal(&rays[i], &rays[j])? {
                return Err(ContextualityError::DuplicateRays(i, j));
            }
        }
    }
    let mut g = Graph::empty(rays.len())?;
    for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            if inner_product(&rays[i], &rays[j])?.is_zero() {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok((g, cs.ray_labels()))
}

// ---------------------------------------------------------------------------
// KS colorability
// ---------------------------------------------------------------------------

/// A {0,1} valuation of the rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn ones(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| v.then_some(i))
            .collect()
    }

    /// Exactly one ray of every context maps to 1.
    pub fn satisfies(&self, cs: &ContextSet) -> bool {
        cs.contexts()
            .iter()
            .all(|ctx| ctx.iter().filter(|&&r| self.values[r]).count() == 1)
    }
}

/// Searches for a valuation mapping exactly one ray of every context to 1,
/// consistently across shared rays. Contexts are processed in declared
/// order and the distinguished ray is tried in ascending ray index, so the
/// returned assignment (when one exists) is deterministic.
pub fn ks_colorable(cs: &ContextSet) -> Option<Assignment> {
    let mut values: Vec<Option<bool>> = vec![None; cs.rays().len()];
    if solve_contexts(cs, 0, &mut values) {
        Some(Assignment {
            values: values.into_iter().map(|v| v.unwrap_or(false)).collect(),
        })
    } else {
        None
    }
}

fn solve_contexts(cs: &ContextSet, idx: usize, values: &mut Vec<Option<bool>>) -> bool {
    if idx == cs.contexts().len() {
        return true;
    }
    let ctx = &cs.contexts()[idx];
    let ones = ctx.iter().filter(|&&r| values[r] == Some(true)).count();
    if ones > 1 {
        return false;
    }
    if ones == 1 {
        // the distinguished ray is already forced; everything else goes to 0
        let mut trail = Vec::new();
        for &r in ctx {
            if values[r].is_none() {
                values[r] = Some(false);
                trail.push(r);
            }
        }
        if solve_contexts(cs, idx + 1, values) {
            return true;
        }
        for r in trail {
            values[r] = None;
        }
        return false;
    }
    // pick the distinguished ray in ascending ray index, skipping rays
    // already forced to 0
    let mut candidates: Vec<usize> = ctx.clone();
    candidates.sort_unstable();
    for r in candidates {
        if values[r] == Some(false) {
            continue;
        }
        let mut trail = Vec::new();
        values[r] = Some(true);
        trail.push(r);
        let mut consistent = true;
        for &other in ctx {
            if other == r {
                continue;
            }
            match values[other] {
                None => {
                    values[other] = Some(false);
                    trail.push(other);
                }
                Some(true) => consistent = false,
                Some(false) => {}
            }
        }
        if consistent && solve_contexts(cs, idx + 1, values) {
            return true;
        }
        for t in trail {
            values[t] = None;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Parity predicates
// ---------------------------------------------------------------------------

/// Witness data for the graph-level parity test over maximum cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityWitness {
    pub holds: bool,
    pub clique_size: usize,
    pub clique_count: usize,
    /// Maximum-clique incidence per vertex, in vertex order.
    pub per_vertex_counts: Vec<usize>,
}

/// Parity test on a graph: an odd number of maximum cliques with every
/// vertex lying in an even number of them makes a one-per-clique valuation
/// impossible.
pub fn is_parity_proof(g: &Graph) -> ParityWitness {
    let cliques = graph::maximum_cliques(g);
    let per_vertex = cliques.per_vertex_counts(g.n());
    let holds = cliques.cliques.len() % 2 == 1 && per_vertex.iter().all(|&c| c % 2 == 0);
    ParityWitness {
        holds,
        clique_size: cliques.size,
        clique_count: cliques.cliques.len(),
        per_vertex_counts: per_vertex,
    }
}

/// Witness data for the set-level parity test over declared contexts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextParityWitness {
    pub holds: bool,
    pub context_count: usize,
    pub per_ray_counts: Vec<usize>,
}

/// Parity test on the declared contexts of a set: with an odd number of
/// contexts and every ray in an even number of them, any valuation would
/// mark an odd count of context-ones with an even total — impossible.
pub fn context_parity_proof(cs: &ContextSet) -> ContextParityWitness {
    let per_ray: Vec<usize> = cs.ray_memberships().iter().map(Vec::len).collect();
    let holds = cs.contexts().len() % 2 == 1 && per_ray.iter().all(|&c| c % 2 == 0);
    ContextParityWitness {
        holds,
        context_count: cs.contexts().len(),
        per_ray_counts: per_ray,
    }
}

/// α < ϑ = α*, evaluated with the comparison slack. Requires a
/// vertex-transitive graph because α* comes from the n/ω shortcut.
pub fn is_fully_contextual(g: &Graph, tol: f64) -> Result<bool, ContextualityError> {
    if !graph::is_vertex_transitive(g) {
        return Err(ContextualityError::NotVertexTransitive);
    }
    let alpha = graph::independence_number(g) as f64;
    let omega = graph::clique_number(g);
    let alpha_star = g.n() as f64 / omega as f64;
    let theta = theta::lovasz_theta(g, tol)?;
    Ok(theta.value - alpha > COMPARISON_SLACK
        && (theta.value - alpha_star).abs() < COMPARISON_SLACK)
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

fn serialize_opt_rational<S: Serializer>(
    value: &Option<BigRational>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(r) => ser.serialize_some(&r.to_string()),
        None => ser.serialize_none(),
    }
}

fn serialize_sorted<S: Serializer>(values: &[usize], ser: S) -> Result<S::Ok, S::Error> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut seq = ser.serialize_seq(Some(sorted.len()))?;
    for v in sorted {
        seq.serialize_element(&v)?;
    }
    seq.end()
}

/// Every invariant and predicate for one graph — a census-row worth of data.
///
/// `per_vertex_clique_counts` is serialized sorted so that the JSON form
/// depends only on the isomorphism class of the graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub alpha: usize,
    pub omega: usize,
    pub chi: usize,
    pub theta: f64,
    pub theta_gap: f64,
    /// n/ω for vertex-transitive graphs; absent otherwise (the shortcut
    /// formula is only valid under transitivity).
    #[serde(serialize_with = "serialize_opt_rational")]
    pub alpha_star: Option<BigRational>,
    pub vertex_transitive: bool,
    pub fully_contextual: bool,
    pub max_clique_count: usize,
    #[serde(serialize_with = "serialize_sorted")]
    pub per_vertex_clique_counts: Vec<usize>,
    pub parity_proof: bool,
    pub symmetric_parity: bool,
}

/// Computes every report field for a connected graph on at most 64 vertices.
pub fn classify(g: &Graph, tol: f64) -> Result<ClassificationReport, ContextualityError> {
    if !g.is_connected() {
        return Err(ContextualityError::Disconnected);
    }
    let n = g.n();
    let alpha = graph::independence_number(g);
    let cliques = graph::maximum_cliques(g);
    let omega = cliques.size;
    let per_vertex = cliques.per_vertex_counts(n);
    let chi = graph::chromatic_number(g);
    let vertex_transitive = graph::is_vertex_transitive(g);
    let theta = theta::lovasz_theta(g, tol)?;
    // vertex-transitive shortcut; no general LP for α* is in scope
    let alpha_star =
        vertex_transitive.then(|| BigRational::new(BigInt::from(n), BigInt::from(omega)));
    let fully_contextual = match &alpha_star {
        Some(astar) => {
            let astar_f = crate::exact::rational_to_f64(astar);
            theta.value - alpha as f64 > COMPARISON_SLACK
                && (theta.value - astar_f).abs() < COMPARISON_SLACK
        }
        None => false,
    };
    let parity_proof = cliques.cliques.len() % 2 == 1 && per_vertex.iter().all(|&c| c % 2 == 0);
    let symmetric_parity = parity_proof && vertex_transitive;
    Ok(ClassificationReport {
        n,
        alpha,
        omega,
        chi,
        theta: theta.value,
        theta_gap: theta.duality_gap,
        alpha_star,
        vertex_transitive,
        fully_contextual,
        max_clique_count: cliques.cliques.len(),
        per_vertex_clique_counts: per_vertex,
        parity_proof,
        symmetric_parity,
    })
}

// ---------------------------------------------------------------------------
// Corpus scan
// ---------------------------------------------------------------------------

/// Census-style aggregation: how many fully contextual vertex-transitive
/// graphs appeared per vertex count, and how the parity subset splits by
/// maximum-clique count. Whether a parity graph is realizable as a KS set
/// (a vector representation in the clique-size dimension) is never decided
/// here, so that column is always null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub fcvt: usize,
    pub pfcvt: Vec<PfcvtEntry>,
    /// Representability as KS sets: not evaluated by this pipeline.
    pub ks_sets: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfcvtEntry {
    pub graphs: usize,
    pub max_cliques: usize,
}

#[derive(Debug)]
pub struct CorpusScanOutcome {
    /// One entry per input graph, in input order.
    pub records: Vec<Result<ClassificationReport, ContextualityError>>,
    pub census: Vec<CensusRow>,
}

/// Classifies a stream of graphs, recording per-graph failures without
/// stopping. With `workers > 1` the classification fans out to a local
/// thread pool; results are merged back in input order either way.
pub fn corpus_scan(graphs: Vec<Graph>, tol: f64, workers: usize) -> CorpusScanOutcome {
    let records: Vec<Result<ClassificationReport, ContextualityError>> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool construction");
        pool.install(|| graphs.par_iter().map(|g| classify(g, tol)).collect())
    } else {
        graphs.iter().map(|g| classify(g, tol)).collect()
    };
    let census = build_census(&records);
    CorpusScanOutcome { records, census }
}

fn build_census(records: &[Result<ClassificationReport, ContextualityError>]) -> Vec<CensusRow> {
    use std::collections::BTreeMap;
    let mut fcvt: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pfcvt: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for report in records.iter().flatten() {
        if report.fully_contextual && report.vertex_transitive {
            *fcvt.entry(report.n).or_default() += 1;
            if report.parity_proof {
                *pfcvt
                    .entry(report.n)
                    .or_default()
                    .entry(report.max_clique_count)
                    .or_default() += 1;
            }
        }
    }
    fcvt.into_iter()
        .map(|(n, count)| CensusRow {
            n,
            fcvt: count,
            pfcvt: pfcvt
                .remove(&n)
                .unwrap_or_default()
                .into_iter()
                .map(|(max_cliques, graphs)| PfcvtEntry {
                    graphs,
                    max_cliques,
                })
                .collect(),
            ks_sets: None,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Symbolic dimension bounds
// ---------------------------------------------------------------------------

/// Rank audit for the five-clique structure shaped like the triangular graph
/// J(5,2) with every vertex blown up into a clique of size k (cliques of
/// size 4k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionBound {
    pub k: usize,
    /// Independent columns forced across the shared blocks: 6k.
    pub independent_columns_required: usize,
    /// Row capacity of the base space of dimension 4k.
    pub base_capacity: usize,
    /// Extra rows p contribute twice per block column: capacity 4k + 2p.
    pub capacity_with_extra_rows: usize,
    /// Smallest p with 6k ≤ 4k + 2p.
    pub min_extra_rows: usize,
    /// 4k + p for the minimal p, i.e. 5k.
    pub min_total_dimension: usize,
}

/// Counting bound: five bases of size 4k arranged like J(5,2) force 6k
/// independent columns into blocks whose rank budget is 4k (+2 per extra
/// embedding row), so such a structure needs p ≥ k extra rows and total
/// dimension at least 5k.
pub fn johnson_dim_bound(k: usize) -> Result<DimensionBound, ContextualityError> {
    if k == 0 {
        return Err(ContextualityError::BadParameter(
            "k must be a positive integer".into(),
        ));
    }
    let required = 6 * k;
    let base = 4 * k;
    // smallest p with required ≤ base + 2p
    let min_extra_rows = (required - base).div_ceil(2);
    Ok(DimensionBound {
        k,
        independent_columns_required: required,
        base_capacity: base,
        capacity_with_extra_rows: base + 2 * min_extra_rows,
        min_extra_rows,
        min_total_dimension: base + min_extra_rows,
    })
}

/// Feasibility check for a symmetric parity structure with exactly three
/// maximum cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeCliqueCheck {
    pub n: usize,
    pub omega: usize,
    /// Incidences needed when every vertex lies in at least two cliques: 2n.
    pub required_incidences: usize,
    /// Incidences three cliques can provide: 3ω.
    pub available_incidences: usize,
    pub feasible: bool,
}

/// Three cliques covering every vertex at least twice would need 2n ≤ 3ω,
/// while a vertex-transitive non-complete KS graph has ω ≤ n/2, so
/// 2n ≤ 3n/2 — impossible for every admissible pair.
pub fn no_three_clique_symmetric_parity(
    n: usize,
    omega: usize,
) -> Result<ThreeCliqueCheck, ContextualityError> {
    if n < 2 {
        return Err(ContextualityError::BadParameter(format!(
            "need n >= 2, got {n}"
        )));
    }
    if omega < 2 || 2 * omega > n {
        return Err(ContextualityError::BadParameter(format!(
            "need 2 <= omega <= n/2, got omega={omega}, n={n}"
        )));
    }
    Ok(ThreeCliqueCheck {
        n,
        omega,
        required_incidences: 2 * n,
        available_incidences: 3 * omega,
        feasible: 2 * n <= 3 * omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Ket;
    use crate::theta::DEFAULT_TOL;

    fn coordinate_basis(d: usize) -> Vec<Ket> {
        (0..d)
            .map(|i| {
                let mut entries = vec![0i64; d];
                entries[i] = 1;
                Ket::from_integers(&entries).unwrap()
            })
            .collect()
    }

    /// Two bases in d = 6 with no shared rays.
    fn two_disjoint_bases() -> ContextSet {
        let paired = vec![
            Ket::from_integers(&[1, 1, 0, 0, 0, 0]).unwrap(),
            Ket::from_integers(&[1, -1, 0, 0, 0, 0]).unwrap(),
            Ket::from_integers(&[0, 0, 1, 1, 0, 0]).unwrap(),
            Ket::from_integers(&[0, 0, 1, -1, 0, 0]).unwrap(),
            Ket::from_integers(&[0, 0, 0, 0, 1, 1]).unwrap(),
            Ket::from_integers(&[0, 0, 0, 0, 1, -1]).unwrap(),
        ];
        ContextSet::from_bases(6, vec![coordinate_basis(6), paired], None).unwrap()
    }

    #[test]
    fn single_basis_set_is_valid() {
        let cs = ContextSet::from_bases(6, vec![coordinate_basis(6)], None).unwrap();
        let report = validate_context_set(&cs).unwrap();
        assert_eq!(report.ray_count, 6);
        assert_eq!(report.context_count, 1);
        assert!(report.per_ray_context_counts.iter().all(|&c| c == 1));
        assert!(!report.pairwise_shared);
    }

    #[test]
    fn non_orthogonal_basis_is_rejected() {
        let mut basis = coordinate_basis(6);
        basis[1] = Ket::from_integers(&[1, 1, 0, 0, 0, 0]).unwrap();
        let err = ContextSet::from_bases(6, vec![basis], None).unwrap_err();
        assert!(matches!(err, ContextualityError::NonOrthogonalPair { .. }));
    }

    #[test]
    fn wrong_context_size_is_rejected() {
        let short: Vec<Ket> = coordinate_basis(6).into_iter().take(5).collect();
        let err = ContextSet::from_bases(6, vec![short], None).unwrap_err();
        assert!(matches!(err, ContextualityError::WrongContextSize { .. }));
    }

    #[test]
    fn single_basis_k6_orthogonality_graph() {
        let cs = ContextSet::from_bases(6, vec![coordinate_basis(6)], None).unwrap();
        let (g, labels) = orthogonality_graph(&cs).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 15); // K6
        assert_eq!(labels.len(), 6);
    }

    #[test]
    fn single_basis_is_colorable_picking_first_ray() {
        let cs = ContextSet::from_bases(6, vec![coordinate_basis(6)], None).unwrap();
        let a = ks_colorable(&cs).expect("one basis is trivially colorable");
        assert_eq!(a.ones(), vec![0]);
        assert!(a.satisfies(&cs));
    }

    #[test]
    fn disjoint_bases_are_colorable() {
        let cs = two_disjoint_bases();
        assert_eq!(cs.rays().len(), 12);
        let a = ks_colorable(&cs).expect("independent choices per basis");
        assert!(a.satisfies(&cs));
    }

    #[test]
    fn k6_parity_fails_on_single_clique() {
        let g = crate::graph::complete_graph(6).unwrap();
        let w = is_parity_proof(&g);
        assert!(!w.holds);
        assert_eq!(w.clique_count, 1);
        assert!(w.per_vertex_counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn johnson_5_2_is_parity_proof() {
        let g = crate::graph::johnson_graph(5, 2).unwrap();
        let w = is_parity_proof(&g);
        assert!(w.holds);
        assert_eq!(w.clique_count, 5);
        assert_eq!(w.clique_size, 4);
        assert!(w.per_vertex_counts.iter().all(|&c| c == 2));
    }

    #[test]
    fn pentagon_parity_over_maximum_cliques_holds_but_not_fc() {
        // five edges (cliques of size 2), each vertex in two of them
        let g = crate::graph::cycle_graph(5).unwrap();
        let w = is_parity_proof(&g);
        assert!(w.holds);
        assert_eq!(w.clique_count, 5);
        // but ϑ = √5 ≠ 5/2 = α*, so the pentagon is not fully contextual
        assert!(!is_fully_contextual(&g, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn johnson_graphs_are_fully_contextual() {
        assert!(
            is_fully_contextual(&crate::graph::johnson_graph(5, 2).unwrap(), DEFAULT_TOL).unwrap()
        );
        assert!(
            is_fully_contextual(&crate::graph::johnson_graph(7, 2).unwrap(), DEFAULT_TOL).unwrap()
        );
    }

    #[test]
    fn complete_graph_is_not_fully_contextual() {
        assert!(
            !is_fully_contextual(&crate::graph::complete_graph(6).unwrap(), DEFAULT_TOL).unwrap()
        );
    }

    #[test]
    fn fully_contextual_requires_transitivity() {
        let path = crate::graph::path_graph(4).unwrap();
        assert!(matches!(
            is_fully_contextual(&path, DEFAULT_TOL),
            Err(ContextualityError::NotVertexTransitive)
        ));
    }

    #[test]
    fn classify_johnson_5_2_row() {
        let g = crate::graph::johnson_graph(5, 2).unwrap();
        let r = classify(&g, DEFAULT_TOL).unwrap();
        assert_eq!((r.n, r.alpha, r.omega, r.chi), (10, 2, 4, 5));
        assert!((r.theta - 2.5).abs() < COMPARISON_SLACK);
        assert_eq!(
            r.alpha_star,
            Some(BigRational::new(BigInt::from(10), BigInt::from(4)))
        );
        assert!(r.vertex_transitive && r.fully_contextual);
        assert_eq!(r.max_clique_count, 5);
        assert!(r.parity_proof && r.symmetric_parity);
    }

    #[test]
    fn classify_pentagon_row() {
        let g = crate::graph::cycle_graph(5).unwrap();
        let r = classify(&g, DEFAULT_TOL).unwrap();
        assert!(r.parity_proof, "5 maximum cliques, each vertex in 2");
        assert!(!r.fully_contextual, "ϑ=√5 differs from α*=5/2");
        assert!(r.symmetric_parity, "parity and transitive");
    }

    #[test]
    fn classify_rejects_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            classify(&g, DEFAULT_TOL),
            Err(ContextualityError::Disconnected)
        ));
    }

    #[test]
    fn classification_report_json_shape() {
        let g = crate::graph::johnson_graph(5, 2).unwrap();
        let r = classify(&g, DEFAULT_TOL).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["alpha_star"], serde_json::json!("5/2"));
        assert_eq!(json["n"], serde_json::json!(10));
        assert_eq!(
            json["per_vertex_clique_counts"],
            serde_json::json!([2, 2, 2, 2, 2, 2, 2, 2, 2, 2])
        );
    }

    #[test]
    fn corpus_scan_no_fcvt_among_connected_5_vertex_transitive_graphs() {
        // C5 and K5 are the connected vertex-transitive graphs on 5 vertices
        let graphs = vec![
            crate::graph::cycle_graph(5).unwrap(),
            crate::graph::complete_graph(5).unwrap(),
        ];
        let outcome = corpus_scan(graphs, DEFAULT_TOL, 1);
        assert!(outcome.records.iter().all(|r| r.is_ok()));
        assert!(outcome.census.is_empty(), "no FCVT rows expected at n=5");
    }

    #[test]
    fn corpus_scan_empty_stream() {
        let outcome = corpus_scan(Vec::new(), DEFAULT_TOL, 1);
        assert!(outcome.records.is_empty());
        assert!(outcome.census.is_empty());
    }

    #[test]
    fn corpus_scan_records_errors_and_continues() {
        let graphs = vec![
            Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), // disconnected
            crate::graph::johnson_graph(5, 2).unwrap(),
        ];
        let outcome = corpus_scan(graphs, DEFAULT_TOL, 1);
        assert!(outcome.records[0].is_err());
        assert!(outcome.records[1].is_ok());
        assert_eq!(outcome.census.len(), 1);
        assert_eq!(outcome.census[0].n, 10);
        assert_eq!(outcome.census[0].fcvt, 1);
        assert_eq!(
            outcome.census[0].pfcvt,
            vec![PfcvtEntry {
                graphs: 1,
                max_cliques: 5
            }]
        );
    }

    #[test]
    fn corpus_scan_parallel_matches_sequential() {
        let graphs = vec![
            crate::graph::cycle_graph(5).unwrap(),
            crate::graph::johnson_graph(5, 2).unwrap(),
            crate::graph::complete_graph(6).unwrap(),
        ];
        let seq = corpus_scan(graphs.clone(), DEFAULT_TOL, 1);
        let par = corpus_scan(graphs, DEFAULT_TOL, 4);
        let seq_ok: Vec<_> = seq
            .records
            .iter()
            .map(|r| r.as_ref().ok().cloned())
            .collect();
        let par_ok: Vec<_> = par
            .records
            .iter()
            .map(|r| r.as_ref().ok().cloned())
            .collect();
        assert_eq!(seq_ok, par_ok);
        assert_eq!(seq.census, par.census);
    }

    #[test]
    fn dim_bound_first_three_values() {
        for (k, p, total) in [(1, 1, 5), (2, 2, 10), (3, 3, 15)] {
            let b = johnson_dim_bound(k).unwrap();
            assert_eq!(b.min_extra_rows, p);
            assert_eq!(b.min_total_dimension, total);
            assert_eq!(b.independent_columns_required, 6 * k);
            assert_eq!(b.base_capacity, 4 * k);
            assert!(b.independent_columns_required <= b.capacity_with_extra_rows);
        }
        assert!(johnson_dim_bound(0).is_err());
    }

    #[test]
    fn dim_bound_is_five_k_up_to_100() {
        for k in 1..=100 {
            assert_eq!(johnson_dim_bound(k).unwrap().min_total_dimension, 5 * k);
        }
    }

    #[test]
    fn three_clique_structure_is_always_infeasible() {
        let a = no_three_clique_symmetric_parity(21, 6).unwrap();
        assert!(!a.feasible);
        assert_eq!((a.required_incidences, a.available_incidences), (42, 18));
        let b = no_three_clique_symmetric_parity(10, 4).unwrap();
        assert!(!b.feasible);
        assert_eq!((b.required_incidences, b.available_incidences), (20, 12));
        for n in 4..=64 {
            for omega in 2..=(n / 2) {
                assert!(
                    !no_three_clique_symmetric_parity(n, omega).unwrap().feasible,
                    "n={n} omega={omega}"
                );
            }
        }
        assert!(no_three_clique_symmetric_parity(1, 1).is_err());
        assert!(no_three_clique_symmetric_parity(10, 6).is_err());
    }

    #[test]
    fn without_context_drops_context() {
        let cs = two_disjoint_bases();
        let reduced = cs.without_context(0).unwrap();
        assert_eq!(reduced.contexts().len(), 1);
        assert_eq!(reduced.rays().len(), 6);
        assert!(cs.without_context(5).is_err());
    }
}
