//! The noncontextuality inequality engine.
//!
//! From a context set it builds one exact dichotomic observable per ray
//! (2·|v⟩⟨v|/⟨v,v⟩ − I), multiplies each context's observables exactly, and
//! evaluates both sides of the inequality: the noncontextual bound by
//! exhausting every ±1 assignment of the rays, and the quantum value, which
//! is state independent exactly when every context product is a scalar
//! multiple of the identity. A seeded floating-point path mirrors an
//! experiment on random pure states.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::contextuality::ContextSet;
use crate::exact::{matrix_product, observable_from_ray, ExactError, ExactMatrix};

/// Hard cap on the exhaustive search: 2^24 assignments.
pub const MAX_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InequalityError {
    #[error("{rays} rays need 2^{rays} assignments, over the budget of {budget}")]
    BudgetExceeded { rays: usize, budget: u64 },
    #[error("budget {0} exceeds the hard cap of {MAX_BUDGET} assignments")]
    BudgetOverCap(u64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// One exact observable per ray, indexed like the context set's rays.
pub fn build_observables(cs: &ContextSet) -> Vec<ExactMatrix> {
    cs.rays().iter().map(observable_from_ray).collect()
}

/// The exact product of each context's observables, in declared order.
pub fn context_products(cs: &ContextSet) -> Result<Vec<ExactMatrix>, InequalityError> {
    let observables = build_observables(cs);
    cs.contexts()
        .iter()
        .map(|ctx| {
            let ms: Vec<ExactMatrix> = ctx.iter().map(|&r| observables[r].clone()).collect();
            Ok(matrix_product(&ms)?)
        })
        .collect()
}

/// The state-independent quantum value, when it exists: with every context
/// product equal to c_j·I, the expectation sum is −Σ c_j for any state.
/// Returns `None` when some product is not a scalar multiple of the
/// identity (the value would then depend on the state).
pub fn quantum_value_exact(products: &[ExactMatrix]) -> Option<BigRational> {
    let mut total = BigRational::zero();
    for p in products {
        let c = p.as_scalar_multiple_of_identity()?;
        let c = c.as_rational()?.clone();
        total -= c;
    }
    Some(total)
}

/// The exact value on the maximally mixed state: −Σ tr(P_j)/d. Coincides
/// with the state-independent value whenever the latter exists.
pub fn quantum_value_mixed(products: &[ExactMatrix], dimension: usize) -> Option<BigRational> {
    let d = BigRational::from_integer(BigInt::from(dimension));
    let mut total = BigRational::zero();
    for p in products {
        let tr = p.trace();
        total -= tr.as_rational()? / &d;
    }
    Some(total)
}

/// Outcome of the exhaustive noncontextual search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMax {
    pub max: i64,
    /// ±1 per ray; the first maximizer in the ray-indexed counter order.
    pub maximizer: Vec<i8>,
    /// How many of the 2^rays assignments attain the maximum.
    pub attaining_count: u64,
}

/// Exhausts every ±1 assignment of the rays. Each context contributes
/// minus the product of its ray signs; the iteration order is a plain
/// binary counter over ray indices, so the reported maximizer is
/// deterministic.
pub fn classical_max(cs: &ContextSet, budget: u64) -> Result<ClassicalMax, InequalityError> {
    if budget > MAX_BUDGET {
        return Err(InequalityError::BudgetOverCap(budget));
    }
    let rays = cs.rays().len();
    if rays >= 64 || (1u64 << rays) > budget {
        return Err(InequalityError::BudgetExceeded { rays, budget });
    }
    let masks: Vec<u64> = cs
        .contexts()
        .iter()
        .map(|ctx| ctx.iter().fold(0u64, |acc, &r| acc | (1 << r)))
        .collect();
    let contexts = masks.len() as i64;
    let mut best = i64::MIN;
    let mut best_mask = 0u64;
    let mut attaining = 0u64;
    for assignment in 0u64..(1 << rays) {
        // bit set = ray assigned −1; a context term is +1 iff the overlap
        // has odd popcount
        let odd: i64 = masks
            .iter()
            .map(|&m| ((assignment & m).count_ones() & 1) as i64)
            .sum();
        let s = 2 * odd - contexts;
        if s > best {
            best = s;
            best_mask = assignment;
            attaining = 1;
        } else if s == best {
            attaining += 1;
        }
    }
    let maximizer = (0..rays)
        .map(|r| if (best_mask >> r) & 1 == 1 { -1 } else { 1 })
        .collect();
    Ok(ClassicalMax {
        max: best,
        maximizer,
        attaining_count: attaining,
    })
}

/// Evaluates the inequality on a seeded random pure state in floating
/// point: S = Σ_j −⟨ψ|P_j|ψ⟩ with ψ uniform on the unit sphere.
pub fn quantum_value_numeric(cs: &ContextSet, seed: u64) -> Result<f64, InequalityError> {
    let products = context_products(cs)?;
    let d = cs.dimension();
    let psi = random_state(d, seed);
    let mut total = 0.0;
    for p in &products {
        total -= expectation(p, &psi);
    }
    Ok(total)
}

fn random_state(d: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi: Vec<Complex64> = (0..d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut psi {
        *z /= norm;
    }
    psi
}

/// Re⟨ψ|M|ψ⟩ for an exact matrix image. Context products are Hermitian
/// (their factors commute), so the imaginary part is numerical noise.
fn expectation(m: &ExactMatrix, psi: &[Complex64]) -> f64 {
    let d = m.dim();
    let entries = m.to_complex_f64();
    let mut acc = Complex64::ZERO;
    for i in 0..d {
        for j in 0..d {
            let (re, im) = entries[i * d + j];
            acc += psi[i].conj() * Complex64::new(re, im) * psi[j];
        }
    }
    acc.re
}

fn serialize_opt_rational<S: Serializer>(
    value: &Option<BigRational>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(r) => ser.serialize_some(&r.to_string()),
        None => ser.serialize_none(),
    }
}

/// Both sides of the inequality plus the per-context operator checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub classical_max: i64,
    pub classical_maximizer: Vec<i8>,
    pub classical_max_attained_by: u64,
    /// State-independent quantum value as an exact rational, or null when
    /// the context products fail to be scalar multiples of the identity.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub quantum_value: Option<BigRational>,
    pub per_context_product_is_minus_identity: Vec<bool>,
    pub state_samples: Vec<StateSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateSample {
    pub seed: u64,
    pub value: f64,
}

/// Runs the whole pipeline: exhaustive classical bound, exact quantum value
/// and numeric samples for the given seeds.
pub fn inequality_report(
    cs: &ContextSet,
    seeds: &[u64],
    budget: u64,
) -> Result<InequalityReport, InequalityError> {
    let products = context_products(cs)?;
    let classical = classical_max(cs, budget)?;
    let quantum_value = quantum_value_exact(&products);
    let flags = products
        .iter()
        .map(ExactMatrix::is_minus_identity)
        .collect();
    let state_samples = seeds
        .iter()
        .map(|&seed| quantum_value_numeric(cs, seed).map(|value| StateSample { seed, value }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InequalityReport {
        classical_max: classical.max,
        classical_maximizer: classical.maximizer,
        classical_max_attained_by: classical.attaining_count,
        quantum_value,
        per_context_product_is_minus_identity: flags,
        state_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_seven_context;
    use crate::exact::Ket;

    fn single_basis_d6() -> ContextSet {
        let basis = (0..6)
            .map(|i| {
                let mut entries = vec![0i64; 6];
                entries[i] = 1;
                Ket::from_integers(&entries).unwrap()
            })
            .collect();
        ContextSet::from_bases(6, vec![basis], None).unwrap()
    }

    fn two_ray_d2() -> ContextSet {
        let basis = vec![
            Ket::from_integers(&[1, 0]).unwrap(),
            Ket::from_integers(&[0, 1]).unwrap(),
        ];
        ContextSet::from_bases(2, vec![basis], None).unwrap()
    }

    #[test]
    fn coordinate_ray_observable_is_reflection() {
        let cs = single_basis_d6();
        let obs = build_observables(&cs);
        let a = &obs[0];
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i != j {
                    0
                } else if i == 0 {
                    1
                } else {
                    -1
                };
                assert_eq!(
                    a.at(i, j),
                    &crate::exact::EisensteinScalar::from_integer(expect)
                );
            }
        }
    }

    #[test]
    fn builtin_observables_are_hermitian_involutions() {
        let cs = builtin_seven_context();
        for a in build_observables(&cs) {
            assert!(a.is_hermitian());
            assert!(a.mul(&a).unwrap().is_identity());
        }
    }

    #[test]
    fn same_context_observables_commute() {
        let cs = builtin_seven_context();
        let obs = build_observables(&cs);
        for ctx in cs.contexts() {
            for (i, &a) in ctx.iter().enumerate() {
                for &b in &ctx[i + 1..] {
                    let ab = obs[a].mul(&obs[b]).unwrap();
                    let ba = obs[b].mul(&obs[a]).unwrap();
                    assert_eq!(ab, ba, "rays {a},{b} share a context");
                }
            }
        }
    }

    #[test]
    fn d2_toy_context_product_is_minus_identity() {
        let cs = two_ray_d2();
        let products = context_products(&cs).unwrap();
        assert_eq!(products.len(), 1);
        assert!(products[0].is_minus_identity());
    }

    #[test]
    fn builtin_all_seven_products_are_minus_identity() {
        let cs = builtin_seven_context();
        let products = context_products(&cs).unwrap();
        assert_eq!(products.len(), 7);
        for (i, p) in products.iter().enumerate() {
            assert!(p.is_minus_identity(), "context {i} product differs");
        }
    }

    #[test]
    fn builtin_quantum_value_is_exactly_seven() {
        let cs = builtin_seven_context();
        let products = context_products(&cs).unwrap();
        let q = quantum_value_exact(&products).unwrap();
        assert_eq!(q, BigRational::from_integer(7.into()));
        assert_eq!(quantum_value_mixed(&products, 6).unwrap(), q);
    }

    #[test]
    fn single_basis_classical_max_is_one() {
        let cs = single_basis_d6();
        let r = classical_max(&cs, MAX_BUDGET).unwrap();
        assert_eq!(r.max, 1);
    }

    #[test]
    fn uniform_plus_assignment_scores_minus_contexts() {
        // all rays +1 makes every product +1, every term −1
        let cs = builtin_seven_context();
        let masks: Vec<u64> = cs
            .contexts()
            .iter()
            .map(|ctx| ctx.iter().fold(0u64, |acc, &r| acc | (1 << r)))
            .collect();
        let uniform_plus = 0u64;
        let s: i64 = masks
            .iter()
            .map(|&m| 2 * (((uniform_plus & m).count_ones() & 1) as i64) - 1)
            .sum();
        assert_eq!(s, -7);
        // so the maximum reported must beat the uniform assignment
        let r = classical_max(&cs, MAX_BUDGET).unwrap();
        assert!(r.max > s);
    }

    #[test]
    fn builtin_classical_max_is_five() {
        let cs = builtin_seven_context();
        let r = classical_max(&cs, MAX_BUDGET).unwrap();
        assert_eq!(r.max, 5);
        // maximizers come in global-flip pairs (every term has even degree)
        assert_eq!(r.attaining_count % 2, 0);
        assert!(r.attaining_count > 0);
        // verify the returned maximizer attains the reported value
        let masks: Vec<u64> = cs
            .contexts()
            .iter()
            .map(|ctx| ctx.iter().fold(0u64, |acc, &r| acc | (1 << r)))
            .collect();
        let mask = r
            .maximizer
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &s)| acc | (u64::from(s == -1) << i));
        let s: i64 = masks
            .iter()
            .map(|&m| 2 * (((mask & m).count_ones() & 1) as i64) - 1)
            .sum();
        assert_eq!(s, 5);
    }

    #[test]
    fn global_sign_flip_leaves_s_invariant() {
        let cs = builtin_seven_context();
        let masks: Vec<u64> = cs
            .contexts()
            .iter()
            .map(|ctx| ctx.iter().fold(0u64, |acc, &r| acc | (1 << r)))
            .collect();
        let full = (1u64 << 21) - 1;
        let score = |mask: u64| -> i64 {
            masks
                .iter()
                .map(|&m| 2 * (((mask & m).count_ones() & 1) as i64) - 1)
                .sum()
        };
        let mut state = 0xA5A5A5A5DEADBEEFu64;
        for _ in 0..10_000 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let mask = state & full;
            assert_eq!(score(mask), score(!mask & full));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cs = builtin_seven_context();
        assert!(matches!(
            classical_max(&cs, 1 << 20),
            Err(InequalityError::BudgetExceeded { rays: 21, .. })
        ));
        assert!(matches!(
            classical_max(&cs, MAX_BUDGET + 1),
            Err(InequalityError::BudgetOverCap(_))
        ));
    }

    #[test]
    fn numeric_samples_hit_seven_for_any_state() {
        let cs = builtin_seven_context();
        for seed in [0u64, 1, 42, 31337] {
            let v = quantum_value_numeric(&cs, seed).unwrap();
            assert!((v - 7.0).abs() < 1e-9, "seed {seed}: {v}");
        }
    }

    #[test]
    fn numeric_sampling_is_seed_deterministic() {
        let cs = two_ray_d2();
        let a = quantum_value_numeric(&cs, 7).unwrap();
        let b = quantum_value_numeric(&cs, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn report_assembles_and_serializes() {
        let cs = builtin_seven_context();
        let report = inequality_report(&cs, &[0, 1, 2], MAX_BUDGET).unwrap();
        assert_eq!(report.classical_max, 5);
        assert_eq!(
            report.quantum_value,
            Some(BigRational::from_integer(7.into()))
        );
        assert!(report
            .per_context_product_is_minus_identity
            .iter()
            .all(|&b| b));
        assert_eq!(report.state_samples.len(), 3);
        assert!(report.classical_max < 7);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["quantum_value"], serde_json::json!("7"));
        assert_eq!(json["classical_max"], serde_json::json!(5));
    }
}
