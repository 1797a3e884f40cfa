use std::fmt;

use num_traits::Zero;

use super::scalar::{EisensteinScalar, Rational};
use super::ExactError;

/// An unnormalized vector with entries in Q(ω).
///
/// Kets are stored exactly as written, never normalized; scaling by the
/// rational ⟨v,v⟩ happens symbolically where a unit vector is needed. The
/// zero vector is rejected at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Ket {
    entries: Vec<EisensteinScalar>,
}

impl Ket {
    pub fn new(entries: Vec<EisensteinScalar>) -> Result<Self, ExactError> {
        if entries.is_empty() || entries.iter().all(EisensteinScalar::is_zero) {
            return Err(ExactError::ZeroVector);
        }
        Ok(Self { entries })
    }

    /// Convenience constructor from integer entries.
    pub fn from_integers(entries: &[i64]) -> Result<Self, ExactError> {
        Self::new(
            entries
                .iter()
                .map(|&n| EisensteinScalar::from_integer(n))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[EisensteinScalar] {
        &self.entries
    }

    /// ⟨v,v⟩ as an exact rational; positive for every valid ket.
    pub fn norm_sq(&self) -> Rational {
        self.entries.iter().map(EisensteinScalar::norm).sum()
    }
}

impl fmt::Debug for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Exact Hermitian inner product Σ conj(u_i)·v_i.
pub fn inner_product(u: &Ket, v: &Ket) -> Result<EisensteinScalar, ExactError> {
    if u.dim() != v.dim() {
        return Err(ExactError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let mut acc = EisensteinScalar::zero();
    for (x, y) in u.entries.iter().zip(&v.entries) {
        acc = &acc + &(&x.conj() * y);
    }
    Ok(acc)
}

/// Whether u and v span the same ray, i.e. u = c·v for some nonzero c in Q(ω).
///
/// Decided by cross-multiplication against the first nonzero entry of u, so
/// no division (and no normalization) is involved.
pub fn ray_equal(u: &Ket, v: &Ket) -> Result<bool, ExactError> {
    if u.dim() != v.dim() {
        return Err(ExactError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let pivot = u
        .entries
        .iter()
        .position(|e| !e.is_zero())
        .ok_or(ExactError::ZeroVector)?;
    if v.entries[pivot].is_zero() {
        return Ok(false);
    }
    // u = c·v forces u_i·v_pivot = u_pivot·v_i for every i.
    let up = &u.entries[pivot];
    let vp = &v.entries[pivot];
    Ok(u.entries
        .iter()
        .zip(&v.entries)
        .all(|(ui, vi)| ui * vp == up * vi))
}

/// A square matrix with entries in Q(ω), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<EisensteinScalar>,
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![EisensteinScalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            *m.at_mut(i, i) = EisensteinScalar::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &EisensteinScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut EisensteinScalar {
        &mut self.entries[i * self.dim + j]
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.at(i, j) == &self.at(j, i).conj()))
    }

    pub fn trace(&self) -> EisensteinScalar {
        let mut acc = EisensteinScalar::zero();
        for i in 0..self.dim {
            acc = &acc + self.at(i, i);
        }
        acc
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.dim != rhs.dim {
            return Err(ExactError::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let term = lik * rhs.at(k, j);
                    let cell = &mut out.entries[i * d + j];
                    *cell = &*cell + &term;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        if self.dim != rhs.dim {
            return Err(ExactError::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.dim)
    }

    pub fn is_minus_identity(&self) -> bool {
        self.as_scalar_multiple_of_identity()
            .is_some_and(|c| c == -EisensteinScalar::one())
    }

    /// `Some(c)` when the matrix equals c·I exactly.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<EisensteinScalar> {
        let c = self.at(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expect = if i == j {
                    &c
                } else {
                    &EisensteinScalar::zero()
                };
                if self.at(i, j) != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Entrywise floating-point image as (re, im) pairs, row-major.
    pub fn to_complex_f64(&self) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .map(EisensteinScalar::to_complex_f64)
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{}{}", if j > 0 { ", " } else { "" }, self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The dichotomic observable 2·|v⟩⟨v|/⟨v,v⟩ − I attached to a ray.
///
/// Normalization is symbolic: the rank-one projector is divided by the exact
/// rational ⟨v,v⟩, so the result is Hermitian and squares to the identity
/// with no radicals anywhere.
pub fn observable_from_ray(v: &Ket) -> ExactMatrix {
    let d = v.dim();
    let norm = v.norm_sq();
    debug_assert!(!norm.is_zero());
    let two_over_norm = Rational::from_integer(2.into()) / norm;
    let mut m = ExactMatrix::zero(d);
    for i in 0..d {
        for j in 0..d {
            // 2·v_i·conj(v_j)/⟨v,v⟩ − δ_ij
            let mut e = (&v.entries()[i] * &v.entries()[j].conj()).scale(&two_over_norm);
            if i == j {
                e = &e - &EisensteinScalar::one();
            }
            *m.at_mut(i, j) = e;
        }
    }
    m
}

/// Exact left-to-right product of a nonempty list of square matrices.
pub fn matrix_product(ms: &[ExactMatrix]) -> Result<ExactMatrix, ExactError> {
    let first = ms.first().ok_or(ExactError::EmptyProduct)?;
    let mut acc = first.clone();
    for m in &ms[1..] {
        acc = acc.mul(m)?;
    }
    Ok(acc)
}
