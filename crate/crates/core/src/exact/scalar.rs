use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// An element a + bω of Q(ω), with ω = e^{2πi/3}.
///
/// The defining relation is ω² = −1 − ω; conjugation sends ω to ω², so
/// conj(a + bω) = (a − b) − bω. Both coefficients are kept as
/// arbitrary-precision rationals, which `BigRational` stores in lowest terms
/// with positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct EisensteinScalar {
    a: Rational,
    b: Rational,
}

impl EisensteinScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// ω itself.
    pub fn omega() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// ω² = −1 − ω.
    pub fn omega_squared() -> Self {
        Self::new(-Rational::one(), -Rational::one())
    }

    /// Rational part (coefficient of 1).
    pub fn re_coeff(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of ω.
    pub fn omega_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the value lies in Q, i.e. the ω coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as a rational, if it has no ω component.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Complex conjugate: conj(a + bω) = (a − b) − bω.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -self.b.clone())
    }

    /// Field norm N(a + bω) = (a + bω)·conj(a + bω) = a² − ab + b².
    ///
    /// Always a nonnegative rational, zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self::new(c.a / &n, c.b / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }

    /// Floating-point value as (re, im), using ω = −1/2 + i√3/2.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        (a - b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    // BigRational has no direct f64 conversion; fall back to a scaled
    // quotient only when the parts overflow i128.
    let numer = r.numer();
    let denom = r.denom();
    match (i128::try_from(numer), i128::try_from(denom)) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let scale = BigInt::from(1u64 << 53);
            let scaled = (numer * &scale) / denom;
            match i128::try_from(&scaled) {
                Ok(s) => s as f64 / (1u64 << 53) as f64,
                Err(_) => f64::INFINITY * if scaled.is_negative() { -1.0 } else { 1.0 },
            }
        }
    }
}

impl Add for &EisensteinScalar {
    type Output = EisensteinScalar;
    fn add(self, rhs: &EisensteinScalar) -> EisensteinScalar {
        EisensteinScalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &EisensteinScalar {
    type Output = EisensteinScalar;
    fn sub(self, rhs: &EisensteinScalar) -> EisensteinScalar {
        EisensteinScalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &EisensteinScalar {
    type Output = EisensteinScalar;
    fn mul(self, rhs: &EisensteinScalar) -> EisensteinScalar {
        // (a1 + b1ω)(a2 + b2ω) with ω² = −1 − ω.
        let aa = &self.a * &rhs.a;
        let bb = &self.b * &rhs.b;
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        EisensteinScalar::new(aa - &bb, cross - bb)
    }
}

impl Neg for &EisensteinScalar {
    type Output = EisensteinScalar;
    fn neg(self) -> EisensteinScalar {
        EisensteinScalar::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for EisensteinScalar {
            type Output = EisensteinScalar;
            fn $method(self, rhs: EisensteinScalar) -> EisensteinScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for EisensteinScalar {
    type Output = EisensteinScalar;
    fn neg(self) -> EisensteinScalar {
        -&self
    }
}

impl fmt::Display for EisensteinScalar {
    /// Canonical text form: "a", "w", "-w", "b*w", or "a+b*w" / "a-b*w".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let omega_part = |f: &mut fmt::Formatter<'_>, b: &Rational, leading: bool| {
            let mag = b.abs();
            let sign = if b.is_negative() {
                "-"
            } else if leading {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}w")
            } else {
                write!(f, "{sign}{mag}*w")
            }
        };
        if self.a.is_zero() {
            omega_part(f, &self.b, true)
        } else {
            write!(f, "{}", self.a)?;
            omega_part(f, &self.b, false)
        }
    }
}

impl fmt::Debug for EisensteinScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
