//! The coefficient field every structure in this crate is generic over.
//!
//! All of the algebra (polynomials, jets, operators, symbols, linear
//! condition systems) only needs field operations, a sign, and a way to
//! build small integers and fractions. Exactness is a property of the
//! chosen scalar: [`BigRational`] gives zero-residual identities, while
//! `f64`/`f32` are accepted for quick numerical experiments where exact
//! equality is not expected to survive cancellation.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Signed;

/// A field of coefficients.
pub trait Scalar: Clone + PartialEq + Debug + Display + Signed + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Whether equality of computed values is trustworthy (no rounding).
    fn is_exact() -> bool;

    /// `n!` as a scalar.
    fn factorial(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, k| acc * Self::from_i64(k as i64))
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn is_exact() -> bool {
        true
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn is_exact() -> bool {
                false
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Row `n` of Pascal's triangle: `C(n, 0), ..., C(n, n)`.
pub fn binomial_row<S: Scalar>(n: usize) -> Vec<S> {
    let mut row = vec![S::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(S::one());
        for w in row.windows(2) {
            next.push(w[0].clone() + w[1].clone());
        }
        next.push(S::one());
        row = next;
    }
    row
}

pub fn binomial<S: Scalar>(n: usize, r: usize) -> S {
    if r > n {
        return S::zero();
    }
    binomial_row::<S>(n)[r].clone()
}
