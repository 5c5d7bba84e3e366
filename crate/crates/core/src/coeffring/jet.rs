use std::fmt;

use crate::coeffring::Polynomial;
use crate::scalar::Scalar;

/// Element of the truncated ring `R[e]/(e^{m+1})`: Taylor coefficients
/// `c_n = f^(n)(0)/n!` for `n = 0..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet<S> {
    values: Vec<S>,
}

impl<S: Scalar> Jet<S> {
    /// `values` must be nonempty; its length fixes the order.
    pub fn from_values(values: Vec<S>) -> Self {
        assert!(!values.is_empty(), "a jet has at least the order-0 term");
        Self { values }
    }

    /// The basis element `e^n` of the truncated ring of order `m`.
    pub fn basis(m: usize, n: usize) -> Self {
        let mut values = vec![S::zero(); m + 1];
        values[n] = S::one();
        Self { values }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// Index of the first coefficient where the two jets differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.values.len().max(other.values.len());
        (0..n).find(|&i| self.get(i) != other.get(i))
    }

    fn get(&self, i: usize) -> S {
        self.values.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Product in the truncated ring, keeping the order of `self`.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let m = self.order();
        let values = (0..=m)
            .map(|n| {
                (0..=n).fold(S::zero(), |acc, i| acc + self.get(i) * other.get(n - i))
            })
            .collect();
        Self { values }
    }

    pub fn to_polynomial(&self) -> Polynomial<S> {
        Polynomial::from_coeffs(self.values.clone())
    }
}

impl<S: Scalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Jet(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn truncated_product() {
        // (1 + e)(1 - e) = 1 in R[e]/(e^2)
        let a = Jet::from_values(vec![Rational::from_i64(1), Rational::from_i64(1)]);
        let b = Jet::from_values(vec![Rational::from_i64(1), Rational::from_i64(-1)]);
        assert_eq!(a.mul_truncated(&b), Jet::basis(1, 0));
    }

    #[test]
    fn first_difference() {
        let a = Polynomial::<Rational>::from_ints(&[1, 2, 3]).jet(2);
        let b = Polynomial::<Rational>::from_ints(&[1, 2, 4]).jet(2);
        assert_eq!(a.first_difference(&b), Some(2));
        assert_eq!(a.first_difference(&a), None);
    }
}
