use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeffring::Jet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default bound on polynomial degrees accepted by capped operations.
pub const DEFAULT_DEGREE_CAP: usize = 32;

/// Dense univariate polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// The representation is always trimmed: the last stored coefficient is
/// nonzero, and the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: S, n: usize) -> Self {
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    /// The coordinate function `x`.
    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    /// `x^n`.
    pub fn x_pow(n: usize) -> Self {
        Self::monomial(S::one(), n)
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Order of vanishing at 0: index of the lowest nonzero coefficient.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `x^r`.
    pub fn shift_up(&self, r: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); r];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Formal derivative.
    pub fn derive(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn derive_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derive())
    }

    /// `p^(r)(0) = r! * [x^r] p`.
    pub fn derivative_at_zero(&self, r: usize) -> S {
        self.coeff(r) * S::factorial(r)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// Substitution `p(q(x))`.
    pub fn substitute(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    /// Taylor coefficients `c_0..c_m` at 0.
    pub fn jet(&self, m: usize) -> Jet<S> {
        Jet::from_values((0..=m).map(|n| self.coeff(n)).collect())
    }

    /// Splits `p = head + x^r * tail` with `deg head < r`.
    pub fn hadamard_split(&self, r: usize) -> (Self, Self) {
        let cut = r.min(self.coeffs.len());
        let head = Self::from_coeffs(self.coeffs[..cut].to_vec());
        let tail = Self::from_coeffs(self.coeffs[cut..].to_vec());
        (head, tail)
    }

    /// Euclidean division; `q` must be nonzero.
    pub fn div_rem(&self, q: &Self) -> Result<(Self, Self)> {
        let qd = q.degree().ok_or(Error::DivisionByZero)?;
        let lead = q.coeffs[qd].clone();
        let mut rem = self.coeffs.clone();
        let Some(pd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if pd < qd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); pd - qd + 1];
        for i in (0..=pd - qd).rev() {
            let c = rem[i + qd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * qc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(qd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient `p / q`, failing with the remainder when `q` does not
    /// divide `p`.
    pub fn divide_exact(&self, q: &Self) -> Result<Self> {
        let (quot, rem) = self.div_rem(q)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InexactDivision {
                remainder: rem.to_string(),
            })
        }
    }

    pub fn check_degree_cap(&self, cap: usize) -> Result<()> {
        match self.degree() {
            Some(d) if d > cap => Err(Error::DegreeCap { degree: d, cap }),
            _ => Ok(()),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Display using `var` as the variable name.
    pub fn display_in(&self, var: char) -> PolyDisplay<'_, S> {
        PolyDisplay { poly: self, var }
    }
}

impl<S: Scalar> Default for Polynomial<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> From<S> for Polynomial<S> {
    fn from(c: S) -> Self {
        Self::constant(c)
    }
}

impl<'a, S: Scalar> Add<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Sub<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Mul<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr for Polynomial<S> {
            type Output = Polynomial<S>;

            fn $method(self, rhs: Polynomial<S>) -> Polynomial<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        -&self
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a Polynomial<S>,
    var: char,
}

/// Writes `coeff` times the monomial `var^exp` (`exp == 0` for constants) in
/// the text syntax `3/2*x^2`, assuming `coeff` is positive.
pub(crate) fn write_term<S: Scalar>(
    f: &mut fmt::Formatter<'_>,
    coeff: &S,
    monomial: &str,
) -> fmt::Result {
    if monomial.is_empty() {
        write!(f, "{coeff}")
    } else if coeff.is_one() {
        f.write_str(monomial)
    } else {
        write!(f, "{coeff}*{monomial}")
    }
}

pub(crate) fn monomial_text(var: char, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        n => format!("{var}^{n}"),
    }
}

impl<S: Scalar> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            write_term(f, &c.abs(), &monomial_text(self.var, i))?;
            first = false;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in('x').fmt(f)
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn arithmetic_examples() {
        let x = P::x();
        assert!((&x * &P::zero()).is_zero());
        let lhs = &P::from_ints(&[1, 1]) * &P::from_ints(&[1, -1]);
        assert_eq!(lhs, P::from_ints(&[1, 0, -1]));
        let diff = &P::monomial(q(3, 2), 2) - &P::monomial(q(1, 2), 2);
        assert_eq!(diff, P::x_pow(2));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(P::x_pow(3).derive(), P::monomial(q(3, 1), 2));
        assert!(P::from_ints(&[7]).derive().is_zero());
        let p = P::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 2)]);
        assert_eq!(p.derive(), P::from_ints(&[1, 1]));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(P::from_ints(&[-1, 0, 1]).eval(&q(2, 1)), q(3, 1));
        let p = P::from_ints(&[5, 3, 9]);
        assert_eq!(p.eval(&q(0, 1)), q(5, 1));
        assert_eq!(P::monomial(q(1, 3), 1).eval(&q(3, 1)), q(1, 1));
    }

    #[test]
    fn jet_examples() {
        let p = P::from_ints(&[2, 3, 0, 0, 0, 1]);
        assert_eq!(p.jet(2).values(), &[q(2, 1), q(3, 1), q(0, 1)]);
        assert_eq!(P::zero().jet(1).values(), &[q(0, 1), q(0, 1)]);
        assert!(P::x_pow(3).jet(2).values().iter().all(|c| c == &q(0, 1)));
    }

    #[test]
    fn hadamard_examples() {
        let p = P::from_ints(&[1, 1, 0, 2]);
        let (h, t) = p.hadamard_split(1);
        assert_eq!(h, P::one());
        assert_eq!(t, P::from_ints(&[1, 0, 2]));
        let (h, t) = P::x_pow(2).hadamard_split(2);
        assert!(h.is_zero());
        assert_eq!(t, P::one());
        let (h, t) = P::from_ints(&[5]).hadamard_split(3);
        assert_eq!(h, P::from_ints(&[5]));
        assert!(t.is_zero());
    }

    #[test]
    fn exact_division_examples() {
        let p = P::from_ints(&[0, 0, 1, 1]);
        assert_eq!(p.divide_exact(&P::x_pow(2)).unwrap(), P::from_ints(&[1, 1]));
        assert!(P::zero().divide_exact(&P::x()).unwrap().is_zero());
        let err = P::from_ints(&[1, 0, 1]).divide_exact(&P::x()).unwrap_err();
        assert_eq!(
            err,
            Error::InexactDivision {
                remainder: "1".into()
            }
        );
        assert_eq!(P::x().divide_exact(&P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn degree_sentinel_and_cap() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(P::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(P::x_pow(40).check_degree_cap(DEFAULT_DEGREE_CAP), Err(Error::DegreeCap { degree: 40, cap: 32 }));
        assert!(P::x_pow(32).check_degree_cap(DEFAULT_DEGREE_CAP).is_ok());
    }

    #[test]
    fn display_syntax() {
        let p = P::from_coeffs(vec![q(1, 1), q(-1, 1), q(3, 2)]);
        assert_eq!(p.to_string(), "3/2*x^2 - x + 1");
        assert_eq!(P::from_ints(&[0, -2]).display_in('y').to_string(), "-2*y");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        // (1 + y)(y = x^2) = 1 + x^2
        let p = P::from_ints(&[1, 1]);
        assert_eq!(p.substitute(&P::x_pow(2)), P::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn works_over_floats() {
        let p = Polynomial::<f64>::from_ints(&[1, 2, 3]);
        assert_eq!(p.eval(&2.0), 17.0);
        assert_eq!(p.derive(), Polynomial::<f64>::from_ints(&[2, 6]));
    }
}
