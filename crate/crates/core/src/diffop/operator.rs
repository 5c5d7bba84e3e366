use std::fmt;

use crate::coeffring::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{binomial_row, Scalar};

/// A differential operator `sum_i a_i(x) d^i` on one branch.
///
/// `coeffs[i]` is `a_i`. The list is trimmed so the top coefficient is
/// nonzero; the zero operator has no coefficients and order `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BranchOperator<S> {
    coeffs: Vec<Polynomial<S>>,
}

impl<S: Scalar> BranchOperator<S> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Polynomial<S>>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Multiplication by `q`.
    pub fn multiplication(q: Polynomial<S>) -> Self {
        Self::from_coeffs(vec![q])
    }

    pub fn identity() -> Self {
        Self::multiplication(Polynomial::one())
    }

    /// `q * d^i`.
    pub fn term(q: Polynomial<S>, i: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(); i];
        coeffs.push(q);
        Self::from_coeffs(coeffs)
    }

    /// `d^i`.
    pub fn derivative(i: usize) -> Self {
        Self::term(Polynomial::one(), i)
    }

    pub fn coeffs(&self) -> &[Polynomial<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Polynomial<S> {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Highest index with a nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply(&self, p: &Polynomial<S>) -> Polynomial<S> {
        let mut out = Polynomial::zero();
        let mut dp = p.clone();
        for a in &self.coeffs {
            if dp.is_zero() {
                break;
            }
            if !a.is_zero() {
                out = &out + &(a * &dp);
            }
            dp = dp.derive();
        }
        out
    }

    /// `self o other`, using `d^i (b q) = sum_r C(i, r) b^(r) d^(i - r) q`.
    pub fn compose(&self, other: &Self) -> Self {
        let (Some(na), Some(nb)) = (self.order(), other.order()) else {
            return Self::zero();
        };
        let mut out = vec![Polynomial::zero(); na + nb + 1];
        // derivatives of each coefficient of `other`, computed lazily up to order `na`
        let derived: Vec<Vec<Polynomial<S>>> = other
            .coeffs
            .iter()
            .map(|b| {
                let mut ds = Vec::with_capacity(na + 1);
                let mut cur = b.clone();
                for _ in 0..=na {
                    ds.push(cur.clone());
                    cur = cur.derive();
                }
                ds
            })
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = binomial_row::<S>(i);
            for (j, ds) in derived.iter().enumerate() {
                for (r, c) in row.iter().enumerate() {
                    let br = &ds[r];
                    if br.is_zero() {
                        continue;
                    }
                    let t = i - r + j;
                    out[t] = &out[t] + &(a * &br.scale(c));
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Composition refusing coefficients beyond the degree cap.
    pub fn compose_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        let out = self.compose(other);
        out.check_degree_cap(cap)?;
        Ok(out)
    }

    pub fn check_degree_cap(&self, cap: usize) -> Result<()> {
        for c in &self.coeffs {
            c.check_degree_cap(cap)?;
        }
        if let Some(k) = self.order() {
            if k > cap {
                return Err(Error::DegreeCap { degree: k, cap });
            }
        }
        Ok(())
    }

    /// `[self, other] = self o other - other o self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    /// `delta_a(self) = [self, a]` with `a` acting by multiplication.
    pub fn delta(&self, a: &Polynomial<S>) -> Self {
        self.commutator(&Self::multiplication(a.clone()))
    }

    /// Whether every chain `delta_{x^{n_0}} o ... o delta_{x^{n_k}}` with
    /// exponents in `0..=probe_degree` annihilates the operator.
    ///
    /// The `delta` maps commute, so only multisets of exponents are visited.
    pub fn verify_order(&self, k: usize, probe_degree: usize) -> bool {
        let gens: Vec<Polynomial<S>> = (1..=probe_degree).map(Polynomial::x_pow).collect();
        fn walk<S: Scalar>(op: &BranchOperator<S>, remaining: usize, start: usize, gens: &[Polynomial<S>]) -> bool {
            if op.is_zero() {
                return true;
            }
            if remaining == 0 {
                return false;
            }
            (start..gens.len()).all(|i| walk(&op.delta(&gens[i]), remaining - 1, i, gens))
        }
        // x^0 = 1 commutes with everything, so chains through it vanish.
        walk(self, k + 1, 0, &gens)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    /// Block text form, declared at `order` (at least the operator's order).
    pub fn to_dsl(&self, order: usize, var: char) -> String {
        let mut s = format!("op order={order}\n");
        for i in (0..=order).rev() {
            s.push_str(&format!("coeff {i}: {}\n", self.coeff(i).display_in(var)));
        }
        s
    }

    /// Inline form such as `x*d^2 - d`, in variable `var`.
    pub fn display_in(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let d = match i {
                0 => String::new(),
                1 => "d".to_string(),
                n => format!("d^{n}"),
            };
            let c = a.display_in(var).to_string();
            let term = if d.is_empty() {
                c
            } else if a.is_one() {
                d
            } else if a.is_constant() && (-a.coeff(0)).is_one() {
                format!("-{d}")
            } else if a.coeffs().len() == 1 || a.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                format!("{c}*{d}")
            } else {
                format!("({c})*{d}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<S: Scalar> Polynomial<S> {
    fn is_one(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

impl<'a, S: Scalar> std::ops::Sub<&'a BranchOperator<S>> for &'a BranchOperator<S> {
    type Output = BranchOperator<S>;

    fn sub(self, rhs: &BranchOperator<S>) -> BranchOperator<S> {
        BranchOperator::sub(self, rhs)
    }
}

impl<'a, S: Scalar> std::ops::Add<&'a BranchOperator<S>> for &'a BranchOperator<S> {
    type Output = BranchOperator<S>;

    fn add(self, rhs: &BranchOperator<S>) -> BranchOperator<S> {
        BranchOperator::add(self, rhs)
    }
}

impl<S: Scalar> Default for BranchOperator<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> fmt::Display for BranchOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in('x'))
    }
}

impl<S: Scalar> fmt::Debug for BranchOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BranchOp({})", self.display_in('x'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;
    type Op = BranchOperator<Rational>;

    fn xd() -> Op {
        Op::term(P::x(), 1)
    }

    fn d(i: usize) -> Op {
        Op::derivative(i)
    }

    fn mono(n: usize) -> P {
        P::x_pow(n)
    }

    /// Oracle: two operators agree iff they agree on `x^n` for `n` past both orders.
    fn agree_on_monomials(a: &Op, b: &Op, up_to: usize) -> bool {
        (0..=up_to).all(|n| a.apply(&mono(n)) == b.apply(&mono(n)))
    }

    #[test]
    fn apply_examples() {
        assert_eq!(xd().apply(&mono(3)), P::monomial(Rational::from_i64(3), 3));
        let op = d(2).add(&Op::identity());
        assert_eq!(op.apply(&mono(2)), P::from_ints(&[2, 0, 1]));
        assert!(Op::zero().apply(&mono(5)).is_zero());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(xd().compose(&d(1)), Op::term(P::x(), 2));
        // d o (x d) = x d^2 + d, checked against the monomial oracle
        let lhs = d(1).compose(&xd());
        let expected = Op::term(P::x(), 2).add(&d(1));
        assert!(agree_on_monomials(&lhs, &expected, 4));
        assert_eq!(lhs, expected);
        let op = Op::from_coeffs(vec![P::from_ints(&[1, 2]), P::x_pow(3), P::one()]);
        assert_eq!(op.compose(&Op::identity()), op);
        assert_eq!(Op::identity().compose(&op), op);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = Op::from_coeffs(vec![P::from_ints(&[0, 1]), P::from_ints(&[2, 0, 1]), P::from_ints(&[0, 0, 3])]);
        let b = Op::from_coeffs(vec![P::from_ints(&[1]), P::from_ints(&[0, -1, 0, 1])]);
        let ab = a.compose(&b);
        for n in 0..8 {
            assert_eq!(ab.apply(&mono(n)), a.apply(&b.apply(&mono(n))));
        }
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(xd().commutator(&d(1)), d(1).scale(&Rational::from_i64(-1)));
        assert!(d(1).commutator(&d(2)).is_zero());
        let x2d = Op::term(P::x_pow(2), 1);
        assert_eq!(x2d.commutator(&xd()), Op::term(P::monomial(Rational::from_i64(-1), 2), 1));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(d(1).delta(&P::x()), Op::identity());
        assert!(Op::multiplication(P::from_ints(&[1, 2, 3])).delta(&P::x()).is_zero());
        assert_eq!(d(2).delta(&P::x()), d(1).scale(&Rational::from_i64(2)));
    }

    #[test]
    fn verify_order_examples() {
        let op = Op::term(P::x(), 2).add(&d(1));
        assert!(op.verify_order(2, 6));
        assert!(!op.verify_order(1, 6));
        assert!(Op::multiplication(P::from_ints(&[4, 0, 1])).verify_order(0, 4));
        assert!(Op::zero().verify_order(0, 4));
    }

    #[test]
    fn degree_cap_on_composition() {
        let a = Op::multiplication(P::x_pow(20));
        assert!(matches!(a.compose_capped(&a, 32), Err(Error::DegreeCap { degree: 40, cap: 32 })));
        assert!(a.compose_capped(&a, 40).is_ok());
    }

    #[test]
    fn dsl_block() {
        let op = Op::term(P::x(), 2).sub(&d(1));
        assert_eq!(op.to_dsl(2, 'x'), "op order=2\ncoeff 2: x\ncoeff 1: -1\ncoeff 0: 0\n");
        assert_eq!(op.display_in('y'), "y*d^2 - d");
    }
}
