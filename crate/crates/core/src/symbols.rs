//! The graded symbol algebra and its Poisson bracket.
//!
//! A degree-`k` symbol is the top coefficient pair `(a_k, b_k)` of an
//! admissible order-`k` pair. Products come from composition (leading
//! coefficients multiply) and the bracket from the commutator:
//!
//! ```text
//! {(a, b)_l, (c, e)_n} = (l a c' - n c a', l b e' - n e b')_{l + n - 1}
//! ```

use std::fmt;

use crate::coeffring::Polynomial;
use crate::diffop::{symbol_conditions, Branch, BranchOperator, PairedOperator, Unknown, Violation};
use crate::error::{Error, Result};
use crate::glued::SpaceSpec;
use crate::scalar::Scalar;

/// An element of the degree-`k` component of the symbol algebra.
///
/// The degree is stored, not inferred: the same pair can be a valid symbol
/// at one degree and not at another. The zero pair is valid at every degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedSymbol<S> {
    degree: usize,
    a: Polynomial<S>,
    b: Polynomial<S>,
    space: SpaceSpec,
}

/// Violated symbol conditions for `(degree, a, b)` on `space`.
pub fn check_symbol_conditions<S: Scalar>(
    degree: usize,
    a: &Polynomial<S>,
    b: &Polynomial<S>,
    space: SpaceSpec,
) -> Vec<Violation<S>> {
    let conditions = symbol_conditions::<S>(space, degree);
    let lookup = |u: Unknown| match u.branch {
        Branch::First => a.derivative_at_zero(u.derivative),
        Branch::Second => b.derivative_at_zero(u.derivative),
    };
    conditions.evaluate(&lookup)
}

/// Coefficient `a_k` of an operator of order at most `k`.
pub fn take_symbol<S: Scalar>(op: &BranchOperator<S>, k: usize) -> Result<Polynomial<S>> {
    match op.order() {
        Some(found) if found > k => Err(Error::OrderExceeded { found, declared: k }),
        _ => Ok(op.coeff(k)),
    }
}

impl<S: Scalar> GradedSymbol<S> {
    /// Validates the degree-`degree` conditions.
    pub fn new(degree: usize, a: Polynomial<S>, b: Polynomial<S>, space: SpaceSpec) -> Result<Self> {
        let violations = check_symbol_conditions(degree, &a, &b, space);
        if !violations.is_empty() {
            return Err(Error::InvalidSymbol {
                degree,
                contact: space.contact_order(),
                violated: violations.len(),
            });
        }
        Ok(Self { degree, a, b, space })
    }

    /// Skips validation; used where validity is a theorem and is re-checked by tests.
    pub(crate) fn new_unchecked(degree: usize, a: Polynomial<S>, b: Polynomial<S>, space: SpaceSpec) -> Self {
        Self { degree, a, b, space }
    }

    pub fn zero(degree: usize, space: SpaceSpec) -> Self {
        Self::new_unchecked(degree, Polynomial::zero(), Polynomial::zero(), space)
    }

    /// `(1, 1)` in degree 0.
    pub fn unit(space: SpaceSpec) -> Self {
        Self::new_unchecked(0, Polynomial::one(), Polynomial::one(), space)
    }

    /// The degree-`k` symbol of an admissible pair of order `k`.
    pub fn of_pair(op: &PairedOperator<S>) -> Self {
        let k = op.order();
        Self::new_unchecked(k, op.d1().coeff(k), op.d2().coeff(k), op.space())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn a(&self) -> &Polynomial<S> {
        &self.a
    }

    pub fn b(&self) -> &Polynomial<S> {
        &self.b
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn violations(&self) -> Vec<Violation<S>> {
        check_symbol_conditions(self.degree, &self.a, &self.b, self.space)
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Graded product: degrees add, coefficients multiply branchwise.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        Ok(Self::new_unchecked(
            self.degree + other.degree,
            &self.a * &other.a,
            &self.b * &other.b,
            self.space,
        ))
    }

    /// Sum of two symbols of the same degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        if self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "cannot add symbols of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(Self::new_unchecked(self.degree, &self.a + &other.a, &self.b + &other.b, self.space))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new_unchecked(self.degree, self.a.scale(c), self.b.scale(c), self.space)
    }

    /// The Poisson bracket. Two degree-0 symbols bracket to the zero symbol of
    /// degree 0.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        let (l, n) = (self.degree, other.degree);
        if l + n == 0 {
            return Ok(Self::zero(0, self.space));
        }
        let branch = |p: &Polynomial<S>, q: &Polynomial<S>| {
            let lhs = (p * &q.derive()).scale(&S::from_i64(l as i64));
            let rhs = (q * &p.derive()).scale(&S::from_i64(n as i64));
            &lhs - &rhs
        };
        Ok(Self::new_unchecked(
            l + n - 1,
            branch(&self.a, &other.a),
            branch(&self.b, &other.b),
            self.space,
        ))
    }

    /// Text form `symbol deg=<k> m=<m>: <a> | <b>`.
    pub fn to_dsl(&self) -> String {
        format!(
            "symbol deg={} m={}: {} | {}",
            self.degree,
            self.space.contact_order(),
            self.a.display_in('x'),
            self.b.display_in('y')
        )
    }
}

/// The bracket computed from the definition: symbol of the componentwise
/// commutator at degree `l + n - 1`.
pub fn bracket_via_commutator<S: Scalar>(op_a: &PairedOperator<S>, op_b: &PairedOperator<S>) -> Result<GradedSymbol<S>> {
    op_a.space().ensure_same(op_b.space())?;
    let (l, n) = (op_a.order(), op_b.order());
    if l + n == 0 {
        return Ok(GradedSymbol::zero(0, op_a.space()));
    }
    let top = l + n - 1;
    let c1 = op_a.d1().commutator(op_b.d1());
    let c2 = op_a.d2().commutator(op_b.d2());
    Ok(GradedSymbol::new_unchecked(
        top,
        take_symbol(&c1, top)?,
        take_symbol(&c2, top)?,
        op_a.space(),
    ))
}

impl<S: Scalar> fmt::Display for GradedSymbol<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

impl<S: Scalar> fmt::Debug for GradedSymbol<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.to_dsl())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;
    type Op = BranchOperator<Rational>;
    type Sym = GradedSymbol<Rational>;

    fn k(m: usize) -> SpaceSpec {
        SpaceSpec::new(m)
    }

    fn sym(deg: usize, a: P, b: P, m: usize) -> Sym {
        Sym::new(deg, a, b, k(m)).unwrap()
    }

    #[test]
    fn take_symbol_examples() {
        let op = Op::from_coeffs(vec![P::one(), P::from_ints(&[3]), P::x_pow(2)]);
        assert_eq!(take_symbol(&op, 2).unwrap(), P::x_pow(2));
        assert!(take_symbol(&Op::derivative(1), 2).unwrap().is_zero());
        let op = Op::term(P::x(), 2).sub(&Op::derivative(1));
        assert_eq!(take_symbol(&op, 2).unwrap(), P::x());
        assert_eq!(take_symbol(&op, 1), Err(Error::OrderExceeded { found: 2, declared: 1 }));
    }

    #[test]
    fn pair_symbol_examples() {
        let xd = Op::term(P::x(), 1);
        let op = PairedOperator::new(xd.clone(), xd, k(1), 1).unwrap();
        let s = Sym::of_pair(&op);
        assert_eq!((s.degree(), s.a(), s.b()), (1, &P::x(), &P::x()));
        assert!(s.is_valid());

        let second = Op::term(P::x(), 2).sub(&Op::derivative(1));
        let op = PairedOperator::new(second.clone(), second, k(1), 2).unwrap();
        let s = Sym::of_pair(&op);
        assert_eq!(s.degree(), 2);
        assert!(s.is_valid());

        let q = crate::GluedPair::diagonal(P::from_ints(&[2, 1]), k(1));
        let s = Sym::of_pair(&PairedOperator::multiplication(&q));
        assert_eq!((s.degree(), s.a()), (0, &P::from_ints(&[2, 1])));
    }

    #[test]
    fn condition_examples() {
        assert!(Sym::new(1, P::x_pow(2), P::x_pow(2), k(0)).is_ok());
        // degree 3 on K1 needs a'(0) = 0
        let s3 = Sym::new_unchecked(3, P::x(), P::x(), k(1));
        let v = s3.violations();
        assert!(v.iter().any(|v| v.constraint == "a3'(0) = 0" && v.lhs == Rational::from_i64(1)));
        assert!(Sym::new(3, P::x(), P::x(), k(1)).is_err());
        // (x, y) is a function on K1, hence a valid degree-0 symbol
        assert!(Sym::new(0, P::x(), P::x(), k(1)).is_ok());
        assert!(Sym::new(0, P::x(), P::zero(), k(1)).is_err());
    }

    #[test]
    fn product_examples() {
        let s = sym(1, P::x(), P::x(), 0);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq, sym(2, P::x_pow(2), P::x_pow(2), 0));
        assert_eq!(s.mul(&Sym::unit(k(0))).unwrap(), s);

        let t = sym(1, P::x(), P::x(), 1);
        let cube = t.mul(&t).unwrap().mul(&t).unwrap();
        assert_eq!(cube, sym(3, P::x_pow(3), P::x_pow(3), 1));
        assert!(cube.is_valid());
    }

    #[test]
    fn bracket_examples() {
        let s = sym(1, P::x_pow(2), P::x_pow(2), 1);
        let t = sym(1, P::x(), P::x(), 1);
        let minus_x2 = P::monomial(Rational::from_i64(-1), 2);
        let b = s.bracket(&t).unwrap();
        assert_eq!(b, sym(1, minus_x2.clone(), minus_x2, 1));
        assert!(s.bracket(&s).unwrap().is_zero());
        let u = Sym::unit(k(1));
        let c = sym(0, P::from_ints(&[3, 1]), P::from_ints(&[3, 1]), 1);
        let z = u.bracket(&c).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn bracket_via_commutator_examples() {
        let x2d = Op::term(P::x_pow(2), 1);
        let xd = Op::term(P::x(), 1);
        let a = PairedOperator::new(x2d.clone(), x2d, k(1), 1).unwrap();
        let b = PairedOperator::new(xd.clone(), xd, k(1), 1).unwrap();
        let via = bracket_via_commutator(&a, &b).unwrap();
        let direct = Sym::of_pair(&a).bracket(&Sym::of_pair(&b)).unwrap();
        assert_eq!(via, direct);
        assert_eq!(via.a(), &P::monomial(Rational::from_i64(-1), 2));
        assert!(bracket_via_commutator(&a, &a).unwrap().is_zero());

        let x2d2 = Op::term(P::x_pow(2), 2);
        let c = PairedOperator::new(x2d2.clone(), x2d2, k(1), 2).unwrap();
        let via = bracket_via_commutator(&b, &c).unwrap();
        assert_eq!(via.degree(), 2);
        assert_eq!(via, Sym::of_pair(&b).bracket(&Sym::of_pair(&c)).unwrap());
    }

    #[test]
    fn space_mismatch() {
        let s = Sym::unit(k(0));
        assert!(matches!(s.mul(&Sym::unit(k(1))), Err(Error::SpaceMismatch { .. })));
        assert!(matches!(s.bracket(&Sym::unit(k(1))), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn dsl_text() {
        assert_eq!(sym(1, P::x(), P::x(), 1).to_dsl(), "symbol deg=1 m=1: x | y");
    }
}
