//! The algebra of functions on two branches glued with contact of order `m`.
//!
//! An element is a pair `(f, g)` of branch functions whose `m`-jets at the
//! origin agree. This is the fiber product of the two branch algebras over
//! the truncated ring `R[e]/(e^{m+1})`, with the jet projections as the
//! structure maps. Pairs with `g - f` divisible by a profile `h` of exact
//! order `m + 1` are also exactly the restrictions of plane polynomials to
//! the curve `y (y - h(x)) = 0`.

use std::fmt;

use crate::coeffring::{Jet, PlanePolynomial, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The glued space `K_m`; `m = 0` is the coordinate cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    contact_order: usize,
}

impl SpaceSpec {
    pub const fn new(contact_order: usize) -> Self {
        Self { contact_order }
    }

    pub const fn cross() -> Self {
        Self::new(0)
    }

    pub const fn contact_order(self) -> usize {
        self.contact_order
    }

    pub fn ensure_same(self, other: SpaceSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.contact_order,
                right: other.contact_order,
            })
        }
    }

    /// The default embedding profile `h(x) = x^{m+1}`.
    pub fn default_profile<S: Scalar>(self) -> Polynomial<S> {
        Polynomial::x_pow(self.contact_order + 1)
    }

    /// Checks that `h` vanishes to order exactly `m + 1` at 0.
    pub fn check_profile<S: Scalar>(self, h: &Polynomial<S>) -> Result<()> {
        let expected = self.contact_order + 1;
        match h.order_at_zero() {
            Some(n) if n == expected => Ok(()),
            found => Err(Error::ProfileOrder { expected, found }),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.contact_order)
    }
}

/// A function on `K_m`: branch values `f(x)` and `g(y)` with equal `m`-jets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GluedPair<S> {
    f: Polynomial<S>,
    g: Polynomial<S>,
    space: SpaceSpec,
}

impl<S: Scalar> GluedPair<S> {
    /// Builds the pair, rejecting it when the `m`-jets differ.
    pub fn new(f: Polynomial<S>, g: Polynomial<S>, space: SpaceSpec) -> Result<Self> {
        let m = space.contact_order();
        let (jf, jg) = (f.jet(m), g.jet(m));
        if let Some(index) = jf.first_difference(&jg) {
            return Err(Error::JetMismatch {
                index,
                left: f.coeff(index).to_string(),
                right: g.coeff(index).to_string(),
            });
        }
        Ok(Self { f, g, space })
    }

    /// The same function on both branches.
    pub fn diagonal(p: Polynomial<S>, space: SpaceSpec) -> Self {
        Self {
            f: p.clone(),
            g: p,
            space,
        }
    }

    pub fn constant(c: S, space: SpaceSpec) -> Self {
        Self::diagonal(Polynomial::constant(c), space)
    }

    pub fn zero(space: SpaceSpec) -> Self {
        Self::diagonal(Polynomial::zero(), space)
    }

    pub fn one(space: SpaceSpec) -> Self {
        Self::diagonal(Polynomial::one(), space)
    }

    /// Projection onto the first branch.
    pub fn f(&self) -> &Polynomial<S> {
        &self.f
    }

    /// Projection onto the second branch.
    pub fn g(&self) -> &Polynomial<S> {
        &self.g
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    /// The common image in the truncated ring.
    pub fn jet(&self) -> Jet<S> {
        self.f.jet(self.space.contact_order())
    }

    pub fn into_parts(self) -> (Polynomial<S>, Polynomial<S>) {
        (self.f, self.g)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        Ok(Self {
            f: &self.f + &other.f,
            g: &self.g + &other.g,
            space: self.space,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        Ok(Self {
            f: &self.f - &other.f,
            g: &self.g - &other.g,
            space: self.space,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        Ok(Self {
            f: &self.f * &other.f,
            g: &self.g * &other.g,
            space: self.space,
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            f: self.f.scale(c),
            g: self.g.scale(c),
            space: self.space,
        }
    }

    /// The plane polynomial `F(x, y) = f(x) + y (g(x) - f(x)) / h(x)`.
    ///
    /// `F(x, 0) = f` and `F(x, h(x)) = g`. Fails when `h` does not vanish to
    /// order exactly `m + 1`, or when `h` does not divide `g - f`.
    pub fn extend_to_plane(&self, h: &Polynomial<S>) -> Result<PlanePolynomial<S>> {
        self.space.check_profile(h)?;
        let quotient = (&self.g - &self.f).divide_exact(h)?;
        Ok(PlanePolynomial::from_y_coefficients(&[self.f.clone(), quotient]))
    }

    /// Restriction of a plane polynomial to the two branches `y = 0` and
    /// `y = h(x)`, read back as functions of the branch parameter.
    pub fn restrict(big_f: &PlanePolynomial<S>, h: &Polynomial<S>, space: SpaceSpec) -> Result<Self> {
        space.check_profile(h)?;
        Self::new(
            big_f.substitute_y(&Polynomial::zero()),
            big_f.substitute_y(h),
            space,
        )
    }

    /// Text form `pair m=<m>: <f> | <g>`.
    pub fn to_dsl(&self) -> String {
        format!(
            "pair m={}: {} | {}",
            self.space.contact_order(),
            self.f.display_in('x'),
            self.g.display_in('y')
        )
    }
}

impl<S: Scalar> fmt::Display for GluedPair<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

impl<S: Scalar> fmt::Debug for GluedPair<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GluedPair({})", self.to_dsl())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;
    type G = GluedPair<Rational>;

    fn k(m: usize) -> SpaceSpec {
        SpaceSpec::new(m)
    }

    #[test]
    fn membership_examples() {
        let err = G::new(P::x(), P::monomial(Rational::from_i64(2), 1), k(1)).unwrap_err();
        assert!(matches!(err, Error::JetMismatch { index: 1, .. }));
        assert!(G::new(P::from_ints(&[0, 1, 1]), P::x(), k(1)).is_ok());
        assert!(G::new(P::x(), P::zero(), k(0)).is_ok());
        assert!(matches!(
            G::new(P::x(), P::zero(), k(1)),
            Err(Error::JetMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let x = G::diagonal(P::x(), k(1));
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq, G::diagonal(P::x_pow(2), k(1)));

        let left = G::new(P::x(), P::zero(), k(0)).unwrap();
        let right = G::new(P::zero(), P::x(), k(0)).unwrap();
        assert_eq!(left.mul(&right).unwrap(), G::zero(k(0)));

        let s = G::one(k(2)).add(&G::diagonal(P::x(), k(2))).unwrap();
        assert_eq!(s, G::diagonal(P::from_ints(&[1, 1]), k(2)));

        assert!(matches!(
            G::one(k(0)).add(&G::one(k(1))),
            Err(Error::SpaceMismatch { left: 0, right: 1 })
        ));
    }

    #[test]
    fn extension_examples() {
        let h = P::x_pow(2);
        // f = x, g = x + x^2 -> F = x + y
        let u = G::new(P::x(), P::from_ints(&[0, 1, 1]), k(1)).unwrap();
        let big_f = u.extend_to_plane(&h).unwrap();
        assert_eq!(big_f, PlanePolynomial::from_y_coefficients(&[P::x(), P::one()]));
        assert_eq!(big_f.substitute_y(&P::zero()), P::x());
        assert_eq!(big_f.substitute_y(&h), P::from_ints(&[0, 1, 1]));

        let diag = G::diagonal(P::from_ints(&[3, 1, 4]), k(1));
        assert_eq!(diag.extend_to_plane(&h).unwrap(), PlanePolynomial::from_x(diag.f()));

        let u = G::new(P::zero(), P::x_pow(2), k(1)).unwrap();
        assert_eq!(
            u.extend_to_plane(&h).unwrap(),
            PlanePolynomial::from_y_coefficients(&[P::zero(), P::one()])
        );
    }

    #[test]
    fn extension_errors() {
        let u = G::new(P::zero(), P::x_pow(2), k(1)).unwrap();
        assert_eq!(
            u.extend_to_plane(&P::x_pow(3)),
            Err(Error::ProfileOrder { expected: 2, found: Some(3) })
        );
        assert!(matches!(u.extend_to_plane(&P::zero()), Err(Error::ProfileOrder { found: None, .. })));
        // h = x^2 + x^3 does not divide x^2 exactly
        assert!(matches!(
            u.extend_to_plane(&P::from_ints(&[0, 0, 1, 1])),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn restriction_examples() {
        let h = P::x_pow(2);
        let big_f = PlanePolynomial::from_y_coefficients(&[P::x(), P::one()]);
        let u = G::restrict(&big_f, &h, k(1)).unwrap();
        assert_eq!(u.f(), &P::x());
        assert_eq!(u.g(), &P::from_ints(&[0, 1, 1]));

        // F = x y
        let big_f = PlanePolynomial::from_y_coefficients(&[P::zero(), P::x()]);
        let u = G::restrict(&big_f, &h, k(1)).unwrap();
        assert!(u.f().is_zero());
        assert_eq!(u.g(), &P::x_pow(3));

        let c = PlanePolynomial::from_x(&P::from_ints(&[7]));
        let u = G::restrict(&c, &P::x_pow(4), k(3)).unwrap();
        assert_eq!(u, G::constant(Rational::from_i64(7), k(3)));
    }

    #[test]
    fn dsl_text() {
        let u = G::new(P::x(), P::from_ints(&[0, 1, 1]), k(1)).unwrap();
        assert_eq!(u.to_dsl(), "pair m=1: x | y^2 + y");
    }
}
