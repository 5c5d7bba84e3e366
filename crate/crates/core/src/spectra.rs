//! Points of the glued space as evaluation characters, separation of points,
//! and the factorization identities that force every character of the symbol
//! algebra over the singular point to vanish in positive degrees.

use std::fmt;

use rand::Rng;

use crate::coeffring::Polynomial;
use crate::error::{Error, Result};
use crate::glued::{GluedPair, SpaceSpec};
use crate::sample;
use crate::scalar::Scalar;
use crate::symbols::GradedSymbol;

/// Where a character evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharacterSite {
    First,
    Second,
    Singular,
}

/// An evaluation character `u -> u(point)` of the glued algebra.
///
/// Canonical: evaluation at parameter 0 on either branch is the singular point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character<S> {
    site: CharacterSite,
    base_point: S,
}

impl<S: Scalar> Character<S> {
    pub fn new(site: CharacterSite, base_point: S) -> Self {
        if site == CharacterSite::Singular || base_point.is_zero() {
            Self::singular()
        } else {
            Self { site, base_point }
        }
    }

    pub fn singular() -> Self {
        Self {
            site: CharacterSite::Singular,
            base_point: S::zero(),
        }
    }

    pub fn on_first(t: S) -> Self {
        Self::new(CharacterSite::First, t)
    }

    pub fn on_second(t: S) -> Self {
        Self::new(CharacterSite::Second, t)
    }

    pub fn site(&self) -> CharacterSite {
        self.site
    }

    pub fn base_point(&self) -> &S {
        &self.base_point
    }

    pub fn eval(&self, u: &GluedPair<S>) -> S {
        match self.site {
            CharacterSite::First => u.f().eval(&self.base_point),
            CharacterSite::Second => u.g().eval(&self.base_point),
            CharacterSite::Singular => u.f().coeff(0),
        }
    }

    /// Text form `char branch=<1|2|sing> at=<t>`.
    pub fn to_dsl(&self) -> String {
        let branch = match self.site {
            CharacterSite::First => "1",
            CharacterSite::Second => "2",
            CharacterSite::Singular => "sing",
        };
        format!("char branch={branch} at={}", self.base_point)
    }
}

impl<S: Scalar> fmt::Display for Character<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

impl<S: Scalar> fmt::Debug for Character<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

/// Probes whether `functional` is a unital ring homomorphism on random glued
/// functions over `K_0`, `K_1` and `K_2`.
pub fn is_homomorphism<S, F, R>(functional: F, samples: usize, rng: &mut R) -> bool
where
    S: Scalar,
    F: Fn(&GluedPair<S>) -> S,
    R: Rng + ?Sized,
{
    (0..samples).all(|_| {
        let space = SpaceSpec::new(rng.gen_range(0..=2));
        let u: GluedPair<S> = sample::glued(rng, space, 5);
        let v: GluedPair<S> = sample::glued(rng, space, 5);
        let (fu, fv) = (functional(&u), functional(&v));
        functional(&GluedPair::one(space)) == S::one()
            && functional(&u.add(&v).expect("same space")) == fu.clone() + fv.clone()
            && functional(&u.mul(&v).expect("same space")) == fu * fv
    })
}

/// [`is_homomorphism`] for an evaluation character with a fixed seed.
pub fn char_is_homomorphism<S: Scalar>(c: &Character<S>, samples: usize) -> bool {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    is_homomorphism(|u| c.eval(u), samples, &mut rng)
}

/// Spanning family of the glued algebra by degree: `(x^d, y^d)` and, past the
/// contact order, the one-sided `(x^d, 0)` and `(0, y^d)`.
fn spanning_family<S: Scalar>(space: SpaceSpec, max_degree: usize) -> impl Iterator<Item = GluedPair<S>> {
    let m = space.contact_order();
    (0..=max_degree).flat_map(move |d| {
        let p = Polynomial::<S>::x_pow(d);
        let mut items = vec![GluedPair::diagonal(p.clone(), space)];
        if d > m {
            items.push(GluedPair::new(p.clone(), Polynomial::zero(), space).expect("flat at 0"));
            items.push(GluedPair::new(Polynomial::zero(), p, space).expect("flat at 0"));
        }
        items
    })
}

/// A glued function on which the two characters disagree, searching the
/// spanning family up to `max_degree`. `None` exactly when both characters
/// are the same point of the glued space.
pub fn separating_witness<S: Scalar>(
    c1: &Character<S>,
    c2: &Character<S>,
    space: SpaceSpec,
    max_degree: usize,
) -> Option<GluedPair<S>> {
    spanning_family(space, max_degree).find(|u| c1.eval(u) != c2.eval(u))
}

/// For a symbol `s` of positive degree on the cross, returns `(g, t)` with
/// `g = (x, y)` in degree 0 and `s * s = g * t`. Since `g` vanishes at the
/// singular point, any character extending evaluation there kills `s^2`.
pub fn maximal_ideal_factor<S: Scalar>(s: &GradedSymbol<S>) -> Result<(GradedSymbol<S>, GradedSymbol<S>)> {
    if s.space().contact_order() != 0 {
        return Err(Error::Precondition(format!(
            "square factorization is stated on K0, not {}",
            s.space()
        )));
    }
    if s.degree() == 0 {
        return Err(Error::Precondition("symbol degree must be at least 1".into()));
    }
    if !s.is_valid() {
        return Err(Error::Precondition(format!("{s} is not a valid symbol")));
    }
    let x = Polynomial::<S>::x();
    let alpha = s.a().divide_exact(&x)?;
    let beta = s.b().divide_exact(&x)?;
    let g = GradedSymbol::new(0, x.clone(), x.clone(), s.space())?;
    let t = GradedSymbol::new(
        2 * s.degree(),
        &x * &(&alpha * &alpha),
        &x * &(&beta * &beta),
        s.space(),
    )?;
    Ok((g, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityStatus {
    Pass,
    Fail,
    /// A step that is stated without a checkable identity behind it.
    Unverified,
}

impl fmt::Display for IdentityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityStatus::Pass => "PASS",
            IdentityStatus::Fail => "FAIL",
            IdentityStatus::Unverified => "UNVERIFIED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub status: IdentityStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullityReport {
    pub space: SpaceSpec,
    pub checks: Vec<IdentityCheck>,
}

impl NullityReport {
    /// No identity failed (unverified steps do not count as failures).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != IdentityStatus::Fail)
    }
}

fn status(ok: bool) -> IdentityStatus {
    if ok {
        IdentityStatus::Pass
    } else {
        IdentityStatus::Fail
    }
}

/// Fixed symbols used as the sample set of the identity checks.
fn cross_samples<S: Scalar>(space: SpaceSpec) -> Vec<GradedSymbol<S>> {
    let p = |c: &[i64]| Polynomial::<S>::from_ints(c);
    let half = |c: &[(i64, i64)]| Polynomial::<S>::from_coeffs(c.iter().map(|&(n, d)| S::from_ratio(n, d)).collect());
    vec![
        GradedSymbol::new(1, p(&[0, 1]), p(&[0, -1]), space),
        GradedSymbol::new(1, p(&[0, 0, 1]), p(&[0, 0, 1]), space),
        GradedSymbol::new(2, p(&[0, 2, 0, 1]), half(&[(0, 1), (-1, 1), (1, 2)]), space),
        GradedSymbol::new(3, p(&[0, 1, -1]), p(&[0, 3]), space),
    ]
    .into_iter()
    .map(|s| s.expect("valid on K0"))
    .collect()
}

fn first_order_samples<S: Scalar>(space: SpaceSpec) -> Vec<GradedSymbol<S>> {
    let p = |c: &[i64]| Polynomial::<S>::from_ints(c);
    vec![
        GradedSymbol::new(1, p(&[0, 1]), p(&[0, 1]), space),
        GradedSymbol::new(1, p(&[0, 2, 1]), p(&[0, 2, -3]), space),
        GradedSymbol::new(2, p(&[0, -1, 0, 4]), p(&[0, -1, 5]), space),
    ]
    .into_iter()
    .map(|s| s.expect("valid on K1"))
    .collect()
}

/// `(a, b) = (a'(0) x, b'(0) y) + (x, y) * (x a~, y b~)` with `a = a'(0) x + x^2 a~`.
fn hadamard_pieces<S: Scalar>(s: &GradedSymbol<S>) -> (GradedSymbol<S>, GradedSymbol<S>, GradedSymbol<S>) {
    let (lin_a, tail_a) = s.a().hadamard_split(2);
    let (lin_b, tail_b) = s.b().hadamard_split(2);
    let x = Polynomial::<S>::x();
    let linear = GradedSymbol::new_unchecked(s.degree(), lin_a, lin_b, s.space());
    let g = GradedSymbol::new_unchecked(0, x.clone(), x.clone(), s.space());
    let rest = GradedSymbol::new_unchecked(s.degree(), &x * &tail_a, &x * &tail_b, s.space());
    (linear, g, rest)
}

/// Checks the graded-algebra identities behind the vanishing of characters of
/// the symbol algebra at the singular point, on `K0` and `K1`.
pub fn nullity_identity_check<S: Scalar>(space: SpaceSpec) -> Result<NullityReport> {
    let mut checks = Vec::new();
    let singular = Character::<S>::singular();
    match space.contact_order() {
        0 => {
            for s in cross_samples::<S>(space) {
                let (linear, g, rest) = hadamard_pieces(&s);
                let rebuilt = linear.add(&g.mul(&rest)?)?;
                let ok = rebuilt == s && linear.is_valid() && g.is_valid() && rest.is_valid();
                checks.push(IdentityCheck {
                    name: "hadamard decomposition".into(),
                    status: status(ok),
                    detail: format!("{s} = {linear} + {g} * {rest}"),
                });

                let (g, t) = maximal_ideal_factor(&s)?;
                let g_at_zero = singular.eval(&GluedPair::new(g.a().clone(), g.b().clone(), space)?);
                let ok = s.mul(&s)? == g.mul(&t)? && g_at_zero.is_zero();
                checks.push(IdentityCheck {
                    name: "square factorization".into(),
                    status: status(ok),
                    detail: format!("({s})^2 = {g} * {t}"),
                });
            }
        }
        1 => {
            let x = Polynomial::<S>::x();
            let h1 = GradedSymbol::new(1, x.clone(), x.clone(), space)?;
            let cube = h1.mul(&h1)?.mul(&h1)?;
            let x3 = GradedSymbol::new(3, x.pow(3), x.pow(3), space)?;
            checks.push(IdentityCheck {
                name: "cube identity".into(),
                status: status(cube == x3),
                detail: format!("({h1})^3 = {x3}"),
            });

            let g = GradedSymbol::new(0, x.clone(), x.clone(), space)?;
            let t = GradedSymbol::new(3, x.pow(2), x.pow(2), space)?;
            let g_at_zero = singular.eval(&GluedPair::new(g.a().clone(), g.b().clone(), space)?);
            checks.push(IdentityCheck {
                name: "cube factorization through the maximal ideal".into(),
                status: status(g.mul(&t)? == x3 && g_at_zero.is_zero()),
                detail: format!("{x3} = {g} * {t}"),
            });

            for s in first_order_samples::<S>(space) {
                let (linear, g, rest) = hadamard_pieces(&s);
                let rebuilt = linear.add(&g.mul(&rest)?)?;
                checks.push(IdentityCheck {
                    name: "hadamard decomposition".into(),
                    status: status(rebuilt == s && linear.is_valid()),
                    detail: format!("{s} = {linear} + {g} * {rest}"),
                });
                if !rest.is_valid() {
                    checks.push(IdentityCheck {
                        name: "remainder is a symbol of the same degree".into(),
                        status: IdentityStatus::Unverified,
                        detail: format!("{rest} violates {} condition(s)", rest.violations().len()),
                    });
                }
            }
        }
        m => {
            return Err(Error::Unsupported(format!(
                "identity checks are available for K0 and K1, not K{m}"
            )))
        }
    }
    Ok(NullityReport { space, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;
    type Ch = Character<Rational>;

    fn int(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn evaluation_examples() {
        let u = GluedPair::new(P::x(), P::zero(), SpaceSpec::new(0)).unwrap();
        assert_eq!(Ch::on_first(int(2)).eval(&u), int(2));
        assert_eq!(Ch::on_second(int(2)).eval(&u), int(0));
        let v = GluedPair::new(P::from_ints(&[3, 1]), P::from_ints(&[3, 0, 2]), SpaceSpec::new(0)).unwrap();
        assert_eq!(Ch::singular().eval(&v), int(3));
    }

    #[test]
    fn canonical_singular_point() {
        assert_eq!(Ch::on_first(int(0)), Ch::singular());
        assert_eq!(Ch::on_second(int(0)), Ch::singular());
        assert_eq!(Ch::on_first(int(0)).to_dsl(), "char branch=sing at=0");
    }

    #[test]
    fn homomorphism_examples() {
        assert!(char_is_homomorphism(&Ch::on_first(int(2)), 100));
        assert!(char_is_homomorphism(&Ch::singular(), 100));
        assert!(char_is_homomorphism(&Ch::on_second(Rational::from_ratio(-1, 2)), 100));
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let fake = |u: &GluedPair<Rational>| u.f().eval(&int(1)) + u.g().eval(&int(1));
        assert!(!is_homomorphism(fake, 100, &mut rng));
    }

    #[test]
    fn witness_examples() {
        let k0 = SpaceSpec::new(0);
        let w = separating_witness(&Ch::on_first(int(1)), &Ch::on_second(int(1)), k0, 3).unwrap();
        assert_eq!(w, GluedPair::new(P::x(), P::zero(), k0).unwrap());
        for m in 0..3 {
            assert!(separating_witness(&Ch::on_first(int(0)), &Ch::on_second(int(0)), SpaceSpec::new(m), 6).is_none());
        }
        let k1 = SpaceSpec::new(1);
        let w = separating_witness(&Ch::on_first(int(1)), &Ch::on_first(int(2)), k1, 3).unwrap();
        assert_eq!(w, GluedPair::diagonal(P::x(), k1));
    }

    #[test]
    fn factor_examples() {
        let k0 = SpaceSpec::new(0);
        let s = GradedSymbol::new(1, P::x(), P::from_ints(&[0, -1]), k0).unwrap();
        let (g, t) = maximal_ideal_factor(&s).unwrap();
        assert_eq!(g, GradedSymbol::new(0, P::x(), P::x(), k0).unwrap());
        assert_eq!(t, GradedSymbol::new(2, P::x(), P::x(), k0).unwrap());
        assert_eq!(s.mul(&s).unwrap(), g.mul(&t).unwrap());

        let s = GradedSymbol::new(1, P::x_pow(2), P::x_pow(2), k0).unwrap();
        let (_, t) = maximal_ideal_factor(&s).unwrap();
        assert_eq!(t.a(), &P::x_pow(3));
        assert_eq!(t.degree(), 2);

        let (_, t) = maximal_ideal_factor(&GradedSymbol::<Rational>::zero(2, k0)).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn factor_preconditions() {
        let k1 = SpaceSpec::new(1);
        let s = GradedSymbol::new(1, P::x(), P::x(), k1).unwrap();
        assert!(matches!(maximal_ideal_factor(&s), Err(Error::Precondition(_))));
        let s0 = GradedSymbol::<Rational>::unit(SpaceSpec::new(0));
        assert!(matches!(maximal_ideal_factor(&s0), Err(Error::Precondition(_))));
    }

    #[test]
    fn nullity_reports() {
        let r0 = nullity_identity_check::<Rational>(SpaceSpec::new(0)).unwrap();
        assert!(r0.checks.iter().all(|c| c.status == IdentityStatus::Pass), "{r0:?}");
        let r1 = nullity_identity_check::<Rational>(SpaceSpec::new(1)).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.checks[0].name, "cube identity");
        assert_eq!(r1.checks[0].status, IdentityStatus::Pass);
        assert!(r1.checks.iter().any(|c| c.status == IdentityStatus::Unverified));
        assert!(matches!(
            nullity_identity_check::<Rational>(SpaceSpec::new(2)),
            Err(Error::Unsupported(_))
        ));
    }
}
