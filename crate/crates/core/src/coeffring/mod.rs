//! Exact polynomial arithmetic: the concrete model of a smooth function on
//! one branch, its jets at the origin, and the bivariate extensions used to
//! realize glued functions as restrictions from the plane.

mod jet;
mod poly;
mod poly2;

pub use jet::Jet;
pub use poly::{PolyDisplay, Polynomial, DEFAULT_DEGREE_CAP};
pub use poly2::PlanePolynomial;

pub(crate) use poly::write_term;

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::{Rational, Scalar};

    fn rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::from_ratio(n, d))
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial<Rational>> {
        proptest::collection::vec(rational(), 0..=max_deg + 1).prop_map(Polynomial::from_coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(p in poly(8), q in poly(8), r in poly(8)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn degree_bounds(p in poly(8), q in poly(8)) {
            let sum = &p + &q;
            if let Some(d) = sum.degree() {
                prop_assert!(Some(d) <= p.degree().max(q.degree()));
            }
            if let (Some(a), Some(b)) = (p.degree(), q.degree()) {
                prop_assert_eq!((&p * &q).degree(), Some(a + b));
            }
        }

        #[test]
        fn hadamard_roundtrip(p in poly(10), r in 1usize..=6) {
            let (head, tail) = p.hadamard_split(r);
            prop_assert!(head.degree().is_none_or(|d| d < r));
            prop_assert_eq!(&head + &tail.shift_up(r), p);
        }

        #[test]
        fn derivative_is_a_derivation(p in poly(8), q in poly(8)) {
            let lhs = (&p * &q).derive();
            let rhs = &(&p.derive() * &q) + &(&p * &q.derive());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivative_drops_degree(p in poly(8)) {
            if let Some(d) = p.degree() {
                if d >= 1 {
                    prop_assert_eq!(p.derive().degree(), Some(d - 1));
                }
            }
        }

        #[test]
        fn jet_is_ring_map(p in poly(8), q in poly(8), m in 0usize..=5) {
            prop_assert_eq!((&p * &q).jet(m), p.jet(m).mul_truncated(&q.jet(m)));
        }

        #[test]
        fn exact_division_recovers_factor(p in poly(6), q in poly(4)) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.divide_exact(&q).unwrap(), p);
        }
    }
}
