use kmalg::{sample, GluedFunction, Poly, Poly2, Rational, Scalar, SpaceSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A profile vanishing to order exactly `m + 1`.
fn profile(r: &mut ChaCha8Rng, m: usize) -> Poly {
    let lead = Rational::from_i64(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 });
    let tail: Poly = sample::poly(r, 2);
    &Poly::x_pow(m + 1) * &(&Poly::constant(lead) + &tail.shift_up(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extension_restricts_back(seed in any::<u64>(), m in 0usize..=3) {
        let mut r = rng(seed);
        let space = SpaceSpec::new(m);
        let h = profile(&mut r, m);
        let f: Poly = sample::poly(&mut r, 5);
        let q: Poly = sample::poly(&mut r, 3);
        let u = GluedFunction::new(f.clone(), &f + &(&q * &h), space).unwrap();
        let plane = u.extend_to_plane(&h).unwrap();
        prop_assert_eq!(GluedFunction::restrict(&plane, &h, space).unwrap(), u);
    }

    #[test]
    fn default_profile_always_extends(seed in any::<u64>(), m in 0usize..=3) {
        let mut r = rng(seed);
        let space = SpaceSpec::new(m);
        let u: GluedFunction = sample::glued(&mut r, space, 6);
        let h = space.default_profile();
        let plane = u.extend_to_plane(&h).unwrap();
        prop_assert_eq!(GluedFunction::restrict(&plane, &h, space).unwrap(), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn restriction_is_glued(seed in any::<u64>(), m in 0usize..=3) {
        let mut r = rng(seed);
        let space = SpaceSpec::new(m);
        let parts: Vec<Poly> = (0..r.gen_range(1..=4)).map(|_| sample::poly(&mut r, 4)).collect();
        let plane = Poly2::from_y_coefficients(&parts);
        let h = profile(&mut r, m);
        let u = GluedFunction::restrict(&plane, &h, space);
        prop_assert!(u.is_ok(), "{:?}", u);
    }

    #[test]
    fn arithmetic_preserves_membership(seed in any::<u64>(), m in 0usize..=3) {
        let mut r = rng(seed);
        let space = SpaceSpec::new(m);
        let u: GluedFunction = sample::glued(&mut r, space, 5);
        let v: GluedFunction = sample::glued(&mut r, space, 5);
        let c: Rational = sample::rational(&mut r);
        for w in [u.add(&v).unwrap(), u.sub(&v).unwrap(), u.mul(&v).unwrap(), u.scale(&c)] {
            let again = GluedFunction::new(w.f().clone(), w.g().clone(), space);
            prop_assert_eq!(again.as_ref(), Ok(&w));
        }
    }
}

#[test]
fn profiles_of_the_wrong_order_are_rejected() {
    let space = SpaceSpec::new(1);
    let u = GluedFunction::diagonal(Poly::x(), space);
    assert!(u.extend_to_plane(&Poly::x()).is_err());
    assert!(u.extend_to_plane(&Poly::x_pow(3)).is_err());
    assert!(GluedFunction::restrict(&Poly2::zero(), &Poly::zero(), space).is_err());
}

#[test]
fn non_dividing_profile_is_reported() {
    let space = SpaceSpec::new(1);
    let u = GluedFunction::new(Poly::zero(), Poly::x_pow(2), space).unwrap();
    let h = Poly::from_ints(&[0, 0, 1, 1]);
    assert!(matches!(u.extend_to_plane(&h), Err(kmalg::Error::InexactDivision { .. })));
}
