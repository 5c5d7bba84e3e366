use kmalg::{sample, GradedSymbol, Poly, Rational, SpaceSpec, SymbolElem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn symbol(r: &mut ChaCha8Rng, space: SpaceSpec) -> SymbolElem {
    let degree = r.gen_range(0..=3);
    sample::symbol(r, space, degree, 4)
}

/// Same branch parts, ignoring the nominal degree of zero symbols.
fn same(s: &SymbolElem, t: &SymbolElem) -> bool {
    s.a() == t.a() && s.b() == t.b() && (s.is_zero() || s.degree() == t.degree())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bracket_and_product_stay_symbols(seed in any::<u64>(), m in 0usize..=2) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let space = SpaceSpec::new(m);
        let (s, t) = (symbol(&mut r, space), symbol(&mut r, space));
        let b = s.bracket(&t).unwrap();
        let p = s.mul(&t).unwrap();
        prop_assert!(b.is_valid(), "{} from {} and {}", b, s, t);
        prop_assert!(p.is_valid(), "{} from {} and {}", p, s, t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grading(seed in any::<u64>(), m in 0usize..=2) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let space = SpaceSpec::new(m);
        let (s, t) = (symbol(&mut r, space), symbol(&mut r, space));
        prop_assert_eq!(s.mul(&t).unwrap().degree(), s.degree() + t.degree());
        let b = s.bracket(&t).unwrap();
        match (s.degree() + t.degree()).checked_sub(1) {
            Some(d) => prop_assert_eq!(b.degree(), d),
            None => prop_assert!(b.is_zero()),
        }
    }

    #[test]
    fn bilinear_and_antisymmetric(seed in any::<u64>(), m in 0usize..=2) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let space = SpaceSpec::new(m);
        let degree = r.gen_range(0..=3);
        let s: SymbolElem = sample::symbol(&mut r, space, degree, 4);
        let s2: SymbolElem = sample::symbol(&mut r, space, degree, 4);
        let t = symbol(&mut r, space);
        let (c, d): (Rational, Rational) = (sample::rational(&mut r), sample::rational(&mut r));
        let combo = s.scale(&c).add(&s2.scale(&d)).unwrap();
        let lhs = combo.bracket(&t).unwrap();
        let rhs = s.bracket(&t).unwrap().scale(&c).add(&s2.bracket(&t).unwrap().scale(&d)).unwrap();
        prop_assert!(same(&lhs, &rhs));
        let swapped = t.bracket(&s).unwrap();
        let sum_a = s.bracket(&t).unwrap().a() + swapped.a();
        let sum_b = s.bracket(&t).unwrap().b() + swapped.b();
        prop_assert!(sum_a.is_zero() && sum_b.is_zero());
    }

    #[test]
    fn jacobi_and_leibniz(seed in any::<u64>(), m in 0usize..=2) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let space = SpaceSpec::new(m);
        let [s, t, u] = [0; 3].map(|_| symbol(&mut r, space));
        let br = |p: &SymbolElem, q: &SymbolElem| p.bracket(q).unwrap();
        let jacobi = [br(&s, &br(&t, &u)), br(&t, &br(&u, &s)), br(&u, &br(&s, &t))];
        let a = jacobi.iter().fold(Poly::zero(), |acc, x| &acc + x.a());
        let b = jacobi.iter().fold(Poly::zero(), |acc, x| &acc + x.b());
        prop_assert!(a.is_zero() && b.is_zero());

        let lhs = br(&s, &t.mul(&u).unwrap());
        let r1 = br(&s, &t).mul(&u).unwrap();
        let r2 = t.mul(&br(&s, &u)).unwrap();
        prop_assert_eq!(lhs.a(), &(r1.a() + r2.a()));
        prop_assert_eq!(lhs.b(), &(r1.b() + r2.b()));
    }
}

#[test]
fn degree_decides_validity() {
    let k1 = SpaceSpec::new(1);
    let valid = |d| GradedSymbol::<Rational>::new(d, Poly::x(), Poly::x(), k1).is_ok();
    assert!(valid(0));
    assert!(valid(1));
    assert!(valid(2));
    assert!(!valid(3));
    assert!(!valid(4));
}

#[test]
fn product_and_bracket_reject_mixed_spaces() {
    let s = GradedSymbol::<Rational>::unit(SpaceSpec::new(0));
    let t = GradedSymbol::<Rational>::unit(SpaceSpec::new(1));
    assert!(s.mul(&t).is_err());
    assert!(s.bracket(&t).is_err());
}
