//! Random generators for polynomials, glued functions, operator pairs and
//! symbols. Valid objects are produced by sampling the solution space of the
//! relevant condition system, then adding a random tail that is invisible to
//! the `m`-jet at the origin.

use rand::Rng;

use crate::coeffring::Polynomial;
use crate::diffop::{generate_conditions, symbol_conditions, Branch, BranchOperator, ConditionSet, PairedOperator};
use crate::glued::{GluedPair, SpaceSpec};
use crate::scalar::Scalar;
use crate::symbols::GradedSymbol;

/// Small rational with numerator in `-4..=4` and denominator in `1..=3`.
pub fn rational<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    S::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Small integer in `-3..=3`.
pub fn small_int<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    S::from_i64(rng.gen_range(-3..=3))
}

pub fn poly<S: Scalar, R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Polynomial<S> {
    let deg = rng.gen_range(0..=max_degree);
    Polynomial::from_coeffs((0..=deg).map(|_| rational(rng)).collect())
}

/// Random polynomial times `x^{m+1}`, total degree at most `max_degree`
/// (zero when `max_degree <= m`).
fn flat_tail<S: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize, max_degree: usize) -> Polynomial<S> {
    if max_degree <= m || rng.gen_bool(0.2) {
        return Polynomial::zero();
    }
    poly::<S, R>(rng, max_degree - m - 1).shift_up(m + 1)
}

pub fn glued<S: Scalar, R: Rng + ?Sized>(rng: &mut R, space: SpaceSpec, max_degree: usize) -> GluedPair<S> {
    let m = space.contact_order();
    let f = poly(rng, max_degree);
    let g = &f.jet(m).to_polynomial() + &flat_tail(rng, m, max_degree);
    let g = Polynomial::from_coeffs(g.coeffs().iter().take(max_degree.max(m) + 1).cloned().collect());
    GluedPair::new(f, g, space).expect("tails do not touch the m-jet")
}

pub fn branch_op<S: Scalar, R: Rng + ?Sized>(rng: &mut R, order: usize, coeff_degree: usize) -> BranchOperator<S> {
    BranchOperator::from_coeffs((0..=order).map(|_| poly(rng, coeff_degree)).collect())
}

/// A random point of the solution space, as a map from unknowns to values.
fn solution<S: Scalar, R: Rng + ?Sized>(rng: &mut R, conditions: &ConditionSet<S>) -> Vec<S> {
    let mut v = vec![S::zero(); conditions.unknowns().len()];
    for basis in conditions.solution_basis() {
        if rng.gen_bool(0.3) {
            continue;
        }
        let c: S = small_int(rng);
        for (vi, bi) in v.iter_mut().zip(&basis) {
            *vi = vi.clone() + c.clone() * bi.clone();
        }
    }
    v
}

/// Builds branch coefficient polynomials from jet values `a_s^(r)(0)`.
fn coefficients_from_jets<S: Scalar>(
    conditions: &ConditionSet<S>,
    values: &[S],
    branch: Branch,
    indices: std::ops::RangeInclusive<usize>,
    m: usize,
) -> Vec<Polynomial<S>> {
    indices
        .map(|s| {
            let coeffs = (0..=m)
                .map(|r| {
                    let j = conditions
                        .unknowns()
                        .iter()
                        .position(|u| u.branch == branch && u.index == s && u.derivative == r)
                        .expect("unknown in universe");
                    values[j].clone() / S::factorial(r)
                })
                .collect();
            Polynomial::from_coeffs(coeffs)
        })
        .collect()
}

/// Coefficient jets sampled from the admissible subspace, plus random tails.
fn admissible_coefficients<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    space: SpaceSpec,
    k: usize,
    coeff_degree: usize,
) -> (Vec<Polynomial<S>>, Vec<Polynomial<S>>) {
    let m = space.contact_order();
    let conditions = generate_conditions::<S>(space, k);
    let values = solution(rng, &conditions);
    let mut with_tails = |jets: Vec<Polynomial<S>>| -> Vec<Polynomial<S>> {
        jets.into_iter().map(|p| &p + &flat_tail(rng, m, coeff_degree)).collect()
    };
    let a = coefficients_from_jets(&conditions, &values, Branch::First, 0..=k, m);
    let b = coefficients_from_jets(&conditions, &values, Branch::Second, 0..=k, m);
    (with_tails(a), with_tails(b))
}

/// A random admissible pair of order `k`.
pub fn admissible_pair<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    space: SpaceSpec,
    k: usize,
    coeff_degree: usize,
) -> PairedOperator<S> {
    let (a, b) = admissible_coefficients(rng, space, k, coeff_degree);
    PairedOperator::new(BranchOperator::from_coeffs(a), BranchOperator::from_coeffs(b), space, k)
        .expect("sampled from the solution space")
}

/// A pair of order at most `k` drawn from a mixture: fully random,
/// admissible, admissible with one perturbed low-order coefficient, or
/// sharing low jets between the branches.
pub fn operator_pair<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    space: SpaceSpec,
    k: usize,
    coeff_degree: usize,
) -> (BranchOperator<S>, BranchOperator<S>) {
    let m = space.contact_order();
    match rng.gen_range(0..4) {
        0 => (branch_op(rng, k, coeff_degree), branch_op(rng, k, coeff_degree)),
        1 => {
            let (a, b) = admissible_coefficients(rng, space, k, coeff_degree);
            (BranchOperator::from_coeffs(a), BranchOperator::from_coeffs(b))
        }
        2 => {
            let (mut a, b) = admissible_coefficients(rng, space, k, coeff_degree);
            let s = rng.gen_range(0..=k);
            let r = rng.gen_range(0..=m);
            let bump = Polynomial::monomial(S::from_i64(rng.gen_range(1..=2)), r);
            a[s] = &a[s] + &bump;
            (BranchOperator::from_coeffs(a), BranchOperator::from_coeffs(b))
        }
        _ => {
            let a: Vec<Polynomial<S>> = (0..=k)
                .map(|s| {
                    let p = poly::<S, R>(rng, coeff_degree);
                    // kill low jets of higher coefficients with some probability
                    if s > 0 && rng.gen_bool(0.5) {
                        p.hadamard_split(rng.gen_range(1..=m + 1)).1.shift_up(m + 1)
                    } else {
                        p
                    }
                })
                .collect();
            let b = a
                .iter()
                .map(|p| &p.jet(m).to_polynomial() + &flat_tail(rng, m, coeff_degree))
                .collect();
            (BranchOperator::from_coeffs(a), BranchOperator::from_coeffs(b))
        }
    }
}

/// A random valid symbol of the given degree.
pub fn symbol<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    space: SpaceSpec,
    degree: usize,
    coeff_degree: usize,
) -> GradedSymbol<S> {
    let m = space.contact_order();
    let conditions = symbol_conditions::<S>(space, degree);
    let values = solution(rng, &conditions);
    let a = coefficients_from_jets(&conditions, &values, Branch::First, degree..=degree, m).remove(0);
    let b = coefficients_from_jets(&conditions, &values, Branch::Second, degree..=degree, m).remove(0);
    let a = &a + &flat_tail(rng, m, coeff_degree);
    let b = &b + &flat_tail(rng, m, coeff_degree);
    GradedSymbol::new(degree, a, b, space).expect("sampled from the solution space")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{check_admissible, probe_admissible};
    use crate::Rational;
    use rand::SeedableRng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in 0..3 {
            let space = SpaceSpec::new(m);
            for _ in 0..20 {
                let _: GluedPair<Rational> = glued(&mut rng, space, 5);
                let k = rng.gen_range(0..=3);
                let p: PairedOperator<Rational> = admissible_pair(&mut rng, space, k, 4);
                assert!(probe_admissible(p.d1(), p.d2(), space, k + m + 2));
                let s: GradedSymbol<Rational> = symbol(&mut rng, space, k, 4);
                assert!(s.is_valid());
            }
        }
    }

    #[test]
    fn mixture_covers_both_verdicts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let space = SpaceSpec::new(1);
        let verdicts: Vec<bool> = (0..60)
            .map(|_| {
                let (a, b) = operator_pair::<Rational, _>(&mut rng, space, 2, 4);
                check_admissible(&a, &b, space, 2).unwrap().is_admissible()
            })
            .collect();
        assert!(verdicts.iter().any(|&v| v));
        assert!(verdicts.iter().any(|&v| !v));
    }
}
