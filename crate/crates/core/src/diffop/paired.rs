use std::fmt;

use crate::coeffring::Polynomial;
use crate::diffop::conditions::{generate_conditions, Branch, Unknown, Violation};
use crate::diffop::BranchOperator;
use crate::error::{Error, Result};
use crate::glued::{GluedPair, SpaceSpec};
use crate::scalar::Scalar;

/// Outcome of checking a pair against the generated conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport<S> {
    pub space: SpaceSpec,
    pub order: usize,
    pub violations: Vec<Violation<S>>,
}

impl<S> AdmissibilityReport<S> {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Probe depth that suffices for order `k`: `(D f)^(i)(0)` with `i <= m`
/// only sees the `(k + m)`-jet of `f`; two extra degrees of margin.
pub fn default_probe_depth(space: SpaceSpec, k: usize) -> usize {
    k + space.contact_order() + 2
}

fn check_order<S: Scalar>(op: &BranchOperator<S>, k: usize) -> Result<()> {
    match op.order() {
        Some(found) if found > k => Err(Error::OrderExceeded { found, declared: k }),
        _ => Ok(()),
    }
}

/// Evaluates the generated order-`k` conditions on the coefficient jets of
/// `(d1, d2)` and lists every violated constraint.
pub fn check_admissible<S: Scalar>(
    d1: &BranchOperator<S>,
    d2: &BranchOperator<S>,
    space: SpaceSpec,
    k: usize,
) -> Result<AdmissibilityReport<S>> {
    check_order(d1, k)?;
    check_order(d2, k)?;
    let conditions = generate_conditions::<S>(space, k);
    let lookup = |u: Unknown| {
        let op = match u.branch {
            Branch::First => d1,
            Branch::Second => d2,
        };
        op.coeff(u.index).derivative_at_zero(u.derivative)
    };
    Ok(AdmissibilityReport {
        space,
        order: k,
        violations: conditions.evaluate(&lookup),
    })
}

/// Brute-force check: applies both operators to every member of the spanning
/// family `(x^n, y^n)`, `(x^{m+1+j}, 0)`, `(0, y^{m+1+j})` up to degree
/// `probe_degree` and compares the `m`-jets of the outputs.
pub fn probe_admissible<S: Scalar>(
    d1: &BranchOperator<S>,
    d2: &BranchOperator<S>,
    space: SpaceSpec,
    probe_degree: usize,
) -> bool {
    let m = space.contact_order();
    let agrees = |f: &Polynomial<S>, g: &Polynomial<S>| d1.apply(f).jet(m) == d2.apply(g).jet(m);
    let diagonal = (0..=probe_degree).all(|n| {
        let p = Polynomial::x_pow(n);
        agrees(&p, &p)
    });
    let one_sided = (m + 1..=probe_degree).all(|n| {
        let p = Polynomial::x_pow(n);
        agrees(&p, &Polynomial::zero()) && agrees(&Polynomial::zero(), &p)
    });
    diagonal && one_sided
}

/// A differential operator of order `<= order` on the glued algebra, given by
/// its two branch restrictions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairedOperator<S> {
    d1: BranchOperator<S>,
    d2: BranchOperator<S>,
    space: SpaceSpec,
    order: usize,
}

impl<S: Scalar> PairedOperator<S> {
    /// Validates admissibility at `order`.
    pub fn new(d1: BranchOperator<S>, d2: BranchOperator<S>, space: SpaceSpec, order: usize) -> Result<Self> {
        let report = check_admissible(&d1, &d2, space, order)?;
        if !report.is_admissible() {
            return Err(Error::NotAdmissible {
                order,
                contact: space.contact_order(),
                violated: report.violations.len(),
            });
        }
        Ok(Self { d1, d2, space, order })
    }

    /// Multiplication by a glued function (always an order-0 operator).
    pub fn multiplication(u: &GluedPair<S>) -> Self {
        Self {
            d1: BranchOperator::multiplication(u.f().clone()),
            d2: BranchOperator::multiplication(u.g().clone()),
            space: u.space(),
            order: 0,
        }
    }

    pub fn identity(space: SpaceSpec) -> Self {
        Self::multiplication(&GluedPair::one(space))
    }

    pub fn zero(space: SpaceSpec) -> Self {
        Self {
            d1: BranchOperator::zero(),
            d2: BranchOperator::zero(),
            space,
            order: 0,
        }
    }

    pub fn d1(&self) -> &BranchOperator<S> {
        &self.d1
    }

    pub fn d2(&self) -> &BranchOperator<S> {
        &self.d2
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The same operator regarded at a higher order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::new(self.d1.clone(), self.d2.clone(), self.space, order)
    }

    /// `(d1 f, d2 g)`; the result is glued again because the pair is admissible.
    pub fn apply(&self, u: &GluedPair<S>) -> Result<GluedPair<S>> {
        self.space.ensure_same(u.space())?;
        GluedPair::new(self.d1.apply(u.f()), self.d2.apply(u.g()), self.space)
    }

    fn closed(d1: BranchOperator<S>, d2: BranchOperator<S>, space: SpaceSpec, order: usize, operation: &'static str) -> Result<Self> {
        let report = check_admissible(&d1, &d2, space, order).map_err(|_| Error::ClosureViolation { operation, order })?;
        if !report.is_admissible() {
            return Err(Error::ClosureViolation { operation, order });
        }
        Ok(Self { d1, d2, space, order })
    }

    /// Componentwise composition, admissible at `order(self) + order(other)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        Self::closed(
            self.d1.compose(&other.d1),
            self.d2.compose(&other.d2),
            self.space,
            self.order + other.order,
            "composition",
        )
    }

    /// Componentwise commutator, admissible at `order(self) + order(other) - 1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same(other.space)?;
        Self::closed(
            self.d1.commutator(&other.d1),
            self.d2.commutator(&other.d2),
            self.space,
            (self.order + other.order).saturating_sub(1),
            "commutator",
        )
    }

    pub fn to_dsl(&self) -> String {
        format!(
            "branch x\n{}branch y\n{}",
            self.d1.to_dsl(self.order, 'x'),
            self.d2.to_dsl(self.order, 'y')
        )
    }
}

impl<S: Scalar> fmt::Debug for PairedOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PairedOp[K{}, order {}]({} | {})",
            self.space.contact_order(),
            self.order,
            self.d1.display_in('x'),
            self.d2.display_in('y')
        )
    }
}
