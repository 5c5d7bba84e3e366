//! Exact symbolic algebra on two curves glued with contact of order `m`.
//!
//! Functions on the glued space `K_m` are pairs of branch polynomials whose
//! `m`-jets at the origin agree. On top of that algebra this crate provides
//! differential operators (branchwise pairs subject to generated jet
//! conditions, with an independent brute-force check), the graded symbol
//! algebra with its Poisson bracket, and desk-scale statements about points
//! of the space.
//!
//! Every type is generic over a [`Scalar`] field. The aliases at the crate
//! root fix the scalar to exact rationals, which is what the identities in
//! this crate are meant to be checked with.

pub mod coeffring;
pub mod diffop;
mod error;
pub mod glued;
pub mod sample;
mod scalar;
pub mod spectra;
pub mod symbols;

pub use coeffring::{Jet as JetOf, PlanePolynomial, Polynomial, DEFAULT_DEGREE_CAP};
pub use diffop::{
    check_admissible, default_probe_depth, generate_conditions, probe_admissible, symbol_conditions,
    AdmissibilityReport as AdmissibilityReportOf, BranchOperator, ConditionSet as ConditionSetOf, PairedOperator,
    Unknown, Violation as ViolationOf,
};
pub use error::{Error, Result};
pub use glued::{GluedPair, SpaceSpec};
pub use scalar::{binomial, Scalar};
pub use spectra::{
    char_is_homomorphism, maximal_ideal_factor, nullity_identity_check, separating_witness, Character as CharacterOf,
    CharacterSite, IdentityStatus, NullityReport,
};
pub use symbols::{bracket_via_commutator, check_symbol_conditions, take_symbol, GradedSymbol};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type Poly = Polynomial<Rational>;
pub type Poly2 = PlanePolynomial<Rational>;
pub type Jet = coeffring::Jet<Rational>;
pub type GluedFunction = GluedPair<Rational>;
pub type BranchOp = BranchOperator<Rational>;
pub type PairedOp = PairedOperator<Rational>;
pub type SymbolElem = GradedSymbol<Rational>;
pub type ConditionSet = diffop::ConditionSet<Rational>;
pub type AdmissibilityReport = diffop::AdmissibilityReport<Rational>;
pub type Violation = diffop::Violation<Rational>;
pub type Character = spectra::Character<Rational>;

/// Floating-point variants for numerical experiments (equalities are not exact).
pub type PolyF64 = Polynomial<f64>;
pub type BranchOpF64 = BranchOperator<f64>;
pub type GluedFunctionF64 = GluedPair<f64>;
