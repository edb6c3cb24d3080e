//! Exact matrix-factorization calculus over hypersurface rings.
//!
//! The crate provides, bottom up:
//!
//! * sparse multivariate polynomials with exact rational (or GF(32003))
//!   coefficients ([`poly`], [`parse`]);
//! * a Buchberger engine with normal forms, ideal equality, colon ideals and
//!   elimination ([`groebner`](mod@groebner));
//! * ring towers: polynomial base, quotients, and localization by
//!   inverse-adjunction ([`tower`]);
//! * matrix factorizations with verification, syzygy swap, direct sums, the
//!   sheet construction, and cokernel presentations ([`mf`]);
//! * a presented-module toolkit: minimalization, Fitting ideals, base change,
//!   freeness tests, punctured-spectrum classification ([`modules`]);
//! * generators for the bundled module families ([`families`]) and the
//!   deterministic verification suite driving them ([`checks`]).
//!
//! See the book under `book/` for a guided tour; every code block there is a
//! doctest kept in sync with this crate.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod order;
pub mod parse;
pub mod groebner;
pub mod matrix;
pub mod tower;
pub mod mf;
pub mod modules;
pub mod families;
pub mod json;
pub mod checks;

pub use error::{Error, Result};
pub use scalar::{CoeffField, Scalar};
pub use poly::{Monomial, PolyRing, Polynomial};
pub use order::{MonomialOrder, OrderKind};
pub use parse::poly_parse;
pub use groebner::{colon_ideal, eliminate, groebner, ideal_equal, intersect, GroebnerBasis};
pub use matrix::PolyMatrix;
pub use tower::RingDescriptor;
pub use mf::MatrixFactorization;
pub use modules::{
    complex_check, cyclic_mcm_enumerate, Classification, Distinctness, Freeness,
    ModulePresentation, PrimeDecl, PuncturedClass, SpectrumDeclaration,
};
pub use families::FamilyId;
pub use checks::{run_suite, CheckReport, CheckStatus, SuiteConfig};
