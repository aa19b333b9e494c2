//! Exact intersection multiplicities over graded quotients of polynomial
//! rings in prime characteristic.
//!
//! The crate layers as follows:
//!
//! * [`field`], [`monomial`], [`poly`]: `F_p`, graded monomial orders and
//!   polynomials, including the Frobenius twist [`poly::entry_twist`].
//! * [`groebner`]: Buchberger's algorithm for graded submodules, syzygies,
//!   Krull dimension and length by standard monomials.
//! * [`ring`]: quotient rings `R = S/I` and presented `R`-modules.
//! * [`complex`]: bounded complexes of graded free `R`-modules with shift,
//!   tensor product, the Frobenius functor and homology.
//! * [`multiplicity`], [`vandermonde`], [`vanishing`]: `χ(X, Y)`, the
//!   Frobenius series `χ(F^e X, Y)`, its eigencomponent decomposition, Dutta
//!   multiplicities and vanishing tests.

pub mod complex;
pub mod error;
pub mod field;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod multiplicity;
pub mod poly;
pub mod ring;
pub mod vandermonde;
pub mod vanishing;

pub use complex::{FreeComplex, Violation};
pub use error::{AlgebraError, ErrorClass, Result};
pub use field::{PrimeField, PrimeFieldElement};
pub use groebner::{FreeModule, FreeModuleVector, GroebnerBasis, Length};
pub use matrix::Matrix;
pub use monomial::{mono_cmp, Monomial, MonomialOrder, OrderKind};
pub use multiplicity::{chi, chi_series, comp_check, dutta_limit_probe, CompatReport, Probe};
pub use poly::{entry_twist, PolyRing, Polynomial};
pub use ring::{make_ring, PresentedModule, QuotientRing};
pub use vandermonde::{vandermonde_solve, ChiTable, EigenComponents};
pub use vanishing::{
    decompose, dutta, fixed_point_check, numerical_vanishing_check, vdim_bracket, Decomposition, Order,
    VanishingReport,
};
pub use num_rational::BigRational;
