//! Exact symbolic calculator for characteristic-class arithmetic, together
//! with a decision engine for the existence of almost complex structures on
//! connected sums and on products of rational homology spheres.
//!
//! Every computation runs over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate. Cohomology is modelled modulo
//! torsion by finitely presented truncated graded-commutative rings, and the
//! torsion-sensitive facts (spin^c-ness, connectivity, ...) travel as
//! declarative flags on manifold descriptors.

pub mod arith;
pub mod charclass;
pub mod coeff;
pub mod decision;
pub mod genus;
pub mod graded;
pub mod manifold;
pub mod rational;
pub mod symbolic;

pub use charclass::{spinc_dirac_index, CharClassError, ChernVector, PontryaginVector};
pub use coeff::Coefficient;
pub use genus::{evaluate_genus, genus_polynomials, GenusId, GenusPolynomial};
pub use graded::{
    FundamentalSpec, GeneratorSpec, GradedElement, Monomial, RingError, RingModel, RingSpec,
};
pub use manifold::{
    connected_sum, product_of_rhs, symbolic_product_chern, Flag, ManifoldData, ManifoldError,
    SummandList,
};
pub use rational::Rational;
pub use symbolic::{Expr, UnknownMonomial};
