//! Exact computations in the algebra generated by `A`, `B` subject to
//! `AB = m·BA + b·I` (with `m != 0, 1`), presented on generators `A`, `B`,
//! `C = [A,B]`.
//!
//! * [`rewrite`] turns any element into its unique normal form in the basis
//!   `C^k A^l`, `B^l C^k`.
//! * [`diamond`] enumerates and resolves every ambiguity of the reduction
//!   system.
//! * [`lie`] decides whether an element is a Lie polynomial in `A`, `B` and
//!   produces explicit bracket witnesses.
//! * [`propsuite`] replays the reordering and presentation identities.
//!
//! Everything is generic over the coefficient field; [`Symbolic`] keeps `m`
//! and `b` as indeterminates, [`Concrete`] fixes them to rationals.

pub mod diamond;
pub mod error;
pub mod freealg;
pub mod lie;
pub mod linalg;
pub mod propsuite;
pub mod rewrite;
pub mod scalar;

pub use error::Error;
pub use freealg::{parse, Letter, NcPoly, ParseError, Word};
pub use rewrite::{Algebra, ReductionSystem, RuleName};
pub use scalar::{Coeff, Mode, RatFunc, TwistParams};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Coefficients of the symbolic mode: `Q(m, b)`.
pub type Symbolic = RatFunc;
/// Coefficients of the concrete mode: `Q` with fixed `m`, `b`.
pub type Concrete = Rational;

pub type SymbolicPoly = NcPoly<Symbolic>;
pub type ConcretePoly = NcPoly<Concrete>;
pub type SymbolicAlgebra = Algebra<Symbolic>;
pub type ConcreteAlgebra = Algebra<Concrete>;
