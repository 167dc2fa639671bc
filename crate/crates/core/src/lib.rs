//! Exact invariants of finite labeled posets.
//!
//! Order polynomials, Eulerian polynomials, the φ-invariant, the
//! quasi-symmetric generating function `K(P, ω; x)` and a recursive invariant
//! machine over ω-natural ideals, each computed by several independent routes
//! in exact rational arithmetic.
//!
//! The algebra layer ([`algebra`]) is generic over the coefficient field; the
//! invariants are computed over [`Rational`].

pub mod algebra;
pub mod bernoulli;
pub mod catalog;
pub mod eulerian;
pub mod framework;
pub mod omega_graph;
pub mod order_poly;
pub mod poset;
pub mod unlabeled;
pub mod validation;

pub use algebra::{LocalizedRatio, Matrix, PolyMatrix, Scalar, UniPoly};
pub use omega_graph::{Digraph, OmegaGraph, PathCounts};
pub use poset::{CanonicalPoset, ElementSet, LabeledKey, LabeledPoset, Labeling, Poset, PosetError};

/// Arbitrary-precision exact fraction.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Polynomial with rational coefficients.
pub type Poly = UniPoly<Rational>;
/// Element of `ℚ[λ]` localized at `1 - λ`.
pub type Localized = LocalizedRatio<Rational>;
/// Rational matrix.
pub type RatMatrix = Matrix<Rational>;
/// Matrix of rational polynomials.
pub type RatPolyMatrix = PolyMatrix<Rational>;
