//! Domination numbers of finite simple graphs: exact (`γ`), fractional
//! (`γ_f`, by exact rational LP) and greedy (`γ_g`), together with
//! certificates that every reported value and bound can be re-checked.
//!
//! The LP engine and the weighting checks are generic over [`Scalar`];
//! certificates always use the exact [`Rational`] instantiation.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod fractional;
pub mod graph;
pub mod greedy;
pub mod real;
pub mod scalar;
pub mod simplex;
pub mod weighting;

pub use bitset::BitSet;
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::Graph;
pub use real::Enclosure;
pub use scalar::Scalar;
pub use weighting::{check_weighting, Role, SlackReport, VertexWeighting};

/// Arbitrary-precision rational, the scalar of every certificate.
pub type Rational = num_rational::BigRational;

pub type ExactWeighting = VertexWeighting<Rational>;
pub type FloatWeighting = VertexWeighting<f64>;
pub type ExactSlackReport = SlackReport<Rational>;

pub type ExactSimplex = simplex::Simplex<Rational>;
pub type FloatSimplex = simplex::Simplex<f64>;

pub type ExactFractionalSolution = fractional::FractionalSolution<Rational>;
pub type FloatFractionalSolution = fractional::FractionalSolution<f64>;
