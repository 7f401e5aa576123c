//! Divisor class groups of normal affine semigroup rings.
//!
//! Two input modes are supported:
//!
//! * a finite poset, analysed through its join-meet (Hibi) ring, see [`joinmeet`];
//! * an explicit list of primitive support forms of a rational cone, see [`semigroup`].
//!
//! Both modes reduce to a presentation of the class group by an integer
//! relation matrix whose rows are the support forms. The canonical class is the
//! sum of all height-one monomial primes, and the torsion number is read off a
//! Fitting ideal of the class group modulo the canonical class.
//!
//! All arithmetic is exact. The algebra is generic over the integer scalar
//! ([`Scalar`]); the aliases at the crate root fix it to [`BigInt`], which is
//! what the CLI uses.

pub mod abelian;
mod error;
pub mod joinmeet;
pub mod linalg;
pub mod poset;
mod scalar;
pub mod semigroup;
pub mod sweep;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use scalar::Scalar;

pub use poset::{BoundedPoset, ChainPair, Edge, Poset, Vertex};

/// Arbitrary-precision integer matrix.
pub type IntMatrix = linalg::Matrix<BigInt>;
/// Smith normal form of an [`IntMatrix`] with its unimodular transforms.
pub type SmithDecomposition = linalg::Smith<BigInt>;
pub type AbelianPresentation = abelian::Presentation<BigInt>;
pub type GroupStructure = abelian::GroupStructure<BigInt>;
pub type ClassElement = abelian::ClassElement<BigInt>;
pub type SupportForm = joinmeet::SupportForm<BigInt>;
pub type ClassExpression = joinmeet::ClassExpression<BigInt>;
pub type ConeDescription = semigroup::ConeDescription<BigInt>;
pub type ClassGroupReport = semigroup::ClassGroupReport<BigInt>;
