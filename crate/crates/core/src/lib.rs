//! Exact linear algebra and classical groups: finite fields, rationals,
//! quadratic étale algebras and rational function fields; generator words,
//! Bruhat and Jordan-Chevalley decompositions; counting over finite fields;
//! symplectic and orthogonal groups and their root data; quaternion
//! algebras; `SL_2(Z)`; and Euclidean isometries in floating point.
//!
//! Matrices and polynomials are generic over the [`scalar::Ring`] and
//! [`scalar::Field`] traits. The aliases below name the instances used most.

pub mod classical;
pub mod counting;
pub mod error;
pub mod euclid;
pub mod field;
pub mod genword;
pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod quat;
pub mod rootdatum;
pub mod scalar;
pub mod sl2z;

use num_rational::BigRational;

pub use error::{Error, Result};
pub use field::{Domain, FieldDescriptor, FieldScalar};
pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{Field, Ring, Zmod};

/// Matrix over a runtime-selected exact field.
pub type ExactMatrix = Matrix<FieldScalar>;
/// Matrix over `Q`.
pub type RationalMatrix = Matrix<BigRational>;
/// Matrix over `Z/mZ`.
pub type ZmodMatrix = Matrix<Zmod>;
/// Double-precision real matrix.
pub type RealMatrix = Matrix<f64>;
/// Polynomial over a runtime-selected exact field.
pub type ExactPoly = Poly<FieldScalar>;
/// Generator word over a runtime-selected exact field.
pub type ExactWord = genword::GeneratorWord<FieldScalar>;
/// Element of a quaternion algebra over an exact field.
pub type ExactQuaternion = quat::Quaternion<FieldScalar>;
/// Hamilton's quaternions in double precision.
pub type RealQuaternion = quat::Quaternion<f64>;
/// Affine isometry of `R^n` in double precision.
pub type Isometry = euclid::AffineIsometry<f64>;
/// Symplectic or orthogonal form over a runtime-selected exact field.
pub type ExactForm = classical::FormSpec<FieldScalar>;
