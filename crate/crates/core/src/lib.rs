//! Exact-arithmetic verification engine for left-invariant non-Sasakian
//! (κ,μ)-structures on Lie groups and their Legendrian submanifolds.
//!
//! The core is generic over [`Field`]; [`Scalar`] (arbitrary-precision
//! rationals) is what the pipeline and the CLI use, `f64` works for quick
//! numerical exploration.

// Index loops mirror the tensor notation; iterator rewrites read worse.
#![allow(clippy::needless_range_loop)]

pub mod connection;
pub mod contact;
pub mod deformation;
pub mod error;
pub mod lie;
pub mod reference;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod submanifold;

pub use error::{Error, Result};
pub use scalar::Field;

/// Exact scalar used throughout the pipeline.
pub type Scalar = num_rational::BigRational;

pub type Vector = linalg::Vector<Scalar>;
pub type Matrix = linalg::Matrix<Scalar>;
pub type Algebra = lie::LieAlgebra<Scalar>;
pub type Model = lie::BoeckxModel<Scalar>;
pub type Connection = connection::ConnectionTable<Scalar>;
pub type Curvature = connection::CurvatureTable<Scalar>;
pub type Contact = contact::ContactStructure<Scalar>;
pub type Invariants = contact::ModelInvariants<Scalar>;
pub type Geometry = submanifold::SubmanifoldGeometry<Scalar>;

/// Floating-point variants, for exploration only (no exactness guarantees).
pub mod float {
    pub type Vector = crate::linalg::Vector<f64>;
    pub type Matrix = crate::linalg::Matrix<f64>;
    pub type Model = crate::lie::BoeckxModel<f64>;
    pub type Contact = crate::contact::ContactStructure<f64>;
}
