//! Exact symbolic algebra for the classical Hopf fibration of the 3-sphere
//! over the 2-sphere and its theta-deformation by a torus 2-cocycle.
//!
//! The crate realizes both fibrations as graded *-algebras over an exact
//! scalar ring `Q(i)[u^{\pm1}, w^{\pm1}]`, where `u` and `w` are formal
//! phase units carrying the deformation parameter, and verifies the
//! structural identities mechanically at bounded degree: strong connections
//! and the Galois map, associated-module idempotents, Kahler differential
//! calculus, connections and curvature, infinitesimal gauge actions, the
//! phase-correction laws for charged modules, and the interpolating family
//! joining the two fibrations.

pub mod algebra;
pub mod assoc;
pub mod error;
pub mod expr;
pub mod gauge;
pub mod gb;
pub mod homotopy;
pub mod kahler;
pub mod principal;
pub mod scalar;
pub mod suites;
pub mod tensor;

pub use algebra::{AlgebraElement, HopfElement, KIndex, Monomial, Order, Poly, Product};
pub use error::{Error, Result};
pub use scalar::{GaussianRational, Scalar, Specialize};
pub use tensor::TensorElement;
