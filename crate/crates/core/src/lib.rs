//! Numerical verification that the exponential spectrum is not commutative.
//!
//! In `A = C(S⁴, M₂(C))` with
//! `a(z) = (1/(1+iz2)) [[z0, 0], [z1, 0]]` and `b(z) = (1/(1+iz2)) [[z̄0, z̄1], [0, 0]]`,
//! the element `1 − 2ba` is connected to the identity through invertibles while
//! `1 − 2ab` is not, so `1/2 ∈ ε(ab)` but `1/2 ∉ ε(ba)`, even though
//! `σ(ab) \ {0} = σ(ba) \ {0}`.
//!
//! The crate checks every computable link of that argument on deterministic
//! meshes of S⁴ and packages the results as certificates and reports.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod generalize;
pub mod homotopy;
pub mod hopf_invariant;
pub mod linalg2;
pub mod report;
pub mod sphere;
pub mod spectrum;
pub mod summation;

pub use error::{Error, Result};
pub use linalg2::{Complex, Mat2};
pub use sphere::{mesh_s4, SphereMesh4, SpherePoint3, SpherePoint4};
