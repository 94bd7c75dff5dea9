//! Exact computations for quantum cluster algebras.
//!
//! The crate is layered bottom-up: [`laurent`] and [`linalg`] provide exact
//! scalars and linear algebra, [`torus`] the twisted Laurent monomials,
//! [`seed`] mutation, and the remaining modules the constructions built on
//! top (signed-word seeds, pointed elements, quantization, triangular bases,
//! the SL_n minor oracle and seed towers).

pub mod error;
pub mod export;
pub mod io;
pub mod laurent;
pub mod lie;
pub mod linalg;
pub mod pointed;
pub mod quantize;
pub mod seed;
pub mod torus;
pub mod tower;
pub mod triangular;
pub mod word;

pub use error::{Error, Result};
pub use laurent::{Laurent, VLaurent};
pub use linalg::{Matrix, QMatrix, Q};
pub use pointed::{DegreeSolver, PointedElement};
pub use seed::{BEntry, Cluster, Seed};
pub use torus::{ExpVec, SkewForm, TorusElement};
