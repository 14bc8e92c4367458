//! Exact branching of integrable highest-weight modules of affine Kac-Moody
//! algebras to their winding subalgebras 𝔤[u].
//!
//! The crate is `no_std` and only needs `alloc`. All arithmetic is exact
//! (arbitrary-precision rationals); there is no floating point.
//!
//! Multiplicities are computed three independent ways: counting 𝔤[u]-dominant
//! Lakshmibai-Seshadri paths, a signed double Weyl-group sum over the
//! generalized Kostant partition function, and peeling 𝔤[u]-characters off the
//! 𝔤-character. A fourth, signed-path count underlies the cancellation check.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod branching;
pub mod error;
pub mod kostant;
pub mod linalg;
pub mod path;
pub mod rational;
pub mod series;
pub mod weight;
pub mod weyl;
pub mod winding;

pub use algebra::AffineAlgebra;
pub use branching::{BranchRow, BranchTable, Method};
pub use error::{Error, Result};
pub use path::Path;
pub use rational::Rat;
pub use series::FormalSeries;
pub use weight::{Coroot, Weight};
pub use weyl::Basis;
pub use winding::WindingData;
