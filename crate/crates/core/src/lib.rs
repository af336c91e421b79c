//! Multivariate signatures of colored links: exact C-complex forms, generalized
//! Hopf links, and the splice and cabling calculus.

pub mod c_complex;
pub mod cyclotomic;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod hermitian;
pub mod hopf;
pub mod interval;
pub mod laurent;
pub mod splice;
pub mod torus;
pub mod torus_cables;
pub mod verify;

pub use error::{Result, SigError};
