//! Exact multi-oriented graph complexes, their representation on functions on
//! `T*[2]E[1]`, and the degree-one cocycle tower built from them.

pub mod canon;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod nr;
pub mod operad;
pub mod rational;
pub mod representation;
pub mod sample;
pub mod superalgebra;
pub mod theta;
pub mod vector;

pub use error::{Error, Result};
pub use graph::{Edge, MultiDigraph, Parity, Signature};
pub use rational::Q;
pub use vector::{GraphVector, OperadElement};
