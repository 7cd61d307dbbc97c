//! Graded polynomial functions on `T*[2]E[1]` and `(g ⊕ g*)[1]`, the big
//! bracket, Hamiltonians and their constraint systems.

pub mod components;
pub mod ideal;
pub mod lbrackets;
pub mod poly;
pub mod tensor;

pub use components::{
    base_poisson, classify, constraints, fixture_bialgebra, fixture_coboundary, fixture_poisson, hamiltonian,
    hamiltonian_square, random_components, BialgebroidComponents, Classification, Constraints, Sector,
};
pub use poly::{big_bracket, Chart, Deriv, Monomial, SuperPolynomial, XPoly, MAX_DIM};
pub use tensor::Tensor;
