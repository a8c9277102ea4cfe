//! Numerics of the explicit embedding solution: gamma and its conjugates,
//! the degree 24 polynomial of sqrt(gamma), and Frobenius classes in the
//! Galois closure.

mod galois;
mod gamma;
mod minpoly;

pub use galois::GaloisClosure;
pub use gamma::{
    conjugates_at, det_gauss, gamma_cases, gamma_conjugates, gamma_determinant, ordered_pairs, vpc_product,
    GammaCase, GammaExpression,
};
pub use minpoly::{minpoly_sqrt_gamma, sqrt_gamma_polynomial};

#[cfg(test)]
mod tests;
