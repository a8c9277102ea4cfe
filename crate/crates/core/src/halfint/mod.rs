//! Half-integral weight q-expansions, Hecke operators and eigenforms.

mod dims;
mod hecke;
mod linalg;
mod qexp;
mod series;

pub use dims::{dim_m2, dim_s12, dim_weight_3_2, gamma0_cusps, gamma0_index, genus_x0};
pub use hecke::{eigenform_search, eigenform_search_with, hecke_matrix, hecke_tp2, is_eigenform, Eigenform};
pub use linalg::{nullspace, rank_and_basis, Echelon};
pub use qexp::{QExpansion, Qs2, Weight};
pub use series::{combine, expand_4z, kohnen_check, product_weight_3_2, theta_unary};

#[cfg(test)]
mod tests;
