pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod quadform;
pub mod ternary;
pub mod halfint;
pub mod octahedral;
pub mod elliptic;
pub mod embed;
pub mod reproduce;
