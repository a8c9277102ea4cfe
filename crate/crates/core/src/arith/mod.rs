//! Exact arithmetic kernel: primes, residue symbols, polynomials.

pub mod bigfloat;
pub mod iso;
pub mod modp;
pub mod poly;
pub mod primes;
pub mod symbols;

pub use poly::{q, qq, FactorPattern, RationalPoly};
pub use primes::{factor, is_prime, primes_up_to, squarefree_part};
pub use symbols::{hilbert_symbol, kronecker_symbol, Place};
