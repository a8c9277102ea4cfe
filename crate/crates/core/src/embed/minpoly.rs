use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gamma::{gamma_conjugates, GammaExpression};
use crate::arith::bigfloat::{poly_from_roots, round_to_integers, Cx};
use crate::arith::RationalPoly;
use crate::error::{Error, Result};

/// Rounding tolerance: every coefficient within 10^-20 of an integer.
const TOL_BITS: i64 = 67;

/// prod (t^2 - c gamma_i) over the conjugates, rounded to integers.
pub fn minpoly_sqrt_gamma(conjugates: &[Cx], c: &BigRational, digits: u32) -> Result<RationalPoly> {
    if c.is_zero() {
        return Err(Error::Input("c must be nonzero".into()));
    }
    if conjugates.is_empty() {
        return Err(Error::Input("no conjugates".into()));
    }
    let bits = conjugates[0].bits;
    let cc = Cx::from_rational(c, bits);
    let scaled: Vec<Cx> = conjugates.iter().map(|g| &cc * g).collect();
    // polynomial in u = t^2
    let in_u = poly_from_roots(&scaled, bits);
    let tol = TOL_BITS.max(digits as i64 / 4);
    let ints = round_to_integers(&in_u, tol)?;
    let mut coeffs = vec![BigInt::zero(); 2 * ints.len() - 1];
    for (k, a) in ints.into_iter().enumerate() {
        coeffs[2 * k] = a;
    }
    let f = RationalPoly::from_bigints(&coeffs);
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(f)
}

/// Conjugates plus reconstruction, doubling the precision up to three
/// times when rounding fails.
pub fn sqrt_gamma_polynomial(
    quartic: &RationalPoly,
    gamma: &GammaExpression,
    c: &BigRational,
    digits: u32,
) -> Result<RationalPoly> {
    let mut d = digits;
    let mut last = None;
    for _ in 0..4 {
        let conj = gamma_conjugates(quartic, gamma, d)?;
        match minpoly_sqrt_gamma(&conj, c, d) {
            Err(Error::Precision(msg)) => last = Some(msg),
            other => return other,
        }
        d *= 2;
    }
    Err(Error::Precision(format!("gave up at {d} digits: {}", last.unwrap_or_default())))
}
