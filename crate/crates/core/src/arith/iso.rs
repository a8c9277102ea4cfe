//! Exact isomorphism certificates between number fields given by
//! irreducible polynomials of equal degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{complex_roots, Cx};
use super::poly::RationalPoly;
use crate::error::{Error, Result};

/// Best rational approximation to a fixed-point real with denominator at
/// most `max_den`, by continued fractions.
pub fn rational_reconstruct(x: &BigInt, bits: u32, max_den: &BigInt) -> BigRational {
    let (mut n, mut d) = (x.clone(), BigInt::one() << bits);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    loop {
        let (a, r) = n.div_mod_floor(&d);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if r.is_zero() {
            break;
        }
        n = d;
        d = r;
    }
    if q1.is_zero() {
        return BigRational::zero();
    }
    BigRational::new(p1, q1)
}

fn solve(mut a: Vec<Vec<Cx>>, mut b: Vec<Cx>) -> Result<Vec<Cx>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| a[i][c].max_abs().cmp(&a[j][c].max_abs()))
            .unwrap();
        a.swap(c, piv);
        b.swap(c, piv);
        let inv = a[c][c].inv()?;
        for r in c + 1..n {
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
            let t = &f * &b[c];
            b[r] = &b[r] - &t;
        }
    }
    let mut x = vec![Cx::zero(b[0].bits); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for k in r + 1..n {
            acc = &acc - &(&a[r][k] * &x[k]);
        }
        x[r] = acc.div(&a[r][r])?;
    }
    Ok(x)
}

/// A polynomial c of degree < deg f with g(c(x)) = 0 mod f, i.e. an
/// embedding Q[x]/(g) -> Q[x]/(f); None when no such map is found.
/// The result is verified exactly before it is returned.
pub fn field_isomorphism(f: &RationalPoly, g: &RationalPoly, digits: u32) -> Result<Option<RationalPoly>> {
    let n = f.degree();
    if n != g.degree() || n < 1 {
        return Err(Error::Domain("field isomorphism needs equal degrees".into()));
    }
    if n > 8 {
        return Err(Error::Domain("permutation search limited to degree 8".into()));
    }
    let rf = complex_roots(f, digits)?;
    let rg = complex_roots(g, digits)?;
    let bits = rf[0].bits;
    let n = n as usize;
    let vander: Vec<Vec<Cx>> = rf.iter().map(|r| (0..n).map(|k| r.pow(k as u32)).collect()).collect();
    let max_den = BigInt::one() << (bits / 3);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let rhs: Vec<Cx> = perm.iter().map(|&j| rg[j].clone()).collect();
        let sol = solve(vander.clone(), rhs)?;
        let real = sol.iter().all(|c| c.im.abs() < (BigInt::one() << (bits / 2)));
        if real {
            let cand = RationalPoly::new(
                sol.iter().map(|c| rational_reconstruct(&c.re, bits, &max_den)).collect(),
            );
            if g.compose(&cand).rem(f).is_zero() {
                return Ok(Some(cand));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
