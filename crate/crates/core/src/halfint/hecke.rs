use num_bigint::BigInt;
use num_rational::BigRational;

use super::linalg::{nullspace, Echelon};
use super::series::combine;
use super::{QExpansion, Qs2, Weight};
use crate::arith::kronecker_symbol;
use crate::elliptic::WeierstrassCurve;
use crate::error::{Error, Result};

/// T_{p^2} on weight 3/2 with trivial character:
/// b(m) = c(p^2 m) + (-m|p) c(m) + p c(m/p^2).
pub fn hecke_tp2(f: &QExpansion, p: u64, bound_out: usize) -> Result<QExpansion> {
    if f.level % p == 0 {
        return Err(Error::PrimeDividesLevel(p));
    }
    if f.weight != Weight::ThreeHalves || f.character != 1 {
        return Err(Error::Input("T_{p^2} is implemented for weight 3/2, trivial character".into()));
    }
    let p2 = (p * p) as usize;
    if f.bound() < p2 * bound_out {
        return Err(Error::Truncation { need: p2 * bound_out, have: f.bound() });
    }
    let pq = Qs2::int(p as i64);
    let out = (0..=bound_out)
        .map(|m| {
            let mut b = f.coeffs[p2 * m].clone();
            let k = kronecker_symbol(-(m as i64), p as i64);
            if k != 0 {
                let t = &f.coeffs[m];
                b = if k > 0 { &b + t } else { &b - t };
            }
            if m % p2 == 0 {
                b = &b + &(&pq * &f.coeffs[m / p2]);
            }
            b
        })
        .collect();
    Ok(QExpansion::new(out, f.weight, f.level, f.character))
}

/// Matrix of T_{p^2} on the span of `basis`, M[j][i] being the coefficient of
/// basis_j in T(basis_i). Coordinates are solved on c_0..c_{b_express} and
/// then checked on every coefficient the inputs allow.
pub fn hecke_matrix(basis: &[QExpansion], p: u64, b_express: usize) -> Result<Vec<Vec<Qs2>>> {
    let n = basis.len();
    let have = basis.iter().map(|b| b.bound()).min().unwrap_or(0);
    let bound_img = have / (p * p) as usize;
    if bound_img < b_express {
        return Err(Error::Truncation { need: b_express * (p * p) as usize, have });
    }
    let mut ech = Echelon::new(b_express + 1);
    for b in basis {
        ech.insert(&b.coeffs[..=b_express]);
    }
    if ech.rank() < n {
        return Err(Error::InsufficientPrecision { rank: ech.rank(), size: n, bound: b_express });
    }
    let mut m = vec![vec![Qs2::zero(); n]; n];
    for (i, b) in basis.iter().enumerate() {
        let t = hecke_tp2(b, p, bound_img)?;
        let col = ech.solve(&t.coeffs[..=b_express]).map_err(|c| Error::NotInSpan { index: i, coeff: c })?;
        let back = combine(basis, &col);
        if let Some(c) = (0..=bound_img).find(|&k| back.coeffs[k] != t.coeffs[k]) {
            return Err(Error::NotInSpan { index: i, coeff: c });
        }
        for (j, v) in col.into_iter().enumerate() {
            m[j][i] = v;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct Eigenform {
    pub combination: Vec<Qs2>,
    pub expansion: QExpansion,
    /// (p, a_p) used in the search.
    pub eigenvalues: Vec<(u64, i64)>,
}

/// Common eigenvector of T_{p^2}, p in `primes`, with eigenvalues a_p(E).
/// The result is scaled so its first nonzero coefficient equals `lead`.
pub fn eigenform_search(
    basis: &[QExpansion],
    curve: &WeierstrassCurve,
    primes: &[u64],
    b_express: usize,
    lead: &Qs2,
) -> Result<Eigenform> {
    let eig: Vec<(u64, i64)> = primes.iter().map(|&p| Ok((p, curve.ap(p)?))).collect::<Result<_>>()?;
    eigenform_search_with(basis, &eig, b_express, lead)
}

pub fn eigenform_search_with(
    basis: &[QExpansion],
    eig: &[(u64, i64)],
    b_express: usize,
    lead: &Qs2,
) -> Result<Eigenform> {
    let n = basis.len();
    let mut rows = Vec::new();
    for &(p, ap) in eig {
        let mut m = hecke_matrix(basis, p, b_express)?;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] - &Qs2::int(ap);
        }
        rows.extend(m);
    }
    let ker = nullspace(&rows, n);
    match ker.len() {
        0 => return Err(Error::EmptyEigenspace),
        1 => {}
        d => return Err(Error::EigenspaceTooLarge(d)),
    }
    let v = &ker[0];
    let f = combine(basis, v);
    let first = f.coeffs.iter().find(|c| !c.is_zero()).ok_or(Error::EmptyEigenspace)?;
    let s = lead * &first.inv().unwrap();
    let combination: Vec<Qs2> = v.iter().map(|c| c * &s).collect();
    Ok(Eigenform { expansion: f.scale(&s), combination, eigenvalues: eig.to_vec() })
}

/// Checks T_{p^2} F = lambda F on all coefficients F allows.
pub fn is_eigenform(f: &QExpansion, p: u64, lambda: i64) -> Result<bool> {
    let b = f.bound() / (p * p) as usize;
    let t = hecke_tp2(f, p, b)?;
    let l = Qs2::rat(BigRational::from_integer(BigInt::from(lambda)));
    Ok((0..=b).all(|m| t.coeffs[m] == &f.coeffs[m] * &l))
}
