//! Rational quadratic forms, local invariants and the embedding obstruction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::poly::{q, RationalPoly};
use crate::arith::primes::{factor, squarefree_part};
use crate::arith::symbols::{hilbert_symbol, Place};
use crate::error::{Error, Result};

/// Symmetric Gram matrix; off-diagonal entries are half the cross terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<String>>", try_from = "Vec<Vec<String>>")]
pub struct QuadraticForm {
    gram: Vec<Vec<BigRational>>,
}

impl From<QuadraticForm> for Vec<Vec<String>> {
    fn from(f: QuadraticForm) -> Self {
        f.gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl TryFrom<Vec<Vec<String>>> for QuadraticForm {
    type Error = Error;
    fn try_from(v: Vec<Vec<String>>) -> Result<Self> {
        let parse = |s: &String| s.parse::<BigRational>().map_err(|e| Error::Input(e.to_string()));
        let g: Result<Vec<Vec<BigRational>>> = v.iter().map(|r| r.iter().map(parse).collect()).collect();
        QuadraticForm::new(g?)
    }
}

impl QuadraticForm {
    pub fn new(gram: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Input("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Input("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { gram })
    }

    pub fn diagonal(entries: &[BigRational]) -> Self {
        let n = entries.len();
        let mut g = vec![vec![BigRational::zero(); n]; n];
        for (i, a) in entries.iter().enumerate() {
            g[i][i] = a.clone();
        }
        QuadraticForm { gram: g }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn determinant(&self) -> BigRational {
        let mut m = self.gram.clone();
        let n = m.len();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &m[r][c] / &piv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
        det
    }

    /// S^T A S for an integer (or rational) basis change S.
    pub fn transform(&self, s: &[Vec<BigRational>]) -> Self {
        let n = self.dim();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc += &s[k][i] * &self.gram[k][l] * &s[l][j];
                    }
                }
                out[i][j] = acc;
            }
        }
        QuadraticForm { gram: out }
    }
}

/// Power sums p_0..p_kmax of the roots of a monic polynomial (Newton).
pub fn power_sums(f: &RationalPoly, kmax: usize) -> Vec<BigRational> {
    let g = f.monic();
    let n = g.degree() as usize;
    // e-coefficients: x^n + c_1 x^{n-1} + ... + c_n
    let c: Vec<BigRational> = (1..=n).map(|i| g.coeff(n - i)).collect();
    let mut p = vec![q(n as i64)];
    for k in 1..=kmax {
        let mut v = BigRational::zero();
        for i in 1..k.min(n + 1) {
            v -= &c[i - 1] * &p[k - i];
        }
        if k <= n {
            v -= q(k as i64) * &c[k - 1];
        }
        p.push(v);
    }
    p
}

/// Gram matrix of x -> Tr(x^2) in the power basis: entries p_{i+j}.
pub fn trace_form(quartic: &RationalPoly) -> Result<QuadraticForm> {
    if quartic.degree() != 4 {
        return Err(Error::Domain("trace form needs a quartic".into()));
    }
    if !quartic.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let p = power_sums(quartic, 6);
    Ok(QuadraticForm {
        gram: (0..4).map(|i| (0..4).map(|j| p[i + j].clone()).collect()).collect(),
    })
}

/// Symmetric Gaussian elimination to a congruent diagonal form.
pub fn diagonalize(form: &QuadraticForm) -> Result<Vec<BigRational>> {
    let mut a = form.gram.clone();
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for c in 0..n {
        if a[c][c].is_zero() {
            // a nonzero diagonal entry further down can be swapped in
            if let Some(r) = (c + 1..n).find(|&r| !a[r][r].is_zero()) {
                a.swap(c, r);
                for row in a.iter_mut() {
                    row.swap(c, r);
                }
            } else if let Some(r) = (c + 1..n).find(|&r| !a[c][r].is_zero()) {
                // e_c <- e_c + e_r makes the pivot 2a_cr + a_rr = 2a_cr
                for k in 0..n {
                    let t = a[r][k].clone();
                    a[c][k] += t;
                }
                for k in 0..n {
                    let t = a[k][r].clone();
                    a[k][c] += t;
                }
            } else {
                return Err(Error::Degenerate);
            }
        }
        let piv = a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
            for k in c..n {
                let t = &f * &a[k][c];
                a[k][r] -= t;
            }
        }
        diag.push(piv);
    }
    Ok(diag)
}

/// Hasse invariant: prod_{i<j} (a_i, a_j)_v over a diagonalization.
pub fn hasse_invariant(form: &QuadraticForm, v: Place) -> Result<i8> {
    let d = diagonalize(form)?;
    hasse_of_diagonal(&d, v)
}

fn hasse_of_diagonal(d: &[BigRational], v: Place) -> Result<i8> {
    let mut e = 1i8;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            e *= hilbert_symbol(&d[i], &d[j], v)?;
        }
    }
    Ok(e)
}

fn signature(d: &[BigRational]) -> (usize, usize) {
    let neg = d.iter().filter(|x| x.is_negative()).count();
    (d.len() - neg, neg)
}

/// Places outside which every Hasse invariant of the given diagonal forms
/// is +1: infinity, 2, and primes dividing some entry.
fn witness_places(diags: &[&[BigRational]]) -> Result<BTreeSet<Place>> {
    let mut s = BTreeSet::new();
    s.insert(Place::Infinity);
    s.insert(Place::Prime(2));
    for d in diags {
        for a in d.iter() {
            for n in [a.numer(), a.denom()] {
                for (p, _) in factor(n)? {
                    let p = p
                        .to_u64()
                        .ok_or_else(|| Error::Domain("prime exceeds 64 bits".into()))?;
                    s.insert(Place::Prime(p));
                }
            }
        }
    }
    Ok(s)
}

/// Hasse-Minkowski: dimension, determinant class, signature and all Hasse
/// invariants agree.
pub fn is_equivalent_over_q(a: &QuadraticForm, b: &QuadraticForm) -> Result<bool> {
    let da = diagonalize(a)?;
    let db = diagonalize(b)?;
    if da.len() != db.len() {
        return Ok(false);
    }
    let prod = |d: &[BigRational]| d.iter().fold(BigRational::one(), |acc, x| acc * x);
    if squarefree_part(&prod(&da))? != squarefree_part(&prod(&db))? {
        return Ok(false);
    }
    if signature(&da) != signature(&db) {
        return Ok(false);
    }
    for v in witness_places(&[&da, &db])? {
        if hasse_of_diagonal(&da, v)? != hasse_of_diagonal(&db, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The diagonal form <1, 1, 2, 2D>.
pub fn reference_form(d: &BigRational) -> Result<QuadraticForm> {
    if d.is_zero() {
        return Err(Error::Domain("reference form needs D != 0".into()));
    }
    Ok(QuadraticForm::diagonal(&[q(1), q(1), q(2), q(2) * d]))
}

/// A 2-torsion Brauer class of Q, given by the places where it is -1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Br2Element {
    places: BTreeSet<Place>,
}

impl Br2Element {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Self {
        Br2Element { places: places.into_iter().collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.places.is_empty()
    }

    pub fn contains(&self, v: Place) -> bool {
        self.places.contains(&v)
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.places.iter()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }
}

pub fn br2_add(a: &Br2Element, b: &Br2Element) -> Br2Element {
    Br2Element {
        places: a.places.symmetric_difference(&b.places).copied().collect(),
    }
}

/// Places where the trace form and the reference form of the same
/// discriminant have different Hasse invariants.
pub fn obstruction_class(quartic: &RationalPoly) -> Result<Br2Element> {
    let disc = quartic.discriminant()?;
    if !disc.is_negative() {
        return Err(Error::SignatureMismatch);
    }
    let t = diagonalize(&trace_form(quartic)?)?;
    let d = BigRational::from_integer(squarefree_part(&disc)?);
    let r = diagonalize(&reference_form(&d)?)?;
    let mut out = BTreeSet::new();
    for v in witness_places(&[&t, &r])? {
        if hasse_of_diagonal(&t, v)? != hasse_of_diagonal(&r, v)? {
            out.insert(v);
        }
    }
    Ok(Br2Element { places: out })
}

/// Checks eps_v(q3) = eps_v(q1) eps_v(q2) (2, D_L)_v at every place.
pub fn witt_sum_check(
    q1: &RationalPoly,
    q2: &RationalPoly,
    q3: &RationalPoly,
    d_l: &BigInt,
) -> Result<bool> {
    let dl = BigRational::from_integer(d_l.clone());
    let class = squarefree_part(&dl)?;
    let mut diags = Vec::new();
    for f in [q1, q2, q3] {
        if f.disc_class()? != class {
            return Err(Error::DiscriminantMismatch);
        }
        diags.push(diagonalize(&trace_form(f)?)?);
    }
    let extra = [q(2), dl.clone()];
    let refs: Vec<&[BigRational]> = diags.iter().map(|d| d.as_slice()).chain([&extra[..]]).collect();
    for v in witness_places(&refs)? {
        let lhs = hasse_of_diagonal(&diags[2], v)?;
        let rhs = hasse_of_diagonal(&diags[0], v)?
            * hasse_of_diagonal(&diags[1], v)?
            * hilbert_symbol(&q(2), &dl, v)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
