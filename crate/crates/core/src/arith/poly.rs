//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modp::PolyFp;
use super::primes::squarefree_part;
use crate::error::{Error, Result};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Ascending coefficient list; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl From<RationalPoly> for Vec<String> {
    fn from(p: RationalPoly) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for RationalPoly {
    type Error = String;
    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        let c: std::result::Result<Vec<BigRational>, _> =
            v.iter().map(|s| s.parse::<BigRational>()).collect();
        Ok(RationalPoly::new(c.map_err(|e| e.to_string())?))
    }
}

/// Factorization pattern of f mod p: (degree, multiplicity) of each monic
/// irreducible factor, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorPattern {
    pub factors: Vec<(usize, u32)>,
    pub squarefree: bool,
}

impl FactorPattern {
    /// Degrees of the irreducible factors of the squarefree part of f mod p.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|&(d, _)| d).collect();
        d.sort_unstable();
        d
    }

    /// Degrees of the factors occurring with multiplicity one.
    pub fn unramified_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .filter(|&&(_, m)| m == 1)
            .map(|&(d, _)| d)
            .collect();
        d.sort_unstable();
        d
    }
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    /// From coefficients listed from the leading term down.
    pub fn from_i64_desc(c: &[i64]) -> Self {
        let mut v: Vec<i64> = c.to_vec();
        v.reverse();
        Self::from_i64(&v)
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; -1 for zero.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len();
        if r.len() < dd {
            return (Self::zero(), self.clone());
        }
        let l = d.lead();
        let mut qv = vec![BigRational::zero(); r.len() - dd + 1];
        for k in (0..qv.len()).rev() {
            let coef = &r[k + dd - 1] / &l;
            if !coef.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &coef * b;
                }
            }
            qv[k] = coef;
        }
        r.truncate(dd - 1);
        (Self::new(qv), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// f(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::new(vec![c.clone()]));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() < 0 {
            return false;
        }
        // squarefree mod a prime of good reduction implies squarefree over Q
        for p in [1_000_003u64, 1_000_033, 1_000_037] {
            if let Ok(f) = self.to_fp(p) {
                if f.deg() == self.degree() && f.gcd(&f.derivative()).deg() == 0 {
                    return true;
                }
            }
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Resultant as the determinant of the Sylvester matrix, computed with
    /// fraction-free (Bareiss) elimination after clearing denominators.
    pub fn resultant(&self, g: &Self) -> BigRational {
        if self.is_zero() || g.is_zero() {
            return BigRational::zero();
        }
        let (m, n) = (self.degree() as usize, g.degree() as usize);
        if m + n == 0 {
            return BigRational::one();
        }
        let clear = |p: &Self| -> (BigInt, Vec<BigInt>) {
            let l = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            (l.clone(), p.coeffs.iter().map(|c| (c * &l).to_integer()).collect())
        };
        let (lf, fi) = clear(self);
        let (lg, gi) = clear(g);
        let size = m + n;
        let mut a = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for (k, c) in fi.iter().rev().enumerate() {
                a[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in gi.iter().rev().enumerate() {
                a[n + r][r + k] = c.clone();
            }
        }
        let det = bareiss_det(a);
        BigRational::new(det, lf.pow(n as u32) * lg.pow(m as u32))
    }

    /// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Result<BigRational> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::Domain("discriminant needs degree >= 2".into()));
        }
        let r = self.resultant(&self.derivative()) / self.lead();
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
    }

    /// Smallest positive integer multiple with integer coefficients, with
    /// the content removed. The sign of the leading coefficient is kept.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect()
    }

    /// Reduction of the cleared-denominator integral model modulo p.
    pub fn to_fp(&self, p: u64) -> Result<PolyFp> {
        let ints = self.primitive_integer();
        let bp = BigInt::from(p);
        let lead = ints.last().cloned().unwrap_or_default();
        if (&lead % &bp).is_zero() {
            return Err(Error::BadReduction(p));
        }
        Ok(PolyFp::new(
            p,
            ints.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect(),
        ))
    }

    pub fn factorization_pattern_mod_p(&self, p: u64) -> Result<FactorPattern> {
        let f = self.to_fp(p)?;
        let mut factors = Vec::new();
        for (g, m) in f.squarefree_decomposition() {
            for d in g.ddf_degrees() {
                factors.push((d, m));
            }
        }
        factors.sort_unstable();
        let squarefree = factors.iter().all(|&(_, m)| m == 1);
        Ok(FactorPattern { factors, squarefree })
    }

    /// Squarefree class of the discriminant.
    pub fn disc_class(&self) -> Result<BigInt> {
        squarefree_part(&self.discriminant()?)
    }

    /// Rational roots (for small-height polynomials) via the rational root test.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let ints = self.primitive_integer();
        if ints.is_empty() {
            return vec![];
        }
        let mut out = Vec::new();
        if ints[0].is_zero() {
            out.push(BigRational::zero());
        }
        let first = ints.iter().position(|c| !c.is_zero()).unwrap();
        let a0 = ints[first].abs();
        let an = ints.last().unwrap().abs();
        let divs = |n: &BigInt| -> Vec<BigInt> {
            let n = n.to_u64().expect("rational root test needs small coefficients");
            (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
        };
        for num in divs(&a0) {
            for den in divs(&an) {
                for s in [1i64, -1] {
                    let r = BigRational::new(&num * s, den.clone());
                    if self.eval(&r).is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn discriminant_examples() {
        let f = RationalPoly::from_i64(&[-1, -2, 0, 0, 1]);
        // x^4 + px + q: -27 p^4 + 256 q^3
        let oracle = -27 * 16 + 256 * (-1);
        assert_eq!(f.discriminant().unwrap(), q(oracle));
        assert_eq!(f.discriminant().unwrap(), q(-688));
        assert_eq!(RationalPoly::from_i64(&[-1, 0, 1]).discriminant().unwrap(), q(4));
        assert!(RationalPoly::from_i64(&[1, 1]).discriminant().is_err());
        let g = RationalPoly::from_i64_desc(&[1, -1, 0, -2, 1]);
        assert_eq!(g.discriminant().unwrap(), q(-643));
    }

    #[test]
    fn pattern_examples() {
        let f = RationalPoly::from_i64(&[1, 0, 1]);
        let pat = f.factorization_pattern_mod_p(5).unwrap();
        assert_eq!(pat.degrees(), vec![1, 1]);
        assert!(pat.squarefree);
        let g = RationalPoly::from_i64(&[-1, -2, 0, 0, 1]);
        let pat = g.factorization_pattern_mod_p(43).unwrap();
        assert!(!pat.squarefree);
        assert!(RationalPoly::from_i64(&[1, 3]).factorization_pattern_mod_p(3).is_err());
    }

    #[test]
    fn pattern_mod_3_brute_force() {
        // over F_3, x^4 - 2x - 1: count roots and irreducible quadratic divisors
        let g = RationalPoly::from_i64(&[-1, -2, 0, 0, 1]);
        let pat = g.factorization_pattern_mod_p(3).unwrap();
        let fp = g.to_fp(3).unwrap();
        let roots = (0..3).filter(|&x| fp.eval(x) == 0).count();
        let mut irred_quad = 0;
        for b in 0..3u64 {
            for c in 0..3u64 {
                let h = PolyFp::new(3, vec![c, b, 1]);
                if (0..3).all(|x| h.eval(x) != 0) && fp.rem(&h).is_zero() {
                    irred_quad += 1;
                }
            }
        }
        let degs = pat.degrees();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), roots);
        assert_eq!(degs.iter().filter(|&&d| d == 2).count(), irred_quad);
    }

    #[test]
    fn display() {
        let f = RationalPoly::from_i64_desc(&[1, -8, 19, -14, -1]);
        assert_eq!(f.to_string(), "x^4 - 8*x^3 + 19*x^2 - 14*x - 1");
    }

    #[test]
    fn json_roundtrip() {
        let f = RationalPoly::new(vec![qq(1, 2), q(0), q(-3)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, "[\"1/2\",\"0\",\"-3\"]");
        assert_eq!(serde_json::from_str::<RationalPoly>(&s).unwrap(), f);
    }

    fn small_poly() -> impl Strategy<Value = RationalPoly> {
        proptest::collection::vec(-6i64..=6, 3..5).prop_map(|mut v| {
            if *v.last().unwrap() == 0 {
                *v.last_mut().unwrap() = 1;
            }
            RationalPoly::from_i64(&v)
        })
    }

    proptest! {
        #[test]
        fn disc_of_product(f in small_poly(), g in small_poly()) {
            let r = f.resultant(&g);
            let lhs = f.mul(&g).discriminant().unwrap();
            let rhs = f.discriminant().unwrap() * g.discriminant().unwrap() * &r * &r;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pattern_degrees_sum(f in small_poly(), pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            if let Ok(pat) = f.factorization_pattern_mod_p(p) {
                let radical_deg: usize = pat.factors.iter().map(|&(d, _)| d).sum();
                let fp = f.to_fp(p).unwrap();
                let sqf: i64 = fp.squarefree_decomposition().iter().map(|(g, _)| g.deg()).sum();
                prop_assert_eq!(radical_deg as i64, sqf);
            }
        }
    }
}

/// Determinant of an integer matrix by Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
