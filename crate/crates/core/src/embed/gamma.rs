use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::bigfloat::{complex_roots, Cx};
use crate::arith::RationalPoly;
use crate::error::{Error, Result};

/// An integer polynomial in (x1, x2) times a rational scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaExpression {
    #[serde(with = "rational_str")]
    pub scalar: BigRational,
    /// (coefficient, degree in x1, degree in x2)
    pub terms: Vec<(i64, u32, u32)>,
}

/// A quartic together with its gamma expression.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaCase {
    pub quartic: RationalPoly,
    #[serde(flatten)]
    pub gamma: GammaExpression,
}

mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

const GAMMA_DATA: &str = include_str!("../../data/gamma.json");

/// The shipped expressions, keyed by case ("43", "563", "643").
pub fn gamma_cases() -> BTreeMap<String, GammaCase> {
    serde_json::from_str(GAMMA_DATA).expect("shipped gamma data parses")
}

impl GammaExpression {
    /// Value of the integer polynomial part (without the scalar).
    pub fn eval_numerator(&self, x1: &Cx, x2: &Cx) -> Cx {
        let bits = x1.bits;
        let mut acc = Cx::zero(bits);
        for &(c, a, b) in &self.terms {
            let t = &x1.pow(a) * &x2.pow(b);
            acc = &acc + &t.scale_int(&BigInt::from(c));
        }
        acc
    }

    pub fn eval(&self, x1: &Cx, x2: &Cx) -> Cx {
        let n = self.eval_numerator(x1, x2);
        &n * &Cx::from_rational(&self.scalar, x1.bits)
    }
}

/// The 12 ordered pairs (i, j), i != j, in lexicographic order.
pub fn ordered_pairs() -> Vec<(usize, usize)> {
    (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

/// gamma evaluated at all ordered pairs of distinct roots, in the order of
/// `ordered_pairs`, for roots sorted as `complex_roots` returns them.
pub fn gamma_conjugates(quartic: &RationalPoly, gamma: &GammaExpression, digits: u32) -> Result<Vec<Cx>> {
    if quartic.degree() != 4 {
        return Err(Error::Input("gamma needs a quartic".into()));
    }
    let roots = complex_roots(quartic, digits)?;
    conjugates_at(&roots, gamma)
}

pub fn conjugates_at(roots: &[Cx], gamma: &GammaExpression) -> Result<Vec<Cx>> {
    let bits = roots[0].bits;
    let vals: Vec<Cx> = ordered_pairs().iter().map(|&(i, j)| gamma.eval(&roots[i], &roots[j])).collect();
    // a conjugate is zero if it is below half the working precision
    if vals.iter().any(|v| v.is_below(bits as i64 / 2)) {
        return Err(Error::DegenerateGamma);
    }
    Ok(vals)
}

fn cx_mat_mul(a: &[Vec<Cx>], b: &[Vec<Cx>]) -> Vec<Vec<Cx>> {
    let bits = a[0][0].bits;
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(Cx::zero(bits), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_gauss(m: &[Vec<Cx>]) -> Result<Cx> {
    let n = m.len();
    let bits = m[0][0].bits;
    let mut a = m.to_vec();
    let mut det = Cx::from_i64(1, bits);
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].max_abs().cmp(&a[j][c].max_abs())).unwrap();
        if a[piv][c].max_abs().is_zero() {
            return Ok(Cx::zero(bits));
        }
        if piv != c {
            a.swap(c, piv);
            det = -&det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv()?;
        for r in c + 1..n {
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    Ok(det)
}

fn rational_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
        if piv != c {
            a.swap(c, piv);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// det(V P C + id) where V is the matrix of powers of the roots and C is
/// the fixed block with entries 1, 1, 1/2 and +-1/(2 sqrt(D)).
pub fn gamma_determinant(roots: &[Cx], p: &[Vec<BigRational>], d: i64, bits: u32) -> Result<Cx> {
    if roots.len() != 4 || p.len() != 4 || p.iter().any(|r| r.len() != 4) {
        return Err(Error::Input("need 4 roots and a 4x4 matrix".into()));
    }
    for i in 0..4 {
        for j in 0..i {
            if (&roots[i].with_bits(bits) - &roots[j].with_bits(bits)).is_below(bits as i64 / 2) {
                return Err(Error::Input("repeated roots".into()));
            }
        }
    }
    if rational_det(p).is_zero() {
        return Err(Error::Input("transformation matrix is singular".into()));
    }
    if d == 0 {
        return Err(Error::Input("D must be nonzero".into()));
    }
    let prod = vpc_product(roots, p, d, bits)?;
    let mut m = prod;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = &row[i] + &Cx::from_i64(1, bits);
    }
    det_gauss(&m)
}

/// The product V P C without the identity term.
pub fn vpc_product(roots: &[Cx], p: &[Vec<BigRational>], d: i64, bits: u32) -> Result<Vec<Vec<Cx>>> {
    let v: Vec<Vec<Cx>> = roots.iter().map(|r| (0..4).map(|k| r.with_bits(bits).pow(k)).collect()).collect();
    let pm: Vec<Vec<Cx>> = p.iter().map(|r| r.iter().map(|x| Cx::from_rational(x, bits)).collect()).collect();
    let sd = if d > 0 {
        Cx::from_i64(d, bits).sqrt()
    } else {
        &Cx::from_i64(-d, bits).sqrt() * &Cx::i(bits)
    };
    let e = sd.scale_int(&BigInt::from(2)).inv()?;
    let half = Cx::from_rational(&BigRational::new(1.into(), 2.into()), bits);
    let z = Cx::zero(bits);
    let one = Cx::from_i64(1, bits);
    let c = vec![
        vec![one.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), one, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), half.clone(), half],
        vec![z.clone(), z, e.clone(), -&e],
    ];
    Ok(cx_mat_mul(&cx_mat_mul(&v, &pm), &c))
}
