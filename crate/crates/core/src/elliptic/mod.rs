//! Weierstrass curves over Q: invariants, group law, halving quartics and
//! point counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::poly::{q, RationalPoly};
use crate::arith::primes::is_prime;
use crate::arith::symbols::kronecker_symbol;
use crate::error::{Error, Result};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine(BigRational, BigRational),
}

impl CurvePoint {
    pub fn from_i64(x: i64, y: i64) -> Self {
        CurvePoint::Affine(q(x), q(y))
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::Infinity => None,
        }
    }
}

impl WeierstrassCurve {
    pub fn new(a: [BigRational; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let e = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::Domain("singular curve".into()));
        }
        Ok(e)
    }

    pub fn from_ainvs(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(q))
    }

    pub fn b_invariants(&self) -> (BigRational, BigRational, BigRational, BigRational) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> BigRational {
        let (b2, b4, b6, b8) = self.b_invariants();
        -&b2 * &b2 * &b8 - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3)
            }
        }
    }

    pub fn add_points(&self, p: &CurvePoint, r: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) || !self.contains(r) {
            return Err(Error::OffCurve);
        }
        let (x1, y1, x2, y2) = match (p, r) {
            (CurvePoint::Infinity, _) => return Ok(r.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine(a, b), CurvePoint::Affine(c, d)) => (a, b, c, d),
        };
        let lambda = if x1 == x2 {
            // same x: either Q = -P or a doubling
            let den = q(2) * y1 + &self.a1 * x1 + &self.a3;
            if y1 != y2 || den.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            (q(3) * x1 * x1 + q(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / den
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        Ok(CurvePoint::Affine(x3, y3))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.add_points(p, p)
    }

    pub fn multiply(&self, p: &CurvePoint, n: u64) -> Result<CurvePoint> {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &base)?;
            }
            base = self.double(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// 4x^3 + b2 x^2 + 2 b4 x + b6.
    pub fn two_division_cubic(&self) -> RationalPoly {
        let (b2, b4, b6, _) = self.b_invariants();
        RationalPoly::new(vec![b6, q(2) * b4, b2, q(4)])
    }

    /// Numerator of the duplication map x(2Q) = num / cubic.
    pub fn duplication_numerator(&self) -> RationalPoly {
        let (_, b4, b6, b8) = self.b_invariants();
        RationalPoly::new(vec![-b8, -q(2) * b6, -b4, q(0), q(1)])
    }

    /// Monic quartic whose roots are x(Q) for the four Q with 2Q = P.
    pub fn halving_quartic(&self, p: &CurvePoint) -> Result<RationalPoly> {
        if !self.contains(p) {
            return Err(Error::OffCurve);
        }
        let x = match p {
            CurvePoint::Infinity => return Err(Error::TorsionPoint),
            CurvePoint::Affine(x, _) => x,
        };
        if self.double(p)? == CurvePoint::Infinity {
            return Err(Error::TorsionPoint);
        }
        let f = self
            .duplication_numerator()
            .sub(&self.two_division_cubic().scale(x))
            .monic();
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(f)
    }

    fn integral_ainvs(&self) -> Result<[BigInt; 5]> {
        let mut out = Vec::new();
        for a in [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6] {
            if !a.is_integer() {
                return Err(Error::Domain("point counting needs an integral model".into()));
            }
            out.push(a.to_integer());
        }
        Ok(out.try_into().unwrap())
    }

    /// a_p = p + 1 - #E(F_p) by direct counting.
    pub fn ap(&self, p: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let a = self.integral_ainvs()?;
        let disc = self.discriminant().to_integer();
        if (disc % BigInt::from(p)).is_zero() {
            return Err(Error::BadReduction(p));
        }
        let m = |x: &BigInt| x.mod_floor(&BigInt::from(p)).to_i64().unwrap();
        let [a1, a2, a3, a4, a6] = [m(&a[0]), m(&a[1]), m(&a[2]), m(&a[3]), m(&a[4])];
        let pi = p as i64;
        let mut count: i64 = 1;
        if p == 2 {
            for x in 0..2i64 {
                for y in 0..2i64 {
                    let l = y * y + a1 * x * y + a3 * y;
                    let r = x * x * x + a2 * x * x + a4 * x + a6;
                    if (l - r).rem_euclid(2) == 0 {
                        count += 1;
                    }
                }
            }
        } else {
            // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
            let b2 = (a1 * a1 + 4 * a2) % pi;
            let b4 = (2 * a4 + a1 * a3) % pi;
            let b6 = (a3 * a3 + 4 * a6) % pi;
            let mut chi = vec![0i8; p as usize];
            for (r, c) in chi.iter_mut().enumerate() {
                *c = kronecker_symbol(r as i64, pi);
            }
            for x in 0..pi {
                let r = (((4 * x % pi + b2) * x % pi + 2 * b4) % pi * x % pi + b6).rem_euclid(pi);
                count += 1 + chi[r as usize] as i64;
            }
        }
        Ok(pi + 1 - count)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveRecord {
    pub ainvs: [i64; 5],
    pub points: Vec<[i64; 2]>,
}

/// The shipped curve registry: label -> (a-invariants, known points).
pub fn registry() -> BTreeMap<String, CurveRecord> {
    serde_json::from_str(include_str!("../../data/curves.json")).expect("curve registry")
}

pub fn curve(label: &str) -> Result<(WeierstrassCurve, Vec<CurvePoint>)> {
    let reg = registry();
    let rec = reg
        .get(label)
        .ok_or_else(|| Error::Input(format!("unknown curve {label}")))?;
    let e = WeierstrassCurve::from_ainvs(rec.ainvs)?;
    let pts = rec.points.iter().map(|p| CurvePoint::from_i64(p[0], p[1])).collect();
    Ok((e, pts))
}

#[cfg(test)]
mod tests;
