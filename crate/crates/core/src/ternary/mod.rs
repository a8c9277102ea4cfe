//! Positive-definite integral ternary quadratic forms
//! Q = a1 x^2 + a2 y^2 + a3 z^2 + a23 yz + a13 xz + a12 xy.

mod enumerate;
mod reduce;
mod theta;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{candidate_discriminants, enumerate_classes, EnumerateOptions};
pub use reduce::{is_equivalent, reduce, short_vectors};
pub use theta::{theta_counts, theta_series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TernaryForm {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a23: i64,
    pub a13: i64,
    pub a12: i64,
}

pub type Vec3 = [i64; 3];

impl TernaryForm {
    pub const fn new(a1: i64, a2: i64, a3: i64, a23: i64, a13: i64, a12: i64) -> Self {
        TernaryForm { a1, a2, a3, a23, a13, a12 }
    }

    /// From a row [a1, a2, a3, a23, a13, a12].
    pub fn from_row(r: [i64; 6]) -> Self {
        Self::new(r[0], r[1], r[2], r[3], r[4], r[5])
    }

    pub fn row(&self) -> [i64; 6] {
        [self.a1, self.a2, self.a3, self.a23, self.a13, self.a12]
    }

    /// Twice the Gram matrix; integral with even diagonal.
    pub fn gram2(&self) -> [[i64; 3]; 3] {
        [
            [2 * self.a1, self.a12, self.a13],
            [self.a12, 2 * self.a2, self.a23],
            [self.a13, self.a23, 2 * self.a3],
        ]
    }

    pub fn from_gram2(g: &[[i64; 3]; 3]) -> Self {
        Self::new(g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[1][2], g[0][2], g[0][1])
    }

    pub fn eval(&self, v: &Vec3) -> i64 {
        let [x, y, z] = *v;
        self.a1 * x * x + self.a2 * y * y + self.a3 * z * z + self.a23 * y * z + self.a13 * x * z + self.a12 * x * y
    }

    /// v^T (2A) w.
    pub fn bilinear(&self, v: &Vec3, w: &Vec3) -> i64 {
        let g = self.gram2();
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                s += v[i] * g[i][j] * w[j];
            }
        }
        s
    }

    pub fn is_positive_definite(&self) -> bool {
        let delta = 4 * self.a1 * self.a2 - self.a12 * self.a12;
        self.a1 > 0 && delta > 0 && self.disc_raw() > 0
    }

    fn disc_raw(&self) -> i64 {
        4 * self.a1 * self.a2 * self.a3 - self.a1 * self.a23 * self.a23 - self.a2 * self.a13 * self.a13
            - self.a3 * self.a12 * self.a12
            + self.a12 * self.a13 * self.a23
    }

    /// det(2A) / 2 = 4 det(A).
    pub fn discriminant(&self) -> Result<i64> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(self.disc_raw())
    }

    /// Least N with N (2A)^{-1} integral with even diagonal.
    pub fn level(&self) -> Result<i64> {
        let d2 = 2 * self.discriminant()?; // det(2A)
        let g = self.gram2();
        let mut n = 1i64;
        for i in 0..3 {
            for j in i..3 {
                let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
                let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
                let cof = g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1];
                let need = if i == j { 2 * d2 / (2 * d2).gcd(&cof) } else { d2 / d2.gcd(&cof) };
                n = n.lcm(&need);
            }
        }
        Ok(n)
    }

    pub fn invariants(&self) -> Result<(i64, i64)> {
        Ok((self.discriminant()?, self.level()?))
    }

    /// S^T (2A) S for an integral 3x3 matrix S (columns are the new basis).
    pub fn transform(&self, s: &[[i64; 3]; 3]) -> Self {
        let cols: Vec<Vec3> = (0..3).map(|j| [s[0][j], s[1][j], s[2][j]]).collect();
        self.with_basis(&cols[0], &cols[1], &cols[2])
    }

    pub fn with_basis(&self, v1: &Vec3, v2: &Vec3, v3: &Vec3) -> Self {
        Self::new(
            self.eval(v1),
            self.eval(v2),
            self.eval(v3),
            self.bilinear(v2, v3),
            self.bilinear(v1, v3),
            self.bilinear(v1, v2),
        )
    }

    /// All values are 0 or 3 mod 4 (values mod 4 depend on v mod 4 only).
    pub fn is_kohnen(&self) -> bool {
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let r = self.eval(&[x, y, z]).rem_euclid(4);
                    if r == 1 || r == 2 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}\t{}\t{}", self.a1, self.a2, self.a3, self.a23, self.a13, self.a12)
    }
}

pub fn det3(v1: &Vec3, v2: &Vec3, v3: &Vec3) -> i64 {
    v1[0] * (v2[1] * v3[2] - v2[2] * v3[1]) - v1[1] * (v2[0] * v3[2] - v2[2] * v3[0])
        + v1[2] * (v2[0] * v3[1] - v2[1] * v3[0])
}

/// The shipped class tables, keyed by level.
pub fn table(level: i64) -> Option<Vec<TernaryForm>> {
    let all: std::collections::BTreeMap<String, Vec<[i64; 6]>> =
        serde_json::from_str(include_str!("../../data/tables.json")).expect("tables");
    all.get(&level.to_string()).map(|rows| rows.iter().map(|r| TernaryForm::from_row(*r)).collect())
}

#[cfg(test)]
mod tests;
