//! Truncated q-expansions with coefficients in Q(sqrt(-2)).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::poly::q;
use crate::error::{Error, Result};

/// x + y*sqrt(-2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Qs2 {
    pub x: BigRational,
    pub y: BigRational,
}

impl Qs2 {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Qs2 { x, y }
    }

    pub fn int(n: i64) -> Self {
        Qs2 { x: q(n), y: BigRational::zero() }
    }

    pub fn rat(x: BigRational) -> Self {
        Qs2 { x, y: BigRational::zero() }
    }

    /// sqrt(-2).
    pub fn s() -> Self {
        Qs2 { x: BigRational::zero(), y: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        Qs2 { x: self.x.clone(), y: -&self.y }
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x + q(2) * &self.y * &self.y
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Qs2 { x: &self.x / &n, y: -&self.y / &n })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Qs2 { x: &self.x * r, y: &self.y * r }
    }
}

impl Add for &Qs2 {
    type Output = Qs2;
    fn add(self, o: &Qs2) -> Qs2 {
        Qs2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl Sub for &Qs2 {
    type Output = Qs2;
    fn sub(self, o: &Qs2) -> Qs2 {
        Qs2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Mul for &Qs2 {
    type Output = Qs2;
    fn mul(self, o: &Qs2) -> Qs2 {
        Qs2 {
            x: &self.x * &o.x - q(2) * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }
}

impl Neg for &Qs2 {
    type Output = Qs2;
    fn neg(self) -> Qs2 {
        Qs2 { x: -&self.x, y: -&self.y }
    }
}

impl fmt::Display for Qs2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}*s", self.y),
            _ => write!(f, "{} {} {}*s", self.x, if self.y.is_negative() { "-" } else { "+" }, self.y.abs()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "3/2")]
    ThreeHalves,
    #[serde(rename = "2")]
    Two,
}

/// Coefficients c_0..c_B plus weight, level and character metadata. The
/// character is the discriminant of a Kronecker character; 1 is trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub coeffs: Vec<Qs2>,
    pub weight: Weight,
    pub level: u64,
    pub character: i64,
}

#[derive(Serialize, Deserialize)]
struct QExpansionJson {
    weight: Weight,
    level: u64,
    character: i64,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for QExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QExpansionJson {
            weight: self.weight,
            level: self.level,
            character: self.character,
            coeffs: self.coeffs.iter().map(|c| [c.x.to_string(), c.y.to_string()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QExpansionJson::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for [x, y] in &j.coeffs {
            let px = x.parse::<BigRational>().map_err(serde::de::Error::custom)?;
            let py = y.parse::<BigRational>().map_err(serde::de::Error::custom)?;
            coeffs.push(Qs2::new(px, py));
        }
        Ok(QExpansion { coeffs, weight: j.weight, level: j.level, character: j.character })
    }
}

impl QExpansion {
    pub fn new(coeffs: Vec<Qs2>, weight: Weight, level: u64, character: i64) -> Self {
        QExpansion { coeffs, weight, level, character }
    }

    pub fn from_ints(c: &[i64], weight: Weight, level: u64, character: i64) -> Self {
        Self::new(c.iter().map(|&v| Qs2::int(v)).collect(), weight, level, character)
    }

    pub fn from_bigints(c: &[BigInt], weight: Weight, level: u64, character: i64) -> Self {
        Self::new(
            c.iter().map(|v| Qs2::rat(BigRational::from_integer(v.clone()))).collect(),
            weight,
            level,
            character,
        )
    }

    pub fn zero(bound: usize, weight: Weight, level: u64, character: i64) -> Self {
        Self::new(vec![Qs2::zero(); bound + 1], weight, level, character)
    }

    /// Truncation bound B.
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &Qs2 {
        &self.coeffs[m]
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, bound: usize) -> Result<Self> {
        if bound > self.bound() {
            return Err(Error::Truncation { need: bound, have: self.bound() });
        }
        Ok(Self::new(self.coeffs[..=bound].to_vec(), self.weight, self.level, self.character))
    }

    fn zip(&self, o: &Self, f: impl Fn(&Qs2, &Qs2) -> Qs2) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let c = (0..n).map(|i| f(&self.coeffs[i], &o.coeffs[i])).collect();
        Self::new(c, self.weight, self.level.max(o.level), self.character)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &Qs2) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), self.weight, self.level, self.character)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect(), self.weight, self.level, self.character)
    }

    /// Cauchy product truncated at the smaller bound; metadata is left to
    /// the caller.
    pub fn cauchy(&self, o: &Self) -> Vec<Qs2> {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![Qs2::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Human-readable series, e.g. "q^2 + q^3 - 5*q^7 + O(q^51)".
    pub fn display_series(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if c.is_rational() => (true, rest.to_string()),
                _ => (false, body),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = body == "1";
            match (m, unit) {
                (0, _) => s.push_str(&body),
                (1, true) => s.push('q'),
                (1, false) => s.push_str(&format!("{body}*q")),
                (_, true) => s.push_str(&format!("q^{m}")),
                (_, false) => s.push_str(&format!("{body}*q^{m}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s.push_str(&format!(" + O(q^{})", self.bound() + 1));
        s
    }
}
