//! Residue symbols and local Hilbert symbols over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Prime(p) => s.serialize_u64(*p),
            Place::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(p) => Place::prime(p).map_err(serde::de::Error::custom),
            Raw::S(s) if s == "inf" => Ok(Place::Infinity),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad place {s}"))),
        }
    }
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(mut a: i128, mut n: i128) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/n), the standard extension of the Jacobi symbol to
/// all integers n (including 0, 2 and negative n).
pub fn kronecker_symbol(a: i64, n: i64) -> i8 {
    let (a, mut n) = (a as i128, n as i128);
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut t = 1i8;
    if n < 0 {
        n = -n;
        if a < 0 {
            t = -t;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if v % 2 == 1 && (r == 3 || r == 5) {
            t = -t;
        }
        n >>= v;
    }
    t * jacobi(a, n)
}

/// Kronecker symbol with a big numerator.
pub fn kronecker_big(a: &BigInt, n: i64) -> i8 {
    if let Some(a64) = a.to_i64() {
        return kronecker_symbol(a64, n);
    }
    if n == 0 {
        return 0;
    }
    // (a/|n|) only depends on a mod 8|n|; (a/-1) is the sign of a
    let m = 8 * n.unsigned_abs() as i64;
    let r = a.mod_floor(&BigInt::from(m)).to_i64().unwrap();
    let mut t = kronecker_symbol(r, n.abs());
    if n < 0 && a.is_negative() {
        t = -t;
    }
    t
}

/// Split a nonzero rational into p^v * u with u a p-adic unit.
/// Returns (v, numerator of u, denominator of u).
fn split_p(r: &BigRational, p: u64) -> (i64, BigInt, BigInt) {
    let bp = BigInt::from(p);
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let mut v = 0i64;
    while (&n % &bp).is_zero() {
        n /= &bp;
        v += 1;
    }
    while (&d % &bp).is_zero() {
        d /= &bp;
        v -= 1;
    }
    (v, n, d)
}

/// u mod m for a unit u = n/d with gcd(d, m) = 1.
fn unit_mod(n: &BigInt, d: &BigInt, m: u64) -> u64 {
    let bm = BigInt::from(m);
    let nn = n.mod_floor(&bm).to_u64().unwrap();
    let dd = d.mod_floor(&bm).to_u64().unwrap();
    let inv = super::modp::inv_mod(dd, m).expect("unit denominator");
    ((nn as u128 * inv as u128) % m as u128) as u64
}

/// Hilbert symbol (a, b)_v.
///
/// Odd p, with a = p^α u, b = p^β v:
///   (a,b)_p = (-1)^{αβ(p-1)/2} (u/p)^β (v/p)^α.
/// p = 2, with ε(u) = (u-1)/2 and ω(u) = (u²-1)/8 mod 2:
///   (a,b)_2 = (-1)^{ε(u)ε(v) + αω(v) + βω(u)}.
/// Real place: -1 iff a < 0 and b < 0.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("Hilbert symbol of zero".into()));
    }
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (al, un, ud) = split_p(a, 2);
            let (be, vn, vd) = split_p(b, 2);
            let u = unit_mod(&un, &ud, 8);
            let w = unit_mod(&vn, &vd, 8);
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omg = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w)
                + (al.rem_euclid(2) as u64) * omg(w)
                + (be.rem_euclid(2) as u64) * omg(u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let (al, un, ud) = split_p(a, p);
            let (be, vn, vd) = split_p(b, p);
            let (al, be) = (al.rem_euclid(2), be.rem_euclid(2));
            let mut s: i8 = if (al * be * (((p - 1) / 2) as i64)) % 2 == 1 { -1 } else { 1 };
            if be == 1 {
                s *= kronecker_symbol(unit_mod(&un, &ud, p) as i64, p as i64);
            }
            if al == 1 {
                s *= kronecker_symbol(unit_mod(&vn, &vd, p) as i64, p as i64);
            }
            Ok(s)
        }
    }
}
