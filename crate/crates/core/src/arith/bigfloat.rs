//! Fixed-point complex numbers on big integers and polynomial root finding.
//!
//! A value is stored as (re, im) scaled by 2^bits. All operands of a binary
//! operation must share the same `bits`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RationalPoly;
use crate::error::{Error, Result};

/// Default working precision for root finding, in decimal digits.
pub const DEFAULT_DIGITS: u32 = 200;

pub fn digits_to_bits(d: u32) -> u32 {
    // log2(10) < 3.3222
    (d as f64 * 3.3222).ceil() as u32 + 16
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

fn shr_round(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    // round(n/d) for d > 0
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * two))
}

impl Cx {
    pub fn zero(bits: u32) -> Self {
        Cx { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        Cx { re: n << bits, im: BigInt::zero(), bits }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(n), bits)
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        let re = div_round(&(r.numer() << bits), r.denom());
        Cx { re, im: BigInt::zero(), bits }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            if x == 0.0 || !x.is_finite() {
                return BigInt::zero();
            }
            // x = m * 2^e exactly with integer m
            let e = x.abs().log2().floor() as i32 - 60;
            let m = (x / 2f64.powi(e)).round() as i128;
            let shift = bits as i32 + e;
            if shift >= 0 {
                BigInt::from(m) << shift as u32
            } else {
                shr_round(&BigInt::from(m), (-shift) as u32)
            }
        };
        Cx { re: conv(re), im: conv(im), bits }
    }

    pub fn i(bits: u32) -> Self {
        Cx { re: BigInt::zero(), im: BigInt::one() << bits, bits }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let f = |x: &BigInt| -> f64 {
            let s = x.bits() as i64 - 60;
            if s > 0 {
                (x >> s as u32).to_f64().unwrap() * 2f64.powi(s as i32) / 2f64.powi(self.bits as i32)
            } else {
                x.to_f64().unwrap() / 2f64.powi(self.bits as i32)
            }
        };
        (f(&self.re), f(&self.im))
    }

    /// Change precision (truncating or zero-extending).
    pub fn with_bits(&self, bits: u32) -> Self {
        let adj = |x: &BigInt| match bits.cmp(&self.bits) {
            Ordering::Greater => x << (bits - self.bits),
            Ordering::Less => shr_round(x, self.bits - bits),
            Ordering::Equal => x.clone(),
        };
        Cx { re: adj(&self.re), im: adj(&self.im), bits }
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -&self.im, bits: self.bits }
    }

    /// |z|^2 scaled by 2^bits.
    pub fn norm_sqr(&self) -> BigInt {
        shr_round(&(&self.re * &self.re + &self.im * &self.im), self.bits)
    }

    /// max(|re|, |im|) as a scaled integer; a cheap magnitude bound.
    pub fn max_abs(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    /// log2 of the magnitude, roughly; -inf for zero.
    pub fn log2_abs(&self) -> f64 {
        let m = self.max_abs();
        if m.is_zero() {
            return f64::NEG_INFINITY;
        }
        m.bits() as f64 - self.bits as f64
    }

    /// True when |re|,|im| < 2^-k.
    pub fn is_below(&self, k: i64) -> bool {
        self.log2_abs() < -(k as f64)
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        Cx { re: &self.re * n, im: &self.im * n, bits: self.bits }
    }

    pub fn inv(&self) -> Result<Self> {
        let d = &self.re * &self.re + &self.im * &self.im;
        if d.is_zero() {
            return Err(Error::Precision("division by zero".into()));
        }
        let b2 = 2 * self.bits;
        Ok(Cx {
            re: div_round(&(&self.re << b2), &d),
            im: div_round(&(-&self.im << b2), &d),
            bits: self.bits,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let b = self.bits;
        let r2 = &self.re * &self.re + &self.im * &self.im; // scaled 2^(2b)
        let abs = r2.sqrt(); // scaled 2^b
        let re_sq = (&abs + &self.re) << (b - 1); // (|z|+re)/2, scaled 2^(2b)
        let im_sq = (&abs - &self.re) << (b - 1);
        let mut re = if re_sq.is_positive() { re_sq.sqrt() } else { BigInt::zero() };
        let mut im = if im_sq.is_positive() { im_sq.sqrt() } else { BigInt::zero() };
        if self.im.is_negative() {
            im = -im;
        }
        // one Newton polish: w <- (w + z/w)/2 removes the truncation bias
        let w = Cx { re: re.clone(), im: im.clone(), bits: b };
        if let Ok(q) = self.div(&w) {
            let s = &w + &q;
            re = shr_round(&s.re, 1);
            im = shr_round(&s.im, 1);
        }
        Cx { re, im, bits: b }
    }

    /// Nearest Gaussian integer and the distance (max-norm, as f64 log2).
    pub fn round(&self) -> (BigInt, BigInt, f64) {
        let r = shr_round(&self.re, self.bits);
        let i = shr_round(&self.im, self.bits);
        let diff = self - &Cx::from_int(&r, self.bits) - Cx { re: BigInt::zero(), im: &i << self.bits, bits: self.bits };
        (r, i, diff.log2_abs())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Cx::from_i64(1, self.bits);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        debug_assert_eq!(self.bits, o.bits);
        Cx { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits }
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        debug_assert_eq!(self.bits, o.bits);
        Cx { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        debug_assert_eq!(self.bits, o.bits);
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Cx { re: shr_round(&re, self.bits), im: shr_round(&im, self.bits), bits: self.bits }
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -&self.re, im: -&self.im, bits: self.bits }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cx {
            type Output = Cx;
            fn $m(self, o: Cx) -> Cx {
                (&self).$m(&o)
            }
        }
        impl $tr<&Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: &Cx) -> Cx {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Evaluate a polynomial with complex coefficients (ascending) at z.
pub fn horner(coeffs: &[Cx], z: &Cx) -> Cx {
    let mut acc = Cx::zero(z.bits);
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

/// Expand prod (X - z_i), ascending coefficients.
pub fn poly_from_roots(roots: &[Cx], bits: u32) -> Vec<Cx> {
    let mut p = vec![Cx::from_i64(1, bits)];
    for z in roots {
        let mut next = vec![Cx::zero(bits); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * z);
        }
        p = next;
    }
    p
}

/// Round complex coefficients to integers; fails unless every coefficient
/// is within 2^-tol_bits of a rational integer.
pub fn round_to_integers(coeffs: &[Cx], tol_bits: i64) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(coeffs.len());
    let mut worst = f64::NEG_INFINITY;
    for c in coeffs {
        let (r, i, err) = c.round();
        let err = if i.is_zero() { err } else { f64::INFINITY };
        worst = worst.max(err);
        out.push(r);
    }
    if worst > -(tol_bits as f64) {
        return Err(Error::Precision(format!("rounding residual 2^{worst:.1}")));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct C64(f64, f64);

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C64) -> C64 {
        C64(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C64) -> C64 {
        let d = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// Durand-Kerner in double precision for starting values.
fn durand_kerner(monic: &[f64]) -> Vec<C64> {
    let n = monic.len() - 1;
    let bound = 1.0 + monic[..n].iter().fold(0f64, |m, c| m.max(c.abs()));
    let seed = C64(0.4, 0.9);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let mut w = C64(1.0, 0.0);
            for _ in 0..k {
                w = w.mul(seed);
            }
            C64(w.0 * bound.min(10.0), w.1 * bound.min(10.0))
        })
        .collect();
    let eval = |x: C64| {
        let mut acc = C64(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc.mul(x).add(C64(c, 0.0));
        }
        acc
    };
    for _ in 0..2000 {
        let mut delta = 0f64;
        for i in 0..n {
            let mut den = C64(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            let step = eval(z[i]).div(den);
            z[i] = z[i].sub(step);
            delta = delta.max(step.abs());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

/// All complex roots of a squarefree polynomial, to about `digits` decimal
/// digits, sorted by real part then imaginary part.
pub fn complex_roots(f: &RationalPoly, digits: u32) -> Result<Vec<Cx>> {
    let n = f.degree();
    if n < 1 {
        return Err(Error::Domain("complex_roots needs positive degree".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let g = f.monic();
    let bits = digits_to_bits(digits);
    let work = bits + 64;
    let monic_f64: Vec<f64> = g.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let starts = durand_kerner(&monic_f64);
    let coeffs: Vec<Cx> = g.coeffs().iter().map(|c| Cx::from_rational(c, work)).collect();
    let dcoeffs: Vec<Cx> = g.derivative().coeffs().iter().map(|c| Cx::from_rational(c, work)).collect();
    let mut roots = Vec::with_capacity(n as usize);
    for s in starts {
        let mut z = Cx::from_f64(s.0, s.1, work);
        let mut converged = false;
        for _ in 0..200 {
            let fz = horner(&coeffs, &z);
            let dz = horner(&dcoeffs, &z);
            let step = fz.div(&dz)?;
            z = &z - &step;
            if step.is_below(work as i64 - 8) || step.max_abs().is_zero() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Precision("Newton refinement did not converge".into()));
        }
        roots.push(z.with_bits(bits));
    }
    // distinctness: a cluster would mean Durand-Kerner collapsed two starts
    let tol = -(bits as f64) / 2.0;
    for i in 0..roots.len() {
        for j in 0..i {
            if (&roots[i] - &roots[j]).log2_abs() < tol {
                return Err(Error::Precision("root isolation failed".into()));
            }
        }
    }
    sort_roots(&mut roots);
    Ok(roots)
}

/// Sort by real part, then imaginary part, treating differences below
/// 2^(-bits/2) as ties.
pub fn sort_roots(roots: &mut [Cx]) {
    roots.sort_by(|a, b| {
        let tol = BigInt::one() << (a.bits / 2);
        let d = &a.re - &b.re;
        if d.abs() > tol {
            return d.sign().cmp(&num_bigint::Sign::NoSign);
        }
        a.im.cmp(&b.im)
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_and_div() {
        let b = 200;
        let m4 = Cx::from_i64(-4, b);
        let s = m4.sqrt();
        assert!((&s - &Cx { re: BigInt::zero(), im: BigInt::from(2) << b, bits: b }).is_below(190));
        let two = Cx::from_i64(2, b);
        let r = two.sqrt();
        assert!((&(&r * &r) - &two).is_below(190));
        let q = Cx::from_i64(7, b).div(&Cx::from_i64(2, b)).unwrap();
        assert_eq!(q.round().0, BigInt::from(4));
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let f = RationalPoly::from_i64(&[1, 0, 1]);
        let r = complex_roots(&f, 50).unwrap();
        assert_eq!(r.len(), 2);
        let (a, b) = (r[0].to_f64(), r[1].to_f64());
        assert!(a.0.abs() < 1e-12 && (a.1 + 1.0).abs() < 1e-12);
        assert!(b.0.abs() < 1e-12 && (b.1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quartic_signature_and_residual() {
        let f = RationalPoly::from_i64(&[-1, -2, 0, 0, 1]);
        let digits = 200;
        let r = complex_roots(&f, digits).unwrap();
        let bits = digits_to_bits(digits);
        let coeffs: Vec<Cx> = f.coeffs().iter().map(|c| Cx::from_rational(c, bits)).collect();
        let mut real = 0;
        for z in &r {
            // |f(z)| < 10^-(digits-10)
            assert!(horner(&coeffs, z).log2_abs() < -((digits - 10) as f64) * 3.32);
            if z.im.abs() < (BigInt::one() << (bits / 2)) {
                real += 1;
            }
        }
        assert_eq!(real, 2);
    }

    #[test]
    fn non_squarefree_rejected() {
        let f = RationalPoly::from_i64(&[1, -2, 1]);
        assert_eq!(complex_roots(&f, 30).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn reconstruct_integer_poly() {
        let f = RationalPoly::from_i64_desc(&[1, -1, 0, -2, 1]);
        let r = complex_roots(&f, 60).unwrap();
        let c = poly_from_roots(&r, r[0].bits);
        let ints = round_to_integers(&c, 100).unwrap();
        assert_eq!(ints, f.integer_coeffs().unwrap());
    }
}
