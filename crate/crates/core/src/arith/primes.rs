//! Primality, trial division and squarefree parts.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division bound used before falling back to Pollard rho.
pub const TRIAL_BOUND: u64 = 1_000_000;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Probabilistic Miller-Rabin on big integers (fixed bases, adequate here).
pub fn is_probable_prime_big(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime(v);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    for c in 1u32..40 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        let mut steps = 0u64;
        while d.is_one() && steps < 2_000_000 {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            steps += 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

fn push_factor(out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        out.push((p, e));
    }
}

fn factor_cofactor(n: BigInt, out: &mut Vec<(BigInt, u32)>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime_big(&n) {
        push_factor(out, n, 1);
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        let mut sub = Vec::new();
        factor_cofactor(r, &mut sub)?;
        for (p, e) in sub {
            push_factor(out, p, 2 * e);
        }
        return Ok(());
    }
    match pollard_rho(&n) {
        Some(d) => {
            let q = &n / &d;
            factor_cofactor(d, out)?;
            factor_cofactor(q, out)
        }
        None => Err(Error::Factorization(n.to_string())),
    }
}

/// Factor |n| into prime powers, ascending. Trial division to 10^6, then
/// perfect-square detection and Pollard rho on the cofactor.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_cofactor(m, &mut out)?;
    out.sort();
    Ok(out)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut m = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    while !m.is_zero() && (&m % &bp).is_zero() {
        m /= &bp;
        e += 1;
    }
    e
}

/// The squarefree integer in the class of `r` modulo rational squares.
pub fn squarefree_part(r: &BigRational) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::Domain("squarefree part of 0".into()));
    }
    // r = n/d ~ n*d mod squares
    let nd = r.numer() * r.denom();
    let mut s = BigInt::one();
    for (p, e) in factor(&nd)? {
        if e % 2 == 1 {
            s *= p;
        }
    }
    if nd.sign() == Sign::Minus {
        s = -s;
    }
    Ok(s)
}

pub fn squarefree_part_int(n: i64) -> Result<i64> {
    let s = squarefree_part(&BigRational::from_integer(BigInt::from(n)))?;
    s.to_i64().ok_or_else(|| Error::Domain("overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_primes() {
        let ps = primes_up_to(50);
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        for n in 0..2000u64 {
            assert_eq!(is_prime(n), ps_contains(n), "{n}");
        }
    }

    fn ps_contains(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&q(16, 1)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_part(&q(-688, 1)).unwrap(), BigInt::from(-43));
        assert_eq!(squarefree_part(&q(4, 9)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_part(&q(3, 2)).unwrap(), BigInt::from(6));
        assert!(squarefree_part(&q(0, 1)).is_err());
    }

    #[test]
    fn factors_large_square_cofactor() {
        // 7237961 is prime and exceeds the trial bound
        let n = BigInt::from(7237961u64) * BigInt::from(7237961u64) * 563 * 9;
        let f = factor(&n).unwrap();
        assert_eq!(
            f,
            vec![
                (BigInt::from(3), 2),
                (BigInt::from(563), 1),
                (BigInt::from(7237961u64), 2)
            ]
        );
    }

    #[test]
    fn pollard_splits_semiprime() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factor(&n).unwrap();
        assert_eq!(f.len(), 2);
    }
}
