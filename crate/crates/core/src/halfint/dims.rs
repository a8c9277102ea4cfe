//! Dimension formulas for Gamma_0(N).

use num_integer::Integer;

use crate::arith::primes::factor_u64;
use crate::error::{Error, Result};

fn divisors(n: u64) -> Vec<u64> {
    let mut d = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = d.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            d.extend(cur.iter().map(|x| x * pk));
        }
    }
    d.sort_unstable();
    d
}

fn phi(n: u64) -> u64 {
    factor_u64(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// [SL_2(Z) : Gamma_0(N)].
pub fn gamma0_index(n: u64) -> u64 {
    factor_u64(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p + 1))
}

pub fn gamma0_cusps(n: u64) -> u64 {
    divisors(n).into_iter().map(|d| phi(d.gcd(&(n / d)))).sum()
}

fn elliptic_points(n: u64, q: i64) -> u64 {
    // number of solutions of x^2 + x + 1 (q = 3) or x^2 + 1 (q = 2) mod n
    let f = factor_u64(n);
    let mut r = 1u64;
    for (p, e) in f {
        let local = if q == 2 {
            match p {
                2 => u64::from(e == 1),
                _ if p % 4 == 1 => 2,
                _ => 0,
            }
        } else {
            match p {
                3 => u64::from(e == 1),
                _ if p % 3 == 1 => 2,
                _ => 0,
            }
        };
        r *= local;
    }
    r
}

pub fn genus_x0(n: u64) -> u64 {
    // g = 1 + idx/12 - nu2/4 - nu3/3 - c/2, evaluated over 12
    let v = 12 + gamma0_index(n) as i64 - 3 * elliptic_points(n, 2) as i64 - 4 * elliptic_points(n, 3) as i64
        - 6 * gamma0_cusps(n) as i64;
    (v / 12) as u64
}

/// dim M_2(Gamma_0(N)) = g + c - 1.
pub fn dim_m2(n: u64) -> u64 {
    genus_x0(n) + gamma0_cusps(n) - 1
}

fn squarefree_kernel_disc(t: u64) -> u64 {
    // conductor of the Kronecker character of t
    let mut core = 1u64;
    for (p, e) in factor_u64(t) {
        if e % 2 == 1 {
            core *= p;
        }
    }
    if core % 4 == 1 {
        core
    } else {
        4 * core
    }
}

fn totally_even(t: u64) -> bool {
    // the character (t/.) splits into local components, one per prime of
    // its conductor; a component is odd exactly for p = 3 mod 4 and for the
    // 2-part of discriminants -4 * (odd) and 8 * (3 mod 4).
    let f = squarefree_kernel_disc(t);
    let odd_core: u64 = factor_u64(f).into_iter().filter(|&(p, _)| p != 2).map(|(p, _)| p).product();
    let odd_components = factor_u64(odd_core).into_iter().filter(|&(p, _)| p % 4 == 3).count();
    odd_components == 0
}

/// dim S_{1/2}(Gamma_0(N)) for trivial character, by counting theta
/// series sum psi(n) q^(t n^2) with psi = (t/.) of conductor r, 4 r^2 t | N,
/// and psi not totally even.
pub fn dim_s12(n: u64) -> u64 {
    (1..=n / 4)
        .filter(|t| {
            let r = squarefree_kernel_disc(*t);
            r != 1 && n % (4 * r * r * t) == 0 && !totally_even(*t)
        })
        .count() as u64
}

/// dim M_{3/2}(Gamma_0(N)) for trivial character, 4 | N:
/// idx/24 + c/2 - (irregular cusp correction) + dim S_{1/2}.
pub fn dim_weight_3_2(n: u64) -> Result<u64> {
    if n % 4 != 0 {
        return Err(Error::Input(format!("level {n} is not a multiple of 4")));
    }
    // work in units of 1/24
    let mut v = gamma0_index(n) as i64 + 12 * gamma0_cusps(n) as i64;
    for c in divisors(n) {
        if c % 2 == 0 && c % 4 != 0 {
            let w = n / c.pow(2).gcd(&n);
            let frac24 = (3 * w % 4) as i64 * 6;
            v -= phi(c.gcd(&(n / c))) as i64 * frac24;
        }
    }
    assert!(v % 24 == 0, "non-integral dimension at level {n}");
    Ok((v / 24) as u64 + dim_s12(n))
}
