use std::collections::BTreeSet;

use super::reduce::reduce;
use super::TernaryForm;
use crate::arith::primes::factor_u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Keep only forms with square discriminant (trivial character).
    pub square_disc: bool,
    /// Keep only forms all of whose values are 0 or 3 mod 4.
    pub kohnen: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { square_disc: true, kohnen: false }
    }
}

/// Discriminants d compatible with level n: 2d | n^3 and n | 4d.
pub fn candidate_discriminants(n: i64, square_only: bool) -> Vec<i64> {
    let n3 = (n as i128).pow(3);
    assert!(n3 % 2 == 0, "odd level: no integral ternary forms");
    let top = (n3 / 2) as u64;
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(top) {
        let mut next = Vec::new();
        for d in &divs {
            let mut m = *d;
            for _ in 0..=e {
                next.push(m);
                m *= p;
            }
        }
        divs = next;
    }
    let mut out: Vec<i64> = divs
        .into_iter()
        .map(|d| d as i64)
        .filter(|d| (4 * d) % n == 0)
        .filter(|&d| !square_only || { let s = (d as f64).sqrt().round() as i64; s * s == d })
        .collect();
    out.sort_unstable();
    out
}

/// One reduced representative per class of positive-definite ternary forms
/// of the given level, sorted.
///
/// Every class has a representative with a1 <= a2 <= a3, |a12|, |a13| <= a1,
/// |a23| <= a2, off-diagonals all positive or all nonpositive, and
/// a1 + a2 + a12 + a13 + a23 >= 0; such forms satisfy a1 a2 a3 <= d/2.
/// For fixed (a1, a2, a12, a13) the discriminant d = a3 delta - R with
/// delta = 4 a1 a2 - a12^2 and R = a1 a23^2 + a2 a13^2 - a12 a13 a23, so a23
/// is scanned with R tracked incrementally mod delta.
pub fn enumerate_classes(level: i64, opts: EnumerateOptions) -> Vec<TernaryForm> {
    let mut found = BTreeSet::new();
    for d in candidate_discriminants(level, opts.square_disc) {
        scan_discriminant(d, |t| {
            if opts.kohnen && !t.is_kohnen() {
                return;
            }
            if t.level().ok() == Some(level) {
                found.insert(reduce(&t).expect("positive definite"));
            }
        }, opts.kohnen);
    }
    found.into_iter().collect()
}

fn kohnen_residue(a: i64) -> bool {
    matches!(a.rem_euclid(4), 0 | 3)
}

fn scan_discriminant(d: i64, mut hit: impl FnMut(TernaryForm), kohnen: bool) {
    let half = d / 2;
    let mut a1 = 1i64;
    while a1 * a1 * a1 <= half {
        if kohnen && !kohnen_residue(a1) {
            a1 += 1;
            continue;
        }
        let mut a2 = a1;
        while a1 * a2 * a2 <= half {
            if kohnen && !kohnen_residue(a2) {
                a2 += 1;
                continue;
            }
            for a12 in -a1..=a1 {
                if kohnen && !kohnen_residue(a1 + a2 + a12) {
                    continue;
                }
                let delta = 4 * a1 * a2 - a12 * a12;
                let (lo13, hi13) = if a12 > 0 { (1, a1) } else { (-a1, 0) };
                for a13 in lo13..=hi13 {
                    let (lo, hi) = if a12 > 0 {
                        (1, a2)
                    } else {
                        (-a2.min(a1 + a2 + a12 + a13), 0)
                    };
                    if lo > hi {
                        continue;
                    }
                    let r_at = |a23: i64| a1 * a23 * a23 + a2 * a13 * a13 - a12 * a13 * a23;
                    let mut r = (d + r_at(lo)).rem_euclid(delta);
                    let mut inc = (a1 * (2 * lo + 1) - a12 * a13).rem_euclid(delta);
                    let step = (2 * a1) % delta;
                    for a23 in lo..=hi {
                        if r == 0 {
                            let a3 = (d + r_at(a23)) / delta;
                            if a3 >= a2 && a1 * a2 * a3 <= half {
                                hit(TernaryForm::new(a1, a2, a3, a23, a13, a12));
                            }
                        }
                        r += inc;
                        if r >= delta {
                            r -= delta;
                        }
                        inc += step;
                        if inc >= delta {
                            inc -= delta;
                        }
                    }
                }
            }
            a2 += 1;
        }
        a1 += 1;
    }
}
