use num_integer::Integer;

use super::{QExpansion, Qs2, Weight};
use crate::error::{Error, Result};

/// Theta_n = sum over j of q^(n j^2), weight 1/2 and level 4n.
pub fn theta_unary(n: u64, bound: usize) -> QExpansion {
    assert!(n >= 1);
    let mut c = vec![0i64; bound + 1];
    c[0] = 1;
    let mut j = 1u64;
    while n * j * j <= bound as u64 {
        c[(n * j * j) as usize] += 2;
        j += 1;
    }
    QExpansion::from_ints(&c, Weight::Half, 4 * n, 1)
}

/// g * Theta_d for g of weight 1, level n and character (-d/.), which is a
/// weight 3/2 form of level lcm(n, 4d) with trivial character provided d | n.
pub fn product_weight_3_2(g: &QExpansion, d: u64, bound: usize) -> Result<QExpansion> {
    if d == 0 || g.level % d != 0 {
        return Err(Error::LemmaHypothesis(format!("{d} does not divide the level {}", g.level)));
    }
    if g.weight != Weight::One {
        return Err(Error::LemmaHypothesis("first factor must have weight 1".into()));
    }
    if g.bound() < bound {
        return Err(Error::Truncation { need: bound, have: g.bound() });
    }
    let mut out = g.coeffs[..=bound].to_vec();
    let mut j = 1usize;
    while d as usize * j * j <= bound {
        let s = d as usize * j * j;
        for m in s..=bound {
            let t = &g.coeffs[m - s] + &g.coeffs[m - s];
            out[m] = &out[m] + &t;
        }
        j += 1;
    }
    Ok(QExpansion::new(out, Weight::ThreeHalves, g.level.lcm(&(4 * d)), 1))
}

/// g(4z) truncated at `bound`; needs g known up to bound / 4.
pub fn expand_4z(g: &QExpansion, bound: usize) -> Result<QExpansion> {
    if g.bound() < bound / 4 {
        return Err(Error::Truncation { need: bound / 4, have: g.bound() });
    }
    let mut c = vec![Qs2::zero(); bound + 1];
    for m in 0..=bound / 4 {
        c[4 * m] = g.coeffs[m].clone();
    }
    Ok(QExpansion::new(c, g.weight, 4 * g.level, g.character))
}

/// Kohnen plus-space condition for weight 3/2: c_m = 0 whenever m = 1, 2 mod 4.
pub fn kohnen_check(f: &QExpansion) -> bool {
    f.coeffs.iter().enumerate().all(|(m, c)| matches!(m % 4, 0 | 3) || c.is_zero())
}

/// Linear combination sum c_i f_i, truncated to the shortest input.
pub fn combine(basis: &[QExpansion], coeffs: &[Qs2]) -> QExpansion {
    assert_eq!(basis.len(), coeffs.len());
    assert!(!basis.is_empty());
    let n = basis.iter().map(|b| b.coeffs.len()).min().unwrap();
    let mut out = vec![Qs2::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(&b.coeffs) {
            if !v.is_zero() {
                *o = &*o + &(v * c);
            }
        }
    }
    let b0 = &basis[0];
    QExpansion::new(out, b0.weight, basis.iter().map(|b| b.level).max().unwrap(), b0.character)
}
