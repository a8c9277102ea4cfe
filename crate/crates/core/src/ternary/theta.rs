use super::reduce::for_each_vector;
use super::TernaryForm;
use crate::arith::primes::squarefree_part_int;
use crate::error::Result;
use crate::halfint::{QExpansion, Weight};

/// r_Q(m) = #{v : Q(v) = m} for 0 <= m <= bound.
pub fn theta_counts(t: &TernaryForm, bound: usize) -> Vec<u64> {
    let mut c = vec![0u64; bound + 1];
    for_each_vector(t, bound as i64, |_, n| c[n as usize] += 1);
    c
}

pub fn theta_series(t: &TernaryForm, bound: usize) -> Result<QExpansion> {
    let (disc, level) = t.invariants()?;
    // the character of a ternary theta series is that of disc (up to 2)
    let sq = squarefree_part_int(disc)?;
    let counts: Vec<i64> = theta_counts(t, bound).into_iter().map(|x| x as i64).collect();
    Ok(QExpansion::from_ints(&counts, Weight::ThreeHalves, level as u64, if sq == 1 { 1 } else { sq }))
}
