use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::character::FrobeniusTable;
use crate::arith::{kronecker_symbol, primes_up_to, RationalPoly};
use crate::error::{Error, Result};
use crate::halfint::Qs2;

/// How to set a_p at a prime dividing the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RamifiedRule {
    /// p^2 divides the level: a_p = 0.
    Zero,
    /// p exactly divides the level: a_p = +1 or -1 according as the
    /// unramified factors of the degree-24 polynomial mod p have degree 1
    /// or 2.
    Inertia,
}

/// Supplies the full trace at a prime the patterns cannot decide.
pub type Resolver<'a> = &'a dyn Fn(u64) -> Result<Option<Qs2>>;

#[derive(Clone, Debug)]
pub struct Weight1Series {
    /// a_0..a_B with a_0 = 0.
    pub coeffs: Vec<Qs2>,
    /// Primes whose a_p carries an unresolved sign (set to +sqrt(-2)).
    pub ambiguous: Vec<u64>,
    /// Primes settled by the resolver.
    pub resolved: Vec<u64>,
}

fn inertia_value(poly24: &RationalPoly, p: u64) -> Result<i64> {
    let pat = poly24.factorization_pattern_mod_p(p)?;
    let un = pat.unramified_degrees();
    if un.is_empty() {
        return Err(Error::UnknownPattern(p));
    }
    if un.iter().all(|&d| d == 1) {
        Ok(1)
    } else if un.iter().all(|&d| d == 2) {
        Ok(-1)
    } else {
        Err(Error::UnknownPattern(p))
    }
}

/// a_p at a prime of good reduction from the two factorization patterns.
pub fn frobenius_trace(
    table: &FrobeniusTable,
    quartic: &RationalPoly,
    poly24: &RationalPoly,
    p: u64,
) -> Result<Option<Qs2>> {
    let pq = quartic.factorization_pattern_mod_p(p)?;
    let p24 = poly24.factorization_pattern_mod_p(p)?;
    if !pq.squarefree || !p24.squarefree {
        return Err(Error::UnknownPattern(p));
    }
    table.lookup_value(&pq.degrees(), &p24.degrees()).ok_or(Error::UnknownPattern(p))
}

/// Coefficients of the octahedral weight 1 form attached to `quartic`,
/// with Frobenius traces read from factorization patterns.
pub fn weight1_coefficients(
    table: &FrobeniusTable,
    quartic: &RationalPoly,
    poly24: &RationalPoly,
    disc_char: i64,
    ramified: &BTreeMap<u64, RamifiedRule>,
    bound: usize,
    resolver: Option<Resolver>,
) -> Result<Weight1Series> {
    let mut ambiguous = Vec::new();
    let mut resolved = Vec::new();
    let mut ap: BTreeMap<u64, Qs2> = BTreeMap::new();
    for p in primes_up_to(bound as u64) {
        let v = match ramified.get(&p) {
            Some(RamifiedRule::Zero) => Qs2::zero(),
            Some(RamifiedRule::Inertia) => Qs2::int(inertia_value(poly24, p)?),
            None => match frobenius_trace(table, quartic, poly24, p) {
                Ok(Some(t)) => t,
                other => {
                    let from_resolver = match resolver {
                        Some(r) => r(p)?,
                        None => None,
                    };
                    match (from_resolver, other) {
                        (Some(t), _) => {
                            resolved.push(p);
                            t
                        }
                        (None, Ok(None)) => {
                            ambiguous.push(p);
                            Qs2::s()
                        }
                        (None, Err(e)) => return Err(e),
                        (None, Ok(Some(_))) => unreachable!(),
                    }
                }
            },
        };
        ap.insert(p, v);
    }
    let mut a = vec![Qs2::zero(); bound + 1];
    if bound >= 1 {
        a[1] = Qs2::one();
    }
    // prime powers: a_{p^(r+1)} = a_p a_{p^r} - chi(p) a_{p^(r-1)}
    let mut spf = vec![0usize; bound + 1];
    for (&p, v) in &ap {
        let p = p as usize;
        let chi = if ramified.contains_key(&(p as u64)) { 0 } else { kronecker_symbol(disc_char, p as i64) };
        let (mut prev, mut cur, mut pk) = (Qs2::one(), v.clone(), p);
        loop {
            a[pk] = cur.clone();
            let Some(next) = pk.checked_mul(p).filter(|&x| x <= bound) else { break };
            let nv = &(v * &cur) - &(&prev * &Qs2::int(chi as i64));
            prev = cur;
            cur = nv;
            pk = next;
        }
        let mut m = p;
        while m <= bound {
            if spf[m] == 0 {
                spf[m] = p;
            }
            m += p;
        }
    }
    // multiplicativity over coprime parts
    for n in 2..=bound {
        let p = spf[n];
        let mut pk = p;
        while n % (pk * p) == 0 {
            pk *= p;
        }
        if pk != n {
            a[n] = &a[pk] * &a[n / pk];
        }
    }
    Ok(Weight1Series { coeffs: a, ambiguous, resolved })
}
