//! Burnside-Dixon character table of GL_2(F_3) and the Frobenius lookup
//! table keyed by factorization patterns.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::group::{build_gl2f3, cycle_type, perm_cycle_type, FiniteGroup, Gl2F3};
use crate::arith::primes::pow_mod;
use crate::halfint::Qs2;

const P: u64 = 73;

fn inv(a: u64) -> u64 {
    pow_mod(a % P, P - 2, P)
}

/// Nullspace over F_P of a matrix given by rows.
fn nullspace_fp(rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let iv = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * iv % P;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let row = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(&row) {
                    *a = (*a + P * P - f * b) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (P - m[i][f]) % P;
            }
            v
        })
        .collect()
}

/// Character table of a group of exponent dividing 24 (72 = P - 1), with
/// values lifted to Q(sqrt(-2)) when they lie there.
pub struct CharacterTable {
    pub classes: Vec<Vec<usize>>,
    /// chars[chi][class] as complex numbers (re, im).
    pub values: Vec<Vec<(f64, f64)>>,
    pub degrees: Vec<u64>,
}

pub fn character_table(g: &FiniteGroup) -> CharacterTable {
    let n = g.order();
    let classes = g.classes();
    let r = classes.len();
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    // class matrices M_i[j][k] = #{x in C_i : x^-1 z_k in C_j}
    let inv_el: Vec<usize> = (0..n).map(|x| g.inverse(x)).collect();
    let mats: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|i| {
            let mut m = vec![vec![0u64; r]; r];
            for (k, ck) in classes.iter().enumerate() {
                let z = ck[0];
                for &x in &classes[i] {
                    m[class_of[g.op(inv_el[x], z)]][k] += 1;
                }
            }
            m
        })
        .collect();
    // simultaneous eigenspaces
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    for m in &mats {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            for lambda in 0..P {
                // (M - lambda) B c = 0
                let mb: Vec<Vec<u64>> = (0..r)
                    .map(|j| {
                        basis
                            .iter()
                            .map(|b| {
                                let s: u64 = (0..r).map(|k| m[j][k] % P * b[k] % P).sum::<u64>() % P;
                                (s + P * P - lambda * b[j]) % P
                            })
                            .collect()
                    })
                    .collect();
                let ker = nullspace_fp(&mb, basis.len());
                if !ker.is_empty() {
                    next.push(
                        ker.iter()
                            .map(|c| (0..r).map(|k| basis.iter().zip(c).map(|(b, ci)| b[k] * ci % P).sum::<u64>() % P).collect())
                            .collect(),
                    );
                }
            }
        }
        spaces = next;
    }
    assert!(spaces.iter().all(|s| s.len() == 1) && spaces.len() == r, "Dixon splitting failed");
    let id_class = class_of[0];
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[inv_el[c[0]]]).collect();
    // primitive 24th root of unity mod P
    let gen = (2..P).find(|&a| (1..P - 1).all(|e| (P - 1) % e != 0 || pow_mod(a, e, P) != 1)).unwrap();
    let z24 = pow_mod(gen, (P - 1) / 24, P);
    let mut values = Vec::new();
    let mut degrees = Vec::new();
    for s in spaces {
        let w0 = &s[0];
        let sc = inv(w0[id_class]);
        let w: Vec<u64> = w0.iter().map(|x| x * sc % P).collect();
        let sum = (0..r).map(|k| w[k] * w[inv_class[k]] % P * inv(classes[k].len() as u64) % P).sum::<u64>() % P;
        let d2 = n as u64 % P * inv(sum) % P;
        let d = (1..=(n as f64).sqrt() as u64).find(|d| d * d % P == d2).expect("degree");
        let chi_p: Vec<u64> = (0..r).map(|k| w[k] * d % P * inv(classes[k].len() as u64) % P).collect();
        // lift: chi(g) = sum_s m_s zeta_o^s with m_s = (1/o) sum_l chi(g^l) z_o^(-s l)
        let row = (0..r)
            .map(|k| {
                let x = classes[k][0];
                let o = g.element_order(x);
                let zo = pow_mod(z24, 24 / o as u64, P);
                let mut re = 0.0;
                let mut im = 0.0;
                for s_ in 0..o {
                    let mut m = 0u64;
                    for l in 0..o {
                        let gl = g.power(x, l);
                        let e = (o - (s_ * l) % o) % o;
                        m = (m + chi_p[class_of[gl]] * pow_mod(zo, e as u64, P)) % P;
                    }
                    let m = m * inv(o as u64) % P;
                    let ang = 2.0 * std::f64::consts::PI * s_ as f64 / o as f64;
                    re += m as f64 * ang.cos();
                    im += m as f64 * ang.sin();
                }
                (re, im)
            })
            .collect();
        values.push(row);
        degrees.push(d);
    }
    CharacterTable { classes, values, degrees }
}

/// Nearest x + y sqrt(-2) with integer x, y to a complex value.
pub fn to_qs2(v: (f64, f64)) -> Option<Qs2> {
    let x = v.0.round();
    let y = (v.1 / 2f64.sqrt()).round();
    if (v.0 - x).abs() < 1e-9 && (v.1 - y * 2f64.sqrt()).abs() < 1e-9 {
        Some(Qs2::new(
            crate::arith::q(x.to_i64().unwrap()),
            crate::arith::q(y.to_i64().unwrap()),
        ))
    } else {
        None
    }
}

/// Trace of Frobenius read off from factorization patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TraceValue {
    Exact(String),
    /// The two order-8 classes: +-sqrt(-2), sign not determined by patterns.
    PlusMinusSqrtMinus2,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusClass {
    pub label: String,
    pub order: usize,
    pub size: usize,
    pub quartic_pattern: Vec<usize>,
    pub coset_pattern: Vec<usize>,
    /// Trace in the faithful 2-dimensional representation whose value on
    /// this class family is +sqrt(-2) for the first order-8 class.
    #[serde(skip)]
    pub trace: Qs2,
    #[serde(rename = "trace")]
    pub trace_str: String,
    /// Element of GL_2(F_3) representing the class.
    pub representative: [u8; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusTable {
    pub classes: Vec<FrobeniusClass>,
}

impl FrobeniusTable {
    /// Trace for a pair (quartic degrees, degree-24 degrees), each sorted.
    pub fn lookup(&self, quartic: &[usize], coset: &[usize]) -> Option<TraceValue> {
        let hits: Vec<&FrobeniusClass> =
            self.classes.iter().filter(|c| c.quartic_pattern == quartic && c.coset_pattern == coset).collect();
        match hits.as_slice() {
            [] => None,
            [c] => Some(TraceValue::Exact(c.trace_str.clone())),
            _ => Some(TraceValue::PlusMinusSqrtMinus2),
        }
    }

    pub fn lookup_value(&self, quartic: &[usize], coset: &[usize]) -> Option<Option<Qs2>> {
        let hits: Vec<&FrobeniusClass> =
            self.classes.iter().filter(|c| c.quartic_pattern == quartic && c.coset_pattern == coset).collect();
        match hits.as_slice() {
            [] => None,
            [c] => Some(Some(c.trace.clone())),
            _ => Some(None),
        }
    }
}

/// Cycle type of each class on P^1(F_3) and on the 24 cosets of a
/// noncentral involution, plus the faithful 2-dimensional character.
pub fn frobenius_table() -> FrobeniusTable {
    let gl = build_gl2f3();
    frobenius_table_for(&gl)
}

pub fn frobenius_table_for(gl: &Gl2F3) -> FrobeniusTable {
    let g = &gl.group;
    let n = g.order();
    let ct = character_table(g);
    let mi_class = ct.classes.iter().position(|c| c.contains(&gl.minus_one)).unwrap();
    let faithful: Vec<usize> = (0..ct.values.len())
        .filter(|&i| ct.degrees[i] == 2 && (ct.values[i][mi_class].0 + 2.0).abs() < 1e-9)
        .collect();
    assert_eq!(faithful.len(), 2);
    let order8: Vec<usize> = (0..ct.classes.len()).filter(|&k| g.element_order(ct.classes[k][0]) == 8).collect();
    // choose the character that is +sqrt(-2) on the first order-8 class
    let chi = *faithful.iter().find(|&&i| ct.values[i][order8[0]].1 > 0.0).unwrap();

    let t = (0..n).find(|&x| x != gl.minus_one && g.element_order(x) == 2).unwrap();
    let cosets: Vec<[usize; 2]> = {
        let mut seen = vec![false; n];
        let mut v = Vec::new();
        for x in 0..n {
            if !seen[x] {
                let y = g.op(x, t);
                seen[x] = true;
                seen[y] = true;
                v.push([x.min(y), x.max(y)]);
            }
        }
        v
    };
    let coset_of = |x: usize| cosets.iter().position(|c| c.contains(&x)).unwrap();
    let mut classes = Vec::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, c) in ct.classes.iter().enumerate() {
        let x = c[0];
        let order = g.element_order(x);
        let letter = counts.entry(order).or_insert(0);
        let label = format!("{order}{}", (b'a' + *letter as u8) as char);
        *letter += 1;
        let action: Vec<usize> = cosets.iter().map(|cs| coset_of(g.op(x, cs[0]))).collect();
        let trace = to_qs2(ct.values[chi][k]).expect("trace in Q(sqrt(-2))");
        classes.push(FrobeniusClass {
            label,
            order,
            size: c.len(),
            quartic_pattern: perm_cycle_type(&gl.perms[gl.projection[x]]),
            coset_pattern: cycle_type(&action),
            trace_str: trace.to_string(),
            trace,
            representative: gl.matrices[x],
        });
    }
    FrobeniusTable { classes }
}
