use std::collections::HashMap;

use super::{det3, TernaryForm, Vec3};
use crate::error::{Error, Result};

/// All nonzero v with Q(v) <= bound (both v and -v), by Fincke-Pohst.
pub fn short_vectors(t: &TernaryForm, bound: i64) -> Vec<(Vec3, i64)> {
    let mut out = Vec::new();
    for_each_vector(t, bound, |v, n| {
        if n > 0 {
            out.push((v, n));
        }
    });
    out
}

/// Calls f(v, Q(v)) for every v with Q(v) <= bound, including v = 0.
pub(crate) fn for_each_vector(t: &TernaryForm, bound: i64, mut f: impl FnMut(Vec3, i64)) {
    // Q = q11 (x + q12 y + q13 z)^2 + q22 (y + q23 z)^2 + q33 z^2
    let (a1, a2, a3) = (t.a1 as f64, t.a2 as f64, t.a3 as f64);
    let (a12, a13, a23) = (t.a12 as f64 / 2.0, t.a13 as f64 / 2.0, t.a23 as f64 / 2.0);
    let q11 = a1;
    let q12 = a12 / a1;
    let q13 = a13 / a1;
    let q22 = a2 - a12 * a12 / a1;
    let q23 = (a23 - a12 * a13 / a1) / q22;
    let q33 = a3 - a13 * a13 / a1 - q22 * q23 * q23;
    let b = bound as f64 * (1.0 + 1e-9) + 1e-6;
    let zmax = (b / q33).sqrt().floor() as i64;
    for z in -zmax..=zmax {
        let rz = b - q33 * (z * z) as f64;
        if rz < 0.0 {
            continue;
        }
        let cy = -q23 * z as f64;
        let wy = (rz / q22).sqrt();
        let (ylo, yhi) = ((cy - wy).ceil() as i64, (cy + wy).floor() as i64);
        for y in ylo..=yhi {
            let ty = y as f64 + q23 * z as f64;
            let ry = rz - q22 * ty * ty;
            if ry < 0.0 {
                continue;
            }
            let cx = -(q12 * y as f64 + q13 * z as f64);
            let wx = (ry / q11).sqrt();
            let (xlo, xhi) = ((cx - wx).ceil() as i64, (cx + wx).floor() as i64);
            // exact values along the x-line: Q(x+1) - Q(x) = a1(2x+1) + a12 y + a13 z
            let mut v = t.eval(&[xlo, y, z]);
            let lin = t.a12 * y + t.a13 * z;
            for x in xlo..=xhi {
                if v <= bound {
                    f([x, y, z], v);
                }
                v += t.a1 * (2 * x + 1) + lin;
            }
        }
    }
}

fn successive_minima(vecs: &[(Vec3, i64)]) -> Option<[i64; 3]> {
    let mut sorted: Vec<&(Vec3, i64)> = vecs.iter().collect();
    sorted.sort_by_key(|(_, n)| *n);
    let mut basis: Vec<Vec3> = Vec::new();
    let mut mins = Vec::new();
    for (v, n) in sorted {
        let independent = match basis.len() {
            0 => true,
            1 => {
                let u = basis[0];
                u[0] * v[1] != u[1] * v[0] || u[0] * v[2] != u[2] * v[0] || u[1] * v[2] != u[2] * v[1]
            }
            _ => det3(&basis[0], &basis[1], v) != 0,
        };
        if independent {
            basis.push(*v);
            mins.push(*n);
            if mins.len() == 3 {
                return Some([mins[0], mins[1], mins[2]]);
            }
        }
    }
    None
}

/// Canonical reduced representative: among all bases attaining the
/// successive minima whose off-diagonal coefficients are all positive or
/// all nonpositive, the one with lexicographically least (a23, a13, a12).
/// The result satisfies the Minkowski/Eisenstein inequalities
/// a1 <= a2 <= a3, |a12|, |a13| <= a1, |a23| <= a2.
pub fn reduce(t: &TernaryForm) -> Result<TernaryForm> {
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let bound = t.a1.max(t.a2).max(t.a3);
    let vecs = short_vectors(t, bound);
    let mins = successive_minima(&vecs).expect("three independent vectors below max diagonal");
    let by_norm = |m: i64| -> Vec<Vec3> {
        vecs.iter().filter(|(_, n)| *n == m).map(|(v, _)| *v).collect()
    };
    let (v1s, v2s, v3s) = (by_norm(mins[0]), by_norm(mins[1]), by_norm(mins[2]));
    let mut best: Option<TernaryForm> = None;
    for v1 in &v1s {
        for v2 in &v2s {
            let b12 = t.bilinear(v1, v2);
            for v3 in &v3s {
                let d = det3(v1, v2, v3);
                if d != 1 && d != -1 {
                    continue;
                }
                let (b13, b23) = (t.bilinear(v1, v3), t.bilinear(v2, v3));
                let pos = b12 > 0 && b13 > 0 && b23 > 0;
                let nonpos = b12 <= 0 && b13 <= 0 && b23 <= 0;
                if !(pos || nonpos) {
                    continue;
                }
                let f = TernaryForm::new(mins[0], mins[1], mins[2], b23, b13, b12);
                if best.is_none_or(|b| (f.a23, f.a13, f.a12) < (b.a23, b.a13, b.a12)) {
                    best = Some(f);
                }
            }
        }
    }
    Ok(best.expect("a reduced basis always exists in rank 3"))
}

/// Backtracking isometry search: images w1, w2, w3 of the standard basis
/// of `s` with matching norms and inner products and det +-1.
pub fn is_equivalent(s: &TernaryForm, t: &TernaryForm) -> Result<bool> {
    if s.discriminant()? != t.discriminant()? {
        return Ok(false);
    }
    let bound = s.a1.max(s.a2).max(s.a3);
    let mut by_norm: HashMap<i64, Vec<Vec3>> = HashMap::new();
    for (v, n) in short_vectors(t, bound) {
        by_norm.entry(n).or_default().push(v);
    }
    let empty = Vec::new();
    let c1 = by_norm.get(&s.a1).unwrap_or(&empty);
    let c2 = by_norm.get(&s.a2).unwrap_or(&empty);
    let c3 = by_norm.get(&s.a3).unwrap_or(&empty);
    for w1 in c1 {
        for w2 in c2 {
            if t.bilinear(w1, w2) != s.a12 {
                continue;
            }
            for w3 in c3 {
                if t.bilinear(w1, w3) == s.a13
                    && t.bilinear(w2, w3) == s.a23
                    && det3(w1, w2, w3).abs() == 1
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
