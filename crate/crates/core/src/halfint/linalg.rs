//! Exact row reduction over Q(sqrt(-2)).

use super::{QExpansion, Qs2};

/// Incrementally built echelon basis. Each stored row remembers which
/// combination of inserted vectors produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    inserted: usize,
    rows: Vec<(usize, Vec<Qs2>, Vec<Qs2>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, inserted: 0, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the stored rows. Returns the residue and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &[Qs2]) -> (Vec<Qs2>, Vec<Qs2>) {
        let mut r = v[..self.width].to_vec();
        let mut comb = vec![Qs2::zero(); self.inserted];
        for (piv, row, rc) in &self.rows {
            if r[*piv].is_zero() {
                continue;
            }
            let f = r[*piv].clone();
            for k in *piv..self.width {
                if !row[k].is_zero() {
                    r[k] = &r[k] - &(&f * &row[k]);
                }
            }
            for (k, c) in rc.iter().enumerate() {
                if !c.is_zero() {
                    comb[k] = &comb[k] + &(&f * c);
                }
            }
        }
        (r, comb)
    }

    /// Inserts v; returns false when v is already in the span.
    pub fn insert(&mut self, v: &[Qs2]) -> bool {
        let (r, comb) = self.reduce(v);
        self.inserted += 1;
        for row in &mut self.rows {
            row.2.push(Qs2::zero());
        }
        let Some(piv) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[piv].inv().unwrap();
        let row: Vec<Qs2> = r.iter().map(|c| c * &inv).collect();
        // residue = v - sum comb_k v_k, so the row is (e_idx - comb) * inv
        let mut rc: Vec<Qs2> = comb.iter().map(|c| -&(c * &inv)).collect();
        rc.push(inv);
        self.rows.push((piv, row, rc));
        true
    }

    /// Coordinates of v in terms of the inserted vectors, if v lies in
    /// the span; otherwise the index of the first nonzero residue entry.
    pub fn solve(&self, v: &[Qs2]) -> std::result::Result<Vec<Qs2>, usize> {
        let (r, comb) = self.reduce(v);
        match r.iter().position(|c| !c.is_zero()) {
            Some(i) => Err(i),
            None => Ok(comb),
        }
    }
}

/// Rank of the coefficient vectors c_0..c_B and the indices of a maximal
/// independent subset, taken greedily in input order.
pub fn rank_and_basis(expansions: &[QExpansion], bound: usize) -> (usize, Vec<usize>) {
    let mut e = Echelon::new(bound + 1);
    let mut keep = Vec::new();
    for (i, f) in expansions.iter().enumerate() {
        assert!(f.bound() >= bound, "expansion {i} truncated below {bound}");
        if e.insert(&f.coeffs[..=bound]) {
            keep.push(i);
        }
    }
    (keep.len(), keep)
}

/// Basis of the right kernel of a matrix given by rows.
pub fn nullspace(rows: &[Vec<Qs2>], ncols: usize) -> Vec<Vec<Qs2>> {
    // Reduced row echelon form.
    let mut m: Vec<Vec<Qs2>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let sub: Vec<Qs2> = m[r].iter().map(|x| x * &f).collect();
                for (a, b) in m[i].iter_mut().zip(&sub) {
                    *a = &*a - b;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Qs2::zero(); ncols];
            v[f] = Qs2::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[i][f];
            }
            v
        })
        .collect()
}
