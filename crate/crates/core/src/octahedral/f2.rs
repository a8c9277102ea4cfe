//! Dense linear algebra over F_2 on packed rows.

#[derive(Clone, Debug)]
pub struct F2Basis {
    width: usize,
    // (pivot, row); rows are reduced so the pivot is the lowest set bit
    rows: Vec<(usize, Vec<u64>)>,
}

pub fn new_row(width: usize) -> Vec<u64> {
    vec![0; width.div_ceil(64)]
}

pub fn get(r: &[u64], i: usize) -> bool {
    (r[i / 64] >> (i % 64)) & 1 == 1
}

pub fn flip(r: &mut [u64], i: usize) {
    r[i / 64] ^= 1 << (i % 64);
}

fn lowest(r: &[u64]) -> Option<usize> {
    r.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
}

impl F2Basis {
    pub fn new(width: usize) -> Self {
        F2Basis { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut r: Vec<u64>) -> Vec<u64> {
        for (p, row) in &self.rows {
            if get(&r, *p) {
                for (a, b) in r.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        r
    }

    /// Adds a row; returns false if it was dependent.
    pub fn insert(&mut self, r: Vec<u64>) -> bool {
        let r = self.reduce(r);
        let Some(p) = lowest(&r) else { return false };
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }

    /// Basis of the solution space of {row . x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        // back substitution to reduced echelon form
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let (p, ri) = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                if get(&row.1, p) {
                    for (a, b) in row.1.iter_mut().zip(&ri) {
                        *a ^= b;
                    }
                }
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        (0..self.width)
            .filter(|c| pivots.binary_search(c).is_err())
            .map(|f| {
                let mut v = new_row(self.width);
                flip(&mut v, f);
                for (p, row) in &rows {
                    if get(row, f) {
                        flip(&mut v, *p);
                    }
                }
                v
            })
            .collect()
    }
}

/// Solves A x = b; rows of A given with b as the extra bit at index `n`.
pub fn solvable(aug_rows: impl Iterator<Item = Vec<u64>>, n: usize) -> bool {
    let mut basis = F2Basis::new(n + 1);
    for r in aug_rows {
        basis.insert(r);
    }
    // inconsistent iff some reduced row is exactly the b bit
    !basis.rows.iter().any(|(p, _)| *p == n)
}
