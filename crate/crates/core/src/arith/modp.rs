//! Dense polynomials over F_p (p < 2^63), ascending coefficient order.

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, (a % m) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFp {
    pub p: u64,
    pub c: Vec<u64>,
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl PolyFp {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut f = PolyFp { p, c };
        f.trim();
        f
    }

    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        Self::new(p, c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p).unwrap();
        Self::new(self.p, self.c.iter().map(|&x| mulm(x, inv, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0; n];
        for (i, x) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *x = (a + b) % self.p;
        }
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0; n];
        for (i, x) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *x = (a + self.p - b) % self.p;
        }
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = (p as u128) * (p as u128);
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                let s = &mut acc[i + j];
                *s += a as u128 * b as u128;
                if *s >= pp << 6 {
                    *s %= p as u128;
                }
            }
        }
        Self::new(p, acc.into_iter().map(|s| (s % p as u128) as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len();
        if r.len() < dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(d.lead(), p).unwrap();
        let mut q = vec![0u64; r.len() - dd + 1];
        for k in (0..q.len()).rev() {
            let coef = mulm(r[k + dd - 1], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulm(coef, b, p)) % p;
            }
        }
        r.truncate(dd - 1);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mulm(x, i as u64 % p, p))
            .collect();
        Self::new(p, c)
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = (mulm(acc, x, self.p) + a) % self.p;
        }
        acc
    }

    /// Undo a Frobenius: g(x) = h(x^p) gives h (coefficients are in F_p).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        Self::new(self.p, c)
    }

    /// Squarefree decomposition: list of (squarefree monic factor, multiplicity).
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_rec(&self, mult: u32, out: &mut Vec<(Self, u32)>) {
        let f = self.monic();
        if f.deg() <= 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            f.pth_root().sqf_rec(mult * self.p as u32, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        let mut i = 1u32;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.deg() > 0 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.deg() > 0 {
            c.pth_root().sqf_rec(mult * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial:
    /// returns the multiset of irreducible factor degrees.
    pub fn ddf_degrees(&self) -> Vec<usize> {
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 1usize;
        while f.deg() >= 2 * d as i64 {
            h = h.pow_mod(self.p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                for _ in 0..(g.deg() as usize / d) {
                    out.push(d);
                }
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        if f.deg() > 0 {
            out.push(f.deg() as usize);
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }

    #[test]
    fn ddf_small() {
        // x^2+1 splits mod 5
        assert_eq!(PolyFp::from_i64(5, &[1, 0, 1]).ddf_degrees(), vec![1, 1]);
        assert_eq!(PolyFp::from_i64(7, &[1, 0, 1]).ddf_degrees(), vec![2]);
    }

    #[test]
    fn ddf_matches_brute_force_mod_3() {
        // x^4 - 2x - 1 = x^4 + x + 2 mod 3: brute force root search and
        // quadratic-factor search
        let f = PolyFp::from_i64(3, &[-1, -2, 0, 0, 1]);
        let roots: Vec<u64> = (0..3).filter(|&x| f.eval(x) == 0).collect();
        let degs = f.ddf_degrees();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), roots.len());
        assert_eq!(degs.iter().sum::<usize>(), 4);
    }

    #[test]
    fn squarefree_decomp() {
        // (x+1)^2 (x+2)^3 (x^2+1) over F_7
        let a = PolyFp::from_i64(7, &[1, 1]);
        let b = PolyFp::from_i64(7, &[2, 1]);
        let c = PolyFp::from_i64(7, &[1, 0, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b).mul(&c);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(c, 1), (a, 2), (b, 3)]);
    }

    #[test]
    fn squarefree_decomp_char_p_power() {
        // (x+1)^3 over F_3 has zero derivative branch
        let a = PolyFp::from_i64(3, &[1, 1]);
        let f = a.mul(&a).mul(&a).mul(&PolyFp::from_i64(3, &[1, 0, 1]));
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(PolyFp::from_i64(3, &[1, 0, 1]), 1), (a, 3)]);
    }
}
