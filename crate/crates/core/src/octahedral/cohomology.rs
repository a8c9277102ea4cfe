use super::f2::{flip, get, new_row, solvable, F2Basis};
use super::group::{build_gl2f3, perm_cycle_type, FiniteGroup, Gl2F3};
use crate::error::{Error, Result};

/// A normalized-or-not 2-cochain G x G -> F_2, stored row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub n: usize,
    pub c: Vec<u8>,
}

impl Cocycle2 {
    pub fn zero(n: usize) -> Self {
        Cocycle2 { n, c: vec![0; n * n] }
    }

    pub fn at(&self, g: usize, h: usize) -> u8 {
        self.c[g * self.n + h]
    }

    /// c(g,h) + c(gh,k) = c(h,k) + c(g,hk) for all triples.
    pub fn is_cocycle(&self, g: &FiniteGroup) -> bool {
        let n = self.n;
        n == g.order()
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| self.at(a, b) ^ self.at(g.op(a, b), c) == self.at(b, c) ^ self.at(a, g.op(b, c)))
                })
            })
    }

    pub fn add(&self, o: &Self) -> Self {
        Cocycle2 { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a ^ b).collect() }
    }

    /// Pullback along f: H -> G.
    pub fn pullback(&self, f: &[usize]) -> Self {
        let m = f.len();
        let mut c = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                c[a * m + b] = self.at(f[a], f[b]);
            }
        }
        Cocycle2 { n: m, c }
    }


    fn from_bits(n: usize, r: &[u64]) -> Self {
        Cocycle2 { n, c: (0..n * n).map(|i| u8::from(get(r, i))).collect() }
    }
}

/// Cocycle of a central extension of S_4 by {+-I} from a set-theoretic
/// section: c(g,h) = 1 iff s(g) s(h) = -s(gh).
pub fn extension_cocycle(gl: &Gl2F3, section: &[usize]) -> Cocycle2 {
    let n = gl.s4.order();
    let mut c = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let lhs = gl.group.op(section[a], section[b]);
            let rhs = section[gl.s4.op(a, b)];
            c[a * n + b] = u8::from(lhs != rhs);
            debug_assert!(lhs == rhs || lhs == gl.group.op(rhs, gl.minus_one));
        }
    }
    Cocycle2 { n, c }
}

/// Section choosing the first lift in table order.
pub fn default_section(gl: &Gl2F3) -> Vec<usize> {
    (0..gl.s4.order()).map(|s| gl.lifts(s)[0]).collect()
}

/// The class s_4^+ of GL_2(F_3) -> S_4, on the S_4 of `build_s4`.
pub fn s4plus_cocycle() -> Cocycle2 {
    let gl = build_gl2f3();
    extension_cocycle(&gl, &default_section(&gl))
}

/// Whether c = b(g) + b(h) + b(gh) for some b: G -> F_2.
pub fn is_coboundary(g: &FiniteGroup, c: &Cocycle2) -> Result<bool> {
    if !c.is_cocycle(g) {
        return Err(Error::Input("not a 2-cocycle".into()));
    }
    let n = g.order();
    let rows = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
        let mut r = new_row(n + 1);
        flip(&mut r, a);
        flip(&mut r, b);
        flip(&mut r, g.op(a, b));
        if c.at(a, b) == 1 {
            flip(&mut r, n);
        }
        r
    });
    Ok(solvable(rows, n))
}

fn coboundary_basis(g: &FiniteGroup) -> F2Basis {
    let n = g.order();
    let mut b = F2Basis::new(n * n);
    for x in 0..n {
        let mut r = new_row(n * n);
        for a in 0..n {
            for bb in 0..n {
                let hits = usize::from(a == x) + usize::from(bb == x) + usize::from(g.op(a, bb) == x);
                if hits % 2 == 1 {
                    flip(&mut r, a * n + bb);
                }
            }
        }
        b.insert(r);
    }
    b
}

fn cocycle_space(g: &FiniteGroup) -> Vec<Vec<u64>> {
    let n = g.order();
    let mut eq = F2Basis::new(n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut r = new_row(n * n);
                flip(&mut r, a * n + b);
                flip(&mut r, g.op(a, b) * n + c);
                flip(&mut r, b * n + c);
                flip(&mut r, a * n + g.op(b, c));
                eq.insert(r);
            }
        }
    }
    eq.nullspace()
}

/// Cocycles representing a basis of H^2(G, F_2) (trivial action).
pub fn h2_basis(g: &FiniteGroup) -> Vec<Cocycle2> {
    let n = g.order();
    let mut span = coboundary_basis(g);
    let mut out = Vec::new();
    for z in cocycle_space(g) {
        if span.insert(z.clone()) {
            out.push(Cocycle2::from_bits(n, &z));
        }
    }
    out
}

/// dim_F2 H^2(G, F_2) with trivial action; cost grows like |G|^3.
pub fn h2_dimension(g: &FiniteGroup) -> usize {
    let n = g.order();
    let z = cocycle_space(g).len();
    let b = coboundary_basis(g).rank();
    debug_assert!(n == 0 || z >= b);
    z - b
}

/// Central extension of G by Z/2 defined by c, as (g, e) pairs indexed 2g + e.
pub fn extension_group(g: &FiniteGroup, c: &Cocycle2) -> FiniteGroup {
    let n = g.order();
    let c0 = c.at(0, 0);
    // normalize so that (0,0) is the identity: use c'(a,b) = c(a,b) + c(0,0)
    let mut mul = vec![vec![0; 2 * n]; 2 * n];
    for a in 0..n {
        for b in 0..n {
            let t = c.at(a, b) ^ c0;
            for e in 0..2 {
                for f in 0..2 {
                    mul[2 * a + e][2 * b + f] = 2 * g.op(a, b) + ((e as u8 ^ f as u8 ^ t) as usize);
                }
            }
        }
    }
    FiniteGroup::from_table(mul)
}

/// Whether the extension given by c on S_4 (from `build_s4`) lifts
/// transpositions to involutions and double transpositions to elements of
/// order 4.
pub fn has_plus_profile(s4: &FiniteGroup, perms: &[[u8; 4]], c: &Cocycle2) -> bool {
    let e = extension_group(s4, c);
    (0..s4.order()).all(|s| {
        let want = match perm_cycle_type(&perms[s]).as_slice() {
            [1, 1, 2] => 2,
            [2, 2] => 4,
            _ => return true,
        };
        (0..2).all(|k| e.element_order(2 * s + k) == want)
    })
}
