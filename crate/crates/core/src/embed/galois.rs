//! The Galois closure of Q(sqrt(gamma)) as an explicit group of 48
//! permutations of the roots +-sqrt(gamma_m), and Frobenius classes by
//! Dokchitser resolvents.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::gamma::{conjugates_at, ordered_pairs, GammaExpression};
use crate::arith::bigfloat::{complex_roots, poly_from_roots, round_to_integers, Cx};
use crate::arith::modp::PolyFp;
use crate::arith::RationalPoly;
use crate::error::{Error, Result};
use crate::halfint::Qs2;
use crate::octahedral::FiniteGroup;

const M0: usize = 0;

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn of(z: &Cx) -> C {
        let (a, b) = z.to_f64();
        C(a, b)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
}

/// Elements whose conjugates feed a resolvent instance.
#[derive(Clone, Debug)]
enum Shape {
    /// sum a_m r_m + c x_3, of degree 48; conjugates indexed by the group.
    Closure { r_coeffs: Vec<(usize, i64)>, c: i64 },
    /// r_{m0} (x_1 + u) + c x_1 + d x_2, of degree 24; conjugates indexed
    /// by the 24 roots +-r_m.
    Coset { u: i64, c: i64, d: i64 },
}

/// Exponents e of the test functions h(z) = z^e.
const EXPONENTS: [u32; 4] = [2, 3, 4, 5];

/// Several shapes, so that a prime dividing the index of one element (or
/// where two resolvents collide) is caught by another. Terms in a second
/// r_m handle primes dividing gamma itself.
fn shapes() -> Vec<Shape> {
    let mut v = Vec::new();
    for c in [1, 2, 3] {
        v.push(Shape::Closure { r_coeffs: vec![(M0, 1)], c });
    }
    for (m, a, c) in [(1, 2, 1), (5, 3, 1), (11, 2, 2), (3, -2, 1), (7, 3, 2)] {
        v.push(Shape::Closure { r_coeffs: vec![(M0, 1), (m, a)], c });
    }
    for (u, c, d) in [(1, 0, 1), (2, 1, 0), (0, 1, 2), (3, 0, 1), (1, 2, 3), (5, 1, 1), (0, 3, -1), (4, -1, 2)] {
        v.push(Shape::Coset { u, c, d });
    }
    v
}

/// Defining polynomial of one shape, the action of each group element on
/// its roots, and the class resolvents, one set per test exponent.
struct Instance {
    poly: Vec<BigInt>,
    resolvents: Vec<(u32, Vec<Vec<BigInt>>)>,
}

pub struct GaloisClosure {
    pub quartic_roots: Vec<Cx>,
    /// sqrt(gamma_m) for the 12 ordered pairs.
    pub sqrt_gamma: Vec<Cx>,
    /// Elements as (permutation of the quartic roots, sign on r_{m0}).
    pub elements: Vec<([usize; 4], i8)>,
    /// Action on the 24 roots, root 2m = +r_m and 2m+1 = -r_m.
    pub root_perms: Vec<Vec<usize>>,
    pub group: FiniteGroup,
    pub classes: Vec<Vec<usize>>,
    /// Trace of the faithful 2-dimensional representation on each class.
    pub traces: Vec<Qs2>,
    instances: Vec<Instance>,
}

fn pair_index(i: usize, j: usize) -> usize {
    ordered_pairs().iter().position(|&p| p == (i, j)).unwrap()
}

fn act(s: &[usize; 4], m: usize) -> usize {
    let (i, j) = ordered_pairs()[m];
    pair_index(s[i], s[j])
}

/// Signs t with g_s(r_m) = t r_{s m} for the lift g_s of s fixing the sign
/// of r_{m0}. Found by requiring sum_s t_s g_s(r_m0 r_m x^e) to be rational
/// for a basis of monomials x^e.
fn sign_structure(roots: &[Cx], r: &[Cx], perms: &[[usize; 4]], denom: &BigInt) -> Result<Vec<[i8; 12]>> {
    let mons: Vec<(u32, u32, u32)> =
        (0..4).flat_map(|a| (0..3).flat_map(move |b| (0..2).map(move |c| (a, b, c)))).collect();
    let xf: Vec<C> = roots.iter().map(C::of).collect();
    let rf: Vec<C> = r.iter().map(C::of).collect();
    let powc = |z: C, e: u32| (0..e).fold(C(1.0, 0.0), |acc, _| acc.mul(z));
    let mut t = vec![[0i8; 12]; perms.len()];
    for row in t.iter_mut() {
        row[M0] = 1;
    }
    let bits = r[0].bits;
    for m in (0..12).filter(|&m| m != M0) {
        // w[mon][s]
        let w: Vec<Vec<C>> = mons
            .iter()
            .map(|&(a, b, c)| {
                perms
                    .iter()
                    .map(|s| {
                        let mono = powc(xf[s[0]], a).mul(powc(xf[s[1]], b)).mul(powc(xf[s[2]], c));
                        rf[act(s, M0)].mul(rf[act(s, m)]).mul(mono)
                    })
                    .collect()
            })
            .collect();
        let scale: Vec<f64> = w.iter().map(|row| row.iter().map(|z| z.0.abs() + z.1.abs()).sum::<f64>()).collect();
        let dd = 2.0 * denom.to_f64().unwrap_or(f64::MAX);
        let half_a: Vec<usize> = (1..12).collect();
        let half_b: Vec<usize> = (12..24).collect();
        let sums = |ids: &[usize], mask: usize, k: usize| -> f64 {
            ids.iter().enumerate().map(|(bit, &s)| if mask >> bit & 1 == 1 { -w[k][s].1 } else { w[k][s].1 }).sum()
        };
        let mut sb: Vec<(f64, usize)> = (0..1usize << half_b.len()).map(|mb| (sums(&half_b, mb, 0), mb)).collect();
        sb.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
        let tol = 1e-7 * scale[0].max(1.0);
        let mut found: Vec<[i8; 24]> = Vec::new();
        for ma in 0..1usize << half_a.len() {
            let target = -(w[0][0].1 + sums(&half_a, ma, 0));
            let lo = sb.partition_point(|x| x.0 < target - tol);
            for &(v, mb) in sb[lo..].iter().take_while(|x| x.0 <= target + tol) {
                let _ = v;
                let mut signs = [1i8; 24];
                for (bit, &s) in half_a.iter().enumerate() {
                    if ma >> bit & 1 == 1 {
                        signs[s] = -1;
                    }
                }
                for (bit, &s) in half_b.iter().enumerate() {
                    if mb >> bit & 1 == 1 {
                        signs[s] = -1;
                    }
                }
                // imaginary parts vanish and 2 D times the real part is integral
                let ok = (0..mons.len()).all(|k| {
                    let im: f64 = (0..24).map(|s| signs[s] as f64 * w[k][s].1).sum();
                    let re: f64 = (0..24).map(|s| signs[s] as f64 * w[k][s].0).sum::<f64>() * dd;
                    im.abs() < 1e-7 * scale[k].max(1.0) && (re - re.round()).abs() < (1e-10 * scale[k] * dd).max(1e-4)
                });
                if ok && exact_rational_check(roots, r, perms, m, &signs, &mons, denom, bits) {
                    found.push(signs);
                }
            }
        }
        if found.len() != 1 {
            return Err(Error::Precision(format!("sign structure for pair {m}: {} candidates", found.len())));
        }
        for (s, row) in t.iter_mut().enumerate() {
            row[m] = found[0][s];
        }
    }
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
fn exact_rational_check(
    roots: &[Cx],
    r: &[Cx],
    perms: &[[usize; 4]],
    m: usize,
    signs: &[i8; 24],
    mons: &[(u32, u32, u32)],
    denom: &BigInt,
    bits: u32,
) -> bool {
    let tol = bits as i64 / 3;
    mons.iter().all(|&(a, b, c)| {
        let mut acc = Cx::zero(bits);
        for (si, s) in perms.iter().enumerate() {
            let mono = &(&roots[s[0]].pow(a) * &roots[s[1]].pow(b)) * &roots[s[2]].pow(c);
            let term = &(&r[act(s, M0)] * &r[act(s, m)]) * &mono;
            acc = if signs[si] > 0 { &acc + &term } else { &acc - &term };
        }
        let v = acc.scale_int(&(denom * 2));
        let (_, _, err) = v.round();
        err < -(tol as f64)
    })
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&k| a[k]).collect()
}

impl GaloisClosure {
    /// Builds the closure for gamma on the quartic's roots. `digits` is the
    /// working precision; resolvents are recomputed at doubled precision
    /// when rounding fails.
    pub fn new(quartic: &RationalPoly, gamma: &GammaExpression, digits: u32) -> Result<Self> {
        let mut d = digits;
        for _ in 0..4 {
            match Self::build(quartic, gamma, d) {
                Err(Error::Precision(_)) => d *= 2,
                other => return other,
            }
        }
        Err(Error::Precision(format!("Galois closure failed at {d} digits")))
    }

    fn build(quartic: &RationalPoly, gamma: &GammaExpression, digits: u32) -> Result<Self> {
        let roots = complex_roots(quartic, digits)?;
        let bits = roots[0].bits;
        let conj = conjugates_at(&roots, gamma)?;
        let r: Vec<Cx> = conj.iter().map(|g| g.sqrt()).collect();
        let perms = permutations4();
        let t = sign_structure(&roots, &r, &perms, gamma.scalar.denom())?;
        let mut elements = Vec::new();
        let mut root_perms = Vec::new();
        for (si, s) in perms.iter().enumerate() {
            for sg in [1i8, -1] {
                let mut p = vec![0usize; 24];
                for m in 0..12 {
                    let e = sg * t[si][m];
                    let im = act(s, m);
                    p[2 * m] = 2 * im + usize::from(e < 0);
                    p[2 * m + 1] = 2 * im + usize::from(e > 0);
                }
                elements.push((*s, sg));
                root_perms.push(p);
            }
        }
        let n = root_perms.len();
        let mut mul = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = compose(&root_perms[i], &root_perms[j]);
                mul[i][j] = root_perms
                    .iter()
                    .position(|p| *p == c)
                    .ok_or_else(|| Error::Precision("sign structure is not closed under composition".into()))?;
            }
        }
        let group = FiniteGroup::from_table(mul);
        if !group.verify() {
            return Err(Error::Domain("closure is not a group".into()));
        }
        let classes = group.classes();
        let mut me = GaloisClosure {
            quartic_roots: roots,
            sqrt_gamma: r,
            elements,
            root_perms,
            group,
            classes,
            traces: Vec::new(),
            instances: Vec::new(),
        };
        for shape in shapes() {
            if let Some(inst) = me.instance(&shape, bits)? {
                me.instances.push(inst);
            }
        }
        if me.instances.is_empty() {
            return Err(Error::Domain("no primitive element among the shapes".into()));
        }
        me.traces = me.class_traces();
        Ok(me)
    }

    fn root_value(&self, label: usize) -> Cx {
        let r = &self.sqrt_gamma[label / 2];
        if label % 2 == 0 {
            r.clone()
        } else {
            -r
        }
    }

    /// Conjugates of a shape and the action of each group element on them.
    fn conjugates(&self, shape: &Shape, bits: u32) -> (Vec<Cx>, Vec<Vec<usize>>) {
        let int = |k: i64| BigInt::from(k);
        match shape {
            Shape::Closure { r_coeffs, c } => {
                let vals = (0..self.elements.len())
                    .map(|g| {
                        let s = self.elements[g].0;
                        let mut acc = self.quartic_roots[s[2]].scale_int(&int(*c));
                        for &(m, a) in r_coeffs {
                            acc = &acc + &self.root_value(self.root_perms[g][2 * m]).scale_int(&int(a));
                        }
                        acc.with_bits(bits)
                    })
                    .collect();
                let action = (0..self.elements.len())
                    .map(|g| (0..self.elements.len()).map(|k| self.group.op(g, k)).collect())
                    .collect();
                (vals, action)
            }
            Shape::Coset { u, c, d } => {
                let pairs = ordered_pairs();
                let vals = (0..24)
                    .map(|label| {
                        let (i, j) = pairs[label / 2];
                        let x = &self.quartic_roots;
                        let lin = &x[i].scale_int(&int(*c)) + &x[j].scale_int(&int(*d));
                        let shifted = &x[i] + &Cx::from_i64(*u, x[i].bits);
                        (&(&self.root_value(label) * &shifted) + &lin).with_bits(bits)
                    })
                    .collect();
                (vals, self.root_perms.clone())
            }
        }
    }

    /// None when the shape's conjugates are not distinct.
    fn instance(&self, shape: &Shape, bits: u32) -> Result<Option<Instance>> {
        let (th, action) = self.conjugates(shape, bits);
        let tol = bits as i64 / 4;
        let poly = round_to_integers(&poly_from_roots(&th, bits), tol)?;
        if !RationalPoly::from_bigints(&poly).is_squarefree() {
            return Ok(None);
        }
        let mut resolvents = Vec::new();
        for e in EXPONENTS {
            let he: Vec<Cx> = th.iter().map(|z| z.pow(e)).collect();
            let mut per_class = Vec::new();
            for cl in &self.classes {
                let vals: Vec<Cx> = cl
                    .iter()
                    .map(|&g| (0..th.len()).fold(Cx::zero(bits), |acc, k| &acc + &(&he[k] * &th[action[g][k]])))
                    .collect();
                per_class.push(round_to_integers(&poly_from_roots(&vals, bits), tol)?);
            }
            resolvents.push((e, per_class));
        }
        Ok(Some(Instance { poly, resolvents }))
    }

    /// Traces by (order, size). The order 8 class whose first resolvent is
    /// lexicographically smaller gets +sqrt(-2); the other choice is the
    /// complex conjugate representation.
    fn class_traces(&self) -> Vec<Qs2> {
        let inst = &self.instances[0];
        let mut eights: Vec<usize> =
            (0..self.classes.len()).filter(|&k| self.group.element_order(self.classes[k][0]) == 8).collect();
        let first = &inst.resolvents[0].1;
        eights.sort_by(|&a, &b| first[a].cmp(&first[b]));
        (0..self.classes.len())
            .map(|k| {
                let x = self.classes[k][0];
                let size = self.classes[k].len();
                match self.group.element_order(x) {
                    1 => Qs2::int(2),
                    2 if size == 1 => Qs2::int(-2),
                    2 | 4 => Qs2::zero(),
                    3 => Qs2::int(-1),
                    6 => Qs2::int(1),
                    8 if eights[0] == k => Qs2::s(),
                    8 => -&Qs2::s(),
                    o => unreachable!("element order {o} in a group of order 48"),
                }
            })
            .collect()
    }

    /// The degree 48 polynomial of r_{m0} + x_3.
    pub fn h48(&self) -> RationalPoly {
        RationalPoly::from_bigints(&self.instances[0].poly)
    }

    /// Resolvent of a class for h(z) = z^2.
    pub fn resolvent(&self, class: usize) -> RationalPoly {
        RationalPoly::from_bigints(&self.instances[0].resolvents[0].1[class])
    }

    /// Conjugacy class of Frobenius at p. Every usable instance and test
    /// function yields a set of classes containing Frobenius; these are
    /// intersected until one class is left.
    pub fn frobenius_class(&self, p: u64) -> Result<usize> {
        let mut cand = vec![true; self.classes.len()];
        for inst in &self.instances {
            if let Some(mask) = resolvent_hits(inst, p) {
                for (c, m) in cand.iter_mut().zip(mask) {
                    *c &= m;
                }
                let left: Vec<usize> = (0..cand.len()).filter(|&k| cand[k]).collect();
                if let [k] = left.as_slice() {
                    return Ok(*k);
                }
            }
        }
        Err(Error::UnknownPattern(p))
    }

    pub fn frobenius_trace(&self, p: u64) -> Result<Qs2> {
        Ok(self.traces[self.frobenius_class(p)?].clone())
    }

    /// Cycle type of a class on the quartic's roots.
    pub fn quartic_cycle_type(&self, class: usize) -> Vec<usize> {
        let s = self.elements[self.classes[class][0]].0;
        crate::octahedral::cycle_type(&s)
    }

    /// Cycle type of a class on the 24 roots +-sqrt(gamma_m).
    pub fn root_cycle_type(&self, class: usize) -> Vec<usize> {
        crate::octahedral::cycle_type(&self.root_perms[self.classes[class][0]])
    }
}

fn to_fp(c: &[BigInt], p: u64) -> PolyFp {
    let pb = BigInt::from(p);
    PolyFp::new(p, c.iter().map(|x| ((x % &pb + &pb) % &pb).to_u64().unwrap()).collect())
}

fn resolvent_hits(inst: &Instance, p: u64) -> Option<Vec<bool>> {
    let h = to_fp(&inst.poly, p);
    let n = inst.poly.len() - 1;
    if h.deg() != n as i64 || h.gcd(&h.derivative()).deg() != 0 {
        return None;
    }
    // power sums of the roots mod p by Newton's identities, with c_i the
    // coefficient of X^(n-i)
    let coef = |i: usize| h.c.get(n - i).copied().unwrap_or(0);
    let mut s = vec![n as u64 % p];
    for k in 1..n {
        let mut v = (k as u64 % p) * coef(k) % p;
        for i in 1..k {
            v = (v + coef(i) * s[k - i]) % p;
        }
        s.push((p - v) % p);
    }
    let mut mask = vec![true; inst.resolvents[0].1.len()];
    for (e, per_class) in &inst.resolvents {
        // Tr(h(x) x^p) = Tr(x^(p+e))
        let xe = PolyFp::x(p).pow_mod(p as u128 + *e as u128, &h);
        let tr = xe.c.iter().enumerate().fold(0u64, |acc, (i, &a)| (acc + a * s[i]) % p);
        for (m, g) in mask.iter_mut().zip(per_class) {
            *m &= to_fp(g, p).eval(tr) == 0;
        }
    }
    Some(mask)
}
