use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub mul: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

impl FiniteGroup {
    /// Closes `gens` under `op`, starting from `id`. Returns the group and
    /// the element list in table order.
    pub fn generate<T, F>(id: T, gens: &[T], op: F, label: impl Fn(&T) -> String) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![id];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let h = op(&elems[i], g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
            i += 1;
        }
        let mul = elems.iter().map(|a| elems.iter().map(|b| index[&op(a, b)]).collect()).collect();
        let labels = elems.iter().map(label).collect();
        (FiniteGroup { mul, labels }, elems)
    }

    pub fn from_table(mul: Vec<Vec<usize>>) -> Self {
        let labels = (0..mul.len()).map(|i| i.to_string()).collect();
        FiniteGroup { mul, labels }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul[a][b] == 0).expect("inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |x, _| self.mul[x][a])
    }

    /// Identity, closure, inverses and associativity, checked exhaustively.
    pub fn verify(&self) -> bool {
        let n = self.order();
        if self.mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return false;
        }
        if (0..n).any(|a| self.mul[0][a] != a || self.mul[a][0] != a) {
            return false;
        }
        for row in &self.mul {
            let s: BTreeSet<usize> = row.iter().copied().collect();
            if s.len() != n {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]])))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul[self.mul[g][x]][self.inverse(g)]
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let inv: Vec<usize> = (0..n).map(|g| self.inverse(g)).collect();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let c: BTreeSet<usize> = (0..n).map(|g| self.mul[self.mul[g][x]][inv[g]]).collect();
            for &y in &c {
                seen[y] = true;
            }
            out.push(c.into_iter().collect());
        }
        out
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul[x][g];
                if s.insert(y) {
                    frontier.push(y);
                }
            }
        }
        s
    }

    pub fn is_normal(&self, h: &BTreeSet<usize>) -> bool {
        (0..self.order()).all(|g| h.iter().all(|&x| h.contains(&self.conjugate(g, x))))
    }

    pub fn is_abelian_subset(&self, h: &BTreeSet<usize>) -> bool {
        h.iter().all(|&a| h.iter().all(|&b| self.mul[a][b] == self.mul[b][a]))
    }

    /// All subgroups of the given order generated by at most two elements.
    pub fn subgroups_of_order(&self, k: usize) -> BTreeSet<BTreeSet<usize>> {
        let n = self.order();
        let cands: Vec<usize> = (0..n).filter(|&a| k % self.element_order(a) == 0).collect();
        let mut out = BTreeSet::new();
        for (i, &a) in cands.iter().enumerate() {
            for &b in &cands[i..] {
                let h = self.subgroup_generated(&[a, b]);
                if h.len() == k {
                    out.insert(h);
                }
            }
        }
        out
    }

    /// Whether `f` (indexed by element) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| f[self.mul[a][b]] == target.mul[f[a]][f[b]]))
    }
}

/// 2x2 matrices over F_3, row major.
pub type Mat3 = [u8; 4];

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    [
        (a[0] * b[0] + a[1] * b[2]) % 3,
        (a[0] * b[1] + a[1] * b[3]) % 3,
        (a[2] * b[0] + a[3] * b[2]) % 3,
        (a[2] * b[1] + a[3] * b[3]) % 3,
    ]
}

pub fn mat_det(a: &Mat3) -> u8 {
    (a[0] * a[3] + 2 * a[1] * a[2]) % 3
}

/// Permutations of {0, 1, 2, 3}; p[i] is the image of i.
pub type Perm4 = [u8; 4];

pub fn perm_mul(a: &Perm4, b: &Perm4) -> Perm4 {
    // (a b)(i) = a(b(i))
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize], a[b[3] as usize]]
}

pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let (mut j, mut len) = (i, 0);
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Points of P^1(F_3) as normalized vectors: [1:0], [0:1], [1:1], [1:2].
const P1: [[u8; 2]; 4] = [[1, 0], [0, 1], [1, 1], [1, 2]];

fn p1_index(v: [u8; 2]) -> usize {
    let (a, b) = (v[0] % 3, v[1] % 3);
    let norm = if a != 0 {
        let inv = if a == 1 { 1 } else { 2 };
        [1, (b * inv) % 3]
    } else {
        [0, 1]
    };
    P1.iter().position(|p| *p == norm).unwrap()
}

/// Action of a matrix on P^1(F_3) (column vectors).
pub fn p1_action(m: &Mat3) -> Perm4 {
    let mut out = [0u8; 4];
    for (i, v) in P1.iter().enumerate() {
        let w = [(m[0] * v[0] + m[1] * v[1]) % 3, (m[2] * v[0] + m[3] * v[1]) % 3];
        out[i] = p1_index(w) as u8;
    }
    out
}

/// S_4 as permutations of four points.
pub fn build_s4() -> (FiniteGroup, Vec<Perm4>) {
    FiniteGroup::generate([0, 1, 2, 3], &[[1, 0, 2, 3], [1, 2, 3, 0]], perm_mul, |p| format!("{p:?}"))
}

/// GL_2(F_3) with its projection onto S_4 through P^1(F_3).
pub struct Gl2F3 {
    pub group: FiniteGroup,
    pub matrices: Vec<Mat3>,
    pub s4: FiniteGroup,
    pub perms: Vec<Perm4>,
    /// projection[g] = index in s4 of the image of g.
    pub projection: Vec<usize>,
    /// Index of -I.
    pub minus_one: usize,
}

pub fn build_gl2f3() -> Gl2F3 {
    let gens: [Mat3; 2] = [[1, 1, 0, 1], [0, 1, 2, 0]];
    let extra: Mat3 = [2, 0, 0, 1];
    let (group, matrices) =
        FiniteGroup::generate([1, 0, 0, 1], &[gens[0], gens[1], extra], mat_mul, |m| format!("{m:?}"));
    let (s4, perms) = build_s4();
    let pidx: HashMap<Perm4, usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let projection = matrices.iter().map(|m| pidx[&p1_action(m)]).collect();
    let minus_one = matrices.iter().position(|m| *m == [2, 0, 0, 2]).unwrap();
    Gl2F3 { group, matrices, s4, perms, projection, minus_one }
}

impl Gl2F3 {
    pub fn index_of(&self, m: &Mat3) -> Option<usize> {
        self.matrices.iter().position(|x| x == m)
    }

    /// The two preimages of an element of S_4.
    pub fn lifts(&self, s: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.projection[g] == s).collect()
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.lifts(0)
    }

    /// Whether some homomorphism S_4 -> GL_2(F_3) splits the projection.
    /// S_4 is generated by (0 1) and (0 1 2 3); a section exists iff some
    /// choice of lifts of these generates a subgroup of order 24.
    pub fn has_section(&self) -> bool {
        let t = self.s4_index(&[1, 0, 2, 3]);
        let c = self.s4_index(&[1, 2, 3, 0]);
        self.lifts(t)
            .into_iter()
            .any(|a| self.lifts(c).into_iter().any(|b| self.group.subgroup_generated(&[a, b]).len() == 24))
    }

    pub fn s4_index(&self, p: &Perm4) -> usize {
        self.perms.iter().position(|x| x == p).unwrap()
    }
}

/// Cycle type of a permutation in S_4.
pub fn perm_cycle_type(p: &Perm4) -> Vec<usize> {
    cycle_type(&p.iter().map(|&x| x as usize).collect::<Vec<_>>())
}

/// S_3 generated by the given matrices has order 6 and is nonabelian.
pub fn s3_subgroup_check_with(gl: &Gl2F3, gens: &[Mat3]) -> bool {
    let idx: Option<Vec<usize>> = gens.iter().map(|m| gl.index_of(m)).collect();
    let Some(idx) = idx else { return false };
    let h = gl.group.subgroup_generated(&idx);
    h.len() == 6 && !gl.group.is_abelian_subset(&h)
}

pub fn s3_subgroup_check() -> bool {
    let gl = build_gl2f3();
    s3_subgroup_check_with(&gl, &[[1, 0, 0, 1], [0, 1, 1, 0], [1, 2, 0, 2]])
}

/// An element (sigma, x, y, z, w) of S_3 x| (Z/2)^4: sigma permutes
/// {0, 1, 2}, and (x, y), (z, w) are coordinates on the Klein group whose
/// nonzero elements P_1 = (1,0), P_2 = (0,1), P_3 = (1,1) are permuted by
/// sigma.P_i = P_sigma(i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiElem {
    pub sigma: [u8; 3],
    pub v: [u8; 4],
}

fn klein_act(sigma: &[u8; 3], u: [u8; 2]) -> [u8; 2] {
    // P_i -> P_sigma(i), extended linearly
    let p = |i: u8| match i {
        0 => [1u8, 0],
        1 => [0, 1],
        _ => [1, 1],
    };
    let mut out = [0u8; 2];
    for (i, bit) in u.iter().enumerate() {
        if *bit == 1 {
            let q = p(sigma[i]);
            out = [out[0] ^ q[0], out[1] ^ q[1]];
        }
    }
    out
}

fn s3_mul(a: &[u8; 3], b: &[u8; 3]) -> [u8; 3] {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
}

pub fn semi_mul(a: &SemiElem, b: &SemiElem) -> SemiElem {
    // (s, u)(t, v) = (s t, u + s.v)
    let v1 = klein_act(&a.sigma, [b.v[0], b.v[1]]);
    let v2 = klein_act(&a.sigma, [b.v[2], b.v[3]]);
    SemiElem {
        sigma: s3_mul(&a.sigma, &b.sigma),
        v: [a.v[0] ^ v1[0], a.v[1] ^ v1[1], a.v[2] ^ v2[0], a.v[3] ^ v2[1]],
    }
}

/// Embeds S_3 x| (Z/2)^2 in S_4: S_3 fixes the point 3 and P_i is the double
/// transposition pairing i with 3; (sigma, u) maps to u o sigma.
pub fn klein_s4(sigma: &[u8; 3], u: [u8; 2]) -> Perm4 {
    let s: Perm4 = [sigma[0], sigma[1], sigma[2], 3];
    let dt = |i: u8| -> Perm4 {
        match i {
            0 => [3, 2, 1, 0],
            1 => [2, 3, 0, 1],
            _ => [1, 0, 3, 2],
        }
    };
    let mut k: Perm4 = [0, 1, 2, 3];
    for (i, bit) in u.iter().enumerate() {
        if *bit == 1 {
            k = perm_mul(&k, &dt(i as u8));
        }
    }
    perm_mul(&k, &s)
}

/// G = S_3 x| (Z/2)^4 of order 96 together with the projections
/// Pi_1 = (sigma, (x, y)), Pi_2 = (sigma, (z, w)), Pi_3 = (sigma, (x+z, y+w)).
pub struct Semidirect {
    pub group: FiniteGroup,
    pub elems: Vec<SemiElem>,
    /// projections[i][g] = index in S_4 (from build_s4) of Pi_{i+1}(g).
    pub projections: [Vec<usize>; 3],
}

pub fn build_semidirect() -> Semidirect {
    let id = SemiElem { sigma: [0, 1, 2], v: [0; 4] };
    let gens = [
        SemiElem { sigma: [1, 0, 2], v: [0; 4] },
        SemiElem { sigma: [1, 2, 0], v: [0; 4] },
        SemiElem { sigma: [0, 1, 2], v: [1, 0, 0, 0] },
        SemiElem { sigma: [0, 1, 2], v: [0, 0, 1, 0] },
    ];
    let (group, elems) = FiniteGroup::generate(id, &gens, semi_mul, |e| format!("{:?}{:?}", e.sigma, e.v));
    let (_, perms) = build_s4();
    let pidx: HashMap<Perm4, usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let proj = |f: &dyn Fn(&SemiElem) -> [u8; 2]| -> Vec<usize> {
        elems.iter().map(|e| pidx[&klein_s4(&e.sigma, f(e))]).collect()
    };
    let projections = [
        proj(&|e| [e.v[0], e.v[1]]),
        proj(&|e| [e.v[2], e.v[3]]),
        proj(&|e| [e.v[0] ^ e.v[2], e.v[1] ^ e.v[3]]),
    ];
    Semidirect { group, elems, projections }
}

impl Semidirect {
    /// Indices of the normal subgroup {0} x| (Z/2)^4.
    pub fn translations(&self) -> Vec<usize> {
        (0..self.elems.len()).filter(|&i| self.elems[i].sigma == [0, 1, 2]).collect()
    }

    /// Sizes of the S_3-orbits on (Z/2)^4, sorted.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut sizes = Vec::new();
        let s3: Vec<[u8; 3]> = vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        for bits in 0u8..16 {
            let v = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1];
            if seen.contains(&v) {
                continue;
            }
            let orbit: BTreeSet<[u8; 4]> = s3
                .iter()
                .map(|s| {
                    let a = klein_act(s, [v[0], v[1]]);
                    let b = klein_act(s, [v[2], v[3]]);
                    [a[0], a[1], b[0], b[1]]
                })
                .collect();
            sizes.push(orbit.len());
            seen.extend(orbit);
        }
        sizes.sort_unstable();
        sizes
    }

    pub fn normal_subgroups_of_order(&self, k: usize) -> Vec<BTreeSet<usize>> {
        self.group.subgroups_of_order(k).into_iter().filter(|h| self.group.is_normal(h)).collect()
    }
}

/// Order-4 subgroups of (Z/2)^4, as sets of 4-bit vectors.
pub fn klein_subgroups_f2_4() -> Vec<BTreeSet<u8>> {
    let mut out = BTreeSet::new();
    for a in 1u8..16 {
        for b in 1u8..16 {
            if a != b {
                out.insert(BTreeSet::from([0, a, b, a ^ b]));
            }
        }
    }
    out.into_iter().collect()
}

fn trivially_intersecting(hs: &[&BTreeSet<u8>]) -> bool {
    hs.iter().enumerate().all(|(i, a)| hs[i + 1..].iter().all(|b| a.intersection(b).count() == 1))
}

/// Pairs completing the given subgroups to five with pairwise trivial
/// intersection.
pub fn completions(three: [&BTreeSet<u8>; 3]) -> Vec<(BTreeSet<u8>, BTreeSet<u8>)> {
    let all = klein_subgroups_f2_4();
    let mut out = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if trivially_intersecting(&[three[0], three[1], three[2], a, b]) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Encodes (x, y, z, w) as x + 2y + 4z + 8w.
pub fn bits4(v: [u8; 4]) -> u8 {
    v[0] | (v[1] << 1) | (v[2] << 2) | (v[3] << 3)
}

/// The three normal subgroups and the two further subgroups
/// H_4 = {0000, 1001, 0111, 1110}, H_5 = {0000, 1101, 1011, 0110}
/// intersect pairwise trivially; and every triple of order-4 subgroups of
/// (Z/2)^4 with pairwise trivial intersection has a completing pair.
pub fn five_subgroup_check() -> bool {
    let set = |vs: &[[u8; 4]]| -> BTreeSet<u8> { vs.iter().map(|v| bits4(*v)).collect() };
    let h1 = set(&[[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]]);
    let h2 = set(&[[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 1]]);
    let h3 = set(&[[0, 0, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1]]);
    let h4 = set(&[[0, 0, 0, 0], [1, 0, 0, 1], [0, 1, 1, 1], [1, 1, 1, 0]]);
    let h5 = set(&[[0, 0, 0, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 0]]);
    if !trivially_intersecting(&[&h1, &h2, &h3, &h4, &h5]) {
        return false;
    }
    let all = klein_subgroups_f2_4();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            for k in j + 1..all.len() {
                if trivially_intersecting(&[&all[i], &all[j], &all[k]])
                    && completions([&all[i], &all[j], &all[k]]).is_empty()
                {
                    return false;
                }
            }
        }
    }
    true
}
