use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::*;
use crate::arith::bigfloat::Cx;
use crate::arith::primes::valuation;
use crate::arith::{kronecker_symbol, primes_up_to, q, qq, RationalPoly};
use crate::octahedral::frobenius_table;

const BITS: u32 = 300;

fn reference_p24(case: &str) -> RationalPoly {
    let desc: &[i64] = match case {
        "563" => &[1, -3, -9, 22, 55, -68, -212, 85, 467, -34, -698, -31, 797, 83, -660, -56, 420, 0, -199, 32, 55, -20, -4, 3, 1],
        "643" => &[1, -5, 11, -8, -10, 23, 9, -86, 171, -121, -212, 636, -504, -156, 766, -1116, 1364, -1100, 697, -426, 227, -37, 25, -29, 5],
        _ => unreachable!(),
    };
    RationalPoly::from_i64_desc(desc)
}

fn cofactor_det(m: &[Vec<Cx>]) -> Cx {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Cx::zero(m[0][0].bits);
    for j in 0..n {
        let minor: Vec<Vec<Cx>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn close(a: &Cx, b: &Cx, k: i64) -> bool {
    (a - b).is_below(k)
}

fn lcg(seed: &mut u64) -> i64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*seed >> 33) % 19) as i64 - 9
}

fn random_setup(seed: &mut u64) -> (Vec<Cx>, Vec<Vec<BigRational>>) {
    let roots: Vec<Cx> = (0..4).map(|i| Cx::from_rational(&qq(lcg(seed) * 10 + i, 7), BITS)).collect();
    loop {
        let p: Vec<Vec<BigRational>> = (0..4).map(|_| (0..4).map(|_| qq(lcg(seed), 1 + lcg(seed).abs())).collect()).collect();
        let pc: Vec<Vec<Cx>> = p.iter().map(|r| r.iter().map(|x| Cx::from_rational(x, BITS)).collect()).collect();
        if !det_gauss(&pc).unwrap().is_below(20) {
            return (roots, p);
        }
    }
}

#[test]
fn determinant_matches_cofactor_oracle() {
    let mut seed = 7;
    for d in [-43i64, -563, 5] {
        let (roots, p) = random_setup(&mut seed);
        let got = gamma_determinant(&roots, &p, d, BITS).unwrap();
        let mut m = vpc_product(&roots, &p, d, BITS).unwrap();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] + &Cx::from_i64(1, BITS);
        }
        assert!(close(&got, &cofactor_det(&m), 150));
    }
}

#[test]
fn determinant_identity_and_multilinearity() {
    let id: Vec<Vec<Cx>> =
        (0..4).map(|i| (0..4).map(|j| Cx::from_i64(i64::from(i == j), BITS)).collect()).collect();
    assert!(close(&det_gauss(&id).unwrap(), &Cx::from_i64(1, BITS), 200));
    let mut seed = 11;
    let (roots, p) = random_setup(&mut seed);
    let base = det_gauss(&vpc_product(&roots, &p, -43, BITS).unwrap()).unwrap();
    // scaling the first column of P scales the product term's determinant
    let mut p3 = p.clone();
    for row in p3.iter_mut() {
        row[0] = &row[0] * q(3);
    }
    let scaled = det_gauss(&vpc_product(&roots, &p3, -43, BITS).unwrap()).unwrap();
    assert!(close(&scaled, &base.scale_int(&BigInt::from(3)), 150));
    // and scaling all of P by 2 multiplies it by 2^4
    let p2: Vec<Vec<BigRational>> = p.iter().map(|r| r.iter().map(|x| x * q(2)).collect()).collect();
    let s2 = det_gauss(&vpc_product(&roots, &p2, -43, BITS).unwrap()).unwrap();
    assert!(close(&s2, &base.scale_int(&BigInt::from(16)), 150));
}

#[test]
fn determinant_rejects_bad_input() {
    let mut seed = 3;
    let (mut roots, p) = random_setup(&mut seed);
    let zero = vec![vec![q(0); 4]; 4];
    assert!(gamma_determinant(&roots, &zero, -43, BITS).is_err());
    roots[1] = roots[0].clone();
    assert!(gamma_determinant(&roots, &p, -43, BITS).is_err());
}

#[test]
fn conjugates_are_galois_stable() {
    for (name, case) in gamma_cases() {
        let conj = gamma_conjugates(&case.quartic, &case.gamma, 100).unwrap();
        assert_eq!(conj.len(), 12, "{name}");
        // elementary symmetric functions are rational integers
        let poly = crate::arith::bigfloat::poly_from_roots(&conj, conj[0].bits);
        assert!(crate::arith::bigfloat::round_to_integers(&poly, 100).is_ok(), "{name}");
    }
}

#[test]
fn degenerate_gamma_is_reported() {
    let mut case = gamma_cases()["563"].clone();
    // x1 - x2 vanishes on no ordered pair, x1^0 - 1 on all of them
    case.gamma.terms = vec![(1, 0, 0), (-1, 0, 0)];
    assert_eq!(gamma_conjugates(&case.quartic, &case.gamma, 60).unwrap_err(), crate::Error::DegenerateGamma);
}

fn sqrt_poly(case: &str) -> RationalPoly {
    let c = &gamma_cases()[case];
    sqrt_gamma_polynomial(&c.quartic, &c.gamma, &BigRational::one(), 200).unwrap()
}

#[test]
fn degree_24_discriminants() {
    for (case, p) in [("563", 563u64), ("643", 643)] {
        for f in [sqrt_poly(case), reference_p24(case)] {
            assert_eq!(f.degree(), 24);
            let d = f.discriminant().unwrap();
            assert!(d.is_integer());
            let v = valuation(d.numer(), p);
            assert!(v % 2 == 1 && v >= 11, "{case}: valuation {v}");
            // d = -p^v k^2: the cofactor is minus a perfect square
            let rest = -(d.numer() / BigInt::from(p).pow(v));
            assert!(rest.is_positive() && rest.sqrt().pow(2) == rest, "{case}");
        }
    }
}

#[test]
fn degree_24_patterns_match_reference_fields() {
    for case in ["563", "643"] {
        let ours = sqrt_poly(case);
        let reference = reference_p24(case);
        let mut compared = 0;
        for p in primes_up_to(1500) {
            let (Ok(a), Ok(b)) = (ours.factorization_pattern_mod_p(p), reference.factorization_pattern_mod_p(p)) else {
                continue;
            };
            if a.squarefree && b.squarefree {
                assert_eq!(a.degrees(), b.degrees(), "{case} p={p}");
                compared += 1;
            }
        }
        assert!(compared > 200);
    }
}

#[test]
fn rescaling_and_precision_stability() {
    let c = &gamma_cases()["643"];
    let f1 = sqrt_gamma_polynomial(&c.quartic, &c.gamma, &q(1), 200).unwrap();
    let f1b = sqrt_gamma_polynomial(&c.quartic, &c.gamma, &q(1), 400).unwrap();
    assert_eq!(f1, f1b);
    let f4 = sqrt_gamma_polynomial(&c.quartic, &c.gamma, &q(4), 200).unwrap();
    // prod (t^2 - 4 gamma) = 2^24 f1(t / 2)
    let sub = f1.compose(&RationalPoly::new(vec![q(0), qq(1, 2)])).scale(&BigRational::from_integer(BigInt::from(2).pow(24)));
    assert_eq!(f4, sub);
    let fz = minpoly_sqrt_gamma(&gamma_conjugates(&c.quartic, &c.gamma, 60).unwrap(), &q(0), 60);
    assert!(fz.is_err());
}

fn closure_consistency(case: &str, poly24: &RationalPoly, disc: i64, unresolved: &[u64]) {
    let c = &gamma_cases()[case];
    let gc = GaloisClosure::new(&c.quartic, &c.gamma, 120).unwrap();
    assert_eq!(gc.group.order(), 48);
    let mut sizes: Vec<usize> = gc.classes.iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 6, 6, 6, 8, 8, 12]);
    let table = frobenius_table();
    let mut signs = std::collections::BTreeSet::new();
    let mut failed = Vec::new();
    for p in primes_up_to(1000) {
        let Ok(k) = gc.frobenius_class(p) else {
            failed.push(p);
            continue;
        };
        let t = &gc.traces[k];
        if t.y.is_zero() {
            assert!(t.x.is_integer());
        } else {
            assert_eq!(kronecker_symbol(disc, p as i64), -1, "order 8 needs chi(p) = -1");
            signs.insert(t.y.is_positive());
        }
        let Ok(quart) = c.quartic.factorization_pattern_mod_p(p) else { continue };
        if !quart.squarefree {
            continue;
        }
        assert_eq!(gc.quartic_cycle_type(k), quart.degrees(), "{case} p={p}");
        let Ok(pat) = poly24.factorization_pattern_mod_p(p) else { continue };
        if pat.squarefree {
            assert_eq!(gc.root_cycle_type(k), pat.degrees(), "{case} p={p}");
            match table.lookup_value(&quart.degrees(), &pat.degrees()).unwrap() {
                Some(v) => assert_eq!(*t, v, "{case} p={p}"),
                None => assert_eq!(t.x, BigRational::zero()),
            }
        }
    }
    assert_eq!(failed, unresolved, "{case}");
    assert_eq!(signs.len(), 2, "both order 8 classes occur");
    assert!(gc.h48().coeffs().iter().all(|c| c.is_integer()));
    assert_eq!(gc.h48().degree(), 48);
    assert!(gc.resolvent(0).degree() >= 1);
}

#[test]
fn galois_closure_43() {
    closure_consistency("43", &sqrt_poly("43"), -43, &[2, 43]);
}

#[test]
fn galois_closure_563_643() {
    closure_consistency("563", &reference_p24("563"), -563, &[2, 3, 563]);
    closure_consistency("643", &reference_p24("643"), -643, &[2, 5, 643]);
}
