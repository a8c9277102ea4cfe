use num_rational::BigRational;

use super::*;
use crate::arith::qq;
use crate::ternary::{table, theta_series, TernaryForm};

fn ints(f: &QExpansion) -> Vec<i64> {
    f.coeffs.iter().map(|c| {
        assert!(c.is_rational() && c.x.is_integer());
        i64::try_from(c.x.to_integer()).unwrap()
    }).collect()
}

#[test]
fn unary_theta() {
    assert_eq!(ints(&theta_unary(1, 9)), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
    let t = theta_unary(43, 50);
    assert_eq!(t.level, 172);
    let nz: Vec<usize> = (0..=50).filter(|&m| !t.coeffs[m].is_zero()).collect();
    assert_eq!(nz, vec![0, 43]);
    assert!(ints(&theta_unary(7, 500)).iter().all(|&c| (0..=2).contains(&c)));
}

#[test]
fn weight_three_halves_product() {
    let mut g = QExpansion::from_ints(&[0, 1, 0, -1, 2, 0, 1, 0, 0, 3, 1, 1], Weight::One, 344, -43);
    g.coeffs[5] = Qs2::new(qq(1, 2), qq(-3, 1));
    let f = product_weight_3_2(&g, 43, 11).unwrap();
    assert_eq!((f.weight, f.level, f.character), (Weight::ThreeHalves, 344, 1));
    assert_eq!(f.coeffs, g.coeffs);
    let g2 = QExpansion::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13], Weight::One, 12, -3);
    let f2 = product_weight_3_2(&g2, 3, 12).unwrap();
    for m in 0..=12usize {
        let mut want = 0i64;
        for j in -2i64..=2 {
            let k = m as i64 - 3 * j * j;
            if k >= 0 {
                want += k + 1;
            }
        }
        assert_eq!(f2.coeffs[m], Qs2::int(want));
    }
    assert_eq!(f2.level, 12);
    assert!(matches!(product_weight_3_2(&g2, 5, 12), Err(crate::Error::LemmaHypothesis(_))));
}

#[test]
fn rescaling() {
    let g = QExpansion::from_ints(&[1, 1], Weight::One, 563, -563);
    let e = expand_4z(&g, 4).unwrap();
    assert_eq!(ints(&e), vec![1, 0, 0, 0, 1]);
    assert_eq!(e.level, 4 * 563);
    let g = QExpansion::from_ints(&[1, 2, 3, 4, 5], Weight::One, 5, -5);
    let twice = expand_4z(&expand_4z(&g, 16).unwrap(), 64).unwrap();
    for m in 0..=64 {
        let want = if m % 16 == 0 { Qs2::int(m as i64 / 16 + 1) } else { Qs2::zero() };
        assert_eq!(twice.coeffs[m], want);
    }
    assert!(expand_4z(&g, 20).is_err());
}

#[test]
fn kohnen_condition() {
    let mut t = theta_unary(1, 20);
    t.weight = Weight::ThreeHalves;
    assert!(!kohnen_check(&t));
    assert!(kohnen_check(&QExpansion::zero(20, Weight::ThreeHalves, 4, 1)));
    // F(4z) * Theta_563 has exponents 4a + 563 j^2 = 0, 3 mod 4
    let mut c = vec![Qs2::int(1); 200];
    c[7] = Qs2::new(qq(0, 1), qq(1, 1));
    let g = expand_4z(&QExpansion::new(c, Weight::One, 563, -563), 700).unwrap();
    assert!(kohnen_check(&product_weight_3_2(&g, 563, 700).unwrap()));
}

fn thetas(level: i64, bound: usize) -> Vec<QExpansion> {
    table(level).unwrap().iter().map(|t| theta_series(t, bound).unwrap()).collect()
}

#[test]
fn hecke_first_coefficient() {
    let t = TernaryForm::new(1, 43, 43, 0, 0, 0);
    let f = theta_series(&t, 9 * 20).unwrap();
    let tf = hecke_tp2(&f, 3, 20).unwrap();
    // b(1) = c(9) + (-1|3) c(1) + 0
    let c = crate::ternary::theta_counts(&t, 9);
    assert_eq!(tf.coeffs[1], Qs2::int(c[9] as i64 - c[1] as i64));
    assert_eq!(tf.coeffs[0], Qs2::int(1 + 3));
    assert!(hecke_tp2(&QExpansion::zero(100, Weight::ThreeHalves, 4, 1), 3, 11).unwrap().is_zero());
    assert!(hecke_tp2(&f, 3, 21).is_err());
    assert_eq!(hecke_tp2(&f, 43, 1).unwrap_err(), crate::Error::PrimeDividesLevel(43));
}

#[test]
fn theta_span_rank_and_hecke() {
    let b = 25 * 50;
    let mut all = thetas(172, b);
    all.iter_mut().for_each(|f| f.level = 344);
    all.extend(thetas(344, b));
    assert_eq!(all.len(), 32);
    let (rank, idx) = rank_and_basis(&all, 50);
    assert_eq!(rank, 21);
    // the listed basis: first eleven of level 172, then 1..9 and 11 of 344
    let listed: Vec<usize> = (0..11).chain(14..23).chain([24]).collect();
    let sub: Vec<QExpansion> = listed.iter().map(|&i| all[i].clone()).collect();
    assert_eq!(rank_and_basis(&sub, 50).0, 21);
    let mut dup = sub.clone();
    dup.push(sub[3].clone());
    assert_eq!(rank_and_basis(&dup, 50).0, 21);

    let basis: Vec<QExpansion> = idx.iter().map(|&i| all[i].clone()).collect();
    let m9 = hecke_matrix(&basis, 3, 50).unwrap();
    let m25 = hecke_matrix(&basis, 5, 50).unwrap();
    let mul = |a: &Vec<Vec<Qs2>>, b: &Vec<Vec<Qs2>>| -> Vec<Vec<Qs2>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).fold(Qs2::zero(), |s, k| &s + &(&a[i][k] * &b[k][j]))).collect()).collect()
    };
    assert_eq!(mul(&m9, &m25), mul(&m25, &m9));

    let short: Vec<QExpansion> = basis.iter().map(|f| f.truncate(9 * 12).unwrap()).collect();
    assert!(matches!(hecke_matrix(&short, 3, 12), Err(crate::Error::InsufficientPrecision { .. })));
}

#[test]
fn singleton_eigenbasis() {
    // Theta^3 spans M_{3/2}(4), which T_9 multiplies by 1 + 3 = 4
    let t = TernaryForm::new(1, 1, 1, 0, 0, 0);
    let f = theta_series(&t, 9 * 30).unwrap();
    let m = hecke_matrix(std::slice::from_ref(&f), 3, 30).unwrap();
    assert_eq!(m, vec![vec![Qs2::int(4)]]);
    let e = eigenform_search_with(std::slice::from_ref(&f), &[(3, 4)], 30, &Qs2::int(1)).unwrap();
    assert_eq!(e.combination, vec![Qs2::int(1)]);
    assert!(is_eigenform(&e.expansion, 3, 4).unwrap());
    assert_eq!(
        eigenform_search_with(std::slice::from_ref(&f), &[(3, 2)], 30, &Qs2::int(1)).unwrap_err(),
        crate::Error::EmptyEigenspace
    );
}

#[test]
fn dimensions() {
    for (n, d) in [(4, 1), (8, 2), (12, 3), (344, 25), (2252, 143), (2572, 163)] {
        assert_eq!(dim_weight_3_2(n).unwrap(), d, "level {n}");
    }
    // for N = 4M or 8M with M odd squarefree, M_{3/2}(N) and M_2(N/2) have equal dimension
    let sqfree_odd = |m: u64| m % 2 == 1 && crate::arith::primes::factor_u64(m).iter().all(|&(_, e)| e == 1);
    for n in (4..=3000).step_by(4) {
        if sqfree_odd(n / 4) || (n % 8 == 0 && sqfree_odd(n / 8)) {
            assert_eq!(dim_weight_3_2(n).unwrap(), dim_m2(n / 2), "level {n}");
        }
    }
    // theta(z)^a theta(4z)^(3-a) are four independent forms at level 16
    assert_eq!(dim_weight_3_2(16).unwrap(), 4);
    assert!(dim_weight_3_2(6).is_err());
    assert_eq!(gamma0_index(344), 528);
    assert_eq!(genus_x0(11), 1);
    assert_eq!(genus_x0(37), 2);
    // prime levels: 1 + (p+1)/12 - nu2/4 - nu3/3 - 1 with nu2 = 0 and nu3 = 0 or 2
    assert_eq!(genus_x0(563), 47);
    assert_eq!(genus_x0(643), 53);
}

#[test]
fn echelon_solves() {
    let v = |a: &[i64]| a.iter().map(|&x| Qs2::int(x)).collect::<Vec<_>>();
    let mut e = Echelon::new(3);
    assert!(e.insert(&v(&[1, 2, 3])));
    assert!(e.insert(&v(&[0, 1, 1])));
    assert!(!e.insert(&v(&[2, 5, 7])));
    let c = e.solve(&v(&[3, 7, 10])).unwrap();
    assert_eq!(c[0], Qs2::int(3));
    assert_eq!(c[1], Qs2::int(1));
    assert_eq!(e.solve(&v(&[0, 0, 1])), Err(2));
    let _ = BigRational::from_integer(1.into());
}
