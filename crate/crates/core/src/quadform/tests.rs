use super::*;
use proptest::prelude::*;

fn x4_2x_1() -> RationalPoly {
    RationalPoly::from_i64(&[-1, -2, 0, 0, 1])
}

#[test]
fn trace_form_rows() {
    let t = trace_form(&x4_2x_1()).unwrap();
    let want = QuadraticForm::from_i64(&[&[4, 0, 0, 6], &[0, 0, 6, 4], &[0, 6, 4, 0], &[6, 4, 0, 12]]).unwrap();
    assert_eq!(t, want);
    // Newton oracle: roots satisfy x^4 = 2x + 1, so p_{k+4} = 2 p_{k+1} + p_k
    let p = power_sums(&x4_2x_1(), 8);
    for k in 0..5 {
        assert_eq!(p[k + 4], q(2) * &p[k + 1] + &p[k]);
    }
}

#[test]
fn trace_form_rejects_non_squarefree() {
    let f = RationalPoly::from_i64(&[1, 0, -2, 0, 1]);
    assert_eq!(trace_form(&f).unwrap_err(), Error::NotSquarefree);
    assert!(trace_form(&RationalPoly::from_i64(&[1, 0, 1])).is_err());
}

#[test]
fn diagonalize_examples() {
    let id = QuadraticForm::diagonal(&[q(1), q(1), q(1), q(1)]);
    assert_eq!(diagonalize(&id).unwrap(), vec![q(1); 4]);
    let t = trace_form(&x4_2x_1()).unwrap();
    let d = diagonalize(&t).unwrap();
    assert_eq!(signature(&d), (3, 1));
    let prod = d.iter().fold(q(1), |a, x| a * x);
    assert_eq!(squarefree_part(&prod).unwrap(), BigInt::from(-43));
    let h = QuadraticForm::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
    let d = diagonalize(&h).unwrap();
    assert_eq!(squarefree_part(&(&d[0] * &d[1])).unwrap(), BigInt::from(-1));
    let z = QuadraticForm::from_i64(&[&[0, 0], &[0, 1]]).unwrap();
    assert_eq!(diagonalize(&z).unwrap_err(), Error::Degenerate);
}

#[test]
fn hasse_examples() {
    let id = QuadraticForm::diagonal(&[q(1), q(1), q(1), q(1)]);
    for v in [Place::Infinity, Place::Prime(2), Place::Prime(3)] {
        assert_eq!(hasse_invariant(&id, v).unwrap(), 1);
    }
    let m = QuadraticForm::diagonal(&[q(-1), q(-1)]);
    assert_eq!(hasse_invariant(&m, Place::Infinity).unwrap(), -1);
}

#[test]
fn equivalence_examples() {
    let a = QuadraticForm::diagonal(&[q(1), q(1)]);
    let b = QuadraticForm::diagonal(&[q(1), q(-1)]);
    assert!(is_equivalent_over_q(&a, &a).unwrap());
    assert!(!is_equivalent_over_q(&a, &b).unwrap());
    let t = trace_form(&x4_2x_1()).unwrap();
    let r = reference_form(&q(-43)).unwrap();
    assert!(is_equivalent_over_q(&t, &r).unwrap());
}

#[test]
fn reference_form_examples() {
    let r = reference_form(&q(-43)).unwrap();
    assert_eq!(diagonalize(&r).unwrap(), vec![q(1), q(1), q(2), q(-86)]);
    assert_eq!(squarefree_part(&r.determinant()).unwrap(), BigInt::from(-43));
    assert!(reference_form(&q(0)).is_err());
}

#[test]
fn obstruction_examples() {
    assert!(obstruction_class(&x4_2x_1()).unwrap().is_trivial());
    let f563 = RationalPoly::from_i64_desc(&[1, -8, 19, -14, -1]);
    assert!(obstruction_class(&f563).unwrap().is_trivial());
    // positive discriminant: x^4 - 5x^2 + 4 has four real roots
    let pos = RationalPoly::from_i64(&[4, 0, -5, 0, 1]);
    assert_eq!(obstruction_class(&pos).unwrap_err(), Error::SignatureMismatch);
}

#[test]
fn br2_arithmetic() {
    let a = Br2Element::new([Place::Prime(2), Place::Prime(43)]);
    let b = Br2Element::new([Place::Prime(43), Place::Prime(7)]);
    assert!(br2_add(&a, &a).is_trivial());
    assert_eq!(br2_add(&a, &b), Br2Element::new([Place::Prime(2), Place::Prime(7)]));
    assert_eq!(serde_json::to_string(&Br2Element::new([Place::Infinity, Place::Prime(2)])).unwrap(), "[2,\"inf\"]");
}

#[test]
fn witt_sum_trivial_and_mismatch() {
    let f = x4_2x_1();
    // (2,-43)_v: -43 = 5 mod 8 so it is -1 at 2 and 43; not a degenerate true case
    let g = RationalPoly::from_i64_desc(&[1, -8, 19, -14, -1]);
    assert_eq!(witt_sum_check(&f, &f, &g, &BigInt::from(-43)).unwrap_err(), Error::DiscriminantMismatch);
    // disc class -563 with 563 = 3 mod 8, so (2,-563) = 1 everywhere
    assert!(witt_sum_check(&g, &g, &g, &BigInt::from(-563)).unwrap());
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (1i64..60, 1i64..20, any::<bool>()).prop_map(|(n, d, s)| BigRational::new(BigInt::from(if s { n } else { -n }), BigInt::from(d)))
}

fn unimodular() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    // product of random elementary matrices
    proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 1..8).prop_map(|ops| {
        let mut m: Vec<Vec<BigRational>> = (0..4).map(|i| (0..4).map(|j| q((i == j) as i64)).collect()).collect();
        for (i, j, c) in ops {
            if i != j {
                for k in 0..4 {
                    let t = &m[j][k] * q(c);
                    m[i][k] += t;
                }
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn hasse_invariant_under_basis_change(d in proptest::collection::vec(small_rat(), 4), s in unimodular()) {
        let f = QuadraticForm::diagonal(&d);
        let g = f.transform(&s);
        for v in [Place::Infinity, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)] {
            prop_assert_eq!(hasse_invariant(&f, v).unwrap(), hasse_invariant(&g, v).unwrap());
        }
        prop_assert!(is_equivalent_over_q(&f, &g).unwrap());
    }

    #[test]
    fn trace_det_matches_disc(c in proptest::collection::vec(-9i64..=9, 4)) {
        let f = RationalPoly::from_i64(&[c[0], c[1], c[2], c[3], 1]);
        prop_assume!(f.is_squarefree());
        let t = trace_form(&f).unwrap();
        prop_assert_eq!(squarefree_part(&t.determinant()).unwrap(), f.disc_class().unwrap());
        if f.discriminant().unwrap().is_negative() {
            prop_assert_eq!(obstruction_class(&f).unwrap().len() % 2, 0);
        }
    }
}
