use super::*;

#[test]
fn invariants_examples() {
    assert_eq!(TernaryForm::new(1, 11, 43, 0, 0, 1).invariants().unwrap(), (1849, 172));
    assert_eq!(TernaryForm::new(1, 1, 1, 0, 0, 0).invariants().unwrap(), (4, 4));
    // 4 * 563 * 564 ... gives 16 * 563^2
    assert_eq!(TernaryForm::new(4, 563, 564, 0, -4, 0).invariants().unwrap(), (16 * 563 * 563, 2252));
    assert_eq!(TernaryForm::new(1, 1, -1, 0, 0, 0).invariants().unwrap_err(), Error::NotPositiveDefinite);
}

#[test]
fn level_brute_force_oracle() {
    // smallest N with N (2A)^-1 integral and even diagonal, by direct search
    for t in [TernaryForm::new(1, 11, 43, 0, 0, 1), TernaryForm::new(3, 29, 29, -28, 2, 2), TernaryForm::new(2, 3, 5, 1, 1, 1)] {
        let g = t.gram2();
        let det = 2 * t.discriminant().unwrap();
        let adj = |i: usize, j: usize| {
            let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
            let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
            g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1]
        };
        let n = (1..)
            .find(|&n: &i64| {
                (0..3).all(|i| (0..3).all(|j| (n * adj(i, j)) % det == 0 && (i != j || (n * adj(i, j) / det) % 2 == 0)))
            })
            .unwrap();
        assert_eq!(t.level().unwrap(), n);
    }
}

#[test]
fn table_rows_have_caption_invariants() {
    for level in [172i64, 344, 2252, 2572] {
        for t in table(level).unwrap() {
            let (d, n) = t.invariants().unwrap();
            let s = (d as f64).sqrt().round() as i64;
            assert_eq!(s * s, d, "{t}");
            assert_eq!(n, level, "{t}");
        }
    }
}

fn rand_unimodular(seed: &mut u64) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..6 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let r = *seed >> 33;
        let (i, j) = ((r % 3) as usize, ((r / 3) % 3) as usize);
        let c = ((r / 9) % 5) as i64 - 2;
        if i != j {
            for k in 0..3 {
                m[k][i] += c * m[k][j];
            }
        }
    }
    m
}

#[test]
fn reduce_is_invariant_and_idempotent() {
    let mut seed = 7u64;
    for t in table(172).unwrap().into_iter().chain(table(344).unwrap()) {
        let r = reduce(&t).unwrap();
        assert_eq!(reduce(&r).unwrap(), r);
        assert_eq!(r.invariants().unwrap(), t.invariants().unwrap());
        assert!(r.a1 <= r.a2 && r.a2 <= r.a3 && r.a12.abs() <= r.a1 && r.a13.abs() <= r.a1 && r.a23.abs() <= r.a2);
        for _ in 0..5 {
            let u = t.transform(&rand_unimodular(&mut seed));
            assert_eq!(u.invariants().unwrap(), t.invariants().unwrap());
            assert_eq!(reduce(&u).unwrap(), r);
            assert!(is_equivalent(&t, &u).unwrap());
        }
    }
}

#[test]
fn table_rows_pairwise_inequivalent() {
    let rows = table(172).unwrap();
    for i in 0..rows.len() {
        assert!(is_equivalent(&rows[i], &rows[i]).unwrap());
        for j in 0..i {
            assert!(!is_equivalent(&rows[i], &rows[j]).unwrap());
        }
    }
}

#[test]
fn theta_examples() {
    let c = theta_counts(&TernaryForm::new(1, 1, 1, 0, 0, 0), 4);
    assert_eq!(c, vec![1, 6, 12, 8, 6]);
    let c = theta_counts(&TernaryForm::new(1, 43, 43, 0, 0, 0), 4);
    assert_eq!(c, vec![1, 2, 0, 0, 2]);
    // brute-force box count oracle
    let t = TernaryForm::new(4, 11, 14, -10, 3, 2);
    let b = 60;
    let mut want = vec![0u64; b + 1];
    for x in -10i64..=10 {
        for y in -10i64..=10 {
            for z in -10i64..=10 {
                let n = t.eval(&[x, y, z]);
                if n <= b as i64 {
                    want[n as usize] += 1;
                }
            }
        }
    }
    assert_eq!(theta_counts(&t, b), want);
    let u = t.transform(&rand_unimodular(&mut 99));
    assert_eq!(theta_counts(&u, b), want);
}

#[test]
fn candidate_discs() {
    assert_eq!(candidate_discriminants(172, true), vec![43 * 43, 4 * 43 * 43, 16 * 43 * 43]);
    assert_eq!(candidate_discriminants(2252, true), vec![563 * 563, 4 * 563 * 563, 16 * 563 * 563]);
}

#[test]
fn small_levels_complete() {
    // level 4: only x^2+y^2+z^2
    let v = enumerate_classes(4, EnumerateOptions::default());
    assert_eq!(v, vec![TernaryForm::new(1, 1, 1, 0, 0, 0)]);
}

#[test]
fn kohnen_examples() {
    assert!(TernaryForm::new(4, 563, 564, 0, -4, 0).is_kohnen());
    assert!(!TernaryForm::new(1, 11, 43, 0, 0, 1).is_kohnen());
}

#[test]
fn enumerate_matches_tables_small() {
    for level in [172i64, 344] {
        let got = enumerate_classes(level, EnumerateOptions::default());
        let mut want: Vec<_> = table(level).unwrap().iter().map(|t| reduce(t).unwrap()).collect();
        want.sort();
        assert_eq!(got, want, "level {level}");
    }
}

#[test]
#[ignore = "slow"]
fn enumerate_timing_large() {
    for level in [2252i64, 2572] {
        let t0 = std::time::Instant::now();
        let got = enumerate_classes(level, EnumerateOptions { square_disc: true, kohnen: true });
        let mut want: Vec<_> = table(level).unwrap().iter().map(|t| reduce(t).unwrap()).collect();
        want.sort();
        eprintln!("{level}: {} found, {} table, {:?}", got.len(), want.len(), t0.elapsed());
        assert_eq!(got, want, "level {level}");
    }
}
