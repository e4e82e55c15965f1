use super::*;
use crate::field::{Field, Gf};
use proptest::prelude::*;

fn curve(f: &Gf, v: [i64; 4]) -> EllipticCurve {
    EllipticCurve::from_i64s(f, v).unwrap()
}

fn all_classes(f: &Gf) -> Vec<EllipticCurve> {
    f.elements()
        .flat_map(|j| isomorphism_class_models(f, &j))
        .collect()
}

#[test]
fn j_invariant_examples() {
    let f = Gf::prime(7).unwrap();
    assert_eq!(curve(&f, [1, 0, 0, 1]).j_invariant(), f.zero());
    assert_eq!(curve(&f, [0, 1, 0, 1]).j_invariant(), f.from_u64(6));
}

#[test]
fn j_invariant_survives_twist() {
    let mut rng = crate::seeded_rng(11);
    for q in [7u64, 27, 101, 625] {
        let f = Gf::with_order(q).unwrap();
        for _ in 0..25 {
            let v = [0; 4].map(|_| f.random(&mut rng));
            let Ok(e) = EllipticCurve::new(&f, v) else { continue };
            assert_eq!(e.j_invariant(), e.quadratic_twist().j_invariant());
        }
    }
}

#[test]
fn count_examples() {
    let f = Gf::prime(7).unwrap();
    let e = curve(&f, [1, 0, 0, 1]);
    assert_eq!(e.point_count_naive(), 12);
    let r = e.trace_record();
    assert_eq!((r.count, r.trace), (12, -4));
    // defect = m + t = 5 − 4
    assert_eq!(r.defect, 1);
    for q in [7u64, 11, 19, 23, 27, 43, 343] {
        let f = Gf::with_order(q).unwrap();
        assert_eq!(curve(&f, [0, 1, 0, 1]).point_count(), q + 1, "q = {q}");
    }
}

#[test]
fn twist_defects_sum_to_2m() {
    for q in [5u64, 9, 13, 27, 31] {
        let f = Gf::with_order(q).unwrap();
        let m = crate::arith::floor_two_sqrt(q) as i64;
        for e in all_classes(&f) {
            let d1 = e.trace_record().defect;
            let d2 = e.quadratic_twist().trace_record().defect;
            assert_eq!(d1 + d2, 2 * m);
        }
    }
}

#[test]
fn two_torsion_examples() {
    let f = Gf::prime(7).unwrap();
    assert_eq!(curve(&f, [0, -1, 0, 1]).rational_two_torsion_count(), 4);
    assert_eq!(curve(&f, [1, 1, 0, 1]).rational_two_torsion_count(), 1);
    assert_eq!(curve(&f, [0, 1, 0, 1]).rational_two_torsion_count(), 2);
}

#[test]
fn n_of_cubic_examples() {
    let f = Gf::prime(7).unwrap();
    assert_eq!(n_of_cubic(&Poly::from_i64s(&f, &[1, 1, 0, 1])).unwrap(), 3);
    assert_eq!(n_of_cubic(&Poly::from_i64s(&f, &[0, -1, 0, 1])).unwrap(), 6);
    assert_eq!(n_of_cubic(&Poly::from_i64s(&f, &[0, 1, 0, 1])).unwrap(), 2);
    assert!(n_of_cubic(&Poly::from_i64s(&f, &[0, 0, 1, 1])).is_err());
}

#[test]
fn compatibility_examples() {
    let f = Gf::prime(7).unwrap();
    let cubic = Poly::from_i64s(&f, &[1, 1, 0, 1]);
    let e = EllipticCurve::from_cubic(&cubic).unwrap();
    assert!(is_compatible(&e, &cubic).unwrap());
    let split = Poly::from_i64s(&f, &[0, -1, 0, 1]);
    assert!(!is_compatible(&e, &split).unwrap());
}

#[test]
fn isomorphism_examples() {
    let f = Gf::prime(7).unwrap();
    let e = curve(&f, [2, 0, 0, 1]);
    assert!(e.is_isomorphic(&e));
    // 2·6³ = 5 mod 7: 9 points against 7, so not isomorphic
    let e2 = curve(&f, [5, 0, 0, 1]);
    assert_eq!((e.point_count(), e2.point_count()), (9, 7));
    assert!(!e.is_isomorphic(&e2));
    // u = 2 over F_13: y² = x³ + 2 ≅ y² = x³ + 2·2⁶
    let f13 = Gf::prime(13).unwrap();
    assert!(curve(&f13, [2, 0, 0, 1]).is_isomorphic(&curve(&f13, [2 * 64, 0, 0, 1])));
    // a non-monic model and its monic rescaling
    let a = curve(&f13, [3, 1, 4, 5]);
    let b = EllipticCurve::new(&f13, {
        let (a2, a4, a6) = a.normal_form();
        [a6, a4, a2, f13.one()]
    })
    .unwrap();
    assert!(a.is_isomorphic(&b));
    let t = a.quadratic_twist();
    assert_eq!(a.point_count() + t.point_count(), 28);
    let j = a.j_invariant();
    if !f13.is_zero(&j) && j != f13.from_i64(1728) {
        assert!(!a.is_isomorphic(&t));
    }
}

#[test]
fn weighted_class_count_is_q() {
    // Σ 1/#Aut(E) over F_q-isomorphism classes equals q
    for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 243] {
        let f = Gf::with_order(q).unwrap();
        let classes = all_classes(&f);
        let total: usize = classes.iter().map(|e| 24 / e.automorphism_count()).sum();
        assert_eq!(total as u64, 24 * q, "q = {q}");
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                if a.j_invariant() == b.j_invariant() {
                    assert!(!a.is_isomorphic(b));
                }
            }
        }
    }
}

#[test]
fn twist_point_counts_and_hasse() {
    for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49] {
        let f = Gf::with_order(q).unwrap();
        for e in all_classes(&f) {
            let n = e.point_count_naive();
            let nt = e.quadratic_twist().point_count_naive();
            assert_eq!(n + nt, 2 * q + 2);
            let t = (q + 1) as i64 - n as i64;
            assert!(t * t <= 4 * q as i64);
        }
    }
}

#[test]
fn bsgs_matches_naive_exhaustively() {
    let mut rng = crate::seeded_rng(1);
    for q in [7u64, 11, 13, 27, 49] {
        let f = Gf::with_order(q).unwrap();
        for e in all_classes(&f) {
            assert_eq!(e.point_count_bsgs(&mut rng).unwrap(), e.point_count_naive());
        }
    }
}

#[test]
fn bsgs_matches_naive_random_large() {
    let mut rng = crate::seeded_rng(2);
    for q in [1009u64, 4099, 10007, 3u64.pow(9)] {
        let f = Gf::with_order(q).unwrap();
        let mut done = 0;
        while done < 15 {
            let v = [0; 4].map(|_| f.random(&mut rng));
            let Ok(e) = EllipticCurve::new(&f, v) else { continue };
            let n = e.point_count_naive();
            assert_eq!(e.point_count_bsgs(&mut rng).unwrap(), n);
            assert_eq!(e.quadratic_twist().point_count(), 2 * q + 2 - n);
            done += 1;
        }
    }
}

#[test]
fn defect_one_over_7() {
    let f = Gf::prime(7).unwrap();
    let cs = curves_with_defect(&f, 1);
    assert!(!cs.is_empty());
    assert!(cs.iter().all(|e| e.point_count() == 12));
    assert!(cs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn exceptional_examples() {
    assert!(is_d_exceptional(243, 1).unwrap());
    assert!(is_d_exceptional(3125, 1).unwrap());
    assert!(!is_d_exceptional(101, 1).unwrap());
    assert!(is_d_exceptional(8, 1).is_err());
    // F_27 carries a supersingular curve of trace −9, i.e. defect 1
    assert!(!is_d_exceptional(27, 1).unwrap());
    let f = Gf::with_order(27).unwrap();
    assert!(curves_with_defect(&f, 1).iter().all(|e| e.point_count() == 37));
}

#[test]
fn trace_table_classes_sorted_and_complete() {
    let f = Gf::prime(11).unwrap();
    let t = trace_table(&f);
    assert!(t.entries().windows(2).all(|w| w[0].0 < w[1].0));
    for (e, tr) in t.entries() {
        assert_eq!(*tr, e.trace());
        assert_eq!(t.trace_of(e), Some(*tr));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn twist_counts_random(v in proptest::array::uniform4(0u64..10007)) {
        let f = Gf::prime(10007).unwrap();
        let v = v.map(|c| f.from_u64(c));
        if let Ok(e) = EllipticCurve::new(&f, v) {
            let n = e.point_count();
            prop_assert_eq!(n + e.quadratic_twist().point_count(), 2 * 10007 + 2);
            let t = 10008i64 - n as i64;
            prop_assert!(t * t <= 4 * 10007);
        }
    }
}
