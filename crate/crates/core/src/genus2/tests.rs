use super::*;
use crate::elliptic::{trace_table, EllipticCurve};
use crate::field::Fq;

fn f7() -> Gf {
    Gf::prime(7).unwrap()
}

#[test]
fn points_at_infinity() {
    let f = f7();
    let c = Genus2Curve::from_i64s(&f, &[1, 0, 0, 0, 0, 1]).unwrap();
    let affine: u64 = f
        .elements()
        .map(|x| (1 + f.quadratic_character(&c.poly().eval(&x))) as u64)
        .sum();
    assert_eq!(c.count_points(1, false).unwrap(), affine + 1);
    // lc = 3 is a non-residue mod 7
    let c = Genus2Curve::from_i64s(&f, &[1, 0, 0, 0, 0, 0, 3]).unwrap();
    let affine: u64 = f
        .elements()
        .map(|x| (1 + f.quadratic_character(&c.poly().eval(&x))) as u64)
        .sum();
    assert_eq!(c.count_points(1, false).unwrap(), affine);
}

#[test]
fn rejects_bad_models() {
    let f = f7();
    assert!(Genus2Curve::from_i64s(&f, &[0, 0, 1, 0, 1]).is_err());
    // (x − 1)² (x⁴ + 1)
    let sq = Poly::from_i64s(&f, &[1, -2, 1]);
    let g = Poly::from_i64s(&f, &[1, 0, 0, 0, 1]);
    assert!(Genus2Curve::new(&sq * &g).is_err());
}

#[test]
fn cost_guard() {
    let f = Gf::prime(10007).unwrap();
    let c = Genus2Curve::from_i64s(&f, &[1, 2, 0, 0, 0, 1]).unwrap();
    assert!(matches!(c.count_points(2, false), Err(Error::CostGuard(_))));
    assert!(c.count_points(3, false).is_err());
}

#[test]
fn weil_data_consistent() {
    let f = Gf::with_order(25).unwrap();
    let mut rng = seeded_rng(4);
    let mut done = 0;
    while done < 10 {
        let mut c: Vec<_> = (0..6).map(|_| f.random(&mut rng)).collect();
        c.push(f.one());
        let Ok(curve) = Genus2Curve::new(Poly::new(&f, c)) else { continue };
        let w = curve.weil_data().unwrap();
        assert!((w.s1 * w.s1) as f64 <= 16.0 * 25.0);
        assert_eq!(w.count1 as i64, 26 - w.s1);
        assert_eq!(w.count2 as i64, 626 - (w.s1 * w.s1 - 2 * w.s2));
        assert_eq!(w.defect, 26 + 20 - w.count1 as i64);
        done += 1;
    }
}

#[test]
fn orbit_types_and_splittings() {
    let f = f7();
    let g1 = Poly::from_i64s(&f, &[1, 1, 0, 1]);
    let g2 = Poly::from_i64s(&f, &[3, 0, 0, 1]);
    let c = Genus2Curve::new(&g1 * &g2).unwrap();
    assert_eq!(c.orbit_type(), OrbitType(vec![3, 3]));
    assert_eq!(c.orbit_type().to_string(), "{3,3}");
    let sp = c.cubic_splittings().unwrap();
    assert_eq!(sp.len(), 2);
    assert!(sp[0].0.is_monic());
    for (a, b) in &sp {
        assert_eq!(&(a * b), c.poly());
    }

    // (x² + 1)(x² + x + 3)(x² + 2x + 5) over F_7: three irreducible quadratics
    let q1 = Poly::from_i64s(&f, &[1, 0, 1]);
    let q2 = Poly::from_i64s(&f, &[3, 1, 1]);
    let q3 = Poly::from_i64s(&f, &[5, 2, 1]);
    let c = Genus2Curve::new(&(&q1 * &q2) * &q3).unwrap();
    assert_eq!(c.orbit_type(), OrbitType(vec![2, 2, 2]));
    assert!(c.cubic_splittings().unwrap().is_empty());
    assert_eq!(stable_matchings(&c).unwrap().len(), 7);

    // x(x−1)(x−2)(x−3)(x−4)(x−5)
    let full = (0..6).fold(Poly::one(&f), |acc, r| &acc * &Poly::linear(&f, &f.from_i64(r)));
    let full = Genus2Curve::new(full).unwrap();
    assert_eq!(full.orbit_type(), OrbitType(vec![1; 6]));
    assert_eq!(full.cubic_splittings().unwrap().len(), 20);
    assert_eq!(stable_matchings(&full).unwrap().len(), 15);

    // (x−1)(x−2)(x² + 1)(x² + x + 3)
    let p = &(&Poly::from_i64s(&f, &[2, -3, 1]) * &q1) * &q2;
    let c = Genus2Curve::new(p).unwrap();
    assert_eq!(c.orbit_type(), OrbitType(vec![2, 2, 1, 1]));
    assert_eq!(stable_matchings(&c).unwrap().len(), 3);
}

#[test]
fn quintic_moves_to_sextic() {
    let f = f7();
    let c = Genus2Curve::from_i64s(&f, &[1, 0, 0, 0, 0, 1]).unwrap();
    let s = c.to_sextic().unwrap();
    assert_eq!(s.poly().degree(), 6);
    assert_eq!(s.count_points(1, false).unwrap(), c.count_points(1, false).unwrap());
    assert_eq!(s.count_points(2, false).unwrap(), c.count_points(2, false).unwrap());
    assert!(s.is_isomorphic(&c));
    assert!(c.is_isomorphic(&s));
}

#[test]
fn isomorphism_examples() {
    let f = Gf::prime(11).unwrap();
    let c = Genus2Curve::from_i64s(&f, &[3, 1, 0, 2, 0, 0, 1]).unwrap();
    assert!(c.is_isomorphic(&c));
    let shifted = Genus2Curve::new(c.poly().compose_linear(&f.one(), &f.one())).unwrap();
    assert!(c.is_isomorphic(&shifted));
    let scaled = Genus2Curve::new(c.poly().scale(&f.from_i64(4))).unwrap();
    assert!(c.is_isomorphic(&scaled));
    let twist = Genus2Curve::new(c.poly().scale(&f.nonresidue())).unwrap();
    assert_eq!(
        c.count_points(1, false).unwrap() + twist.count_points(1, false).unwrap(),
        2 * 12
    );
    if c.count_points(1, false).unwrap() != 12 {
        assert!(!c.is_isomorphic(&twist));
    }
}

/// `Σ c_i (ax + b)^i (cx + d)^{6−i}`
fn act(f: &Poly<Gf>, m: [Fq; 4]) -> Poly<Gf> {
    let k = f.field();
    let l1 = Poly::new(k, vec![m[1], m[0]]);
    let l2 = Poly::new(k, vec![m[3], m[2]]);
    (0..=6).fold(Poly::zero(k), |acc, i| {
        let t = &(&l1.pow(i as u32) * &l2.pow(6 - i as u32)).scale(&f.coeff(i));
        &acc + t
    })
}

fn brute_isomorphic(a: &Genus2Curve, b: &Genus2Curve) -> bool {
    let k = a.field();
    let els: Vec<Fq> = k.elements().collect();
    for &m0 in &els {
        for &m1 in &els {
            for &m2 in &els {
                for &m3 in &els {
                    if k.is_zero(&k.sub(&k.mul(&m0, &m3), &k.mul(&m1, &m2))) {
                        continue;
                    }
                    let g = act(a.poly(), [m0, m1, m2, m3]);
                    let i = (0..=6).find(|&i| !k.is_zero(&b.poly().coeff(i))).unwrap();
                    let c = k.div(&g.coeff(i), &b.poly().coeff(i)).unwrap();
                    if k.is_square(&c) && g == b.poly().scale(&c) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[test]
fn isomorphism_matches_brute_force() {
    let f = Gf::prime(5).unwrap();
    let mut rng = seeded_rng(9);
    let mut curves = Vec::new();
    while curves.len() < 12 {
        let deg = if curves.len() % 3 == 0 { 5 } else { 6 };
        let mut c: Vec<_> = (0..deg).map(|_| f.random(&mut rng)).collect();
        c.push(f.from_i64(1 + (curves.len() % 2) as i64));
        if let Ok(a) = Genus2Curve::new(Poly::new(&f, c)) {
            curves.push(a);
        }
    }
    // twists and shifts give isomorphic and non-isomorphic pairs with equal counts
    let extra: Vec<_> = curves
        .iter()
        .flat_map(|c| {
            [
                Genus2Curve::new(c.poly().scale(&f.nonresidue())).unwrap(),
                Genus2Curve::new(c.poly().compose_linear(&f.from_i64(2), &f.one())).unwrap(),
            ]
        })
        .collect();
    curves.extend(extra);
    let mut hits = 0;
    for a in &curves {
        for b in &curves {
            if a.count_points(1, false).unwrap() != b.count_points(1, false).unwrap() {
                continue;
            }
            let want = brute_isomorphic(a, b);
            assert_eq!(a.is_isomorphic(b), want, "{:?} {:?}", a.poly(), b.poly());
            hits += want as usize;
        }
    }
    assert!(hits > curves.len());
}

fn small_curves(q: u64, n: usize) -> Vec<EllipticCurve> {
    let f = Gf::with_order(q).unwrap();
    trace_table(&f).entries().iter().map(|(e, _)| e.clone()).take(n).collect()
}

#[test]
fn gluing_counts() {
    for q in [5u64, 7, 9, 11, 13, 25, 27, 31] {
        let es = small_curves(q, 12);
        for (i, e1) in es.iter().enumerate() {
            for e2 in &es[i..] {
                for c in glue_along_two_torsion(e1, e2).unwrap() {
                    let n = c.count_points(1, false).unwrap();
                    assert_eq!(n + q + 1, e1.point_count() + e2.point_count());
                }
            }
        }
    }
}

#[test]
fn richelot_preserves_weil_data() {
    for q in [7u64, 11, 13, 25, 27] {
        let es = small_curves(q, 10);
        let mut seen = 0;
        for (i, e1) in es.iter().enumerate() {
            for e2 in &es[i..] {
                for c in glue_along_two_torsion(e1, e2).unwrap() {
                    let w = c.weil_data().unwrap();
                    for n in richelot_neighbors(&c).unwrap() {
                        let wn = n.weil_data().unwrap();
                        assert_eq!((wn.s1, wn.s2), (w.s1, w.s2), "q = {q}");
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 0, "q = {q}");
    }
}

#[test]
fn completeness_at_53() {
    let f = Gf::prime(53).unwrap();
    let l = trace_table(&f).with_trace(9);
    assert_eq!(l.len(), 5);
    let s = algorithm_genus2(53, &l).unwrap();
    assert_eq!(s.len(), 40);
    for c in &s {
        assert_eq!(c.count_points(1, false).unwrap(), 36);
        assert_eq!(c.count_points(2, false).unwrap(), 2860);
        assert!(c.has_weil_polynomial_square(9).unwrap());
        assert_eq!(c.orbit_type(), OrbitType(vec![3, 3]));
    }
    for (i, a) in s.iter().enumerate() {
        for b in &s[i + 1..] {
            assert!(!a.is_isomorphic(b));
        }
    }
}

#[test]
fn empty_list_is_usage_error() {
    assert!(algorithm_genus2(53, &[]).is_err());
}
