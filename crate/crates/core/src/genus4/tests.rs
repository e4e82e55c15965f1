use super::*;
use crate::elliptic::{is_compatible, trace_table};
use crate::oracle;
use crate::seeded_rng;
use rand::Rng;

fn random_pair<R: Rng>(k: &Gf, rng: &mut R) -> (Poly<Gf>, Poly<Gf>) {
    loop {
        let mut c = |lead: bool| {
            let mut v: Vec<Fq> = (0..3).map(|_| k.random(rng)).collect();
            v.push(if lead { k.one() } else { k.random(rng) });
            Poly::new(k, v)
        };
        let (f1, f2) = (c(true), c(false));
        if f2.deg() == Some(3) && (&f1 * &f2).is_separable() {
            return (f1, f2);
        }
    }
}

fn random_param<R: Rng>(k: &Gf, f1: &Poly<Gf>, f2: &Poly<Gf>, rng: &mut R) -> P1 {
    loop {
        if rng.gen_ratio(1, 10) {
            return P1::Infinity;
        }
        let a = k.random(rng);
        if !k.is_zero(&f1.eval(&a)) && !k.is_zero(&f2.eval(&a)) {
            return P1::Finite(a);
        }
    }
}

#[test]
fn cover_example() {
    let k = Gf::prime(7).unwrap();
    let f1 = Poly::from_i64s(&k, &[1, 1, 0, 1]);
    let f2 = Poly::from_i64s(&k, &[3, 0, 0, 1]);
    let d = build_cover(&f1, &f2, P1::Finite(k.zero())).unwrap();
    let n = d.counts();
    assert_eq!(n.d, n.c + n.e1 + n.e2 - 16);
    // a = −3 = 4 is a root of x³ + 3 over F_7? 64 + 3 = 67 = 4 mod 7: no; 1 is
    let root = k.elements().find(|x| k.is_zero(&f2.eval(x)));
    if let Some(r) = root {
        assert!(build_cover(&f1, &f2, P1::Finite(r)).is_err());
    }
    let inf = build_cover(&f1, &f2, P1::Infinity).unwrap();
    assert_eq!(inf.e1(), &EllipticCurve::from_cubic(&f1).unwrap());
    assert!(build_cover(&f1, &f1, P1::Infinity).is_err());
    assert!(build_cover(&Poly::from_i64s(&k, &[1, 1]), &f2, P1::Infinity).is_err());
}

#[test]
fn defect_is_additive_and_matches_oracle() {
    let mut rng = seeded_rng(21);
    for q in [5u64, 7, 9, 11, 25, 27, 49, 101, 125, 199] {
        let k = Gf::with_order(q).unwrap();
        for _ in 0..20 {
            let (f1, f2) = random_pair(&k, &mut rng);
            let a = random_param(&k, &f1, &f2, &mut rng);
            let d = build_cover(&f1, &f2, a).unwrap();
            assert_eq!(
                d.defect(),
                d.genus2().defect() + d.e1().trace_record().defect + d.e2().trace_record().defect
            );
            assert!(d.defect() >= 0);
            assert_eq!(oracle::oracle_count_g4(&f1, &f2, &a).unwrap(), d.count_points());
        }
    }
}

#[test]
fn j_parameter_matches_direct_construction() {
    let mut rng = seeded_rng(5);
    for q in [5u64, 7, 9, 13, 27, 49, 97] {
        let k = Gf::with_order(q).unwrap();
        for _ in 0..4 {
            let (f, _) = random_pair(&k, &mut rng);
            let j = j_parameter_function(&f).unwrap();
            assert!(j.degree() <= 6);
            assert!(j.den.is_monic());
            for a in k.elements().filter(|a| !k.is_zero(&f.eval(a))) {
                let direct = e_a(&f, &P1::Finite(a)).unwrap().j_invariant();
                assert_eq!(j.eval(&a), Some(direct), "q = {q}");
            }
        }
    }
}

#[test]
fn j_parameter_degree_bound() {
    let k = Gf::prime(101).unwrap();
    let mut rng = seeded_rng(6);
    for _ in 0..100 {
        let (f, _) = random_pair(&k, &mut rng);
        assert!(j_parameter_function(&f).unwrap().degree() <= 6);
    }
    assert!(j_parameter_function(&Poly::from_i64s(&k, &[0, 0, 1, 1])).is_err());
}

#[test]
fn planted_construction() {
    let mut rng = seeded_rng(8);
    for q in [7u64, 11, 27, 101, 243, 1009] {
        let k = Gf::with_order(q).unwrap();
        for _ in 0..5 {
            let (f1, f2) = random_pair(&k, &mut rng);
            let a0 = random_param(&k, &f1, &f2, &mut rng);
            let (l1, l2) = (vec![e_a(&f1, &a0).unwrap()], vec![e_a(&f2, &a0).unwrap()]);
            let r = algorithm_construction(q, &f1, &f2, &l1, &l2).unwrap();
            let a = r.a.expect("planted parameter is found");
            assert!(l1[0].is_isomorphic(&e_a(&f1, &a).unwrap()));
            assert!(l2[0].is_isomorphic(&e_a(&f2, &a).unwrap()));
            assert!(build_cover(&f1, &f2, a).is_ok());
            assert!(r.estimate > 0.0);
            let empty = algorithm_construction(q, &f1, &f2, &l1, &[]).unwrap();
            assert_eq!(empty.a, None);
        }
    }
}

#[test]
fn construction_rejects_incompatible_lists() {
    let k = Gf::prime(7).unwrap();
    let f1 = Poly::from_i64s(&k, &[1, 1, 0, 1]);
    let f2 = Poly::from_i64s(&k, &[3, 0, 0, 1]);
    let split = EllipticCurve::from_i64s(&k, [0, -1, 0, 1]).unwrap();
    assert!(algorithm_construction(7, &f1, &f2, &[split], &[]).is_err());
}

#[test]
fn census_structure() {
    let mut rng = seeded_rng(12);
    for q in [7u64, 11, 13, 25, 27, 31] {
        let k = Gf::with_order(q).unwrap();
        for _ in 0..4 {
            let (f1, f2) = random_pair(&k, &mut rng);
            let c = preimage_census(q, &f1, &f2).unwrap();
            assert!(c.counts.values().all(|&v| v <= c.n as usize));
            assert!(c.exceptions() <= 5, "q = {q}: {c:?}");
            let t: usize = trace_table(&k)
                .entries()
                .iter()
                .filter(|(e, _)| is_compatible(e, &f1).unwrap())
                .map(|(e, _)| e.j_invariant())
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            assert_eq!(c.counts.len(), t);
        }
    }
    let k = Gf::prime(7).unwrap();
    let f1 = Poly::from_i64s(&k, &[1, 1, 0, 1]);
    let f2 = Poly::from_i64s(&k, &[3, 0, 0, 1]);
    let c = preimage_census(7, &f1, &f2).unwrap();
    assert_eq!(c.n, 3);
    assert!(c.counts.values().all(|&v| v <= 3));
    assert!(preimage_census(5003, &f1, &f2).is_err());
}

#[test]
fn pipeline_small_fields() {
    let opts = PipelineOptions::default();
    for q in [7u64, 11, 13, 25, 27, 29] {
        let r = algorithm_genus4(q, &opts).unwrap();
        if let Some(f) = &r.found {
            assert_eq!(f.verified_defect, Some(f.defect), "q = {q}");
            assert_eq!(
                oracle::oracle_count_g4(&f.f1, &f.f2, &f.a).unwrap(),
                f.counts.d
            );
        }
        let again = algorithm_genus4(q, &opts).unwrap();
        assert_eq!(r, again);
        let v = r.to_json();
        for key in ["q", "p", "e", "outcome", "defect", "a", "f1", "f2", "genus2_f", "counts", "d_reached", "tried"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
    assert!(algorithm_genus4(15, &opts).is_err());
}
