use lowdefect::elliptic::trace_table;
use lowdefect::genus2::{glue_along_two_torsion, richelot_neighbors, Genus2Curve};
use lowdefect::genus4::{algorithm_genus4, build_cover, PipelineOptions, P1};
use lowdefect::oracle::oracle_count_g4;
use lowdefect::{arith, seeded_rng, Field, Fq, Gf, Poly};
use proptest::prelude::*;
use rand::Rng;

const QS: [u64; 8] = [5, 7, 9, 11, 13, 25, 27, 31];

fn cubic<R: Rng>(k: &Gf, rng: &mut R) -> Poly<Gf> {
    loop {
        let f = Poly::new(k, (0..4).map(|_| k.random(rng)).collect());
        if f.deg() == Some(3) && f.is_separable() {
            return f;
        }
    }
}

/// `(c·x + d)^6 · f((a·x + b)/(c·x + d))`, scaled by `s`.
fn transform(f: &Poly<Gf>, m: [Fq; 4], s: Fq) -> Poly<Gf> {
    let k = f.field();
    let num = Poly::new(k, vec![m[1], m[0]]);
    let den = Poly::new(k, vec![m[3], m[2]]);
    let mut acc = Poly::zero(k);
    for i in 0..=6 {
        let term = &num.pow(i as u32) * &den.pow(6 - i as u32);
        acc = &acc + &term.scale(&f.coeff(i));
    }
    acc.scale(&s)
}

fn random_genus2<R: Rng>(k: &Gf, rng: &mut R) -> Genus2Curve {
    loop {
        let f = Poly::new(k, (0..7).map(|_| k.random(rng)).collect());
        if let Ok(c) = Genus2Curve::new(f) {
            return c;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_counts_match_fibers(qi in 0..QS.len(), seed in any::<u64>(), at_inf in any::<bool>()) {
        let k = Gf::with_order(QS[qi]).unwrap();
        let mut rng = seeded_rng(seed);
        let (f1, f2) = loop {
            let (f1, f2) = (cubic(&k, &mut rng).monic(), cubic(&k, &mut rng));
            if (&f1 * &f2).is_separable() {
                break (f1, f2);
            }
        };
        let a = if at_inf {
            P1::Infinity
        } else {
            match k.elements().find(|a| !k.is_zero(&(&f1 * &f2).eval(a))) {
                Some(a) => P1::Finite(a),
                None => P1::Infinity,
            }
        };
        let d = build_cover(&f1, &f2, a).unwrap();
        prop_assert_eq!(d.count_points(), oracle_count_g4(&f1, &f2, &a).unwrap());
        prop_assert!(d.defect() >= 0);
    }

    #[test]
    fn moebius_images_are_isomorphic(qi in 0..QS.len(), seed in any::<u64>()) {
        let k = Gf::with_order(QS[qi]).unwrap();
        let mut rng = seeded_rng(seed);
        let c = random_genus2(&k, &mut rng);
        let m = loop {
            let m = [0, 1, 2, 3].map(|_| k.random(&mut rng));
            if !k.is_zero(&k.sub(&k.mul(&m[0], &m[3]), &k.mul(&m[1], &m[2]))) {
                break m;
            }
        };
        let s = loop {
            let s = k.random(&mut rng);
            if !k.is_zero(&s) {
                break k.square(&s);
            }
        };
        let image = Genus2Curve::new(transform(c.poly(), m, s)).unwrap();
        prop_assert!(c.is_isomorphic(&image));
        prop_assert!(image.is_isomorphic(&c));
        prop_assert_eq!(c.weil_data().unwrap(), image.weil_data().unwrap());
    }

    #[test]
    fn glued_curves_keep_weil_data_under_richelot(qi in 0..QS.len(), i in any::<usize>(), j in any::<usize>()) {
        let k = Gf::with_order(QS[qi]).unwrap();
        let table = trace_table(&k);
        let e = table.entries();
        let (e1, e2) = (&e[i % e.len()].0, &e[j % e.len()].0);
        for c in glue_along_two_torsion(e1, e2).unwrap() {
            let w = c.weil_data().unwrap();
            prop_assert_eq!(w.count1 + k.q() + 1, e1.point_count() + e2.point_count());
            for n in richelot_neighbors(&c).unwrap() {
                let wn = n.weil_data().unwrap();
                prop_assert_eq!((wn.s1, wn.s2), (w.s1, w.s2));
            }
        }
    }
}

#[test]
fn quadratic_twist_of_a_generic_curve_is_not_isomorphic() {
    let k = Gf::prime(11).unwrap();
    let mut rng = seeded_rng(3);
    let mut tested = 0;
    while tested < 20 {
        let c = random_genus2(&k, &mut rng);
        let twist = Genus2Curve::new(c.poly().scale(&k.nonresidue())).unwrap();
        // twists with equal counts could still be isomorphic
        if c.count_points(1, false).unwrap() == twist.count_points(1, false).unwrap() {
            continue;
        }
        assert!(!c.is_isomorphic(&twist));
        tested += 1;
    }
}

#[test]
fn pipeline_is_deterministic_and_verified() {
    let opts = PipelineOptions::default();
    for q in arith::odd_prime_powers(5, 60) {
        let a = algorithm_genus4(q, &opts).unwrap();
        let b = algorithm_genus4(q, &opts).unwrap();
        assert_eq!(a, b);
        let found = a.found.expect("small fields always succeed");
        assert_eq!(found.verified_defect, Some(found.defect));
    }
}
