//! Genus-2 curves whose Jacobians are (2,2)-isogenous to `E1 × E2`.

use super::splitting::{splitting_field, Ke, Points, K};
use super::{splitting_degree, Genus2Curve};
use crate::arith;
use crate::elliptic::EllipticCurve;
use crate::error::{usage, Error, Result};
use crate::field::{Field, Gf};
use crate::poly::Poly;

/// Largest `q` at which each gluing is also checked over `F_{q²}`.
pub const GLUE_QSQ_CHECK_MAX_Q: u64 = 100;

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn monic_cubic(e: &EllipticCurve) -> Poly<Gf> {
    let f = e.field();
    let (a2, a4, a6) = e.normal_form();
    Poly::new(f, vec![a6, a4, a2, f.one()])
}

/// The sextic of the gluing along `a_i ↦ b_i`, or `None` when the map is
/// induced by an isomorphism.
fn hlp(k: &K, a: [&Ke; 3], b: [&Ke; 3]) -> Option<Poly<K>> {
    let d = |x: &Ke, y: &Ke| k.sub(x, y);
    let sq = |x: &Ke| k.square(x);
    let (da32, da21, da13) = (d(a[2], a[1]), d(a[1], a[0]), d(a[0], a[2]));
    let (db32, db21, db13) = (d(b[2], b[1]), d(b[1], b[0]), d(b[0], b[2]));
    let frac = |x: &Ke, y: &Ke| k.div(&sq(x), y);
    let a1 = k.add(&k.add(&frac(&da32, &db32)?, &frac(&da21, &db21)?), &frac(&da13, &db13)?);
    let b1 = k.add(&k.add(&frac(&db32, &da32)?, &frac(&db21, &da21)?), &frac(&db13, &da13)?);
    if k.is_zero(&a1) || k.is_zero(&b1) {
        return None;
    }
    let a2 = k.add(
        &k.add(&k.mul(a[0], &db32), &k.mul(a[1], &db13)),
        &k.mul(a[2], &db21),
    );
    let b2 = k.add(
        &k.add(&k.mul(b[0], &da32), &k.mul(b[1], &da13)),
        &k.mul(b[2], &da21),
    );
    let disc_a = sq(&k.mul(&k.mul(&da32, &da21), &da13));
    let disc_b = sq(&k.mul(&k.mul(&db32, &db21), &db13));
    let big_a = k.mul(&disc_b, &k.div(&a1, &a2)?);
    let big_b = k.mul(&disc_a, &k.div(&b1, &b2)?);
    let quad = |pa: Ke, pb: Ke| {
        Poly::new(k, vec![k.mul(&big_b, &pb), k.zero(), k.mul(&big_a, &pa)])
    };
    let q1 = quad(k.mul(&da21, &da13), k.mul(&db21, &db13));
    let q2 = quad(k.mul(&da32, &da21), k.mul(&db32, &db21));
    let q3 = quad(k.mul(&da13, &da32), k.mul(&db13, &db32));
    Some(-&(&(&q1 * &q2) * &q3))
}

fn check_counts(c: &Genus2Curve, e1: &EllipticCurve, e2: &EllipticCurve) -> Result<()> {
    let q = c.q() as i64;
    let (n1, n2) = (e1.point_count() as i64, e2.point_count() as i64);
    let got = c.count_points(1, false)? as i64;
    if got != n1 + n2 - q - 1 {
        return Err(Error::Internal(format!(
            "gluing produced {got} points, expected {}",
            n1 + n2 - q - 1
        )));
    }
    if c.q() <= GLUE_QSQ_CHECK_MAX_Q {
        let over_q2 = |n: i64| {
            let t = q + 1 - n;
            q * q + 1 - (t * t - 2 * q)
        };
        let want = over_q2(n1) + over_q2(n2) - q * q - 1;
        let got = c.count_points(2, false)? as i64;
        if got != want {
            return Err(Error::Internal(format!(
                "gluing produced {got} points over F_(q^2), expected {want}"
            )));
        }
    }
    Ok(())
}

/// One curve per Frobenius-equivariant `ψ: E1[2] → E2[2]` not induced by an
/// isomorphism, each checked against the point counts of `E1` and `E2`.
pub fn glue_along_two_torsion(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Vec<Genus2Curve>> {
    let f = e1.field();
    if f != e2.field() {
        return usage("curves over different fields");
    }
    let (c1, c2) = (monic_cubic(e1), monic_cubic(e2));
    let deg = arith::lcm(splitting_degree(&c1) as u64, splitting_degree(&c2) as u64);
    let k = splitting_field(f, deg as usize);
    let (ra, rb) = (Points::of_form(&c1, 3, &k), Points::of_form(&c2, 3, &k));
    let mut out = Vec::new();
    for s in PERMS {
        if (0..3).any(|i| rb.frob[s[i]] != s[ra.frob[i]]) {
            continue;
        }
        let a = [0, 1, 2].map(|i| &ra.pts[i].0);
        let b = [0, 1, 2].map(|i| &rb.pts[s[i]].0);
        let Some(h) = hlp(&k, a, b) else { continue };
        let coeffs = h
            .coeffs()
            .iter()
            .map(|x| k.descend(x))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("glued curve is not defined over F_q".into()))?;
        let Ok(c) = Genus2Curve::new(Poly::new(f, coeffs)) else { continue };
        check_counts(&c, e1, e2)?;
        out.push(c);
    }
    Ok(out)
}
