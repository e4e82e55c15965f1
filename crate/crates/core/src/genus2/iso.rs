//! `F_q`-isomorphism of genus-2 curves through their Weierstrass points.

use super::splitting::{same_point, splitting_field, Points, Ke, K};
use super::{Genus2Curve, OrbitType};
use crate::arith;
use crate::field::{Field, Gf};
use crate::poly::Poly;

type Mat = [Ke; 4];

/// Matrix sending `(1:0), (0:1), (1:1)` to the three points.
fn frame(k: &K, p: [&(Ke, Ke); 3]) -> Mat {
    let [(x0, z0), (x1, z1), (x2, z2)] = p;
    let det = k.sub(&k.mul(x0, z1), &k.mul(x1, z0));
    let inv = k.inv(&det).expect("distinct points");
    let l0 = k.mul(&k.sub(&k.mul(x2, z1), &k.mul(x1, z2)), &inv);
    let l1 = k.mul(&k.sub(&k.mul(x0, z2), &k.mul(x2, z0)), &inv);
    [k.mul(&l0, x0), k.mul(&l1, x1), k.mul(&l0, z0), k.mul(&l1, z1)]
}

fn mat_mul(k: &K, a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| k.add(&k.mul(&a[2 * i], &b[j]), &k.mul(&a[2 * i + 1], &b[2 + j]));
    [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
}

fn adjugate(k: &K, a: &Mat) -> Mat {
    [a[3].clone(), k.neg(&a[1]), k.neg(&a[2]), a[0].clone()]
}

fn apply(k: &K, m: &Mat, (x, z): &(Ke, Ke)) -> (Ke, Ke) {
    (
        k.add(&k.mul(&m[0], x), &k.mul(&m[1], z)),
        k.add(&k.mul(&m[2], x), &k.mul(&m[3], z)),
    )
}

/// Scale so the first nonzero entry is 1 and read the entries in `F_q`.
fn descend(k: &K, m: &Mat) -> Option<Mat> {
    let pivot = m.iter().find(|e| !k.is_zero(e))?;
    let inv = k.inv(pivot)?;
    let out = m.clone().map(|e| k.mul(&e, &inv));
    out.iter().all(|e| k.is_in_base(e)).then_some(out)
}

struct Search<'a> {
    k: &'a K,
    dom: &'a Points,
    cod: &'a Points,
    f_dom: Poly<K>,
    f_cod: Poly<K>,
    base: &'a Gf,
}

impl Search<'_> {
    /// Extend a Frobenius-equivariant partial assignment of roots until three
    /// are fixed, then test the Möbius map they determine.
    fn run(&self, assign: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> bool {
        let fixed: Vec<usize> = (0..assign.len()).filter(|&i| assign[i].is_some()).collect();
        if fixed.len() >= 3 {
            return self.test(assign, &fixed[..3]);
        }
        let r = assign.iter().position(Option::is_none).expect("fewer than 3 fixed");
        for s in 0..self.cod.len() {
            if used[s] || self.cod.orbit[s] != self.dom.orbit[r] {
                continue;
            }
            let mut touched = Vec::new();
            let (mut a, mut b) = (r, s);
            let ok = loop {
                if assign[a].is_some() || used[b] {
                    break false;
                }
                assign[a] = Some(b);
                used[b] = true;
                touched.push((a, b));
                a = self.dom.frob[a];
                b = self.cod.frob[b];
                if a == r {
                    break b == s;
                }
            };
            if ok && self.run(assign, used) {
                return true;
            }
            for (a, b) in touched {
                assign[a] = None;
                used[b] = false;
            }
        }
        false
    }

    fn test(&self, assign: &[Option<usize>], idx: &[usize]) -> bool {
        let k = self.k;
        let src = frame(k, [0, 1, 2].map(|i| &self.dom.pts[idx[i]]));
        let dst = frame(k, [0, 1, 2].map(|i| &self.cod.pts[assign[idx[i]].unwrap()]));
        let Some(m) = descend(k, &mat_mul(k, &dst, &adjugate(k, &src))) else {
            return false;
        };
        let maps_roots = self.dom.pts.iter().all(|p| {
            let img = apply(k, &m, p);
            self.cod.pts.iter().any(|r| same_point(k, r, &img))
        });
        if !maps_roots {
            return false;
        }
        // f̂_cod ∘ M = c·f̂_dom; c must be a square in F_q
        let one = k.one();
        let x0 = (0..k.order())
            .map(|i| k.nth_element(i))
            .find(|x| !k.is_zero(&self.f_dom.eval_homogeneous(6, x, &one)))
            .expect("a form of degree 6 has at most 6 roots");
        let (mx, mz) = apply(k, &m, &(x0.clone(), one.clone()));
        let c = k
            .div(
                &self.f_cod.eval_homogeneous(6, &mx, &mz),
                &self.f_dom.eval_homogeneous(6, &x0, &one),
            )
            .expect("nonzero");
        let c = k.descend(&c).expect("scalar of a rational map is rational");
        self.base.is_square(&c)
    }
}

/// A curve with the data the isomorphism test needs, computed once.
pub(super) struct Prepared {
    pub curve: Genus2Curve,
    pub count: u64,
    pub orbit: OrbitType,
    points: Points,
    f_k: Poly<K>,
}

impl Prepared {
    pub fn new(curve: Genus2Curve) -> Prepared {
        let count = curve.count_points(1, false).expect("F_q count is unguarded");
        let orbit = curve.orbit_type();
        let d = orbit.0.iter().fold(1, |acc, &n| arith::lcm(acc, n as u64));
        let k = splitting_field(&curve.field, d as usize);
        let points = Points::of_form(&curve.f, 6, &k);
        let f_k = curve.f.map(&k, |c| k.embed(c));
        Prepared {
            curve,
            count,
            orbit,
            points,
            f_k,
        }
    }

    pub fn is_isomorphic(&self, other: &Prepared) -> bool {
        if self.curve.field != other.curve.field {
            return false;
        }
        if self.curve == other.curve {
            return true;
        }
        if self.count != other.count || self.orbit != other.orbit {
            return false;
        }
        // equal orbit types give the same (cached) splitting field
        let search = Search {
            k: &self.points.k,
            dom: &other.points,
            cod: &self.points,
            f_dom: other.f_k.clone(),
            f_cod: self.f_k.clone(),
            base: &self.curve.field,
        };
        search.run(&mut vec![None; 6], &mut vec![false; 6])
    }
}

pub(super) fn is_isomorphic(c1: &Genus2Curve, c2: &Genus2Curve) -> bool {
    if c1.field != c2.field {
        return false;
    }
    if c1 == c2 {
        return true;
    }
    if c1.count_points(1, false).ok() != c2.count_points(1, false).ok()
        || c1.orbit_type() != c2.orbit_type()
    {
        return false;
    }
    Prepared::new(c1.clone()).is_isomorphic(&Prepared::new(c2.clone()))
}
