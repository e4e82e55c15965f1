//! Weierstrass points in a splitting field.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::field::{Ext, ExtElem, Field, Fq, Gf};
use crate::poly::{self, Poly};
use crate::seeded_rng;

pub(crate) type K = Ext<Gf>;
pub(crate) type Ke = ExtElem<Fq>;

/// `F_{q^k}` over `F_q`, shared between calls.
pub(crate) fn splitting_field(f: &Gf, k: usize) -> K {
    static CACHE: OnceLock<Mutex<HashMap<(Gf, usize), K>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (f.clone(), k);
    if let Some(e) = cache.lock().expect("splitting cache").get(&key) {
        return e.clone();
    }
    let e = Ext::of_degree(f, k);
    cache.lock().expect("splitting cache").insert(key, e.clone());
    e
}

/// Roots of a binary form as projective points `(x : z)`, with the
/// Frobenius permutation and the orbit size of each root.
pub(crate) struct Points {
    pub k: K,
    pub pts: Vec<(Ke, Ke)>,
    pub frob: Vec<usize>,
    pub orbit: Vec<usize>,
}

impl Points {
    /// Roots of `Z^d f(X/Z)`; the point at infinity is a root when
    /// `deg f < d`.
    pub fn of_form(f: &Poly<Gf>, d: usize, k: &K) -> Points {
        let mut rng = seeded_rng(0);
        let mut pts = Vec::new();
        let mut orbit = Vec::new();
        for (g, _) in poly::factor(f, &mut rng) {
            // the conjugates of one root are the others
            let mut r = poly::one_root(&g.map(k, |c| k.embed(c)), &mut rng);
            for _ in 0..g.degree() {
                let next = k.frobenius(&r);
                pts.push((r, k.one()));
                orbit.push(g.degree());
                r = next;
            }
        }
        if f.degree() < d {
            pts.push((k.one(), k.zero()));
            orbit.push(1);
        }
        let frob = pts
            .iter()
            .map(|(x, z)| {
                let fx = k.frobenius(x);
                let fz = k.frobenius(z);
                pts.iter()
                    .position(|p| same_point(k, p, &(fx.clone(), fz.clone())))
                    .expect("roots are Frobenius-stable")
            })
            .collect();
        Points {
            k: k.clone(),
            pts,
            frob,
            orbit,
        }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }
}

pub(crate) fn same_point(k: &K, a: &(Ke, Ke), b: &(Ke, Ke)) -> bool {
    k.mul(&a.0, &b.1) == k.mul(&b.0, &a.1)
}
