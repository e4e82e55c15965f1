//! Richelot (2,2)-isogenies.

use super::splitting::{splitting_field, Ke, Points, K};
use super::{splitting_degree, Genus2Curve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

pub type Matching = [(usize, usize); 3];

fn all_matchings(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
    let Some((&a, tail)) = rest.split_first() else {
        out.push([acc[0], acc[1], acc[2]]);
        return;
    };
    for (i, &b) in tail.iter().enumerate() {
        let others: Vec<usize> = tail.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        acc.push((a, b));
        all_matchings(&others, acc, out);
        acc.pop();
    }
}

fn is_stable(m: &Matching, frob: &[usize]) -> bool {
    m.iter().all(|&(a, b)| {
        let (fa, fb) = (frob[a], frob[b]);
        m.iter().any(|&(c, d)| (c, d) == (fa, fb) || (c, d) == (fb, fa))
    })
}

fn sextic_points(c: &Genus2Curve) -> Result<(Genus2Curve, Points)> {
    let s = c.to_sextic()?;
    let k = splitting_field(&s.field, splitting_degree(&s.f));
    let pts = Points::of_form(&s.f, 6, &k);
    Ok((s, pts))
}

/// Galois-stable partitions of the Weierstrass points of the degree-6 model
/// into three pairs, as index pairs into its roots.
pub fn stable_matchings(c: &Genus2Curve) -> Result<Vec<Matching>> {
    let (_, pts) = sextic_points(c)?;
    Ok(matchings_of(&pts))
}

fn matchings_of(pts: &Points) -> Vec<Matching> {
    let mut all = Vec::new();
    all_matchings(&[0, 1, 2, 3, 4, 5], &mut Vec::new(), &mut all);
    all.retain(|m| is_stable(m, &pts.frob));
    all
}

fn det3(k: &K, m: &[[Ke; 3]; 3]) -> Ke {
    let minor = |a: usize, b: usize| k.sub(&k.mul(&m[1][a], &m[2][b]), &k.mul(&m[1][b], &m[2][a]));
    let t0 = k.mul(&m[0][0], &minor(1, 2));
    let t1 = k.mul(&m[0][1], &minor(0, 2));
    let t2 = k.mul(&m[0][2], &minor(0, 1));
    k.add(&k.sub(&t0, &t1), &t2)
}

/// Codomains of the Richelot isogenies from `c`, one per Galois-stable pair
/// partition with `δ ≠ 0` and a separable result.
pub fn richelot_neighbors(c: &Genus2Curve) -> Result<Vec<Genus2Curve>> {
    let (s, pts) = sextic_points(c)?;
    let k = &pts.k;
    let lc = k.embed(&s.f.lc());
    let mut out = Vec::new();
    for m in matchings_of(&pts) {
        let g: Vec<Poly<K>> = m
            .iter()
            .map(|&(a, b)| {
                let (ra, rb) = (&pts.pts[a].0, &pts.pts[b].0);
                Poly::new(k, vec![k.mul(ra, rb), k.neg(&k.add(ra, rb)), k.one()])
            })
            .collect();
        let rows = [0, 1, 2].map(|i| [0, 1, 2].map(|j| g[i].coeff(j)));
        let delta = det3(k, &rows);
        let Some(dinv) = k.inv(&delta) else { continue };
        let h = |j: usize, l: usize| &(&g[j].derivative() * &g[l]) - &(&g[j] * &g[l].derivative());
        let prod = &(&h(1, 2) * &h(2, 0)) * &h(0, 1);
        let prod = prod.scale(&k.mul(&lc, &dinv));
        let coeffs = prod
            .coeffs()
            .iter()
            .map(|x| k.descend(x))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("Richelot codomain is not defined over F_q".into()))?;
        let f = Poly::new(&s.field, coeffs);
        if let Ok(n) = Genus2Curve::new(f) {
            out.push(n);
        }
    }
    Ok(out)
}
