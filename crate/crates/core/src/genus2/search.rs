use std::collections::HashMap;

use super::iso::Prepared;
use super::{glue_along_two_torsion, richelot_neighbors, Genus2Curve, OrbitType};
use crate::elliptic::EllipticCurve;
use crate::error::{usage, Result};

/// Insertion-ordered set of curves up to isomorphism, bucketed by
/// `(#C(F_q), orbit type)`.
struct CurveSet {
    curves: Vec<Prepared>,
    buckets: HashMap<(u64, OrbitType), Vec<usize>>,
}

impl CurveSet {
    fn insert(&mut self, c: Genus2Curve) {
        let c = Prepared::new(c);
        let bucket = self.buckets.entry((c.count, c.orbit.clone())).or_default();
        if bucket.iter().any(|&i| self.curves[i].is_isomorphic(&c)) {
            return;
        }
        bucket.push(self.curves.len());
        self.curves.push(c);
    }
}

/// Glue every unordered pair from `l` (a curve with itself included), then
/// close under Richelot isogenies, keeping one curve per isomorphism class.
pub fn algorithm_genus2(q: u64, l: &[EllipticCurve]) -> Result<Vec<Genus2Curve>> {
    if l.is_empty() {
        return usage("empty curve list");
    }
    if l.iter().any(|e| e.q() != q) {
        return usage(format!("curves must be defined over F_{q}"));
    }
    let mut s = CurveSet {
        curves: Vec::new(),
        buckets: HashMap::new(),
    };
    for (i, e1) in l.iter().enumerate() {
        for e2 in &l[i..] {
            for c in glue_along_two_torsion(e1, e2)? {
                s.insert(c);
            }
        }
    }
    let mut k = 0;
    while k < s.curves.len() {
        for c in richelot_neighbors(&s.curves[k].curve.clone())? {
            s.insert(c);
        }
        k += 1;
    }
    Ok(s.curves.into_iter().map(|p| p.curve).collect())
}
