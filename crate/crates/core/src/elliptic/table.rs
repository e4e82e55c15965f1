use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::EllipticCurve;
use crate::arith;
use crate::error::{usage, Result};
use crate::field::{Field, Fq, Gf};
use crate::poly::{self, Poly};
use crate::seeded_rng;

/// One model per `F_q`-isomorphism class of elliptic curves with the given
/// `j`-invariant, sorted canonically.
pub fn isomorphism_class_models(f: &Gf, j: &Fq) -> Vec<EllipticCurve> {
    let p = f.characteristic();
    let q = f.q();
    let mk = |v: [Fq; 4]| EllipticCurve::new(f, v).expect("model is smooth");
    let (zero, one) = (f.zero(), f.one());
    let mut out = Vec::new();
    if p > 3 {
        let j1728 = f.from_i64(1728);
        if f.is_zero(j) {
            let g = f.primitive_element();
            for i in 0..arith::gcd(6, q - 1) {
                out.push(mk([f.pow(&g, i as u128), zero, zero, one]));
            }
        } else if *j == j1728 {
            let g = f.primitive_element();
            for i in 0..arith::gcd(4, q - 1) {
                out.push(mk([zero, f.pow(&g, i as u128), zero, one]));
            }
        } else {
            // y² = x³ + 3kx + 2k, k = j/(1728 − j)
            let k = f.div(j, &f.sub(&j1728, j)).expect("j ≠ 1728");
            let e = mk([f.mul(&f.from_i64(2), &k), f.mul(&f.from_i64(3), &k), zero, one]);
            out.push(e.quadratic_twist());
            out.push(e);
        }
    } else if !f.is_zero(j) {
        // y² = x³ + x² − 1/j
        let e = mk([f.neg(&f.inv(j).expect("j ≠ 0")), zero, one, one]);
        out.push(e.quadratic_twist());
        out.push(e);
    } else {
        let g = f.primitive_element();
        let mut rng = seeded_rng(0);
        for i in 0..arith::gcd(4, q - 1) {
            let a4 = f.pow(&g, i as u128);
            let mut a6s = vec![zero];
            // a6 modulo the image of r ↦ r³ + a4·r
            let outside = f.elements().skip(1).find(|c| {
                let cubic = Poly::new(f, vec![f.neg(c), a4, zero, one]);
                poly::roots(&cubic, &mut rng).is_empty()
            });
            if let Some(c) = outside {
                a6s.push(c);
                a6s.push(f.neg(&c));
            }
            for a6 in a6s {
                let e = mk([a6, a4, zero, one]);
                if !out.iter().any(|o: &EllipticCurve| o.is_isomorphic(&e)) {
                    out.push(e);
                }
            }
        }
    }
    out.sort();
    out
}

/// Every `F_q`-isomorphism class of elliptic curves with its trace, sorted
/// canonically by model.
#[derive(Debug)]
pub struct TraceTable {
    field: Gf,
    m: u64,
    entries: Vec<(EllipticCurve, i64)>,
}

impl TraceTable {
    pub fn build(f: &Gf) -> Self {
        let q = f.q();
        let workers = if q < 1 << 14 {
            1
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get()).min(16)
        };
        let per = q.div_ceil(workers as u64);
        let mut entries: Vec<(EllipticCurve, i64)> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let f = f.clone();
                    s.spawn(move || {
                        let mut part = Vec::new();
                        for i in (w * per)..((w + 1) * per).min(q) {
                            part.extend(classes_for_j(&f, &f.from_index(i)));
                        }
                        part
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("trace worker panicked"))
                .collect()
        });
        entries.sort();
        TraceTable {
            field: f.clone(),
            m: arith::floor_two_sqrt(q),
            entries,
        }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn entries(&self) -> &[(EllipticCurve, i64)] {
        &self.entries
    }

    pub fn with_trace(&self, t: i64) -> Vec<EllipticCurve> {
        self.entries
            .iter()
            .filter(|(_, tr)| *tr == t)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Curves with `q + 1 + m − d` points, i.e. trace `d − m`.
    pub fn with_defect(&self, d: u64) -> Vec<EllipticCurve> {
        self.with_trace(d as i64 - self.m as i64)
    }

    pub fn trace_of(&self, e: &EllipticCurve) -> Option<i64> {
        self.entries
            .binary_search_by(|(x, _)| x.cmp(e))
            .ok()
            .map(|i| self.entries[i].1)
    }
}

fn classes_for_j(f: &Gf, j: &Fq) -> Vec<(EllipticCurve, i64)> {
    let models = isomorphism_class_models(f, j);
    if models.len() == 2 && !f.is_zero(j) && *j != f.from_i64(1728) {
        // a curve and its quadratic twist: traces are negatives
        let t = models[0].trace();
        return vec![(models[0].clone(), t), (models[1].clone(), -t)];
    }
    models
        .into_iter()
        .map(|e| {
            let t = e.trace();
            (e, t)
        })
        .collect()
}

type CacheKey = (u64, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<TraceTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<TraceTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The per-field trace table, built on first request and shared afterwards.
pub fn trace_table(f: &Gf) -> Arc<TraceTable> {
    let key = (f.p(), f.modulus().to_vec());
    if let Some(t) = cache().lock().expect("trace cache").get(&key) {
        return t.clone();
    }
    let table = Arc::new(TraceTable::build(f));
    cache()
        .lock()
        .expect("trace cache")
        .entry(key)
        .or_insert(table)
        .clone()
}

/// One representative per isomorphism class of curves with defect exactly `d`.
pub fn curves_with_defect(f: &Gf, d: u64) -> Vec<EllipticCurve> {
    trace_table(f).with_defect(d)
}

/// Whether no elliptic curve over `F_q` has defect `d`. For `d ≥ 1` and
/// `q > 56d²` this is `gcd(⌊2√q⌋ − d, q) > 1`; otherwise the `j`-scan decides.
pub fn is_d_exceptional(q: u64, d: u64) -> Result<bool> {
    let Some((p, _)) = arith::prime_power(q) else {
        return usage(format!("{q} is not a prime power"));
    };
    if p == 2 {
        return usage("characteristic 2 is not supported");
    }
    let m = arith::floor_two_sqrt(q);
    if d >= 1 && q > 56 * d * d {
        return Ok(arith::gcd(m.abs_diff(d), q) > 1);
    }
    Ok(curves_with_defect(&Gf::with_order(q)?, d).is_empty())
}
