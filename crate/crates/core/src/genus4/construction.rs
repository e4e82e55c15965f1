use std::collections::{BTreeMap, HashMap};

use super::{e_a, j_parameter_function, P1};
use crate::elliptic::{is_compatible, n_of_cubic, trace_table, EllipticCurve};
use crate::error::{usage, Error, Result};
use crate::field::{Field, Fq, Gf};
use crate::poly::{self, Poly};
use crate::seeded_rng;

/// Largest `q` for the exhaustive preimage census.
pub const CENSUS_MAX_Q: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub a: Option<P1>,
    /// `n(f1)·n(f2)·#L1·#L2 / (4q)`.
    pub estimate: f64,
    /// Parameters whose two curves were tested for membership.
    pub candidates: usize,
}

/// Isomorphism-class membership, bucketed by `j`.
struct Members<'a> {
    by_j: HashMap<Fq, Vec<&'a EllipticCurve>>,
}

impl<'a> Members<'a> {
    fn new(l: &'a [EllipticCurve]) -> Self {
        let mut by_j: HashMap<Fq, Vec<&EllipticCurve>> = HashMap::new();
        for e in l {
            by_j.entry(e.j_invariant()).or_default().push(e);
        }
        Members { by_j }
    }

    fn contains(&self, e: &EllipticCurve) -> bool {
        self.by_j
            .get(&e.j_invariant())
            .is_some_and(|v| v.iter().any(|x| x.is_isomorphic(e)))
    }
}

fn nonroot(f: &Poly<Gf>, a: &Fq) -> bool {
    !f.field().is_zero(&f.eval(a))
}

/// A parameter `a ∈ P¹(F_q)` with `E_{a,1} ∈ L1` and `E_{a,2} ∈ L2`, found by
/// solving `j1(a) = j(E1)` for each `E1 ∈ L1` in canonical order.
pub fn algorithm_construction(
    q: u64,
    f1: &Poly<Gf>,
    f2: &Poly<Gf>,
    l1: &[EllipticCurve],
    l2: &[EllipticCurve],
) -> Result<Construction> {
    let k = f1.field();
    if k.q() != q || f2.field() != k {
        return usage(format!("cubics must be defined over F_{q}"));
    }
    if f1.deg() != Some(3) || f2.deg() != Some(3) || !(f1 * f2).is_separable() {
        return usage("f1, f2 must be coprime separable cubics");
    }
    for (l, f, i) in [(l1, f1, 1), (l2, f2, 2)] {
        for e in l {
            if e.field() != k {
                return Err(Error::MixedFields);
            }
            if !is_compatible(e, f)? {
                return usage(format!("a curve in L{i} is not compatible with f{i}"));
            }
        }
    }
    let estimate = (n_of_cubic(f1)? * n_of_cubic(f2)?) as f64 * (l1.len() * l2.len()) as f64
        / (4.0 * q as f64);
    let mut out = Construction {
        a: None,
        estimate,
        candidates: 0,
    };
    if l1.is_empty() || l2.is_empty() {
        return Ok(out);
    }
    let mut sorted = l1.to_vec();
    sorted.sort();
    let (m1, m2) = (Members::new(l1), Members::new(l2));
    let j1 = j_parameter_function(f1)?;
    let j_inf = e_a(f1, &P1::Infinity)?.j_invariant();
    let mut rng = seeded_rng(0);
    let mut seen_j = Vec::new();
    for e in &sorted {
        let j0 = e.j_invariant();
        // equal j gives the same candidates, all already rejected
        if seen_j.contains(&j0) {
            continue;
        }
        seen_j.push(j0);
        let g = &j1.num - &j1.den.scale(&j0);
        let finite: Vec<Fq> = if g.is_zero() {
            k.elements().collect()
        } else {
            poly::roots(&g, &mut rng)
        };
        let mut cands: Vec<P1> = finite
            .into_iter()
            .filter(|a| nonroot(&j1.den, a) && nonroot(f1, a) && nonroot(f2, a))
            .map(P1::Finite)
            .collect();
        if j_inf == j0 {
            cands.push(P1::Infinity);
        }
        for a in cands {
            out.candidates += 1;
            if m1.contains(&e_a(f1, &a)?) && m2.contains(&e_a(f2, &a)?) {
                out.a = Some(a);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: u32,
    /// Every `j` of a curve compatible with `f1`, with its number of
    /// preimages `a ∈ P¹(F_q)`, `f1(a)·f2(a) ≠ 0`.
    pub counts: BTreeMap<Fq, usize>,
}

impl Census {
    /// Values of `T` with fewer than `n(f1)` preimages.
    pub fn exceptions(&self) -> usize {
        self.counts.values().filter(|&&c| c != self.n as usize).count()
    }
}

pub fn preimage_census(q: u64, f1: &Poly<Gf>, f2: &Poly<Gf>) -> Result<Census> {
    let k = f1.field();
    if k.q() != q {
        return usage(format!("cubics must be defined over F_{q}"));
    }
    if q > CENSUS_MAX_Q {
        return Err(Error::CostGuard(format!("census needs q ≤ {CENSUS_MAX_Q}")));
    }
    if f1.deg() != Some(3) || f2.deg() != Some(3) || !(f1 * f2).is_separable() {
        return usage("f1, f2 must be coprime separable cubics");
    }
    let mut counts = BTreeMap::new();
    for (e, _) in trace_table(k).entries() {
        if is_compatible(e, f1)? {
            counts.insert(e.j_invariant(), 0usize);
        }
    }
    let params = k
        .elements()
        .filter(|a| nonroot(f1, a) && nonroot(f2, a))
        .map(P1::Finite)
        .chain([P1::Infinity]);
    for a in params {
        let j = e_a(f1, &a)?.j_invariant();
        *counts
            .get_mut(&j)
            .ok_or_else(|| Error::Internal(format!("j(E_(a,1)) outside T at a = {a}")))? += 1;
    }
    Ok(Census {
        n: n_of_cubic(f1)?,
        counts,
    })
}
