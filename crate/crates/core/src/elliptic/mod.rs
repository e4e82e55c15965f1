//! Elliptic curves `y² = v3·x³ + v2·x² + v1·x + v0` over a [`Gf`].

mod count;
mod table;

use std::cmp::Ordering;

use crate::arith;
use crate::error::{usage, Result};
use crate::field::{Field, Fq, Gf};
use crate::poly::{self, Poly};
use crate::seeded_rng;

pub use count::BSGS_ROUNDS;
pub use table::{
    curves_with_defect, is_d_exceptional, isomorphism_class_models, trace_table, TraceTable,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    field: Gf,
    /// `[v0, v1, v2, v3]`.
    v: [Fq; 4],
}

/// Canonical order: the cubic's coefficient serialization, constant first.
impl Ord for EllipticCurve {
    fn cmp(&self, other: &Self) -> Ordering {
        self.v.cmp(&other.v)
    }
}

impl PartialOrd for EllipticCurve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub curve: EllipticCurve,
    pub trace: i64,
    pub count: u64,
    pub defect: i64,
}

/// Minimal ring interface so the `j` formulas can run over `F_q` and `F_q[t]`.
pub(crate) trait RingOps<T> {
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn int(&self, n: i64) -> T;
}

pub(crate) struct FieldRing<'a>(pub &'a Gf);

impl RingOps<Fq> for FieldRing<'_> {
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        self.0.add(a, b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        self.0.mul(a, b)
    }
    fn int(&self, n: i64) -> Fq {
        self.0.from_i64(n)
    }
}

/// `(c4³, Δ)` for `Y² = X³ + a2·X² + a4·X + a6` via the `b`-invariants
/// (`a1 = a3 = 0`), valid in every odd characteristic.
pub(crate) fn j_fraction<T, R: RingOps<T>>(r: &R, a2: &T, a4: &T, a6: &T) -> (T, T) {
    let b2 = r.mul(&r.int(4), a2);
    let b4 = r.mul(&r.int(2), a4);
    let b6 = r.mul(&r.int(4), a6);
    let b8 = r.sub(&r.mul(&r.int(4), &r.mul(a2, a6)), &r.mul(a4, a4));
    let c4 = r.sub(&r.mul(&b2, &b2), &r.mul(&r.int(24), &b4));
    let b2sq = r.mul(&b2, &b2);
    let mut disc = r.sub(&r.int(0), &r.mul(&b2sq, &b8));
    disc = r.sub(&disc, &r.mul(&r.int(8), &r.mul(&b4, &r.mul(&b4, &b4))));
    disc = r.sub(&disc, &r.mul(&r.int(27), &r.mul(&b6, &b6)));
    disc = r.add(&disc, &r.mul(&r.int(9), &r.mul(&b2, &r.mul(&b4, &b6))));
    let c4cube = r.mul(&c4, &r.mul(&c4, &c4));
    (c4cube, disc)
}

/// `(q + 1 + g·⌊2√q⌋) − #C`. For an elliptic curve this is `m + t` with
/// `t = q + 1 − #E`.
pub fn defect_of_count(q: u64, genus: u64, count: u64) -> i64 {
    (q + 1 + genus * arith::floor_two_sqrt(q)) as i64 - count as i64
}

impl EllipticCurve {
    /// `y² = v3·x³ + v2·x² + v1·x + v0` from `[v0, v1, v2, v3]`.
    pub fn new(field: &Gf, v: [Fq; 4]) -> Result<Self> {
        if v.iter().any(|x| !field.owns(x)) {
            return Err(crate::Error::MixedFields);
        }
        let e = EllipticCurve {
            field: field.clone(),
            v,
        };
        if field.is_zero(&v[3]) {
            return usage("leading coefficient v3 must be nonzero");
        }
        if !e.cubic().is_separable() {
            return usage("cubic is not separable; the curve is singular");
        }
        Ok(e)
    }

    pub fn from_i64s(field: &Gf, v: [i64; 4]) -> Result<Self> {
        Self::new(field, v.map(|c| field.from_i64(c)))
    }

    pub fn from_cubic(cubic: &Poly<Gf>) -> Result<Self> {
        if cubic.deg() != Some(3) {
            return usage("elliptic curve needs a cubic");
        }
        let f = cubic.field();
        Self::new(f, [0, 1, 2, 3].map(|i| cubic.coeff(i)))
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq; 4] {
        &self.v
    }

    pub fn cubic(&self) -> Poly<Gf> {
        Poly::new(&self.field, self.v.to_vec())
    }

    pub fn rhs(&self, x: &Fq) -> Fq {
        let f = &self.field;
        let mut acc = self.v[3];
        for c in self.v[..3].iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `(a2, a4, a6)` of the isomorphic model `Y² = X³ + a2·X² + a4·X + a6`
    /// obtained from `X = v3·x`, `Y = v3·y`.
    pub fn normal_form(&self) -> (Fq, Fq, Fq) {
        let f = &self.field;
        let [v0, v1, v2, v3] = self.v;
        (v2, f.mul(&v1, &v3), f.mul(&v0, &f.square(&v3)))
    }

    pub fn j_invariant(&self) -> Fq {
        let f = &self.field;
        let (a2, a4, a6) = self.normal_form();
        let (num, den) = j_fraction(&FieldRing(f), &a2, &a4, &a6);
        f.div(&num, &den).expect("smooth curve has nonzero discriminant")
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn point_count_naive(&self) -> u64 {
        count::naive(self)
    }

    /// Baby-step giant-step count on the curve and its twist; see
    /// [`BSGS_ROUNDS`] for the retry budget.
    pub fn point_count_bsgs<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        count::bsgs(self, rng)
    }

    /// Exact `#E(F_q)`: naive below `q = 4096`, otherwise BSGS with a naive
    /// fallback when BSGS cannot resolve the group order.
    pub fn point_count(&self) -> u64 {
        count::exact(self)
    }

    pub fn trace(&self) -> i64 {
        (self.q() + 1) as i64 - self.point_count() as i64
    }

    pub fn trace_record(&self) -> TraceRecord {
        let count = self.point_count();
        let q = self.q();
        TraceRecord {
            curve: self.clone(),
            trace: (q + 1) as i64 - count as i64,
            count,
            defect: defect_of_count(q, 1, count),
        }
    }

    /// Rational roots of the cubic, ascending.
    pub fn two_torsion_roots(&self) -> Vec<Fq> {
        poly::roots(&self.cubic(), &mut seeded_rng(0))
    }

    /// `#E[2](F_q) = 1 + #{rational roots of the cubic}`.
    pub fn rational_two_torsion_count(&self) -> u32 {
        1 + self.two_torsion_roots().len() as u32
    }

    /// `y² = c·cubic(x)` rewritten with `x ↦ x/c` so `v3` is unchanged:
    /// `(c³v0, c²v1, c·v2, v3)`.
    pub fn twist_by(&self, c: &Fq) -> Self {
        let f = &self.field;
        let c2 = f.square(c);
        let c3 = f.mul(&c2, c);
        let [v0, v1, v2, v3] = self.v;
        EllipticCurve {
            field: f.clone(),
            v: [f.mul(&c3, &v0), f.mul(&c2, &v1), f.mul(c, &v2), v3],
        }
    }

    /// Twist by the canonical least non-residue.
    pub fn quadratic_twist(&self) -> Self {
        self.twist_by(&self.field.nonresidue())
    }

    /// Number of `F_q`-isomorphisms `self → other` (zero if not isomorphic).
    pub fn isomorphism_count(&self, other: &Self) -> usize {
        if self.field != other.field || self.j_invariant() != other.j_invariant() {
            return 0;
        }
        let f = &self.field;
        let (a2, a4, a6) = self.normal_form();
        let (b2, b4, b6) = other.normal_form();
        if f.characteristic() > 3 {
            let (s1, s2) = short_form(f, a2, a4, a6);
            let (t1, t2) = short_form(f, b2, b4, b6);
            return short_isomorphisms(f, (s1, s2), (t1, t2));
        }
        if !f.is_zero(&a2) {
            let (a2, c6) = kill_a4(f, a2, a4, a6);
            let (b2, d6) = kill_a4(f, b2, b4, b6);
            // (X, Y) ↦ (u²X, u³Y) sends (a2, c6) to (a2/u², c6/u⁶)
            let w = f.div(&a2, &b2).expect("nonzero a2");
            if f.quadratic_character(&w) == 1 && f.mul(&d6, &f.pow(&w, 3)) == c6 {
                return 2;
            }
            return 0;
        }
        char3_j0_isomorphisms(f, (a4, a6), (b4, b6))
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism_count(other) > 0
    }

    pub fn automorphism_count(&self) -> usize {
        self.isomorphism_count(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field.spec(),
            "cubic": self.v.iter().map(|x| self.field.coefficients(x)).collect::<Vec<_>>(),
        })
    }
}

impl TraceRecord {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.curve.to_json();
        v["trace"] = self.trace.into();
        v["count"] = self.count.into();
        v["defect"] = self.defect.into();
        v
    }
}

/// `(A, B)` of `y² = x³ + Ax + B` (characteristic ≥ 5).
fn short_form(f: &Gf, a2: Fq, a4: Fq, a6: Fq) -> (Fq, Fq) {
    let third = f.inv(&f.from_i64(3)).expect("char > 3");
    let a2sq = f.square(&a2);
    let big_a = f.sub(&a4, &f.mul(&a2sq, &third));
    let b1 = f.mul(&f.mul(&a2, &a4), &third);
    let b2 = f.mul(
        &f.mul(&f.from_i64(2), &f.mul(&a2sq, &a2)),
        &f.inv(&f.from_i64(27)).expect("char > 3"),
    );
    (big_a, f.add(&f.sub(&a6, &b1), &b2))
}

/// `#{u ≠ 0 : u⁴A = A', u⁶B = B'}`.
fn short_isomorphisms(f: &Gf, (a, b): (Fq, Fq), (a2, b2): (Fq, Fq)) -> usize {
    let p4 = Poly::new(f, vec![f.neg(&a2), f.zero(), f.zero(), f.zero(), a]);
    let p6 = Poly::new(
        f,
        vec![f.neg(&b2), f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), b],
    );
    let g = p4.gcd(&p6);
    if g.is_zero() {
        unreachable!("A = B = 0 is singular");
    }
    poly::roots(&g, &mut seeded_rng(0))
        .iter()
        .filter(|u| !f.is_zero(u))
        .count()
}

/// Characteristic 3, `a2 ≠ 0`: shift `X ↦ X + a4/a2` to remove the linear
/// term; returns `(a2, a6')`.
fn kill_a4(f: &Gf, a2: Fq, a4: Fq, a6: Fq) -> (Fq, Fq) {
    let r = f.div(&a4, &a2).expect("nonzero a2");
    let r2 = f.square(&r);
    let c6 = [f.mul(&r2, &r), f.mul(&a2, &r2), f.mul(&a4, &r), a6]
        .iter()
        .fold(f.zero(), |acc, t| f.add(&acc, t));
    (a2, c6)
}

/// Characteristic 3, `j = 0`: maps `(X, Y) ↦ (u²X + r, u³Y)` between
/// `Y² = X³ + a4X + a6` and `Y² = X³ + b4X + b6`.
fn char3_j0_isomorphisms(f: &Gf, (a4, a6): (Fq, Fq), (b4, b6): (Fq, Fq)) -> usize {
    let mut rng = seeded_rng(0);
    // u⁴ b4 = a4
    let quartic = Poly::new(f, vec![f.neg(&a4), f.zero(), f.zero(), f.zero(), b4]);
    poly::roots(&quartic, &mut rng)
        .iter()
        .filter(|u| !f.is_zero(u))
        .map(|u| {
            // r³ + a4 r + a6 = u⁶ b6
            let u6 = f.pow(u, 6);
            let cubic = Poly::new(
                f,
                vec![f.sub(&a6, &f.mul(&u6, &b6)), a4, f.zero(), f.one()],
            );
            poly::roots(&cubic, &mut rng).len()
        })
        .sum()
}

/// `n(f)`: 3, 2 or 6 as the separable cubic `f` has 0, 1 or 3 rational roots.
pub fn n_of_cubic(f: &Poly<Gf>) -> Result<u32> {
    if f.deg() != Some(3) || !f.is_separable() {
        return usage("n(f) needs a separable cubic");
    }
    Ok(match poly::roots(f, &mut seeded_rng(0)).len() {
        0 => 3,
        1 => 2,
        3 => 6,
        k => unreachable!("a cubic has 0, 1 or 3 rational roots when separable, got {k}"),
    })
}

/// `E` and the cubic `f` are compatible iff they have the same number of
/// rational 2-torsion points.
pub fn is_compatible(e: &EllipticCurve, f: &Poly<Gf>) -> Result<bool> {
    if f.deg() != Some(3) || !f.is_separable() {
        return usage("compatibility needs a separable cubic");
    }
    let rf = poly::roots(f, &mut seeded_rng(0)).len() as u32;
    Ok(e.rational_two_torsion_count() == 1 + rf)
}

#[cfg(test)]
mod tests;
