//! The double covers `D_a(f1, f2)`: `w² = (x − a)·f1`, `z² = (x − a)·f2`.

mod construction;
mod pipeline;

use std::fmt;

use crate::elliptic::{defect_of_count, j_fraction, EllipticCurve, RingOps};
use crate::error::{usage, Result};
use crate::field::{Field, Fq, Gf};
use crate::genus2::Genus2Curve;
use crate::poly::{param_ratio_reduce, ParamPoly, Poly};

pub use construction::{algorithm_construction, preimage_census, Census, Construction};
pub use pipeline::{
    algorithm_genus4, DefectHistogram, Found, PipelineOptions, PipelineReport, DEFAULT_VERIFY_GUARD,
};

/// A point of `P¹(F_q)`; finite points sort before infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum P1 {
    Finite(Fq),
    Infinity,
}

impl P1 {
    pub fn to_json(&self, f: &Gf) -> serde_json::Value {
        match self {
            P1::Finite(a) => serde_json::json!(f.coefficients(a)),
            P1::Infinity => serde_json::json!("inf"),
        }
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Finite(a) => write!(f, "{a:?}"),
            P1::Infinity => write!(f, "inf"),
        }
    }
}

pub(crate) fn poly_json(f: &Poly<Gf>) -> serde_json::Value {
    let k = f.field();
    serde_json::json!(f.coeffs().iter().map(|c| k.coefficients(c)).collect::<Vec<_>>())
}

#[derive(Clone, Debug)]
pub struct Genus4Cover {
    f1: Poly<Gf>,
    f2: Poly<Gf>,
    a: P1,
    c: Genus2Curve,
    e1: EllipticCurve,
    e2: EllipticCurve,
}

/// `#C, #E1, #E2, #D` over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverCounts {
    pub c: u64,
    pub e1: u64,
    pub e2: u64,
    pub d: u64,
}

/// `E_{a,i}`: `y² = x³ f(1/x + a)`, or `y² = f` at infinity.
pub fn e_a(f: &Poly<Gf>, a: &P1) -> Result<EllipticCurve> {
    match a {
        P1::Finite(a) => EllipticCurve::from_cubic(&f.shifted_reversal(3, a)),
        P1::Infinity => EllipticCurve::from_cubic(f),
    }
}

pub fn build_cover(f1: &Poly<Gf>, f2: &Poly<Gf>, a: P1) -> Result<Genus4Cover> {
    if f1.deg() != Some(3) || f2.deg() != Some(3) {
        return usage("f1 and f2 must be cubics");
    }
    if f1.field() != f2.field() {
        return Err(crate::Error::MixedFields);
    }
    if !f1.gcd(f2).is_one() {
        return usage("f1 and f2 are not coprime");
    }
    let f = f1 * f2;
    if !f.is_separable() {
        return usage("f1·f2 is not separable");
    }
    if let P1::Finite(x) = &a {
        if f1.field().is_zero(&f1.eval(x)) {
            return usage("a is a root of f1");
        }
        if f2.field().is_zero(&f2.eval(x)) {
            return usage("a is a root of f2");
        }
    }
    Ok(Genus4Cover {
        c: Genus2Curve::new(f)?,
        e1: e_a(f1, &a)?,
        e2: e_a(f2, &a)?,
        f1: f1.clone(),
        f2: f2.clone(),
        a,
    })
}

impl Genus4Cover {
    pub fn f1(&self) -> &Poly<Gf> {
        &self.f1
    }

    pub fn f2(&self) -> &Poly<Gf> {
        &self.f2
    }

    pub fn a(&self) -> P1 {
        self.a
    }

    pub fn genus2(&self) -> &Genus2Curve {
        &self.c
    }

    pub fn e1(&self) -> &EllipticCurve {
        &self.e1
    }

    pub fn e2(&self) -> &EllipticCurve {
        &self.e2
    }

    pub fn q(&self) -> u64 {
        self.c.q()
    }

    /// `#D = #C + #E1 + #E2 − 2(q + 1)`.
    pub fn counts(&self) -> CoverCounts {
        let c = self.c.count_points(1, false).expect("F_q count is unguarded");
        let (e1, e2) = (self.e1.point_count(), self.e2.point_count());
        CoverCounts {
            c,
            e1,
            e2,
            d: c + e1 + e2 - 2 * (self.q() + 1),
        }
    }

    pub fn count_points(&self) -> u64 {
        self.counts().d
    }

    pub fn defect(&self) -> i64 {
        defect_of_count(self.q(), 4, self.count_points())
    }
}

struct PolyRing<'a>(&'a Gf);

impl RingOps<Poly<Gf>> for PolyRing<'_> {
    fn add(&self, a: &Poly<Gf>, b: &Poly<Gf>) -> Poly<Gf> {
        a + b
    }
    fn sub(&self, a: &Poly<Gf>, b: &Poly<Gf>) -> Poly<Gf> {
        a - b
    }
    fn mul(&self, a: &Poly<Gf>, b: &Poly<Gf>) -> Poly<Gf> {
        a * b
    }
    fn int(&self, n: i64) -> Poly<Gf> {
        Poly::constant(self.0, self.0.from_i64(n))
    }
}

/// `j(E_{t,i}) = num(t)/den(t)` in lowest terms, `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JParam {
    pub num: Poly<Gf>,
    pub den: Poly<Gf>,
    /// The function is constant in `t`.
    pub degenerate: bool,
}

impl JParam {
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn eval(&self, t: &Fq) -> Option<Fq> {
        let k = self.num.field();
        k.div(&self.num.eval(t), &self.den.eval(t))
    }
}

pub fn j_parameter_function(f: &Poly<Gf>) -> Result<JParam> {
    if f.deg() != Some(3) || !f.is_separable() {
        return usage("j-parameter function needs a separable cubic");
    }
    let k = f.field();
    // h = c3 x³ + c2 x² + c1 x + c0 with c_i ∈ F_q[t]; monic model as in
    // EllipticCurve::normal_form
    let h = ParamPoly::shifted_reversal(f, 3);
    let (c0, c1, c2, c3) = (h.coeff(0), h.coeff(1), h.coeff(2), h.coeff(3));
    let a4 = &c1 * &c3;
    let a6 = &c0 * &(&c3 * &c3);
    let (num, den) = j_fraction(&PolyRing(k), &c2, &a4, &a6);
    let (num, den) = param_ratio_reduce(&num, &den)?;
    let degenerate = num.is_constant() && den.is_constant();
    Ok(JParam {
        num,
        den,
        degenerate,
    })
}

#[cfg(test)]
mod tests;
