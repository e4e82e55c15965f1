//! Brute-force counterparts of the fast routines, used only to validate them.
//! Apart from field arithmetic, nothing here calls the code it checks.

use crate::elliptic::EllipticCurve;
use crate::error::{usage, Error, Result};
use crate::field::{Field, Fq, Gf};
use crate::genus2::Genus2Curve;
use crate::genus4::P1;
use crate::poly::Poly;

pub const FIBER_MAX_Q: u64 = 1 << 17;
pub const ENUMERATION_MAX_Q: u64 = 13;
pub const PGL2_MAX_Q: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberKind {
    /// Neither cover ramifies.
    Generic,
    /// Exactly one of the two covers ramifies.
    RamifiedOne,
    /// Both covers ramify: `x = a`, or `x = ∞` when `a = ∞`.
    RamifiedBoth,
    /// `x = ∞` for finite `a`, unramified.
    Infinity,
}

impl FiberKind {
    /// Ramification index of `D_a → P¹` at each point of the fiber.
    pub fn ramification(self) -> u32 {
        match self {
            FiberKind::Generic | FiberKind::Infinity => 1,
            FiberKind::RamifiedOne | FiberKind::RamifiedBoth => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub x: P1,
    pub kind: FiberKind,
    pub points: u32,
}

fn eval(k: &Gf, c: &[Fq], x: &Fq) -> Fq {
    c.iter().rev().fold(k.zero(), |acc, ci| k.add(&k.mul(&acc, x), ci))
}

fn cubic_coeffs(f: &Poly<Gf>) -> Result<[Fq; 4]> {
    if f.deg() != Some(3) {
        return usage("expected a cubic");
    }
    Ok([f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3)])
}

/// Fibers of `D_a → P¹` with `χ` supplied by the caller, so the same rules
/// can be checked against the degree of the cover.
pub fn fiber_table_with(
    f1: &Poly<Gf>,
    f2: &Poly<Gf>,
    a: &P1,
    chi: impl Fn(&Fq) -> i8,
) -> Result<Vec<Fiber>> {
    let k = f1.field();
    if k.q() > FIBER_MAX_Q {
        return Err(Error::CostGuard(format!("fiber oracle needs q ≤ {FIBER_MAX_Q}")));
    }
    let (c1, c2) = (cubic_coeffs(f1)?, cubic_coeffs(f2)?);
    let one = |v: &Fq| (1 + chi(v)) as u32;
    let mut out = Vec::with_capacity(k.q() as usize + 1);
    for x in k.elements() {
        let (g1, g2) = (eval(k, &c1, &x), eval(k, &c2, &x));
        let (kind, points) = match a {
            P1::Finite(a0) if x == *a0 => {
                if k.is_zero(&g1) || k.is_zero(&g2) {
                    return usage("a is a root of f1·f2");
                }
                (FiberKind::RamifiedBoth, one(&k.mul(&g1, &g2)))
            }
            _ => {
                let s = match a {
                    P1::Finite(a0) => k.sub(&x, a0),
                    P1::Infinity => k.one(),
                };
                let (u, v) = (k.mul(&s, &g1), k.mul(&s, &g2));
                match (k.is_zero(&u), k.is_zero(&v)) {
                    (false, false) => (FiberKind::Generic, one(&u) * one(&v)),
                    (true, false) => (FiberKind::RamifiedOne, one(&v)),
                    (false, true) => (FiberKind::RamifiedOne, one(&u)),
                    (true, true) => return usage("f1 and f2 share a root"),
                }
            }
        };
        out.push(Fiber {
            x: P1::Finite(x),
            kind,
            points,
        });
    }
    let (l1, l2) = (c1[3], c2[3]);
    out.push(match a {
        P1::Finite(_) => Fiber {
            x: P1::Infinity,
            kind: FiberKind::Infinity,
            points: one(&l1) * one(&l2),
        },
        P1::Infinity => Fiber {
            x: P1::Infinity,
            kind: FiberKind::RamifiedBoth,
            points: one(&k.mul(&l1, &l2)),
        },
    });
    Ok(out)
}

pub fn fiber_table(f1: &Poly<Gf>, f2: &Poly<Gf>, a: &P1) -> Result<Vec<Fiber>> {
    let k = f1.field();
    fiber_table_with(f1, f2, a, |v| k.quadratic_character(v))
}

/// `#D_a(F_q)` fiber by fiber.
pub fn oracle_count_g4(f1: &Poly<Gf>, f2: &Poly<Gf>, a: &P1) -> Result<u64> {
    Ok(fiber_table(f1, f2, a)?.iter().map(|f| f.points as u64).sum())
}

/// `#C(F_{q²})` by enumerating `F_{q²}`.
fn count_over_quadratic(f: &Poly<Gf>) -> Result<u64> {
    let k = f.field();
    let big = k.build_extension(2)?;
    let emb = k.embedding_into(&big)?;
    let c: Vec<Fq> = f.coeffs().iter().map(|x| emb.apply(x)).collect();
    let mut n = if f.degree() == 5 { 1 } else { 2 };
    for x in big.elements() {
        n += (1 + big.quadratic_character(&eval(&big, &c, &x))) as u64;
    }
    Ok(n)
}

/// Every genus-2 curve over `F_q` with Weil polynomial `(x² − tx + q)²`, one
/// per isomorphism class.
///
/// Models run over `lc ∈ {1, ν}` (`ν` the least non-residue); when `p ≥ 7`
/// the coefficient below the leading one is also fixed to 0 by translation.
pub fn enumerate_genus2_with_weil(q: u64, t: i64) -> Result<Vec<Genus2Curve>> {
    if q > ENUMERATION_MAX_Q {
        return Err(Error::CostGuard(format!(
            "genus-2 enumeration needs q ≤ {ENUMERATION_MAX_Q}"
        )));
    }
    let k = Gf::with_order(q)?;
    if k.p() == 2 {
        return usage("q must be odd");
    }
    let qi = q as i64;
    let target = qi + 1 - 2 * t;
    let target2 = qi * qi + 1 - 2 * (t * t - 2 * qi);
    if target < 0 {
        return Ok(Vec::new());
    }
    let els: Vec<Fq> = k.elements().collect();
    let chi: Vec<i64> = els.iter().map(|x| k.quadratic_character(x) as i64).collect();
    let index = |x: &Fq| k.index(x) as usize;
    // powers[x][i] = x^i
    let powers: Vec<[Fq; 7]> = els
        .iter()
        .map(|x| {
            let mut p = [k.one(); 7];
            for i in 1..7 {
                p[i] = k.mul(&p[i - 1], x);
            }
            p
        })
        .collect();
    let translate = k.p() >= 7;
    let mut survivors = Vec::new();
    for deg in [5usize, 6] {
        for lc in [k.one(), k.nonresidue()] {
            let at_inf: i64 = if deg == 5 { 1 } else { 1 + chi[index(&lc)] };
            let free = if translate { deg - 1 } else { deg };
            let total = q.pow(free as u32);
            let mut c = vec![k.zero(); deg + 1];
            c[deg] = lc;
            for code in 0..total {
                let mut r = code;
                for slot in c.iter_mut().take(free) {
                    *slot = els[(r % q) as usize];
                    r /= q;
                }
                let mut n = at_inf;
                let mut ok = true;
                for (i, pw) in powers.iter().enumerate() {
                    let y = (0..=deg).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(&c[j], &pw[j])));
                    n += 1 + chi[index(&y)];
                    let left = 2 * (q as i64 - i as i64 - 1);
                    if n > target || n + left < target {
                        ok = false;
                        break;
                    }
                }
                if !ok || n != target {
                    continue;
                }
                let f = Poly::new(&k, c.clone());
                if !f.is_separable() {
                    continue;
                }
                if count_over_quadratic(&f)? as i64 != target2 {
                    continue;
                }
                survivors.push(Genus2Curve::new(f)?);
            }
        }
    }
    let mut reps: Vec<Genus2Curve> = Vec::new();
    for c in survivors {
        if !reps.iter().any(|r| r.is_isomorphic(&c)) {
            reps.push(c);
        }
    }
    Ok(reps)
}

fn guard_pgl2(k: &Gf) -> Result<()> {
    if k.q() > PGL2_MAX_Q {
        return Err(Error::CostGuard(format!("PGL2 enumeration needs q ≤ {PGL2_MAX_Q}")));
    }
    Ok(())
}

/// `Σ f_i (a·x + b)^i (c·x + d)^(3−i)`: the homogenized cubic composed with
/// the matrix, as a length-4 coefficient vector.
fn act_on_cubic(k: &Gf, f: &[Fq; 4], m: [Fq; 4]) -> [Fq; 4] {
    let l1 = Poly::new(k, vec![m[1], m[0]]);
    let l2 = Poly::new(k, vec![m[3], m[2]]);
    let mut acc = Poly::zero(k);
    for (i, fi) in f.iter().enumerate() {
        let term = &l1.pow(i as u32) * &l2.pow(3 - i as u32);
        acc = &acc + &term.scale(fi);
    }
    [0, 1, 2, 3].map(|i| acc.coeff(i))
}

/// `n(f)` by counting Möbius maps over `F_q` that preserve the roots of `f`.
pub fn oracle_n_of_cubic(f: &Poly<Gf>) -> Result<u32> {
    let k = f.field();
    guard_pgl2(k)?;
    let c = cubic_coeffs(f)?;
    let els: Vec<Fq> = k.elements().collect();
    let mut n = 0;
    let q = els.len();
    for code in 0..q.pow(4) {
        let m = [0, 1, 2, 3].map(|i| els[code / q.pow(i) % q]);
        let det = k.sub(&k.mul(&m[0], &m[3]), &k.mul(&m[1], &m[2]));
        if k.is_zero(&det) {
            continue;
        }
        // one matrix per class: first nonzero entry equal to 1
        if m.iter().find(|e| !k.is_zero(e)) != Some(&k.one()) {
            continue;
        }
        let g = act_on_cubic(k, &c, m);
        let lambda = k.div(&g[3], &c[3]);
        let proportional = lambda.is_some_and(|l| (0..4).all(|i| g[i] == k.mul(&l, &c[i])));
        // g[3] = f̂(a, c) may vanish only if g ≡ 0, which an invertible map excludes
        if proportional {
            n += 1;
        }
    }
    Ok(n)
}

/// Compatibility straight from the definition: `E ≅ y² = c·f`, or
/// `E ≅ y² = c·x³ f(1/x + a)` for some `a`, `c ≠ 0`.
pub fn oracle_compatibility(e: &EllipticCurve, f: &Poly<Gf>) -> Result<bool> {
    let k = f.field();
    guard_pgl2(k)?;
    let c = cubic_coeffs(f)?;
    let els: Vec<Fq> = k.elements().collect();
    let mut models = vec![f.clone()];
    for a in &els {
        // Σ f_i (1 + a x)^i x^(3−i)
        let lin = Poly::new(k, vec![k.one(), *a]);
        let mut h = Poly::zero(k);
        for (i, fi) in c.iter().enumerate() {
            let term = &lin.pow(i as u32) * &Poly::monomial(k, *fi, 3 - i);
            h = &h + &term;
        }
        if h.deg() == Some(3) {
            models.push(h);
        }
    }
    for g in models {
        for s in els.iter().filter(|s| !k.is_zero(s)) {
            if let Ok(cand) = EllipticCurve::from_cubic(&g.scale(s)) {
                if cand.is_isomorphic(e) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{is_compatible, n_of_cubic, trace_table};
    use crate::seeded_rng;
    use rand::Rng;

    fn separable_cubics(k: &Gf) -> Vec<Poly<Gf>> {
        let els: Vec<Fq> = k.elements().collect();
        let mut out = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    let f = Poly::new(k, vec![c, b, a, k.one()]);
                    if f.is_separable() {
                        out.push(f);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn n_of_cubic_examples() {
        let k = Gf::prime(5).unwrap();
        assert_eq!(oracle_n_of_cubic(&Poly::from_i64s(&k, &[0, -1, 0, 1])).unwrap(), 6);
        assert!(oracle_n_of_cubic(&Poly::from_i64s(&Gf::prime(11).unwrap(), &[0, -1, 0, 1])).is_err());
    }

    #[test]
    fn n_of_cubic_agrees() {
        for q in [5u64, 7, 9] {
            let k = Gf::with_order(q).unwrap();
            for f in separable_cubics(&k) {
                assert_eq!(oracle_n_of_cubic(&f).unwrap(), n_of_cubic(&f).unwrap());
            }
        }
    }

    #[test]
    fn fiber_rules() {
        let mut rng = seeded_rng(3);
        for q in [5u64, 7, 9, 13, 27] {
            let k = Gf::with_order(q).unwrap();
            let cubics = separable_cubics(&k);
            for _ in 0..20 {
                let f1 = &cubics[rng.gen_range(0..cubics.len())];
                let f2 = &cubics[rng.gen_range(0..cubics.len())];
                if !(f1 * f2).is_separable() {
                    continue;
                }
                let a = k
                    .elements()
                    .find(|a| !k.is_zero(&f1.eval(a)) && !k.is_zero(&f2.eval(a)))
                    .map_or(P1::Infinity, P1::Finite);
                for a in [a, P1::Infinity] {
                    let t = fiber_table(f1, f2, &a).unwrap();
                    assert_eq!(t.len() as u64, q + 1);
                    assert!(t.iter().all(|x| matches!(x.points, 0 | 1 | 2 | 4)));
                    let geometric = fiber_table_with(f1, f2, &a, |_| 1).unwrap();
                    let degree: u32 = geometric.iter().map(|x| x.points * x.kind.ramification()).sum();
                    assert_eq!(degree as u64, 4 * (q + 1));
                }
            }
        }
    }

    #[test]
    fn compatibility_agrees_over_f7() {
        let k = Gf::prime(7).unwrap();
        let curves: Vec<EllipticCurve> =
            trace_table(&k).entries().iter().map(|(e, _)| e.clone()).collect();
        for f in separable_cubics(&k).into_iter().step_by(7) {
            for e in &curves {
                assert_eq!(oracle_compatibility(e, &f).unwrap(), is_compatible(e, &f).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(enumerate_genus2_with_weil(17, 1).is_err());
    }
}
