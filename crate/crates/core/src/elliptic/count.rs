use std::collections::HashMap;

use rand::Rng;

use super::EllipticCurve;
use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Field, Fq, Gf};

/// Fresh points drawn on the curve and on its twist before giving up.
pub const BSGS_ROUNDS: usize = 16;

/// Below this order BSGS ambiguity, and [`exact`], fall back to naive counting.
const NAIVE_BELOW: u64 = 4096;

pub(super) fn naive(e: &EllipticCurve) -> u64 {
    let f = e.field();
    let mut n = 1u64;
    if f.is_prime_field() {
        let p = f.p();
        let v: Vec<u64> = e.coeffs().iter().map(|c| c.coeff(0) as u64).collect();
        for x in 0..p {
            let y = (((v[3] * x + v[2]) % p * x + v[1]) % p * x + v[0]) % p;
            n += (1 + f.quadratic_character(&f.from_u64(y))) as u64;
        }
    } else {
        for x in f.elements() {
            n += (1 + f.quadratic_character(&e.rhs(&x))) as u64;
        }
    }
    n
}

pub(super) fn exact(e: &EllipticCurve) -> u64 {
    if e.q() < NAIVE_BELOW {
        return naive(e);
    }
    let mut rng = crate::seeded_rng(e.q());
    bsgs(e, &mut rng).unwrap_or_else(|_| naive(e))
}

type Pt = Option<(Fq, Fq)>;

/// `Y² = X³ + a2·X² + a4·X + a6` with affine chord-and-tangent arithmetic.
struct Group<'a> {
    f: &'a Gf,
    a2: Fq,
    a4: Fq,
    a6: Fq,
}

impl Group<'_> {
    fn rhs(&self, x: &Fq) -> Fq {
        let f = self.f;
        let t = f.add(&f.mul(&f.add(x, &self.a2), x), &self.a4);
        f.add(&f.mul(&t, x), &self.a6)
    }

    fn neg(&self, p: &Pt) -> Pt {
        p.map(|(x, y)| (x, self.f.neg(&y)))
    }

    fn add(&self, p: &Pt, q: &Pt) -> Pt {
        let f = self.f;
        let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
            return p.or(*q);
        };
        let lambda = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return None;
            }
            let three_x2 = f.mul(&f.from_i64(3), &f.square(x1));
            let two_a2x = f.mul(&f.from_i64(2), &f.mul(&self.a2, x1));
            let num = f.add(&f.add(&three_x2, &two_a2x), &self.a4);
            f.div(&num, &f.add(y1, y1)).expect("y ≠ 0")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("x1 ≠ x2")
        };
        let x3 = f.sub(&f.sub(&f.sub(&f.square(&lambda), &self.a2), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        Some((x3, y3))
    }

    fn mul(&self, p: &Pt, mut k: u64) -> Pt {
        let mut acc = None;
        let mut base = *p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Pt {
        let f = self.f;
        for _ in 0..64 {
            let x = f.random(rng);
            let r = self.rhs(&x);
            if let Some(y) = f.sqrt(&r) {
                let y = if rng.gen::<bool>() { f.neg(&y) } else { y };
                return Some((x, y));
            }
        }
        None
    }

    /// Some `n ∈ [lo, hi]` with `nP = O`, by baby-step giant-step.
    fn multiple_in(&self, p: &Pt, lo: u64, hi: u64) -> Option<u64> {
        let width = hi - lo;
        let s = arith::isqrt(width) + 1;
        let mut baby: HashMap<Pt, u64> = HashMap::with_capacity(s as usize);
        let mut cur = None;
        for j in 0..s {
            baby.entry(cur).or_insert(j);
            cur = self.add(&cur, p);
        }
        let giant = self.mul(p, s);
        let mut r = self.mul(p, lo);
        let mut i = 0;
        while i * s <= width {
            if let Some(&j) = baby.get(&self.neg(&r)) {
                let k = lo + i * s + j;
                if k <= hi {
                    return Some(k);
                }
            }
            r = self.add(&r, &giant);
            i += 1;
        }
        None
    }

    /// Exact order of `p` given a multiple of it.
    fn order_from_multiple(&self, p: &Pt, mut n: u64) -> u64 {
        for (r, _) in arith::factorize(n) {
            while n.is_multiple_of(r) && self.mul(p, n / r).is_none() {
                n /= r;
            }
        }
        n
    }

    fn point_order<R: Rng + ?Sized>(&self, rng: &mut R, lo: u64, hi: u64) -> u64 {
        let p = self.random_point(rng);
        let n = self
            .multiple_in(&p, lo, hi)
            .expect("Hasse interval contains the group order");
        self.order_from_multiple(&p, n)
    }
}

pub(super) fn bsgs<R: Rng + ?Sized>(e: &EllipticCurve, rng: &mut R) -> Result<u64> {
    let f = e.field();
    let q = e.q();
    let m = arith::floor_two_sqrt(q);
    let (lo, hi) = (q + 1 - m, q + 1 + m);
    let (a2, a4, a6) = e.normal_form();
    let c = f.nonresidue();
    let c2 = f.square(&c);
    let curve = Group { f, a2, a4, a6 };
    let twist = Group {
        f,
        a2: f.mul(&c, &a2),
        a4: f.mul(&c2, &a4),
        a6: f.mul(&f.mul(&c2, &c), &a6),
    };
    // #E[2](F_q) fixes N mod 2 or mod 4, and the twist shares it
    let modulus = match e.rational_two_torsion_count() {
        1 => None,
        2 => Some(2),
        _ => Some(4),
    };
    let admissible = |n: u64| match modulus {
        None => n % 2 == 1,
        Some(k) => n.is_multiple_of(k),
    };
    let (mut l_e, mut l_t) = (1u64, 1u64);
    for _ in 0..BSGS_ROUNDS {
        l_e = arith::lcm(l_e, curve.point_order(rng, lo, hi));
        l_t = arith::lcm(l_t, twist.point_order(rng, lo, hi));
        let candidates: Vec<u64> = (lo..=hi)
            .filter(|&n| n % l_e == 0 && (2 * q + 2 - n).is_multiple_of(l_t))
            .filter(|&n| admissible(n) && admissible(2 * q + 2 - n))
            .take(2)
            .collect();
        match candidates.as_slice() {
            [n] => return Ok(*n),
            [] => return Err(Error::Internal("no admissible group order".into())),
            _ => {}
        }
    }
    if q < NAIVE_BELOW {
        return Ok(naive(e));
    }
    Err(Error::Resolution(BSGS_ROUNDS))
}
