use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Field;
use crate::arith;
use crate::error::{usage, Error, Result};
use crate::poly::{self, Poly};

/// Largest absolute extension degree over `F_p`.
pub const MAX_DEGREE: usize = 12;

/// Characteristic bound keeping every schoolbook accumulation inside `u64`.
const MAX_CHARACTERISTIC: u64 = 1 << 24;

/// Element of a [`Gf`]: coefficients over `F_p`, constant first, plus the
/// owning field's tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    tag: u32,
    c: [u32; MAX_DEGREE],
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        if last == 0 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{:?}", &self.c[..=last])
        }
    }
}

impl Fq {
    pub fn coeff(&self, i: usize) -> u32 {
        self.c[i]
    }
}

struct GfInner {
    p: u64,
    n: usize,
    q: u128,
    /// Monic modulus, constant first; `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    tag: u32,
    chi: OnceLock<Option<Vec<i8>>>,
    nonresidue: OnceLock<Fq>,
}

/// The field `F_q`, `q = p^n`, as `F_p[y]/(m(y))`. Cheap to clone.
#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.0.p, self.0.n, self.0.modulus)
        }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for Gf {}

impl std::hash::Hash for Gf {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

/// Serialized form: `{"p": int, "n": int, "modulus": [int, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
}

fn field_tag(p: u64, modulus: &[u32]) -> u32 {
    // FNV-1a over the defining data
    let mut h: u64 = 0xcbf29ce484222325;
    for w in std::iter::once(p).chain(modulus.iter().map(|&m| m as u64)) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    (h ^ (h >> 32)) as u32
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return usage("characteristic 2 is not supported");
        }
        if !arith::is_prime(p) {
            return usage(format!("{p} is not an odd prime"));
        }
        if p >= MAX_CHARACTERISTIC {
            return usage(format!("characteristic {p} exceeds 2^24"));
        }
        Ok(Self::from_parts(p, vec![0, 1]))
    }

    /// `F_{p^n}` with the lexicographically smallest monic irreducible
    /// modulus (coefficients compared constant first).
    pub fn new(p: u64, n: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if n == 1 {
            return Ok(base);
        }
        if n == 0 || n > MAX_DEGREE {
            return usage(format!("extension degree {n} outside 1..={MAX_DEGREE}"));
        }
        if arith::pow_u128(p, n as u32).is_none_or(|q| q >= 1 << 127) {
            return usage("field order exceeds 2^127");
        }
        let m = poly::smallest_irreducible(&base, n);
        let coeffs = (0..=n)
            .map(|i| m.coeff(i).c[0])
            .collect::<Vec<_>>();
        Ok(Self::from_parts(p, coeffs))
    }

    /// The field of order `q` (an odd prime power).
    pub fn with_order(q: u64) -> Result<Self> {
        match arith::prime_power(q) {
            Some((p, e)) if p != 2 => Self::new(p, e as usize),
            Some(_) => usage("characteristic 2 is not supported"),
            None => usage(format!("{q} is not a prime power")),
        }
    }

    /// `F_p[y]/(modulus)`; the modulus must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        let n = modulus.len().saturating_sub(1);
        if n <= 1 {
            return Ok(base);
        }
        if n > MAX_DEGREE {
            return usage(format!("extension degree {n} exceeds {MAX_DEGREE}"));
        }
        if modulus[n] % p != 1 {
            return usage("modulus must be monic");
        }
        let m = Poly::new(&base, modulus.iter().map(|&c| base.from_u64(c)).collect());
        if !poly::is_irreducible(&m) {
            return usage("modulus is not irreducible");
        }
        Ok(Self::from_parts(p, modulus.iter().map(|&c| (c % p) as u32).collect()))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let f = Self::with_modulus(spec.p, &spec.modulus)?;
        if f.degree() != spec.n {
            return usage("field degree does not match modulus");
        }
        Ok(f)
    }

    fn from_parts(p: u64, modulus: Vec<u32>) -> Self {
        let n = modulus.len() - 1;
        Gf(Arc::new(GfInner {
            p,
            n,
            q: (p as u128).pow(n as u32),
            tag: field_tag(p, &modulus),
            modulus,
            chi: OnceLock::new(),
            nonresidue: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// `q` as `u64`. Panics if the field is too large, which never happens for
    /// the curve-level code (`q < 2^20` there).
    pub fn q(&self) -> u64 {
        u64::try_from(self.0.q).expect("field order fits u64")
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            n: self.0.n,
            modulus: if self.0.n == 1 {
                Vec::new()
            } else {
                self.0.modulus.iter().map(|&c| c as u64).collect()
            },
        }
    }

    fn raw(&self, c: [u32; MAX_DEGREE]) -> Fq {
        Fq { tag: self.0.tag, c }
    }

    pub fn from_u64(&self, v: u64) -> Fq {
        let mut c = [0u32; MAX_DEGREE];
        c[0] = (v % self.0.p) as u32;
        self.raw(c)
    }

    /// Element from its coefficient vector (constant first), reducing mod `p`.
    pub fn elem(&self, coeffs: &[u64]) -> Result<Fq> {
        if coeffs.len() > self.0.n {
            return usage(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.n
            ));
        }
        let mut c = [0u32; MAX_DEGREE];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = (v % self.0.p) as u32;
        }
        Ok(self.raw(c))
    }

    /// Coefficient vector, constant first, of length `n`.
    pub fn coefficients(&self, x: &Fq) -> Vec<u64> {
        x.c[..self.0.n].iter().map(|&v| v as u64).collect()
    }

    /// Position of `x` in canonical order, `Σ c_i p^(n−1−i)`; the inverse of
    /// [`Field::nth_element`].
    pub fn index(&self, x: &Fq) -> u64 {
        x.c[..self.0.n]
            .iter()
            .fold(0u64, |acc, &d| acc * self.0.p + d as u64)
    }

    pub fn from_index(&self, i: u64) -> Fq {
        self.nth_element(i as u128)
    }

    /// The class of `y` in `F_p[y]/(m(y))`, a root of the modulus. For prime
    /// fields (modulus `y`) this is `0`.
    pub fn generator(&self) -> Fq {
        let mut c = [0u32; MAX_DEGREE];
        if self.0.n > 1 {
            c[1] = 1;
        }
        self.raw(c)
    }

    /// Whether `x` was produced by this field (same defining data).
    pub fn owns(&self, x: &Fq) -> bool {
        x.tag == self.0.tag
    }

    fn check(&self, xs: &[&Fq]) -> Result<()> {
        if xs.iter().all(|x| self.owns(x)) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, a: &Fq, b: &Fq) -> Result<Fq> {
        self.check(&[a, b])?;
        Ok(self.add(a, b))
    }

    pub fn checked_sub(&self, a: &Fq, b: &Fq) -> Result<Fq> {
        self.check(&[a, b])?;
        Ok(self.sub(a, b))
    }

    pub fn checked_mul(&self, a: &Fq, b: &Fq) -> Result<Fq> {
        self.check(&[a, b])?;
        Ok(self.mul(a, b))
    }

    pub fn checked_inv(&self, a: &Fq) -> Result<Fq> {
        self.check(&[a])?;
        self.inv(a).ok_or(Error::DivisionByZero)
    }

    pub fn checked_div(&self, a: &Fq, b: &Fq) -> Result<Fq> {
        self.check(&[a, b])?;
        self.div(a, b).ok_or(Error::DivisionByZero)
    }

    /// Lookup table of quadratic characters indexed by [`Gf::index`], built on
    /// first use for `q ≤ 2^22`.
    fn chi_table(&self) -> Option<&[i8]> {
        self.0
            .chi
            .get_or_init(|| {
                if self.0.q > 1 << 22 {
                    return None;
                }
                let q = self.0.q as usize;
                let mut t = vec![-1i8; q];
                t[0] = 0;
                if self.0.n == 1 {
                    let p = self.0.p;
                    for x in 1..p {
                        t[(x * x % p) as usize] = 1;
                    }
                } else {
                    for i in 1..q as u64 {
                        let x = self.from_index(i);
                        t[self.index(&self.mul(&x, &x)) as usize] = 1;
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    /// Canonical (least) quadratic non-residue, cached.
    pub fn nonresidue(&self) -> Fq {
        *self.0.nonresidue.get_or_init(|| self.least_nonresidue())
    }

    /// A generator of the cyclic group `F_q^*` (least in enumeration order).
    pub fn primitive_element(&self) -> Fq {
        let order = self.0.q - 1;
        let primes: Vec<u128> = arith::factorize(u64::try_from(order).expect("small field"))
            .into_iter()
            .map(|(r, _)| r as u128)
            .collect();
        (1..self.0.q)
            .map(|i| self.nth_element(i))
            .find(|g| primes.iter().all(|&r| !self.is_one(&self.pow(g, order / r))))
            .expect("F_q^* is cyclic")
    }

    /// `F_{q^d}` as an absolute field with the smallest irreducible modulus of
    /// degree `n·d` over `F_p`.
    pub fn build_extension(&self, d: usize) -> Result<Gf> {
        if d == 0 {
            return usage("extension degree must be positive");
        }
        Gf::new(self.0.p, self.0.n * d)
    }

    /// The embedding of `self` into `target` sending the generator of `self`
    /// to the smallest root of its modulus in `target`.
    pub fn embedding_into(&self, target: &Gf) -> Result<Embedding> {
        if self.0.p != target.0.p || !target.0.n.is_multiple_of(self.0.n) {
            return usage("source degree must divide target degree in the same characteristic");
        }
        let mut powers = vec![target.one()];
        if self.0.n > 1 {
            let m = Poly::new(
                target,
                self.0.modulus.iter().map(|&c| target.from_u64(c as u64)).collect(),
            );
            let mut rng = crate::seeded_rng(0);
            let image_of_gen = *poly::roots(&m, &mut rng)
                .first()
                .ok_or_else(|| Error::Internal("modulus has no root in target".into()))?;
            for _ in 1..self.0.n {
                let next = target.mul(powers.last().expect("nonempty"), &image_of_gen);
                powers.push(next);
            }
        }
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            powers,
        })
    }

    /// Embeds `x` into `target` (see [`Gf::embedding_into`]).
    pub fn embed(&self, x: &Fq, target: &Gf) -> Result<Fq> {
        self.check(&[x])?;
        Ok(self.embedding_into(target)?.apply(x))
    }

    fn inv_prime(&self, a: u64) -> u64 {
        let p = self.0.p as i64;
        let (mut r0, mut r1) = (p, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (s0, s1) = (s1, s0 - qt * s1);
        }
        s0.rem_euclid(p) as u64
    }
}

/// A fixed ring homomorphism `F_{p^a} → F_{p^b}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Gf,
    target: Gf,
    powers: Vec<Fq>,
}

impl Embedding {
    pub fn apply(&self, x: &Fq) -> Fq {
        debug_assert!(self.source.owns(x));
        let t = &self.target;
        self.powers
            .iter()
            .zip(&x.c)
            .fold(t.zero(), |acc, (g, &c)| t.add(&acc, &t.mul(g, &t.from_u64(c as u64))))
    }

    pub fn target(&self) -> &Gf {
        &self.target
    }
}

impl Field for Gf {
    type Elem = Fq;

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn order(&self) -> u128 {
        self.0.q
    }

    fn zero(&self) -> Fq {
        self.raw([0; MAX_DEGREE])
    }

    fn one(&self) -> Fq {
        self.from_u64(1)
    }

    fn from_i64(&self, n: i64) -> Fq {
        self.from_u64(n.rem_euclid(self.0.p as i64) as u64)
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        debug_assert!(self.owns(a) && self.owns(b), "mixed fields");
        let p = self.0.p as u32;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.0.n {
            let s = a.c[i] + b.c[i];
            c[i] = if s >= p { s - p } else { s };
        }
        self.raw(c)
    }

    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        debug_assert!(self.owns(a) && self.owns(b), "mixed fields");
        let p = self.0.p as u32;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.0.n {
            c[i] = if a.c[i] >= b.c[i] {
                a.c[i] - b.c[i]
            } else {
                a.c[i] + p - b.c[i]
            };
        }
        self.raw(c)
    }

    fn neg(&self, a: &Fq) -> Fq {
        let p = self.0.p as u32;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.0.n {
            c[i] = if a.c[i] == 0 { 0 } else { p - a.c[i] };
        }
        self.raw(c)
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        debug_assert!(self.owns(a) && self.owns(b), "mixed fields");
        let p = self.0.p;
        let n = self.0.n;
        let mut c = [0u32; MAX_DEGREE];
        if n == 1 {
            c[0] = (a.c[0] as u64 * b.c[0] as u64 % p) as u32;
            return self.raw(c);
        }
        let mut r = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..n {
            let ai = a.c[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                r[i + j] += ai * b.c[j] as u64;
            }
        }
        let m = &self.0.modulus;
        for k in (n..2 * n - 1).rev() {
            let top = r[k] % p;
            if top == 0 {
                continue;
            }
            for j in 0..n {
                r[k - n + j] += top * (p - m[j] as u64);
            }
        }
        for i in 0..n {
            c[i] = (r[i] % p) as u32;
        }
        self.raw(c)
    }

    fn inv(&self, a: &Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return None;
        }
        if self.0.n == 1 {
            return Some(self.from_u64(self.inv_prime(a.c[0] as u64)));
        }
        Some(self.pow(a, self.0.q - 2))
    }

    fn is_zero(&self, a: &Fq) -> bool {
        a.c.iter().all(|&x| x == 0)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        let mut c = [0u32; MAX_DEGREE];
        for slot in c.iter_mut().take(self.0.n) {
            *slot = rng.gen_range(0..self.0.p) as u32;
        }
        self.raw(c)
    }

    fn nth_element(&self, mut i: u128) -> Fq {
        let p = self.0.p as u128;
        let mut c = [0u32; MAX_DEGREE];
        for slot in c[..self.0.n].iter_mut().rev() {
            *slot = (i % p) as u32;
            i /= p;
        }
        self.raw(c)
    }

    fn quadratic_character(&self, a: &Fq) -> i8 {
        if let Some(t) = self.chi_table() {
            return t[self.index(a) as usize];
        }
        if self.is_zero(a) {
            return 0;
        }
        if self.is_one(&self.pow(a, (self.0.q - 1) / 2)) {
            1
        } else {
            -1
        }
    }

    fn least_nonresidue(&self) -> Fq {
        if let Some(nr) = self.0.nonresidue.get() {
            return *nr;
        }
        (1..self.0.q)
            .map(|i| self.nth_element(i))
            .find(|x| self.quadratic_character(x) == -1)
            .expect("odd-order field has non-residues")
    }
}
