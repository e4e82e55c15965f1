//! Dense univariate polynomials over a [`Field`], factorization, and the
//! two-variable [`ParamPoly`] used for the `j`-parameter function.

mod factor;
mod param;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

pub use factor::{
    distinct_degree, equal_degree, factor, is_irreducible, one_root, roots, roots_in, smallest_irreducible,
    square_free,
};
pub use param::{param_ratio_reduce, ParamPoly};

/// Polynomial with coefficients constant first; never has trailing zeros.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    c: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Degree first, then coefficient vectors lexicographically (constant first).
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.cmp(&other.c))
    }
}

impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut c: Vec<F::Elem>) -> Self {
        while c.last().is_some_and(|x| field.is_zero(x)) {
            c.pop();
        }
        Poly {
            field: field.clone(),
            c,
        }
    }

    pub fn from_i64s(field: &F, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, a: F::Elem) -> Self {
        Self::new(field, vec![a])
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `a·x^k`.
    pub fn monomial(field: &F, a: F::Elem, k: usize) -> Self {
        let mut c = vec![field.zero(); k + 1];
        c[k] = a;
        Self::new(field, c)
    }

    /// `x − a`.
    pub fn linear(field: &F, a: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.c
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> F::Elem {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| self.field.is_one(x))
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.field.is_one(&self.c[0])
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(&self.lc()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, a: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.c.iter().map(|x| f.mul(x, a)).collect())
    }

    fn combine(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|i| op(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(&self.field, c)
    }

    fn mul_poly(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut r = vec![f.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                r[i + j] = f.add(&r[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, r)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| &acc * self)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dinv = f.inv(&d.lc()).ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        let dn = d.c.len() - 1;
        if r.len() <= dn {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quo = vec![f.zero(); r.len() - dn];
        for k in (0..quo.len()).rev() {
            let t = f.mul(&r[k + dn], &dinv);
            if f.is_zero(&t) {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&t, dj));
            }
            quo[k] = t;
        }
        r.truncate(dn);
        Ok((Self::new(f, quo), Self::new(f, r)))
    }

    /// Remainder modulo `d`. Panics if `d` is zero.
    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).expect("nonzero divisor").1
    }

    /// Exact-or-truncating quotient by `d`. Panics if `d` is zero.
    pub fn quo(&self, d: &Self) -> Self {
        self.div_rem(d).expect("nonzero divisor").0
    }

    pub fn divides(&self, g: &Self) -> bool {
        g.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Self::new(f, c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.c
            .iter()
            .rev()
            .fold(f.zero(), |acc, a| f.add(&f.mul(&acc, x), a))
    }

    /// `Σ c_i X^i Z^(d−i)`, the degree-`d` homogenization evaluated at `(X, Z)`.
    pub fn eval_homogeneous(&self, d: usize, x: &F::Elem, z: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut zp = f.one();
        for i in (0..=d).rev() {
            let term = f.mul(&self.coeff(i), &zp);
            acc = f.add(&f.mul(&acc, x), &term);
            zp = f.mul(&zp, z);
        }
        acc
    }

    /// `f(a·x + b)`.
    pub fn compose_linear(&self, a: &F::Elem, b: &F::Elem) -> Self {
        let fd = &self.field;
        let lin = Self::new(fd, vec![b.clone(), a.clone()]);
        self.c.iter().rev().fold(Self::zero(fd), |acc, ci| {
            &(&acc * &lin) + &Self::constant(fd, ci.clone())
        })
    }

    /// `x^d f(1/x)`; requires `d ≥ deg f`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.is_zero() || self.degree() <= d, "reversal degree below deg f");
        let mut c: Vec<_> = (0..=d).map(|i| self.coeff(i)).collect();
        c.reverse();
        Self::new(&self.field, c)
    }

    /// `x^d f(1/x + a)`, the reverse-and-shift used for the double covers.
    pub fn shifted_reversal(&self, d: usize, a: &F::Elem) -> Self {
        self.compose_linear(&self.field.one(), a).reverse(d)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Discriminant-free separability test: `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Coefficient-wise image in another field.
    pub fn map<G: Field>(&self, target: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target, self.c.iter().map(phi).collect())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Poly<F> {
        let f = self.field.clone();
        self.combine(rhs, |a, b| f.add(a, b))
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Poly<F> {
        let f = self.field.clone();
        self.combine(rhs, |a, b| f.sub(a, b))
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Poly<F> {
        self.mul_poly(rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|x| f.neg(x)).collect())
    }
}
