use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::Field;
use crate::poly::{self, Poly};

/// Element of an [`Ext`]: coordinates on the power basis `1, z, …, z^{k−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem<E>(pub Vec<E>);

impl<E: fmt::Debug> fmt::Debug for ExtElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

struct ExtInner<F: Field> {
    base: F,
    k: usize,
    /// Monic, irreducible over `base`, constant first, length `k + 1`.
    modulus: Vec<F::Elem>,
    order: u128,
}

/// Relative extension `K[z]/(g(z))` of degree `k`.
pub struct Ext<F: Field>(Arc<ExtInner<F>>);

impl<F: Field> Clone for Ext<F> {
    fn clone(&self) -> Self {
        Ext(self.0.clone())
    }
}

impl<F: Field> fmt::Debug for Ext<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[z]/{:?}", self.0.base, self.0.modulus)
    }
}

impl<F: Field> Ext<F> {
    /// The extension of degree `k` defined by the smallest monic irreducible
    /// polynomial of that degree over `base`. `k = 1` gives a trivial wrapper.
    pub fn of_degree(base: &F, k: usize) -> Self {
        let modulus = if k == 1 {
            vec![base.zero(), base.one()]
        } else {
            poly::smallest_irreducible(base, k).into_coeffs()
        };
        Self::from_modulus(base, modulus)
    }

    /// `base[z]/(g)`; `g` must be monic irreducible (checked in debug builds).
    pub fn with_modulus(g: &Poly<F>) -> Self {
        debug_assert!(poly::is_irreducible(g) && g.is_monic());
        Self::from_modulus(g.field(), g.coeffs().to_vec())
    }

    fn from_modulus(base: &F, modulus: Vec<F::Elem>) -> Self {
        let k = modulus.len() - 1;
        let order = base
            .order()
            .checked_pow(k as u32)
            .expect("extension order fits u128");
        Ext(Arc::new(ExtInner {
            base: base.clone(),
            k,
            modulus,
            order,
        }))
    }

    pub fn base(&self) -> &F {
        &self.0.base
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.0.modulus
    }

    pub fn embed(&self, a: &F::Elem) -> ExtElem<F::Elem> {
        let mut v = vec![self.0.base.zero(); self.0.k];
        v[0] = a.clone();
        ExtElem(v)
    }

    /// The element back in the base field, if it lies there.
    pub fn descend(&self, x: &ExtElem<F::Elem>) -> Option<F::Elem> {
        if x.0[1..].iter().all(|c| self.0.base.is_zero(c)) {
            Some(x.0[0].clone())
        } else {
            None
        }
    }

    pub fn is_in_base(&self, x: &ExtElem<F::Elem>) -> bool {
        self.descend(x).is_some()
    }

    /// The class of `z`.
    pub fn generator(&self) -> ExtElem<F::Elem> {
        let b = &self.0.base;
        if self.0.k == 1 {
            return ExtElem(vec![b.neg(&self.0.modulus[0])]);
        }
        let mut v = vec![b.zero(); self.0.k];
        v[1] = b.one();
        ExtElem(v)
    }

    /// `x ↦ x^{|base|}`.
    pub fn frobenius(&self, x: &ExtElem<F::Elem>) -> ExtElem<F::Elem> {
        self.pow(x, self.0.base.order())
    }

    /// Norm to the base field.
    pub fn norm(&self, x: &ExtElem<F::Elem>) -> F::Elem {
        let b = &self.0.base;
        match self.0.k {
            1 => x.0[0].clone(),
            2 => {
                // (u + v z)(u + v z') with z + z' = −g1, z z' = g0
                let (u, v) = (&x.0[0], &x.0[1]);
                let (g0, g1) = (&self.0.modulus[0], &self.0.modulus[1]);
                let uu = b.mul(u, u);
                let uv = b.mul(&b.mul(u, v), g1);
                let vv = b.mul(&b.mul(v, v), g0);
                b.add(&b.sub(&uu, &uv), &vv)
            }
            _ => {
                let e = (self.0.order - 1) / (b.order() - 1);
                self.descend(&self.pow(x, e))
                    .expect("norm lies in the base field")
            }
        }
    }

    fn reduce(&self, mut r: Vec<F::Elem>) -> ExtElem<F::Elem> {
        let b = &self.0.base;
        let k = self.0.k;
        let m = &self.0.modulus;
        for top in (k..r.len()).rev() {
            let c = std::mem::replace(&mut r[top], b.zero());
            if b.is_zero(&c) {
                continue;
            }
            for j in 0..k {
                let t = b.mul(&c, &m[j]);
                r[top - k + j] = b.sub(&r[top - k + j], &t);
            }
        }
        r.truncate(k);
        r.resize(k, b.zero());
        ExtElem(r)
    }
}

impl<F: Field> Field for Ext<F> {
    type Elem = ExtElem<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    fn order(&self) -> u128 {
        self.0.order
    }

    fn zero(&self) -> Self::Elem {
        ExtElem(vec![self.0.base.zero(); self.0.k])
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.0.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.0.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.sub(x, y)).collect())
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        ExtElem(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        let k = self.0.k;
        if k == 1 {
            return ExtElem(vec![f.mul(&a.0[0], &b.0[0])]);
        }
        let mut r = vec![f.zero(); 2 * k - 1];
        for (i, x) in a.0.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                r[i + j] = f.add(&r[i + j], &f.mul(x, y));
            }
        }
        self.reduce(r)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        if self.0.k == 1 {
            return self.0.base.inv(&a.0[0]).map(|x| ExtElem(vec![x]));
        }
        Some(self.pow(a, self.0.order - 2))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.iter().all(|c| self.0.base.is_zero(c))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        ExtElem((0..self.0.k).map(|_| self.0.base.random(rng)).collect())
    }

    fn nth_element(&self, mut i: u128) -> Self::Elem {
        let q = self.0.base.order();
        let mut v: Vec<_> = (0..self.0.k)
            .map(|_| {
                let d = i % q;
                i /= q;
                self.0.base.nth_element(d)
            })
            .collect();
        v.reverse();
        ExtElem(v)
    }

    fn quadratic_character(&self, a: &Self::Elem) -> i8 {
        self.0.base.quadratic_character(&self.norm(a))
    }
}
