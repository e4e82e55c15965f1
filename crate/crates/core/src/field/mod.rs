//! Finite fields of odd characteristic.
//!
//! [`Gf`] is an absolute field `F_p[y]/(m(y))` of degree at most
//! [`MAX_DEGREE`]; [`Ext`] is a relative extension `K[z]/(g(z))` over any
//! [`Field`] and is what the splitting-field computations run in. Elements are
//! plain values; all arithmetic goes through the owning field.

mod ext;
mod gf;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

pub use ext::{Ext, ExtElem};
pub use gf::{Embedding, Fq, Gf, MAX_DEGREE};

pub trait Field: Clone + Debug + Send + Sync {
    /// Elements order by their canonical serialization (constant coefficient
    /// first, lexicographic).
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Cardinality `q`.
    fn order(&self) -> u128;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// The `i`-th element in canonical order, so `nth_element` is monotone
    /// for `Ord` on elements (constant coefficient is the most significant
    /// digit). Requires `i < q`.
    fn nth_element(&self, i: u128) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `χ(a) ∈ {−1, 0, 1}`, read off from `a^((q−1)/2)`.
    fn quadratic_character(&self, a: &Self::Elem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let r = self.pow(a, (self.order() - 1) / 2);
        if self.is_one(&r) {
            1
        } else {
            -1
        }
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.quadratic_character(a) >= 0
    }

    /// Least quadratic non-residue in canonical order.
    fn least_nonresidue(&self) -> Self::Elem {
        (1..self.order())
            .map(|i| self.nth_element(i))
            .find(|x| self.quadratic_character(x) == -1)
            .expect("odd-order field has non-residues")
    }

    /// Square root by Tonelli–Shanks; of the two roots the one with the
    /// smaller canonical serialization is returned.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.quadratic_character(a) != 1 {
            return None;
        }
        let mut odd = self.order() - 1;
        let mut s = 0u32;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self.least_nonresidue();
        let mut c = self.pow(&z, odd);
        let mut x = self.pow(a, odd.div_ceil(2));
        let mut t = self.pow(a, odd);
        let mut m = s;
        while !self.is_one(&t) {
            let mut i = 0;
            let mut t2 = t.clone();
            while !self.is_one(&t2) {
                t2 = self.square(&t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            x = self.mul(&x, &b);
            c = self.square(&b);
            t = self.mul(&t, &c);
            m = i;
        }
        let neg = self.neg(&x);
        Some(if neg < x { neg } else { x })
    }

    /// Whether `a` is a `k`-th power in `F_q^*` (`a ≠ 0`).
    fn is_kth_power(&self, a: &Self::Elem, k: u128) -> bool {
        let g = gcd_u128(k, self.order() - 1);
        self.is_one(&self.pow(a, (self.order() - 1) / g))
    }

    /// All elements in enumeration order. Only sensible for small fields.
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.nth_element(i)))
    }
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
