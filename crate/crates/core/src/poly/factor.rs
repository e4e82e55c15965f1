//! Square-free, distinct-degree and Cantor–Zassenhaus equal-degree
//! factorization, plus root finding and irreducibility.

use rand::Rng;

use super::Poly;
use crate::field::Field;

/// `x^q mod m`.
fn frobenius_x<F: Field>(m: &Poly<F>) -> Poly<F> {
    Poly::x(m.field()).pow_mod(m.field().order(), m)
}

/// `g^{1/p}` for a polynomial all of whose exponents are multiples of `p`.
fn pth_root<F: Field>(g: &Poly<F>) -> Poly<F> {
    let f = g.field();
    let p = f.characteristic() as usize;
    let e = f.order() / p as u128;
    let c = g
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| f.pow(a, e))
        .collect();
    Poly::new(f, c)
}

/// Square-free decomposition `f = lc · Π g_i^{e_i}` with monic, pairwise
/// coprime, square-free `g_i`. Sorted by multiplicity.
pub fn square_free<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, u32)> {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn sqf_into<F: Field>(f: &Poly<F>, mult: u32, out: &mut Vec<(Poly<F>, u32)>) {
    if f.is_constant() {
        return;
    }
    let p = f.field().characteristic() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.quo(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.quo(&y);
        if !fac.is_one() {
            out.push((fac, i * mult));
        }
        w = y;
        c = c.quo(&w);
        i += 1;
    }
    if !c.is_one() {
        sqf_into(&pth_root(&c), mult * p, out);
    }
}

/// Splits a monic square-free `f` into `(g, d)` with `g` the product of all
/// irreducible factors of degree `d`.
pub fn distinct_degree<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let fd = f.field();
    let x = Poly::x(fd);
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.pow_mod(fd.order(), &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.quo(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let n = rest.degree();
        out.push((rest, n));
    }
    out
}

/// Splits a monic square-free `f` whose irreducible factors all have degree
/// `d` (odd characteristic).
pub fn equal_degree<F: Field, R: Rng + ?Sized>(f: &Poly<F>, d: usize, rng: &mut R) -> Vec<Poly<F>> {
    let n = f.degree();
    if n == d {
        return vec![f.monic()];
    }
    let fd = f.field();
    let q = fd.order();
    let half = (q - 1) / 2;
    let one = Poly::one(fd);
    loop {
        let a = Poly::new(fd, (0..n).map(|_| fd.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        // a^{(q^d−1)/2} = (a · a^q ⋯ a^{q^{d−1}})^{(q−1)/2}
        let mut t = a.clone();
        let mut s = a.clone();
        for _ in 1..d {
            t = t.pow_mod(q, f);
            s = s.mul_mod(&t, f);
        }
        let b = s.pow_mod(half, f);
        let g = f.gcd(&(&b - &one));
        if g.degree() > 0 && g.degree() < n {
            let h = f.quo(&g);
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, sorted
/// by (degree, coefficients). The leading coefficient is not included.
pub fn factor<F: Field, R: Rng + ?Sized>(f: &Poly<F>, rng: &mut R) -> Vec<(Poly<F>, u32)> {
    let mut out = Vec::new();
    for (g, e) in square_free(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort();
    out
}

/// Distinct roots of `f` in its coefficient field, ascending.
pub fn roots<F: Field, R: Rng + ?Sized>(f: &Poly<F>, rng: &mut R) -> Vec<F::Elem> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    if f.degree() == 0 {
        return Vec::new();
    }
    let fd = f.field();
    let m = f.monic();
    let g = m.gcd(&(&frobenius_x(&m) - &Poly::x(fd)));
    if g.degree() == 0 {
        return Vec::new();
    }
    let mut out: Vec<_> = equal_degree(&g, 1, rng)
        .into_iter()
        .map(|l| fd.neg(&l.coeff(0)))
        .collect();
    out.sort();
    out
}

/// One root of a square-free `f` that splits into linear factors, found by
/// random splitting along the smaller factor.
pub fn one_root<F: Field, R: Rng + ?Sized>(f: &Poly<F>, rng: &mut R) -> F::Elem {
    let fd = f.field();
    let mut g = f.monic();
    let half = (fd.order() - 1) / 2;
    let one = Poly::one(fd);
    while g.degree() > 1 {
        let n = g.degree();
        let a = Poly::new(fd, (0..n).map(|_| fd.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let h = g.gcd(&(&a.pow_mod(half, &g) - &one));
        if h.degree() > 0 && h.degree() < n {
            let other = g.quo(&h);
            g = if h.degree() <= other.degree() { h } else { other };
        }
    }
    fd.neg(&g.coeff(0))
}

/// Roots of `f` in an extension `K` of its coefficient field, given the
/// embedding of coefficients.
pub fn roots_in<F: Field, K: Field, R: Rng + ?Sized>(
    f: &Poly<F>,
    target: &K,
    embed: impl Fn(&F::Elem) -> K::Elem,
    rng: &mut R,
) -> Vec<K::Elem> {
    roots(&f.map(target, embed), rng)
}

/// Irreducibility by checking for factors of degree at most `deg f / 2`.
pub fn is_irreducible<F: Field>(f: &Poly<F>) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let fd = f.field();
    let m = f.monic();
    let x = Poly::x(fd);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(fd.order(), &m);
        if !m.gcd(&(&h - &x)).is_one() {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree `n` whose coefficient vector
/// (constant first) is lexicographically smallest.
pub fn smallest_irreducible<F: Field>(field: &F, n: usize) -> Poly<F> {
    assert!(n >= 1);
    if n == 1 {
        return Poly::x(field);
    }
    let q = field.order();
    // digits[0] is the constant coefficient, the most significant position
    let mut digits = vec![0u128; n];
    digits[0] = 1;
    loop {
        let mut c: Vec<_> = digits.iter().map(|&i| field.nth_element(i)).collect();
        c.push(field.one());
        let f = Poly::new(field, c);
        if is_irreducible(&f) {
            return f;
        }
        let mut k = n - 1;
        loop {
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            assert!(k > 0, "irreducible polynomials exist in every degree");
            k -= 1;
        }
    }
}
