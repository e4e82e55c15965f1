use super::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial in `x` whose coefficients are polynomials in a parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoly<F: Field> {
    field: F,
    /// Coefficient of `x^i` at index `i`; no trailing zero polynomials.
    c: Vec<Poly<F>>,
}

impl<F: Field> ParamPoly<F> {
    pub fn new(field: &F, mut c: Vec<Poly<F>>) -> Self {
        while c.last().is_some_and(Poly::is_zero) {
            c.pop();
        }
        ParamPoly {
            field: field.clone(),
            c,
        }
    }

    /// `x^d f(1/x + t)` for `f ∈ F[x]`, i.e. `Σ f_i (1 + t x)^i x^(d−i)`.
    pub fn shifted_reversal(f: &Poly<F>, d: usize) -> Self {
        let fd = f.field();
        assert!(f.degree() <= d);
        // (1 + t x)^i has x^k coefficient C(i, k) t^k
        let mut c = vec![Poly::zero(fd); d + 1];
        for i in 0..=f.degree() {
            let fi = f.coeff(i);
            if fd.is_zero(&fi) {
                continue;
            }
            let mut binom = 1u64;
            for k in 0..=i {
                let coef = fd.mul(&fi, &fd.from_i64((binom % fd.characteristic()) as i64));
                let term = Poly::monomial(fd, coef, k);
                c[d - i + k] = &c[d - i + k] + &term;
                binom = binom * (i - k) as u64 / (k + 1) as u64;
            }
        }
        Self::new(fd, c)
    }

    pub fn coeff(&self, i: usize) -> Poly<F> {
        self.c.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn degree_x(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn degree_t(&self) -> usize {
        self.c.iter().map(Poly::degree).max().unwrap_or(0)
    }

    /// The polynomial in `x` obtained by setting `t = t0`.
    pub fn specialize(&self, t0: &F::Elem) -> Poly<F> {
        Poly::new(&self.field, self.c.iter().map(|p| p.eval(t0)).collect())
    }
}

/// `(num/g, den/g)` with `g = gcd(num, den)`, normalized so `den` is monic.
pub fn param_ratio_reduce<F: Field>(num: &Poly<F>, den: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let g = num.gcd(den);
    let (n, d) = (num.quo(&g), den.quo(&g));
    let inv = d.field().inv(&d.lc()).ok_or(Error::DivisionByZero)?;
    Ok((n.scale(&inv), d.scale(&inv)))
}
