//! Imaginary quadratic discriminants: reduced forms, class numbers `h(Δ)`,
//! Kronecker class numbers `H(Δ)`, and the genus-2 counting formulas.

use num_rational::Ratio;
use serde::Serialize;

use crate::arith;
use crate::error::{usage, Result};

/// A positive definite binary quadratic form `ax² + bxy + cy²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        arith::gcd(arith::gcd_i64(self.a, self.b), self.c.unsigned_abs()) == 1
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` if `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }
}

/// `Δ = Δ0·F²` with `Δ0` fundamental and `r` distinct primes dividing `Δ0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discriminant {
    pub delta: i64,
    pub fundamental: i64,
    pub conductor: u64,
    pub r: u32,
}

fn check(delta: i64) -> Result<()> {
    if delta >= 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
        return usage(format!("{delta} is not a negative discriminant (≡ 0, 1 mod 4)"));
    }
    Ok(())
}

impl Discriminant {
    pub fn new(delta: i64) -> Result<Self> {
        check(delta)?;
        let n = delta.unsigned_abs();
        let (mut s, mut k) = (1u64, 1u64);
        for (p, e) in arith::factorize(n) {
            s *= p.pow(e % 2);
            k *= p.pow(e / 2);
        }
        let d = -(s as i64);
        let (fundamental, conductor) = if d.rem_euclid(4) == 1 {
            (d, k)
        } else {
            (4 * d, k / 2)
        };
        let r = arith::factorize(fundamental.unsigned_abs()).len() as u32;
        Ok(Discriminant {
            delta,
            fundamental,
            conductor,
            r,
        })
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor == 1
    }
}

/// All primitive reduced forms of discriminant `Δ`, ordered by `(a, b)`.
pub fn reduced_forms(delta: i64) -> Result<Vec<QuadForm>> {
    check(delta)?;
    let n = delta.unsigned_abs() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in (1 - a)..=a {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    Ok(out)
}

pub fn class_number(delta: i64) -> Result<u64> {
    Ok(reduced_forms(delta)?.len() as u64)
}

/// `H(Δ) = Σ h(Δ/f²)` over `f ≥ 1` with `Δ/f²` a discriminant.
pub fn kronecker_class_number(delta: i64) -> Result<u64> {
    check(delta)?;
    let mut total = 0;
    let mut f = 1i64;
    while f * f <= -delta {
        if delta % (f * f) == 0 && matches!((delta / (f * f)).rem_euclid(4), 0 | 1) {
            total += class_number(delta / (f * f))?;
        }
        f += 1;
    }
    Ok(total)
}

fn fundamental(d0: i64) -> Result<Discriminant> {
    let d = Discriminant::new(d0)?;
    if !d.is_fundamental() {
        return usage(format!("{d0} is not a fundamental discriminant"));
    }
    Ok(d)
}

/// Whether the class group of the fundamental discriminant `Δ0` has exponent
/// greater than 2, i.e. `h(Δ0) ≠ 2^(r−1)`.
pub fn exponent_exceeds_two(d0: i64) -> Result<bool> {
    let d = fundamental(d0)?;
    Ok(class_number(d0)? != 1 << (d.r - 1))
}

/// `N = ⌈−Δ/24⌉ + (h − 1)/2` for `|Δ|` a prime above 3 and `h` odd.
pub fn hayashida_n(delta: i64, h: u64) -> Result<u64> {
    check(delta)?;
    let n = delta.unsigned_abs();
    if n <= 3 || !arith::is_prime(n) {
        return usage(format!("|Δ| = {n} must be a prime greater than 3"));
    }
    if h.is_multiple_of(2) {
        return usage("h must be odd");
    }
    Ok(n.div_ceil(24) + (h - 1) / 2)
}

/// `h(Δ0)·φ(|Δ0|) / (12·2^r)`, as a reduced fraction.
pub fn genus2_lower_bound(d0: i64) -> Result<Ratio<u64>> {
    let d = fundamental(d0)?;
    let n = d0.unsigned_abs();
    if n <= 4 {
        return usage("|Δ0| must exceed 4");
    }
    let h = class_number(d0)?;
    Ok(Ratio::new(h * arith::euler_phi(n), 12 << d.r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-19).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(
            reduced_forms(-23).unwrap(),
            vec![
                QuadForm { a: 1, b: 1, c: 6 },
                QuadForm { a: 2, b: -1, c: 3 },
                QuadForm { a: 2, b: 1, c: 3 }
            ]
        );
        assert_eq!(class_number(-131).unwrap(), 5);
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-5460).unwrap(), 16);
        assert!(class_number(-5).is_err());
        assert!(class_number(12).is_err());
    }

    #[test]
    fn kronecker() {
        assert_eq!(kronecker_class_number(-19).unwrap(), 1);
        assert_eq!(kronecker_class_number(-16).unwrap(), 2);
        // −36: h(−36) + h(−4) = 2 + 1; −9 is not a discriminant
        assert_eq!(kronecker_class_number(-36).unwrap(), 3);
    }

    #[test]
    fn decomposition() {
        let d = Discriminant::new(-16).unwrap();
        assert_eq!((d.fundamental, d.conductor, d.r), (-4, 2, 1));
        let d = Discriminant::new(-5460).unwrap();
        assert_eq!((d.fundamental, d.conductor, d.r), (-5460, 1, 5));
        let d = Discriminant::new(-99).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-11, 3));
        let d = Discriminant::new(-12).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-3, 2));
    }

    #[test]
    fn exponent_test() {
        for d in [-3, -4, -19, -5460] {
            assert!(!exponent_exceeds_two(d).unwrap(), "{d}");
        }
        for d in [-23, -131] {
            assert!(exponent_exceeds_two(d).unwrap(), "{d}");
        }
        assert!(exponent_exceeds_two(-16).is_err());
    }

    #[test]
    fn hayashida() {
        assert_eq!(hayashida_n(-19, 1).unwrap(), 1);
        assert_eq!(hayashida_n(-43, 1).unwrap(), 2);
        assert_eq!(hayashida_n(-131, 5).unwrap(), 8);
        assert!(hayashida_n(-15, 2).is_err());
        assert!(hayashida_n(-3, 1).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(genus2_lower_bound(-19).unwrap(), Ratio::new(3, 4));
        assert_eq!(genus2_lower_bound(-23).unwrap(), Ratio::new(11, 4));
        assert_eq!(genus2_lower_bound(-131).unwrap(), Ratio::new(325, 12));
        assert!(genus2_lower_bound(-4).is_err());
    }

    proptest! {
        #[test]
        fn forms_are_reduced(n in 3i64..20000) {
            let delta = -n;
            prop_assume!(matches!(delta.rem_euclid(4), 0 | 1));
            for f in reduced_forms(delta).unwrap() {
                prop_assert_eq!(f.discriminant(), delta);
                prop_assert!(f.is_reduced());
            }
            let d = Discriminant::new(delta).unwrap();
            prop_assert_eq!(d.fundamental * (d.conductor * d.conductor) as i64, delta);
            prop_assert!(kronecker_class_number(delta).unwrap() >= class_number(delta).unwrap());
        }
    }
}
