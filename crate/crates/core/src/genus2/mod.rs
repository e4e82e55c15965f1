//! Genus-2 curves `y² = f(x)`, `deg f ∈ {5, 6}`.

mod glue;
mod iso;
mod richelot;
mod search;
mod splitting;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::arith;
use crate::error::{usage, Error, Result};
use crate::field::{Embedding, Field, Gf};
use crate::poly::{self, Poly};
use crate::seeded_rng;

pub use glue::glue_along_two_torsion;
pub use richelot::{richelot_neighbors, stable_matchings};
pub use search::algorithm_genus2;

/// Largest `q²` for which `F_{q²}` counts run without `force`.
pub const QSQ_COUNT_GUARD: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Genus2Curve {
    field: Gf,
    f: Poly<Gf>,
}

/// Galois-orbit sizes of the six Weierstrass points, descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitType(pub Vec<usize>);

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `#C(F_q) = q + 1 − s1`, `#C(F_{q²}) = q² + 1 − (s1² − 2·s2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeilData {
    pub s1: i64,
    pub s2: i64,
    pub count1: u64,
    pub count2: u64,
    pub defect: i64,
}

fn count_over(k: &Gf, f: &Poly<Gf>) -> u64 {
    let mut n = match f.degree() {
        5 => 1,
        _ => (1 + k.quadratic_character(&f.lc())) as u64,
    };
    if k.is_prime_field() {
        let p = k.p();
        let c: Vec<u64> = f.coeffs().iter().map(|x| x.coeff(0) as u64).collect();
        for x in 0..p {
            let y = c.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % p);
            n += (1 + k.quadratic_character(&k.from_u64(y))) as u64;
        }
    } else {
        for x in k.elements() {
            n += (1 + k.quadratic_character(&f.eval(&x))) as u64;
        }
    }
    n
}

/// `F_{q²}` as an absolute field together with the embedding of `F_q`.
pub(crate) fn quadratic_extension(f: &Gf) -> Result<(Gf, Embedding)> {
    static CACHE: OnceLock<Mutex<HashMap<Gf, (Gf, Embedding)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("extension cache").get(f) {
        return Ok(hit.clone());
    }
    let k = f.build_extension(2)?;
    let e = f.embedding_into(&k)?;
    cache
        .lock()
        .expect("extension cache")
        .insert(f.clone(), (k.clone(), e.clone()));
    Ok((k, e))
}

impl Genus2Curve {
    pub fn new(f: Poly<Gf>) -> Result<Self> {
        if !matches!(f.deg(), Some(5 | 6)) {
            return usage("genus-2 model needs degree 5 or 6");
        }
        if !f.is_separable() {
            return usage("polynomial is not separable");
        }
        Ok(Genus2Curve {
            field: f.field().clone(),
            f,
        })
    }

    pub fn from_i64s(field: &Gf, c: &[i64]) -> Result<Self> {
        Self::new(Poly::from_i64s(field, c))
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn poly(&self) -> &Poly<Gf> {
        &self.f
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `#C(F_{q^k})` for `k ∈ {1, 2}`; `k = 2` refuses `q² > 2^26` unless
    /// `force` is set.
    pub fn count_points(&self, k: u32, force: bool) -> Result<u64> {
        match k {
            1 => Ok(count_over(&self.field, &self.f)),
            2 => {
                let q = self.q();
                if !force && q.checked_mul(q).is_none_or(|s| s > QSQ_COUNT_GUARD) {
                    return Err(Error::CostGuard(format!(
                        "F_(q^2) count with q = {q} exceeds 2^26 elements"
                    )));
                }
                let (big, emb) = quadratic_extension(&self.field)?;
                Ok(count_over(&big, &self.f.map(&big, |c| emb.apply(c))))
            }
            _ => usage("extension degree must be 1 or 2"),
        }
    }

    pub fn defect(&self) -> i64 {
        crate::elliptic::defect_of_count(self.q(), 2, count_over(&self.field, &self.f))
    }

    pub fn weil_data(&self) -> Result<WeilData> {
        let q = self.q() as i64;
        let n1 = self.count_points(1, false)?;
        let n2 = self.count_points(2, false)?;
        let s1 = q + 1 - n1 as i64;
        let s2 = (n2 as i64 - q * q - 1 + s1 * s1) / 2;
        Ok(WeilData {
            s1,
            s2,
            count1: n1,
            count2: n2,
            defect: self.defect(),
        })
    }

    /// Whether the Weil polynomial is `(x² − tx + q)²`; the `F_{q²}` count is
    /// skipped when the `F_q` count already fails.
    pub fn has_weil_polynomial_square(&self, t: i64) -> Result<bool> {
        let q = self.q() as i64;
        if self.count_points(1, false)? as i64 != q + 1 - 2 * t {
            return Ok(false);
        }
        Ok(self.count_points(2, false)? as i64 == q * q + 1 - 2 * (t * t - 2 * q))
    }

    /// Irreducible factors of `f` with the point at infinity as a rational
    /// Weierstrass point when `deg f = 5`.
    pub fn orbit_type(&self) -> OrbitType {
        let mut v: Vec<usize> = poly::factor(&self.f, &mut seeded_rng(0))
            .iter()
            .map(|(g, _)| g.degree())
            .collect();
        if self.f.degree() == 5 {
            v.push(1);
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        OrbitType(v)
    }

    /// Degree-6 model. A quintic is moved by `x ↦ 1/x + e` with `e` the
    /// smallest element where `f(e) ≠ 0`, giving `x⁶ f(1/x + e)`.
    pub fn to_sextic(&self) -> Result<Genus2Curve> {
        if self.f.degree() == 6 {
            return Ok(self.clone());
        }
        let k = &self.field;
        let e = k
            .elements()
            .find(|e| !k.is_zero(&self.f.eval(e)))
            .ok_or_else(|| usage::<()>("no rational non-Weierstrass point").unwrap_err())?;
        Genus2Curve::new(self.f.shifted_reversal(6, &e))
    }

    /// Unordered splittings `f = f1·f2` into cubics, each emitted as
    /// `(f1, f2)` with `f1` monic and as `(c·f1, f2/c)` for the least
    /// non-residue `c`.
    pub fn cubic_splittings(&self) -> Result<Vec<(Poly<Gf>, Poly<Gf>)>> {
        let sextic = self.to_sextic()?;
        let k = &self.field;
        let lc = sextic.f.lc();
        let factors: Vec<Poly<Gf>> = poly::factor(&sextic.f, &mut seeded_rng(0))
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        let c = k.nonresidue();
        let cinv = k.inv(&c).expect("nonzero");
        let mut out = Vec::new();
        let n = factors.len();
        for mask in 0u32..(1 << n) {
            // the part containing factor 0 is f1, so each splitting appears once
            if mask & 1 == 0 {
                continue;
            }
            let deg: usize = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| factors[i].degree())
                .sum();
            if deg != 3 {
                continue;
            }
            let mut f1 = Poly::one(k);
            let mut f2 = Poly::constant(k, lc);
            for (i, g) in factors.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    f1 = &f1 * g;
                } else {
                    f2 = &f2 * g;
                }
            }
            out.push((f1.clone(), f2.clone()));
            out.push((f1.scale(&c), f2.scale(&cinv)));
        }
        Ok(out)
    }

    /// `F_q`-isomorphism of the two curves (see the `iso` module).
    pub fn is_isomorphic(&self, other: &Genus2Curve) -> bool {
        iso::is_isomorphic(self, other)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field.spec(),
            "f": self.f.coeffs().iter().map(|x| self.field.coefficients(x)).collect::<Vec<_>>(),
        })
    }
}

/// `lcm` of the irreducible factor degrees.
pub(crate) fn splitting_degree(f: &Poly<Gf>) -> usize {
    poly::factor(f, &mut seeded_rng(0))
        .iter()
        .fold(1u64, |acc, (g, _)| arith::lcm(acc, g.degree() as u64)) as usize
}

#[cfg(test)]
mod tests;
