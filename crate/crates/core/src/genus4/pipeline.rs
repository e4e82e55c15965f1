use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use super::{algorithm_construction, build_cover, poly_json, CoverCounts, P1};
use crate::arith;
use crate::elliptic::{curves_with_defect, is_compatible, EllipticCurve};
use crate::error::{usage, Result};
use crate::field::Gf;
use crate::genus2::algorithm_genus2;
use crate::oracle;
use crate::poly::Poly;

/// Outputs are re-counted by the fiber oracle up to this `q`.
pub const DEFAULT_VERIFY_GUARD: u64 = 1 << 17;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Stop after this defect level even if `m` is larger.
    pub max_d: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Recorded in the report; every step of the pipeline is deterministic.
    pub seed: u64,
    pub verify_guard: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_d: None,
            time_budget: None,
            seed: 0,
            verify_guard: DEFAULT_VERIFY_GUARD,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Found {
    pub f1: Poly<Gf>,
    pub f2: Poly<Gf>,
    pub a: P1,
    pub genus2_f: Poly<Gf>,
    pub counts: CoverCounts,
    pub defect: i64,
    /// Oracle defect, when `q` is within the verification guard.
    pub verified_defect: Option<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub found: Option<Found>,
    pub d_reached: u64,
    pub genus2_curves_tried: usize,
    pub constructions: usize,
    pub timed_out: bool,
    pub seed: u64,
}

impl PipelineReport {
    pub fn is_success(&self) -> bool {
        self.found.is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "q": self.q,
            "p": self.p,
            "e": self.e,
            "outcome": if self.found.is_some() { "curve" } else { "failure" },
            "d_reached": self.d_reached,
            "tried": {
                "genus2_curves": self.genus2_curves_tried,
                "constructions": self.constructions,
            },
            "seed": self.seed,
        });
        match &self.found {
            Some(f) => {
                let k = f.f1.field();
                v["defect"] = f.defect.into();
                v["defect_verified"] = f.verified_defect.into();
                v["a"] = f.a.to_json(k);
                v["f1"] = poly_json(&f.f1);
                v["f2"] = poly_json(&f.f2);
                v["genus2_f"] = poly_json(&f.genus2_f);
                v["counts"] = serde_json::json!({
                    "C": f.counts.c, "E1": f.counts.e1, "E2": f.counts.e2, "D": f.counts.d,
                });
            }
            None => {
                for key in ["defect", "a", "f1", "f2", "genus2_f", "counts"] {
                    v[key] = serde_json::Value::Null;
                }
                if self.timed_out {
                    v["timed_out"] = true.into();
                }
            }
        }
        v
    }
}

/// Defect counts over a range of runs; failures are tallied separately.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefectHistogram {
    pub by_defect: BTreeMap<i64, usize>,
    pub failures: usize,
}

impl DefectHistogram {
    pub fn add(&mut self, r: &PipelineReport) {
        match &r.found {
            Some(f) => *self.by_defect.entry(f.defect).or_default() += 1,
            None => self.failures += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.by_defect.values().sum::<usize>() + self.failures
    }

    /// One line per defect value: `defect d for n of these q (p%)`.
    pub fn lines(&self) -> Vec<String> {
        let total = self.total().max(1) as f64;
        let mut out: Vec<String> = self
            .by_defect
            .iter()
            .map(|(d, n)| format!("defect {d} for {n} of these q ({:.1}%)", 100.0 * *n as f64 / total))
            .collect();
        if self.failures > 0 {
            out.push(format!(
                "failure for {} of these q ({:.1}%)",
                self.failures,
                100.0 * self.failures as f64 / total
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let by: serde_json::Map<String, serde_json::Value> = self
            .by_defect
            .iter()
            .map(|(d, n)| (d.to_string(), (*n).into()))
            .collect();
        serde_json::json!({ "total": self.total(), "defects": by, "failures": self.failures })
    }
}

/// Sweep `d = 0, 1, …, m`: accumulate the curves of defect `d` (skipping
/// `p | d − m`), build genus-2 curves from them, and look for a double cover
/// whose elliptic quotients also lie in the list.
pub fn algorithm_genus4(q: u64, opts: &PipelineOptions) -> Result<PipelineReport> {
    let Some((p, e)) = arith::prime_power(q) else {
        return usage(format!("{q} is not a prime power"));
    };
    if p == 2 {
        return usage("q must be odd");
    }
    let field = Gf::with_order(q)?;
    let start = Instant::now();
    let m = arith::floor_two_sqrt(q);
    let last = opts.max_d.map_or(m, |x| x.min(m));
    let mut report = PipelineReport {
        q,
        p,
        e,
        found: None,
        d_reached: 0,
        genus2_curves_tried: 0,
        constructions: 0,
        timed_out: false,
        seed: opts.seed,
    };
    let over_budget = || opts.time_budget.is_some_and(|b| start.elapsed() > b);
    let mut l: Vec<EllipticCurve> = Vec::new();
    for d in 0..=last {
        report.d_reached = d;
        let t = d as i64 - m as i64;
        if t % p as i64 == 0 {
            continue;
        }
        l.extend(curves_with_defect(&field, d));
        l.sort();
        if l.is_empty() {
            continue;
        }
        for c in algorithm_genus2(q, &l)? {
            report.genus2_curves_tried += 1;
            for (f1, f2) in c.cubic_splittings()? {
                if over_budget() {
                    report.timed_out = true;
                    return Ok(report);
                }
                let compatible = |f: &Poly<Gf>| -> Result<Vec<EllipticCurve>> {
                    let mut out = Vec::new();
                    for e in &l {
                        if is_compatible(e, f)? {
                            out.push(e.clone());
                        }
                    }
                    Ok(out)
                };
                let (l1, l2) = (compatible(&f1)?, compatible(&f2)?);
                if l1.is_empty() || l2.is_empty() {
                    continue;
                }
                report.constructions += 1;
                let Some(a) = algorithm_construction(q, &f1, &f2, &l1, &l2)?.a else {
                    continue;
                };
                let cover = build_cover(&f1, &f2, a)?;
                let counts = cover.counts();
                let defect = cover.defect();
                let verified_defect = if q <= opts.verify_guard {
                    let n = oracle::oracle_count_g4(&f1, &f2, &a)?;
                    Some(crate::elliptic::defect_of_count(q, 4, n))
                } else {
                    None
                };
                report.found = Some(Found {
                    f1,
                    f2,
                    a,
                    genus2_f: c.poly().clone(),
                    counts,
                    defect,
                    verified_defect,
                });
                return Ok(report);
            }
        }
        if over_budget() {
            report.timed_out = true;
            return Ok(report);
        }
    }
    Ok(report)
}
