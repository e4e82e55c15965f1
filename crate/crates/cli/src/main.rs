//! `lowdefect`: search for genus-4 curves with small defect and run the
//! supporting computations from the command line.
//!
//! Exit codes: 0 success, 2 "failure" outcome (no curve found, or a
//! verification suite failed), 1 error.

use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use lowdefect::classgroup;
use lowdefect::elliptic::{trace_table, EllipticCurve};
use lowdefect::genus2::{algorithm_genus2, glue_along_two_torsion, richelot_neighbors, Genus2Curve};
use lowdefect::genus4::{algorithm_genus4, build_cover, DefectHistogram, PipelineOptions, PipelineReport, P1};
use lowdefect::oracle::{oracle_count_g4, FIBER_MAX_Q};
use lowdefect::{arith, suites, Field, Fq, Gf, Poly};

#[derive(Parser)]
#[command(name = "lowdefect", version, about = "Genus-4 curves over F_q with small defect")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
    Pretty,
}

#[derive(clap::Args)]
struct PipelineArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this defect level.
    #[arg(long)]
    max_d: Option<u64>,
    /// Wall-clock budget per q, in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    /// Re-count outputs with the fiber oracle up to this q.
    #[arg(long, default_value_t = lowdefect::genus4::DEFAULT_VERIFY_GUARD)]
    verify_guard: u64,
}

impl PipelineArgs {
    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            max_d: self.max_d,
            time_budget: self.time_budget.map(Duration::from_secs_f64),
            seed: self.seed,
            verify_guard: self.verify_guard,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the genus-4 search for one q.
    Find {
        q: u64,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Run the search for every odd prime power in [lo, hi] and summarize.
    Scan {
        lo: u64,
        hi: u64,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// One record per isomorphism class of elliptic curves over F_q.
    Tabulate {
        q: u64,
        /// Only classes with this defect.
        #[arg(long)]
        defect: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Run an acceptance suite (A1..A13, a suite name, or `all`).
    Verify {
        suite: String,
        /// Reduced sample sizes.
        #[arg(long)]
        fast: bool,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// h(Δ): primitive reduced forms of discriminant Δ < 0.
    ClassNumber {
        #[arg(allow_hyphen_values = true)]
        delta: i64,
    },
    /// H(Δ) = Σ h(Δ/f²).
    Kronecker {
        #[arg(allow_hyphen_values = true)]
        delta: i64,
    },
    /// Whether the class group of a fundamental Δ0 has exponent > 2.
    ExponentTest {
        #[arg(allow_hyphen_values = true)]
        d0: i64,
    },
    /// Point counts of a curve given by coefficients (constant first).
    CountPoints {
        #[command(subcommand)]
        kind: CountKind,
    },
    /// Genus-2 curves glued from two elliptic curves along their 2-torsion.
    Glue {
        #[arg(long)]
        q: u64,
        /// Cubic of the first curve, `c0,c1,c2,c3`.
        #[arg(long, allow_hyphen_values = true)]
        e1: String,
        #[arg(long, allow_hyphen_values = true)]
        e2: String,
    },
    /// Richelot neighbors of a genus-2 curve.
    Richelot {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Algorithm genus-2 on the elliptic curves of one trace or defect.
    Genus2Search {
        q: u64,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "defect")]
        trace: Option<i64>,
        #[arg(long)]
        defect: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CountKind {
    /// y² = c0 + c1 x + c2 x² + c3 x³.
    Elliptic {
        #[arg(long)]
        q: u64,
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// y² = f(x), deg f ∈ {5, 6}.
    Genus2 {
        #[arg(long)]
        q: u64,
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        /// Allow the F_(q²) count above 2^26 elements.
        #[arg(long)]
        force: bool,
    },
    /// The cover w² = (x − a)·f1, y² = f1·f2 (a = `inf` for the point at infinity).
    Genus4 {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

fn field(q: u64) -> Result<Gf> {
    match arith::prime_power(q) {
        Some((p, _)) if p != 2 => Ok(Gf::with_order(q)?),
        Some(_) => bail!("q = {q} is even; only odd characteristic is supported"),
        None => bail!("q = {q} is not a prime power"),
    }
}

/// An integer (prime fields, may be negative) or `c0:c1:…` coordinates.
fn element(k: &Gf, s: &str) -> Result<Fq> {
    let s = s.trim();
    if s.contains(':') {
        let c: Vec<u64> = s
            .split(':')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("bad element {s}"))?;
        return Ok(k.elem(&c)?);
    }
    let n: i64 = s.parse().with_context(|| format!("bad element {s}"))?;
    Ok(k.from_i64(n))
}

fn poly(k: &Gf, s: &str) -> Result<Poly<Gf>> {
    let c = s.split(',').map(|t| element(k, t)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(k, c))
}

fn elliptic(k: &Gf, s: &str) -> Result<EllipticCurve> {
    Ok(EllipticCurve::from_cubic(&poly(k, s)?)?)
}

fn out(line: impl std::fmt::Display) {
    let mut o = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(o, "{line}");
}

/// Coordinates in the `c0:c1:…` input syntax; a plain integer for prime fields.
fn colon(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(":")
}

const CSV_HEADER: &str = "q,p,e,outcome,defect,defect_verified,a,d_reached,genus2_curves,constructions,seed";

fn csv_row(r: &PipelineReport) -> String {
    let j = r.to_json();
    let field = |k: &str| match &j[k] {
        serde_json::Value::Null => String::new(),
        v => v.to_string().trim_matches('"').to_string(),
    };
    let a = match &r.found {
        Some(f) => match f.a {
            P1::Finite(x) => colon(&f.f1.field().coefficients(&x)),
            P1::Infinity => "inf".into(),
        },
        None => String::new(),
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.q,
        r.p,
        r.e,
        field("outcome"),
        field("defect"),
        field("defect_verified"),
        a,
        r.d_reached,
        r.genus2_curves_tried,
        r.constructions,
        r.seed
    )
}

fn pretty(r: &PipelineReport) -> String {
    match &r.found {
        Some(f) => format!(
            "q = {}: defect {} (verified {}) at a = {}, #C = {}, #E1 = {}, #E2 = {}, #D = {}",
            r.q,
            f.defect,
            f.verified_defect.map_or("-".into(), |d| d.to_string()),
            f.a,
            f.counts.c,
            f.counts.e1,
            f.counts.e2,
            f.counts.d
        ),
        None => format!("q = {}: failure after d = {}", r.q, r.d_reached),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Find { q, pipeline, format } => {
            field(q)?;
            let r = algorithm_genus4(q, &pipeline.options())?;
            match format {
                Format::Jsonl => out(r.to_json()),
                Format::Csv => {
                    out(CSV_HEADER);
                    out(csv_row(&r));
                }
                Format::Pretty => out(pretty(&r)),
            }
            Ok(if r.is_success() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Cmd::Scan { lo, hi, pipeline, format } => {
            if lo > hi {
                bail!("empty range [{lo}, {hi}]");
            }
            let opts = pipeline.options();
            let mut hist = DefectHistogram::default();
            if format == Format::Csv {
                out(CSV_HEADER);
            }
            for q in arith::odd_prime_powers(lo, hi) {
                let r = algorithm_genus4(q, &opts)?;
                hist.add(&r);
                match format {
                    Format::Jsonl => out(r.to_json()),
                    Format::Csv => out(csv_row(&r)),
                    Format::Pretty => out(pretty(&r)),
                }
            }
            match format {
                Format::Jsonl => out(serde_json::json!({ "summary": hist.to_json() })),
                _ => {
                    for l in hist.lines() {
                        out(format!("# {l}"));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tabulate { q, defect, format } => {
            let k = field(q)?;
            let table = trace_table(&k);
            if format == Format::Csv {
                out("j,cubic,trace,count,defect");
            }
            for (e, _) in table.entries() {
                let rec = e.trace_record();
                if defect.is_some_and(|d| rec.defect != d as i64) {
                    continue;
                }
                match format {
                    Format::Csv => {
                        let cubic: Vec<String> = e.coeffs().iter().map(|c| colon(&k.coefficients(c))).collect();
                        let j = colon(&k.coefficients(&e.j_invariant()));
                        out(format!("{j},{},{},{},{}", cubic.join(" "), rec.trace, rec.count, rec.defect));
                    }
                    _ => {
                        let mut v = rec.to_json();
                        v["j"] = k.coefficients(&e.j_invariant()).into();
                        out(v);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite, fast, format } => {
            let outcomes = if suite == "all" {
                suites::run_all(fast)?
            } else {
                vec![suites::run(&suite, fast)?]
            };
            for o in &outcomes {
                match format {
                    Format::Pretty => out(o.line()),
                    _ => out(o.to_json()),
                }
            }
            let ok = outcomes.iter().all(|o| o.passed);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Cmd::ClassNumber { delta } => {
            out(classgroup::class_number(delta)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Kronecker { delta } => {
            out(classgroup::kronecker_class_number(delta)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ExponentTest { d0 } => {
            out(classgroup::exponent_exceeds_two(d0)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CountPoints { kind } => {
            match kind {
                CountKind::Elliptic { q, coeffs } => {
                    let k = field(q)?;
                    out(elliptic(&k, &coeffs)?.trace_record().to_json());
                }
                CountKind::Genus2 { q, coeffs, force } => {
                    let k = field(q)?;
                    let c = Genus2Curve::new(poly(&k, &coeffs)?)?;
                    let mut v = c.to_json();
                    v["count1"] = c.count_points(1, false)?.into();
                    v["count2"] = c.count_points(2, force)?.into();
                    v["defect"] = c.defect().into();
                    v["orbit_type"] = c.orbit_type().to_string().into();
                    out(v);
                }
                CountKind::Genus4 { q, f1, f2, a } => {
                    let k = field(q)?;
                    let (f1, f2) = (poly(&k, &f1)?, poly(&k, &f2)?);
                    let a = if a == "inf" { P1::Infinity } else { P1::Finite(element(&k, &a)?) };
                    let d = build_cover(&f1, &f2, a)?;
                    let n = d.counts();
                    let mut v = serde_json::json!({
                        "q": q,
                        "a": a.to_json(&k),
                        "counts": { "C": n.c, "E1": n.e1, "E2": n.e2, "D": n.d },
                        "defect": d.defect(),
                    });
                    if q <= FIBER_MAX_Q {
                        v["oracle_count"] = oracle_count_g4(&f1, &f2, &a)?.into();
                    }
                    out(v);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Glue { q, e1, e2 } => {
            let k = field(q)?;
            for c in glue_along_two_torsion(&elliptic(&k, &e1)?, &elliptic(&k, &e2)?)? {
                out(c.to_json());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Richelot { q, f } => {
            let k = field(q)?;
            for c in richelot_neighbors(&Genus2Curve::new(poly(&k, &f)?)?)? {
                out(c.to_json());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Genus2Search { q, trace, defect } => {
            let k = field(q)?;
            let table = trace_table(&k);
            let l = match (trace, defect) {
                (Some(t), _) => table.with_trace(t),
                (None, Some(d)) => table.with_defect(d),
                (None, None) => bail!("give --trace or --defect"),
            };
            for c in algorithm_genus2(q, &l)? {
                let mut v = c.to_json();
                v["count1"] = c.count_points(1, false)?.into();
                v["orbit_type"] = c.orbit_type().to_string().into();
                out(v);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // clap's own exit code 2 would read as a "failure" outcome
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
