//! `irrpoly`: exact counting of monic irreducible polynomials over F_{2^r}
//! and F_{3^r} with two prescribed coefficients, plus the exponential-sum,
//! place-count, and verification machinery behind the counts.
//!
//! Everything is exact integer/rational arithmetic with no randomness, so
//! output is byte-deterministic for a fixed command line. Exit codes:
//! 0 success, 2 crosscheck mismatch or bad data, 3 out-of-scope request,
//! 4 budget exceeded.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use irrpoly_core::error::Error;
use irrpoly_core::expsum::{s3_value_distribution, s_sum, SumEngine, SumFamily, SumSpec};
use irrpoly_core::field::{
    format_digits, make_extension, make_field, parse_digits, Elem, ExtContext, FieldContext,
};
use irrpoly_core::irrcount::{
    count_polynomials, g_count, CountRecord, Prescription, PrescriptionCase,
};
use irrpoly_core::oracle;
use irrpoly_core::places::{n_direct, resolve, PlaceBudget};
use irrpoly_core::verify::{run_suite, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "irrpoly",
    about = "Exact prescribed-coefficient irreducible polynomial counts over F_{2^r} and F_{3^r}",
    long_about = "Counts monic irreducible polynomials with two prescribed coefficients by \
                  exact closed forms (exponential sums, Dickson lifts, Kronecker class numbers, \
                  Moebius inversion), cross-checked against brute-force enumeration. \
                  All arithmetic is exact and seedless; runs are byte-deterministic. \
                  Field elements are written as comma-separated F_p digits, ascending by basis \
                  power (e.g. \"0,1\" for the class of x in F_4)."
)]
struct Cli {
    /// Worker threads for the partitionable scans (default: all cores;
    /// also via IRRPOLY_WORKERS). Results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic, 2 or 3.
    #[arg(long)]
    p: u32,
    /// Extension degree of the base field over F_p.
    #[arg(long)]
    r: u32,
    /// Modulus file: one polynomial per line as comma-separated F_p digits;
    /// the first line of matching degree overrides the built-in modulus.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn base(&self) -> Result<FieldContext, Error> {
        make_field(self.p, self.r, self.modulus_of_degree(self.r)?)
    }

    fn extension(&self, m: u32) -> Result<ExtContext, Error> {
        let base = self.base()?;
        make_extension(&base, m, self.modulus_of_degree(self.r * m)?)
    }

    fn modulus_of_degree(&self, deg: u32) -> Result<Option<Vec<u8>>, Error> {
        let Some(path) = &self.modulus else {
            return Ok(None);
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let digits = parse_digits(self.p, line)?;
            if digits.len() == deg as usize + 1 {
                return Ok(Some(digits));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Count irreducible polynomials with two prescribed coefficients.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        /// Degree of the polynomials.
        #[arg(long)]
        m: u32,
        /// Which prescription: i (a_{m-1}=0, a_{m-3}=c, char 2),
        /// ii (a_{m-1}=c, a_1=0), or ii-variant (a_{m-1}=0, a_1/a_0=c).
        #[arg(long, value_name = "i|ii|ii-variant")]
        case: String,
        /// Prescribed coefficient c as F_p digits, e.g. "1" or "0,1".
        #[arg(long, default_value = "0")]
        c: String,
        /// auto = closed pipeline with table crosschecks; moebius = pipeline
        /// only; closed = reference-table row; brute = exhaustive enumeration.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Enumeration budget (max q^m) for --method brute.
        #[arg(long, default_value_t = 1 << 22)]
        enum_budget: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Shorthand for --format json.
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Shorthand for --format csv.
        #[arg(long)]
        csv: bool,
    },
    /// Rational place counts N_{m,d}(beta) with crosschecked methods.
    Places {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: u32,
        /// Sum family exponent: -1 or 3.
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// beta as F_p digits in the level-m extension (default 0).
        #[arg(long, default_value = "0")]
        beta: String,
        /// auto = closed + direct crosscheck in budget; direct = scan only;
        /// closed = closed forms only.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Direct-scan budget (max q^m elements).
        #[arg(long, default_value_t = 1 << 24)]
        direct_budget: u64,
    },
    /// Evaluate one exponential sum S_d^(m)(u, v), or the level-one value
    /// distribution of S_3 over F_q^2.
    Expsum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value = "0")]
        u: String,
        #[arg(long, default_value = "0")]
        v: String,
        /// Emit the exhaustive S_3(u,v) histogram over F_q^2 as CSV instead.
        #[arg(long)]
        distribution: bool,
    },
    /// Brute-force count (same surface as `count`, forced enumeration).
    Brute {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, value_name = "i|ii|ii-variant")]
        case: String,
        #[arg(long, default_value = "0")]
        c: String,
        #[arg(long, default_value_t = 1 << 22)]
        enum_budget: u64,
    },
    /// Regenerate a reference G table numerically: rows (m, class, G, count).
    Table {
        /// Which table: g-c3, g-0m1, or g-cm1.
        which: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Degree range, e.g. 1..30 (inclusive).
        #[arg(long, default_value = "1..10")]
        m: String,
    },
    /// Run a verification suite: fixtures-d3, fixtures-dm1, distributions,
    /// tau, places, oracle-equivalence, or all.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Cap on q^m for exhaustive lift and direct-scan comparisons.
        #[arg(long, default_value_t = 1 << 20)]
        direct_budget: u64,
        /// Cap on q^m for brute polynomial enumeration.
        #[arg(long, default_value_t = 1 << 20)]
        enum_budget: u64,
        /// Tau series bound (covers p = 2 up to r = 13 by default).
        #[arg(long, default_value_t = 8192)]
        tau_bound: usize,
    },
    /// Describe a field context: modulus, generator, embedding data.
    FieldInspect {
        #[command(flatten)]
        field: FieldArgs,
        /// Also build the level-m extension and show its data.
        #[arg(long)]
        m: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(3);
        }
        std::env::set_var("IRRPOLY_WORKERS", w.to_string());
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Count {
            field,
            m,
            case,
            c,
            method,
            enum_budget,
            format,
            json,
            csv,
        } => {
            let format = if json {
                OutputFormat::Json
            } else if csv {
                OutputFormat::Csv
            } else {
                format
            };
            cmd_count(&field, m, &case, &c, &method, enum_budget, format)
        }
        Command::Brute {
            field,
            m,
            case,
            c,
            enum_budget,
        } => cmd_count(&field, m, &case, &c, "brute", enum_budget, OutputFormat::Json),
        Command::Places {
            field,
            m,
            d,
            beta,
            method,
            direct_budget,
        } => cmd_places(&field, m, d, &beta, &method, direct_budget),
        Command::Expsum {
            field,
            m,
            d,
            u,
            v,
            distribution,
        } => cmd_expsum(&field, m, d, &u, &v, distribution),
        Command::Table { which, field, m } => cmd_table(&which, &field, &m),
        Command::Verify {
            suite,
            format,
            direct_budget,
            enum_budget,
            tau_bound,
        } => cmd_verify(&suite, format, direct_budget, enum_budget, tau_bound),
        Command::FieldInspect { field, m } => cmd_field_inspect(&field, m),
    }
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let out = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization: {e}")))?;
    println!("{out}");
    Ok(())
}

fn cmd_count(
    field: &FieldArgs,
    m: u32,
    case: &str,
    c: &str,
    method: &str,
    enum_budget: u64,
    format: OutputFormat,
) -> Result<(), Error> {
    let base = field.base()?;
    let case = PrescriptionCase::parse(case)?;
    let c = base.parse_elem(c)?;
    let prescription = Prescription { case, c, m };

    let record: CountRecord = match method {
        "auto" | "moebius" | "closed" => {
            let mut rec = count_polynomials(&base, &prescription)?;
            if method == "closed" {
                // surface the table row as the primary value when asked
                if let Some(cc) = rec.crosschecks.first() {
                    rec.method = cc.method.clone();
                }
            }
            rec
        }
        "brute" => brute_record(&base, &prescription, enum_budget)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown method {other:?}; expected auto, closed, moebius, or brute"
            )))
        }
    };

    // auto additionally cross-checks against brute enumeration when cheap
    if method == "auto" && base.q().checked_pow(m).is_some_and(|n| n <= enum_budget.min(1 << 18)) {
        let brute = brute_record(&base, &prescription, enum_budget)?;
        if brute.count != record.count {
            return Err(Error::CrosscheckMismatch(format!(
                "pipeline count {} but enumeration gives {}",
                record.count, brute.count
            )));
        }
    }

    match format {
        OutputFormat::Json => emit_json(&record),
        OutputFormat::Csv => {
            println!("p,r,m,case,c,G,count,method");
            println!(
                "{},{},{},{},{},{},{},{}",
                record.p, record.r, record.m, record.case, record.c, record.g, record.count,
                record.method
            );
            Ok(())
        }
        OutputFormat::Text => {
            println!(
                "q = {}^{} m = {} case {} c = [{}]: {} polynomials (G = {}, {})",
                record.p, record.r, record.m, record.case, record.c, record.count, record.g,
                record.method
            );
            Ok(())
        }
    }
}

fn brute_record(
    base: &FieldContext,
    prescription: &Prescription,
    budget: u64,
) -> Result<CountRecord, Error> {
    prescription.validate(base)?;
    let m = prescription.m as usize;
    let c = prescription.c;
    let count = match prescription.case {
        PrescriptionCase::CaseI => oracle::enumerate_and_count(base, prescription.m, budget, |f| {
            f[m - 1] == base.zero() && f[m - 3] == c
        })?,
        PrescriptionCase::CaseII => oracle::enumerate_and_count(base, prescription.m, budget, |f| {
            f[m - 1] == c && f[1] == base.zero()
        })?,
        PrescriptionCase::CaseIIVariant => {
            oracle::enumerate_and_count(base, prescription.m, budget, |f| {
                f[m - 1] == base.zero() && base.mul(f[1], base.inv_or_zero(f[0])) == c
            })?
        }
    };
    Ok(CountRecord {
        p: base.p(),
        r: base.r(),
        m: prescription.m,
        case: prescription.case,
        c: base.format_elem(c),
        g: &count * BigInt::from(prescription.m),
        count,
        method: "brute".into(),
        crosschecks: Vec::new(),
    })
}

fn cmd_places(
    field: &FieldArgs,
    m: u32,
    d: i64,
    beta: &str,
    method: &str,
    direct_budget: u64,
) -> Result<(), Error> {
    let family = SumFamily::from_d(d)?;
    let ext = field.extension(m)?;
    let beta = ext.parse_elem(beta)?;
    let budget = PlaceBudget {
        direct_elems: direct_budget,
    };
    match method {
        "auto" => {
            let result = resolve(&ext, family, beta, &budget)?;
            emit_json(&result)
        }
        "direct" => {
            let v = n_direct(&ext, family, beta, &budget)?;
            emit_json(&serde_json::json!({
                "p": ext.base().p(), "r": ext.base().r(), "m": m, "d": d,
                "beta": ext.format_elem(beta),
                "value": v.to_string(), "method": "direct",
            }))
        }
        "closed" => {
            let result = resolve(
                &ext,
                family,
                beta,
                &PlaceBudget { direct_elems: 0 },
            )?;
            emit_json(&result)
        }
        other => Err(Error::Parse(format!(
            "unknown method {other:?}; expected auto, direct, or closed"
        ))),
    }
}

fn cmd_expsum(
    field: &FieldArgs,
    m: u32,
    d: i64,
    u: &str,
    v: &str,
    distribution: bool,
) -> Result<(), Error> {
    let family = SumFamily::from_d(d)?;
    if distribution {
        if family != SumFamily::Cubic {
            return Err(Error::OutOfScope(
                "the value distribution is for the cubic family (d = 3)".into(),
            ));
        }
        let base = field.base()?;
        let hist = s3_value_distribution(&base)?;
        println!("value,count");
        for (value, count) in hist {
            println!("{value},{count}");
        }
        return Ok(());
    }
    let ext = field.extension(m)?;
    let base = ext.base();
    let u = base.parse_elem(u)?;
    let v = base.parse_elem(v)?;
    let spec = SumSpec::new(&ext, family, u, v)?;
    let value = if ext.order() <= 1 << 24 {
        s_sum(&spec)?
    } else {
        // large level: reduce through the scan engine buckets
        let engine = SumEngine::new(&ext, family);
        BigInt::from(engine.s_level_m(
            base.index_of(u) as usize,
            base.index_of(v) as usize,
        ))
    };
    emit_json(&serde_json::json!({
        "p": base.p(), "r": base.r(), "m": m, "d": d,
        "u": base.format_elem(u), "v": base.format_elem(v),
        "value": value.to_string(),
    }))
}

fn cmd_table(which: &str, field: &FieldArgs, m_range: &str) -> Result<(), Error> {
    let base = field.base()?;
    let (lo, hi) = parse_range(m_range)?;
    let (family, columns): (SumFamily, Vec<(&str, Elem)>) = match which {
        "g-0m1" => (SumFamily::Kloosterman, vec![("c=0", base.zero())]),
        "g-cm1" => (SumFamily::Kloosterman, vec![("c!=0", base.gamma())]),
        "g-c3" => {
            if base.p() != 2 {
                return Err(Error::OutOfScope("g-c3 needs characteristic 2".into()));
            }
            let mut cols = vec![("c=0", base.zero())];
            if base.r() % 2 == 0 {
                cols.push(("c-cube", base.one()));
                cols.push(("c-noncube", base.gamma()));
            } else {
                cols.push(("c!=0", base.one()));
            }
            (SumFamily::Cubic, cols)
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown table {other:?}; expected g-c3, g-0m1, or g-cm1"
            )))
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "m,class,G,count").ok();
    for (label, c) in columns {
        for m in lo..=hi {
            let g = g_count(&base, m, c, family)?;
            let count = &g / BigInt::from(m);
            writeln!(out, "{m},{label},{g},{count}").ok();
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(u32, u32), Error> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        let hi: u32 = b
            .trim_start_matches('=')
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        Ok((lo, hi))
    } else {
        let v: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        Ok((v, v))
    }
}

fn cmd_verify(
    suite: &str,
    format: OutputFormat,
    direct_budget: u64,
    enum_budget: u64,
    tau_bound: usize,
) -> Result<(), Error> {
    let cfg = VerifyConfig {
        lift_cap: direct_budget,
        direct_cap: direct_budget,
        enum_cap: enum_budget,
        tau_bound,
    };
    let reports = run_suite(suite, &cfg)?;
    let all_pass = reports.iter().all(|r| r.passed());
    match format {
        OutputFormat::Json => emit_json(&reports)?,
        _ => {
            for r in &reports {
                print!("{}", r.render_text());
            }
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(Error::CrosscheckMismatch(
            "one or more verification checks failed (see report)".into(),
        ))
    }
}

fn cmd_field_inspect(field: &FieldArgs, m: Option<u32>) -> Result<(), Error> {
    let base = field.base()?;
    let mut doc = serde_json::json!({
        "p": base.p(),
        "r": base.r(),
        "q": base.q().to_string(),
        "modulus": format_digits(base.modulus()),
        "gamma": base.format_elem(base.gamma()),
    });
    if let Some(m) = m {
        let ext = field.extension(m)?;
        doc["extension"] = serde_json::json!({
            "m": m,
            "order": ext.order().to_string(),
            "ambient_modulus": format_digits(ext.ambient_modulus()),
            "embedding_of_x": ext.format_elem(ext.embed_generator()),
            "generator": ext.format_elem(ext.generator()),
            "trace_one_element": ext.format_elem(ext.solve_trace_one()),
        });
    }
    emit_json(&doc)
}
