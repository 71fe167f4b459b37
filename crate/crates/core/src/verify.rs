//! The verification suites behind `verify` and the acceptance tests: each
//! runner sweeps one family of identities over its full in-budget parameter
//! range and reports one line per check, exactly (no tolerances anywhere).

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::dickson::{tau_identity_check, TauTable, DEFAULT_TAU_BOUND};
use crate::error::{Error, Result};
use crate::expsum::{
    carlitz_classify, dickson_lift, s3_expected_distribution, s3_value_distribution,
    weil_bound_holds, SumEngine, SumFamily, SumSpec,
};
use crate::field::{make_extension, make_field, Elem, FieldContext, ZERO};
use crate::irrcount::{
    reference_table_check, count_polynomials, elements_of_exact_degree, final_remark_check,
    g_count, h_count, irr_total, known_errata, Prescription, PrescriptionCase,
};
use crate::oracle;
use crate::places::{closed_routes, classify_trace, n_direct, PlaceBudget, TraceClass};

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub elapsed_ms: u128,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn fail_count(&self) -> usize {
        self.lines.iter().filter(|l| !l.pass).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let tag = if l.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {}: {}", l.id, l.detail);
        }
        let _ = writeln!(
            out,
            "suite {}: {}/{} checks passed in {} ms",
            self.suite,
            self.lines.len() - self.fail_count(),
            self.lines.len(),
            self.elapsed_ms
        );
        out
    }
}

struct Suite {
    name: String,
    started: Instant,
    lines: Vec<CheckLine>,
}

impl Suite {
    fn new(name: &str) -> Suite {
        Suite {
            name: name.into(),
            started: Instant::now(),
            lines: Vec::new(),
        }
    }

    fn check(&mut self, id: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            id: id.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.name,
            elapsed_ms: self.started.elapsed().as_millis(),
            lines: self.lines,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Cap on q^m for exhaustive lift-vs-scan comparisons.
    pub lift_cap: u64,
    /// Cap on q^m for attaching the direct scan to d = -1 place counts.
    pub direct_cap: u64,
    /// Cap on q^m for brute polynomial enumeration.
    pub enum_cap: u64,
    pub tau_bound: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            lift_cap: 1 << 20,
            direct_cap: 1 << 20,
            enum_cap: 1 << 20,
            tau_bound: DEFAULT_TAU_BOUND,
        }
    }
}

fn field(p: u32, r: u32) -> FieldContext {
    make_field(p, r, None).expect("built-in field")
}

/// Criterion 1: the S_3 value distributions over F_q^2 match the published
/// rows exactly for q = 4, 8, 16, 32, 64.
pub fn criterion1_distributions(_cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c01-value-distributions");
    for r in 2..=6u32 {
        let f = field(2, r);
        let q = f.q();
        match (s3_value_distribution(&f), s3_expected_distribution(&f)) {
            (Ok(hist), Ok(expect)) => {
                let total: u64 = hist.values().sum();
                s.check(
                    format!("distribution-q{q}"),
                    hist == expect && total == q * q,
                    format!("observed {hist:?}"),
                );
            }
            (h, e) => s.check(
                format!("distribution-q{q}"),
                false,
                format!("evaluation failed: {h:?} {e:?}"),
            ),
        }
    }
    s.finish()
}

/// Criterion 2: the value-set classification of u -> S_3(u, v) and the
/// closed form for S_3(0, v) hold for every v in F_q^*, q = 4, 16, 64.
pub fn criterion2_carlitz(_cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c02-carlitz-classification");
    for r in [2u32, 4, 6] {
        let f = field(2, r);
        let q = f.q();
        // the -2 sqrt(q) row has multiplicity (q-1)(q-2 sqrt q)/24, which
        // vanishes exactly at q = 4; only then can attainment fail
        let attainment_required = q > 4;
        let mut all = true;
        let mut bad = String::new();
        for vi in 1..q {
            let rec = carlitz_classify(&f, f.from_index(vi)).expect("classification scope");
            let ok = rec.holds() && (!attainment_required || rec.all_attained());
            if !ok {
                all = false;
                let _ = write!(bad, " v={vi}:{rec:?}");
            }
        }
        s.check(
            format!("carlitz-q{q}"),
            all,
            if all {
                format!("{} values of v classified", q - 1)
            } else {
                format!("mismatches:{bad}")
            },
        );
    }
    s.finish()
}

/// Criterion 3: the Dickson lift equals the defining sum for every (u, v) in
/// scope (v != 0 for d = 3; u, v != 0 for d = -1), for q = 2, 3, 4, 8, 9 and
/// every m with q^m within the cap.
pub fn criterion3_lifts(cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c03-dickson-lifts");
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
        let f = field(p, r);
        let q = f.q();
        let families: &[SumFamily] = if p == 2 {
            &[SumFamily::Kloosterman, SumFamily::Cubic]
        } else {
            &[SumFamily::Kloosterman]
        };
        for &fam in families {
            let mut m = 1u32;
            let mut pairs_checked = 0u64;
            let mut ok = true;
            let mut detail = String::new();
            while q.pow(m) <= cfg.lift_cap {
                let ext = match make_extension(&f, m, None) {
                    Ok(e) => e,
                    Err(_) => break, // degree beyond the built-in modulus table
                };
                let engine = SumEngine::new(&ext, fam);
                for ui in 0..q {
                    for vi in 1..q {
                        if fam == SumFamily::Kloosterman && ui == 0 {
                            continue;
                        }
                        let spec =
                            SumSpec::new(&ext, fam, f.from_index(ui), f.from_index(vi)).unwrap();
                        let lift = dickson_lift(&spec).unwrap();
                        let direct = BigInt::from(engine.s_level_m(ui as usize, vi as usize));
                        if lift != direct {
                            ok = false;
                            let _ = write!(detail, " m={m} u={ui} v={vi}: {lift} vs {direct};");
                        }
                        pairs_checked += 1;
                    }
                }
                m += 1;
            }
            s.check(
                format!("lift-q{q}-d{}", fam.d()),
                ok,
                if ok {
                    format!("{pairs_checked} (m,u,v) triples, m up to {}", m - 1)
                } else {
                    detail
                },
            );
        }
    }
    s.finish()
}

/// Criterion 4: d = 3 closed forms equal the direct scan for q = 4, 8, 16,
/// m = 1..6, with beta covering every trace/cube class.
pub fn criterion4_places_cubic(_cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c04-places-cubic");
    for r in [2u32, 3, 4] {
        let f = field(2, r);
        let q = f.q();
        for m in 1..=6u32 {
            let ext = make_extension(&f, m, None).expect("modulus table covers r*m <= 24");
            let engine = SumEngine::new(&ext, SumFamily::Cubic);
            let mut reps: Vec<(&str, Elem)> = vec![("trace-zero", ZERO)];
            if r % 2 == 1 {
                reps.push(("trace-nonzero", f.one()));
            } else {
                reps.push(("cube-class", f.one()));
                reps.push(("noncube-class", f.gamma()));
            }
            for (label, c) in reps {
                let class = classify_trace(&f, c, SumFamily::Cubic).unwrap();
                let closed = crate::places::n_cubic_closed(2, r, m, class).unwrap();
                let direct = engine.n_place(f.index_of(c) as usize);
                s.check(
                    format!("n-cubic-q{q}-m{m}-{label}"),
                    closed == direct,
                    format!("closed {closed} direct {direct}"),
                );
            }
        }
    }
    s.finish()
}

/// Criterion 5: d = -1 place counts: every closed route (prime-field form,
/// class-number form, small-degree rows) agrees mutually for q = 2, 3, 4, 8,
/// 9 and m = 1..10, and agrees with the direct scan when q^m is in budget.
pub fn criterion5_places_kloosterman(cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c05-places-kloosterman");
    // q = 16 and 27 are beyond the stated q list but in scope for the
    // class-number cross-validation; the direct cap trims their range.
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let f = field(p, r);
        let q = f.q();
        for m in 1..=10u32 {
            for class in [TraceClass::Zero, TraceClass::Nonzero] {
                let routes = closed_routes(p, r, m, SumFamily::Kloosterman, class).unwrap();
                let mut vals: Vec<(String, BigInt)> = routes;
                if q.pow(m) <= cfg.direct_cap && r * m <= 24 {
                    let ext = make_extension(&f, m, None).unwrap();
                    let beta = match class {
                        TraceClass::Zero => ZERO,
                        // any beta with tr(beta) = 1 represents the class
                        _ => ext.solve_trace_one(),
                    };
                    let v = n_direct(
                        &ext,
                        SumFamily::Kloosterman,
                        beta,
                        &PlaceBudget {
                            direct_elems: cfg.direct_cap,
                        },
                    )
                    .unwrap();
                    vals.push(("direct".into(), v));
                }
                let agree = vals.windows(2).all(|w| w[0].1 == w[1].1);
                let methods: Vec<&str> = vals.iter().map(|(t, _)| t.as_str()).collect();
                s.check(
                    format!("n-kloosterman-q{q}-m{m}-{class:?}"),
                    agree,
                    if agree {
                        format!("{} routes agree: {}", vals.len(), methods.join(", "))
                    } else {
                        format!("{vals:?}")
                    },
                );
            }
        }
    }
    s.finish()
}

/// Criterion 6: the tau difference identity, exactly, for p = 2 (r = 2..13)
/// and p = 3 (r = 2..8).
pub fn criterion6_tau(cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c06-tau-identity");
    let table = TauTable::new(cfg.tau_bound);
    for (p, rmax) in [(2u32, 13u32), (3, 8)] {
        for r in 2..=rmax {
            match tau_identity_check(p, r, &table) {
                Ok(pass) => s.check(
                    format!("tau-p{p}-r{r}"),
                    pass,
                    format!("q = {}", (p as u64).pow(r)),
                ),
                Err(e) => s.check(format!("tau-p{p}-r{r}"), false, e.to_string()),
            }
        }
    }
    s.finish()
}

/// Criterion 7 (d = -1 half): every printed G_{0,-1} and G_{c,-1} row for
/// m <= 10 equals the pipeline, for q = 2, 3, 4, 8, 9, 16, 27. The one
/// known misprint is still reported as a failure here, with its analysis.
pub fn criterion7_fixtures_kloosterman(_cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c07a-fixtures-kloosterman");
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let f = field(p, r);
        let q = f.q();
        for (label, c) in [("c0", ZERO), ("cnz", f.gamma())] {
            let checks =
                reference_table_check(&f, c, SumFamily::Kloosterman, 1..=10).unwrap();
            for ck in checks {
                let id = format!("fixture-dm1-q{q}-{label}-m{}", ck.m);
                if ck.pass {
                    s.check(id, true, format!("G = {}", ck.pipeline));
                } else {
                    s.check(
                        id,
                        false,
                        format!(
                            "printed {} but pipeline gives {} (known misprint: every computed \
                             route, including the element scan, gives the pipeline value)",
                            ck.printed, ck.pipeline
                        ),
                    );
                }
            }
        }
    }
    s.finish()
}

/// Criterion 7 (d = 3 half): every printed G_{c,3} row for m <= 30 equals
/// the pipeline, for q = 2, 4, 8, 16, all class columns.
pub fn criterion7_fixtures_cubic(_cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c07b-fixtures-cubic");
    for r in [1u32, 2, 3, 4] {
        let f = field(2, r);
        let q = f.q();
        let mut cols: Vec<(&str, Elem)> = vec![("c0", ZERO)];
        if r % 2 == 1 {
            cols.push(("cnz", f.one()));
        } else {
            cols.push(("cube", f.one()));
            cols.push(("noncube", f.gamma()));
        }
        for (label, c) in cols {
            let checks = reference_table_check(&f, c, SumFamily::Cubic, 1..=30).unwrap();
            for ck in checks {
                s.check(
                    format!("fixture-d3-q{q}-{label}-m{}", ck.m),
                    ck.pass,
                    if ck.pass {
                        format!("G = {}", ck.pipeline)
                    } else {
                        format!("printed {} pipeline {}", ck.printed, ck.pipeline)
                    },
                );
            }
        }
    }
    s.finish()
}

/// Criterion 8: the pipeline counts equal brute enumeration for every
/// (q, m, case, c) with q^m within the enumeration cap.
pub fn criterion8_oracle_equivalence(cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c08-oracle-equivalence");
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let f = field(p, r);
        let q = f.q();
        let mut m = 2u32;
        while q.pow(m) <= cfg.enum_cap {
            let prof = oracle::irreducible_profile(&f, m, cfg.enum_cap).unwrap();
            // total count sanity against the Moebius formula
            s.check(
                format!("enum-total-q{q}-m{m}"),
                BigInt::from(prof.total) == irr_total(q, m).unwrap(),
                format!("{} irreducibles", prof.total),
            );
            let mut cases: Vec<(PrescriptionCase, &Vec<u64>)> = vec![
                (PrescriptionCase::CaseII, &prof.by_low),
                (PrescriptionCase::CaseIIVariant, &prof.by_ratio),
            ];
            if p == 2 && m >= 3 {
                cases.push((PrescriptionCase::CaseI, &prof.by_high));
            }
            for (case, buckets) in cases {
                let mut ok = true;
                let mut bad = String::new();
                for ci in 0..q {
                    let rec = count_polynomials(
                        &f,
                        &Prescription {
                            case,
                            c: f.from_index(ci),
                            m,
                        },
                    )
                    .unwrap();
                    if rec.count != BigInt::from(buckets[ci as usize]) {
                        ok = false;
                        let _ = write!(
                            bad,
                            " c={ci}: pipeline {} brute {};",
                            rec.count, buckets[ci as usize]
                        );
                    }
                }
                s.check(
                    format!("oracle-q{q}-m{m}-{case:?}"),
                    ok,
                    if ok {
                        format!("all {} coefficient values agree", q)
                    } else {
                        bad
                    },
                );
            }
            m += 1;
        }
    }
    s.finish()
}

/// Criterion 9: structural properties over deterministic sweeps: m | G,
/// sum_c H = q^(m-1), trace transitivity, character multiplicativity, Weil
/// bounds, and the re-aggregation (inverse Moebius) identity.
pub fn criterion9_properties(cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c09-structural-properties");

    // m | G and the H partition, across every supported base field.
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let f = field(p, r);
        let q = f.q();
        let families: &[SumFamily] = if p == 2 {
            &[SumFamily::Kloosterman, SumFamily::Cubic]
        } else {
            &[SumFamily::Kloosterman]
        };
        for &fam in families {
            let mut div_ok = true;
            let mut part_ok = true;
            for m in 1..=12u32 {
                let mut h_total = BigInt::zero();
                for ci in 0..q {
                    let c = f.from_index(ci);
                    let g = g_count(&f, m, c, fam).unwrap();
                    if (&g % BigInt::from(m)) != BigInt::zero() {
                        div_ok = false;
                    }
                    h_total += h_count(&f, m, c, fam).unwrap();
                }
                if h_total != BigInt::from(q).pow(m - 1) {
                    part_ok = false;
                }
            }
            s.check(
                format!("orbit-divisibility-q{q}-d{}", fam.d()),
                div_ok,
                "m divides G for m = 1..12, all c",
            );
            s.check(
                format!("h-partition-q{q}-d{}", fam.d()),
                part_ok,
                "sum_c H = q^(m-1) for m = 1..12",
            );
        }
    }

    // Re-aggregation: H(m) = sum over n | m of [p | m/n] I(n) + [p coprime] G(n).
    for (p, r) in [(2u32, 1u32), (3, 1), (2, 2)] {
        let f = field(p, r);
        let q = f.q();
        let families: &[SumFamily] = if p == 2 {
            &[SumFamily::Kloosterman, SumFamily::Cubic]
        } else {
            &[SumFamily::Kloosterman]
        };
        for &fam in families {
            let mut ok = true;
            for m in 1..=12u32 {
                let mut acc = BigInt::zero();
                for n in crate::num::divisors(m as u64) {
                    let n = n as u32;
                    if (m / n) % p == 0 {
                        acc += elements_of_exact_degree(q, n);
                    } else {
                        acc += g_count(&f, n, ZERO, fam).unwrap();
                    }
                }
                if acc != h_count(&f, m, ZERO, fam).unwrap() {
                    ok = false;
                }
            }
            s.check(
                format!("sieve-reaggregation-q{q}-d{}", fam.d()),
                ok,
                "divisor sums rebuild H from G for m = 1..12",
            );
        }
    }

    // Trace transitivity and character multiplicativity, exhaustive on
    // small extensions.
    let mut trace_ok = true;
    let mut char_ok = true;
    for (p, r, m) in [(2u32, 1u32, 4u32), (2, 2, 2), (3, 1, 3), (3, 2, 1)] {
        let f = field(p, r);
        let ext = make_extension(&f, m, None).unwrap();
        for zi in 0..ext.order() {
            let z = ext.from_index(zi);
            if ext.absolute_trace(z) != f.abs_trace(ext.relative_trace(z)) {
                trace_ok = false;
            }
            let w = ext.from_index((zi * 7 + 3) % ext.order());
            if ext.char_e(ext.add(z, w)) != ext.char_e(z).mul(&ext.char_e(w)) {
                char_ok = false;
            }
        }
    }
    s.check("trace-transitivity", trace_ok, "Tr = tr_base after tr, exhaustive");
    s.check("character-multiplicativity", char_ok, "e(x+y) = e(x)e(y), exhaustive");

    // Weil bounds on every in-scope sum at a sample of levels.
    let mut weil_ok = true;
    for (p, r, m) in [(2u32, 1u32, 6u32), (2, 2, 3), (3, 1, 5), (3, 2, 2), (2, 3, 2)] {
        let f = field(p, r);
        let ext = make_extension(&f, m, None).unwrap();
        let q = f.q();
        let families: &[SumFamily] = if p == 2 {
            &[SumFamily::Kloosterman, SumFamily::Cubic]
        } else {
            &[SumFamily::Kloosterman]
        };
        for &fam in families {
            let engine = SumEngine::new(&ext, fam);
            for ui in 0..q {
                for vi in 1..q {
                    if fam == SumFamily::Kloosterman && ui == 0 {
                        continue;
                    }
                    let v = BigInt::from(engine.s_level_m(ui as usize, vi as usize));
                    if !weil_bound_holds(&v, q, m) {
                        weil_ok = false;
                    }
                }
            }
        }
    }
    s.check("weil-bounds", weil_ok, "S^2 <= 4 q^m on all in-scope (u,v)");

    // Place-count magnitude bound |N - q^m - 1| <= 2(q-1) q^(m/2 + 1).
    let mut bound_ok = true;
    for (p, r) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let f = field(p, r);
        let q = f.q();
        for m in 1..=8u32 {
            if q.pow(m) > cfg.direct_cap || r * m > 24 {
                break;
            }
            for class in [TraceClass::Zero, TraceClass::Nonzero] {
                for (_, n) in closed_routes(p, r, m, SumFamily::Kloosterman, class).unwrap() {
                    let dev = n - BigInt::from(q).pow(m) - 1;
                    let dev2 = &dev * &dev;
                    let cap = BigInt::from(4) * BigInt::from((q - 1) * (q - 1))
                        * BigInt::from(q).pow(m + 2);
                    if dev2 > cap {
                        bound_ok = false;
                    }
                }
            }
        }
    }
    s.check(
        "place-count-magnitude",
        bound_ok,
        "|N - q^m - 1| <= 2(q-1) q^(m/2+1)",
    );

    s.finish()
}

/// Criterion 10: G_{c,3}(4s) = q^(4s-2) - q^2 for r odd, c != 0, s an odd
/// prime, q = 2 and 8, s = 3, 5, 7.
pub fn criterion10_final_remark(_cfg: &VerifyConfig) -> SuiteReport {
    let mut s = Suite::new("c10-final-remark");
    for r in [1u32, 3] {
        let f = field(2, r);
        let q = f.q();
        for sp in [3u32, 5, 7] {
            match final_remark_check(&f, sp, f.one()) {
                Ok(pass) => s.check(
                    format!("final-remark-q{q}-s{sp}"),
                    pass,
                    format!("m = {}", 4 * sp),
                ),
                Err(e) => s.check(format!("final-remark-q{q}-s{sp}"), false, e.to_string()),
            }
        }
    }
    s.finish()
}

/// Run a named suite (the CLI vocabulary) and return its reports.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let reports = match name {
        "distributions" => vec![criterion1_distributions(cfg), criterion2_carlitz(cfg)],
        "places" => vec![
            criterion3_lifts(cfg),
            criterion4_places_cubic(cfg),
            criterion5_places_kloosterman(cfg),
            criterion9_properties(cfg),
            criterion10_final_remark(cfg),
        ],
        "tau" => vec![criterion6_tau(cfg)],
        "fixtures-dm1" => vec![criterion7_fixtures_kloosterman(cfg)],
        "fixtures-d3" => vec![criterion7_fixtures_cubic(cfg)],
        "oracle-equivalence" => vec![criterion8_oracle_equivalence(cfg)],
        "all" => {
            let mut v = vec![
                criterion1_distributions(cfg),
                criterion2_carlitz(cfg),
                criterion3_lifts(cfg),
                criterion4_places_cubic(cfg),
                criterion5_places_kloosterman(cfg),
                criterion6_tau(cfg),
                criterion7_fixtures_kloosterman(cfg),
                criterion7_fixtures_cubic(cfg),
                criterion8_oracle_equivalence(cfg),
            ];
            v.push(criterion9_properties(cfg));
            v.push(criterion10_final_remark(cfg));
            v
        }
        _ => {
            return Err(Error::Parse(format!(
                "unknown suite {name:?}; expected one of fixtures-d3, fixtures-dm1, \
                 distributions, tau, places, oracle-equivalence, all"
            )))
        }
    };
    Ok(reports)
}

/// The expected-failure list for the fixture suites: printed cells that every
/// computed route contradicts. Exposed so reporting layers can annotate.
pub fn expected_fixture_failures() -> Vec<String> {
    known_errata()
        .iter()
        .flat_map(|(table, m)| {
            // the char-3 column is exercised at q = 3, 9, 27
            [3u64, 9, 27]
                .into_iter()
                .map(move |q| format!("fixture-dm1-q{q}-c0-m{m} ({table:?})"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_vocabulary() {
        assert!(run_suite("bogus", &VerifyConfig::default()).is_err());
    }
}
