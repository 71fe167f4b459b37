//! Counting irreducible polynomials with two prescribed coefficients.
//!
//! The pipeline: a place count N gives the number H_{c,d}(m) of field
//! elements with tr(z) = 0 and tr(z^d) = c; Moebius inversion over the
//! divisor lattice refines H to the count G_{c,d}(m) of such elements of
//! degree exactly m; and G/m counts the irreducible polynomials whose
//! coefficient prescriptions encode those trace conditions:
//!
//!   case (i)  (p = 2, m >= 3):  a_{m-1} = 0, a_{m-3} = c  <->  d = 3
//!   case (ii) (m >= 2):         a_{m-1} = c, a_1 = 0      <->  d = -1
//!   variant   (m >= 2):         a_{m-1} = 0, a_1/a_0 = c  <->  d = -1
//!
//! The frozen reference tables for G (degrees up to 10 for d = -1, up to 30
//! for d = 3) are kept as exact row formulas and checked against the
//! pipeline row by row.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::dickson::NamedSeq;
use crate::error::{Error, Result};
use crate::expsum::SumFamily;
use crate::field::{Elem, FieldContext, ZERO};
use crate::num::{divisors, exact_div, moebius, rat_to_int, BigRat};
use crate::places::{
    classify_trace, closed_routes,
};

/// I(m) = sum_{t | m} mu(t) q^(m/t): the number of elements of F_{q^m} of
/// degree exactly m over F_q.
pub fn elements_of_exact_degree(q: u64, m: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for t in divisors(m as u64) {
        let mu = moebius(t);
        if mu != 0 {
            acc += BigInt::from(mu) * BigInt::from(q).pow(m / t as u32);
        }
    }
    acc
}

/// The number of monic irreducible polynomials of degree m over F_q,
/// I(m)/m; the division is always exact.
pub fn irr_total(q: u64, m: u32) -> Result<BigInt> {
    exact_div(
        &elements_of_exact_degree(q, m),
        &BigInt::from(m),
        "irreducible total",
    )
}

fn epsilon(family: SumFamily, c_is_zero: bool, q: u64) -> BigInt {
    match family {
        SumFamily::Cubic => BigInt::zero(),
        SumFamily::Kloosterman => {
            if c_is_zero {
                BigInt::from(q - 1) * BigInt::from(q - 1)
            } else {
                BigInt::from(1) - BigInt::from(q)
            }
        }
    }
}

/// Closed-route N_{m,d}(beta) for beta = -alpha c, tr(alpha) = 1: the count
/// depends only on the trace class of -c, which for p = 2 is the class of c
/// itself and for p = 3 (d = -1 only) is just "nonzero".
fn n_for_c(base: &FieldContext, m: u32, c: Elem, family: SumFamily) -> Result<BigInt> {
    let minus_c = base.neg(c);
    let class = classify_trace(base, minus_c, family)?;
    let routes = closed_routes(base.p(), base.r(), m, family, class)?;
    let (_, value) = &routes[0];
    // every other applicable closed route must agree
    for (tag, v) in routes.iter().skip(1) {
        if v != value {
            return Err(Error::CrosscheckMismatch(format!(
                "closed routes disagree at p={} r={} m={m} d={} c-class {:?}: {} vs {} ({tag})",
                base.p(),
                base.r(),
                family.d(),
                class,
                value,
                v
            )));
        }
    }
    Ok(value.clone())
}

/// H_{c,d}(m) = #{z in F_{q^m} : tr z = 0, tr z^d = c}
///            = (N_{m,d}(-alpha c) - 1 + eps)/q^2.
pub fn h_count(base: &FieldContext, m: u32, c: Elem, family: SumFamily) -> Result<BigInt> {
    family.check_char(base.p())?;
    let q = base.q();
    let n = n_for_c(base, m, c, family)?;
    let eps = epsilon(family, c == ZERO, q);
    exact_div(
        &(n - 1 + eps),
        &(BigInt::from(q) * BigInt::from(q)),
        "H count",
    )
}

/// G_{c,d}(m) = #{z of degree exactly m : tr z = 0, tr z^d = c}, by Moebius
/// inversion over the odd part of m. Writing m = p^k s with p coprime to s:
///
///   c = 0:  G = sum_{t | s} mu(s/t) H_{0,d}(p^k t) - sum_{i<k} I(p^i s)
///   c != 0: G = sum_{t | s} mu(s/t) H_{c,d}(p^k t)
pub fn g_count(base: &FieldContext, m: u32, c: Elem, family: SumFamily) -> Result<BigInt> {
    family.check_char(base.p())?;
    if m == 0 {
        return Err(Error::OutOfScope("degree m must be positive".into()));
    }
    let p = base.p();
    let mut k = 0u32;
    let mut s = m;
    while s % p == 0 {
        s /= p;
        k += 1;
    }
    let mut acc = BigInt::zero();
    for t in divisors(s as u64) {
        let mu = moebius(s as u64 / t);
        if mu != 0 {
            let level = p.pow(k) * t as u32;
            acc += BigInt::from(mu) * h_count(base, level, c, family)?;
        }
    }
    if c == ZERO {
        for i in 0..k {
            acc -= elements_of_exact_degree(base.q(), p.pow(i) * s);
        }
    }
    Ok(acc)
}

/// Which coefficient prescription is being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrescriptionCase {
    /// a_{m-1} = 0 and a_{m-3} = c (characteristic 2, m >= 3).
    #[serde(rename = "i")]
    CaseI,
    /// a_{m-1} = c and a_1 = 0 (m >= 2).
    #[serde(rename = "ii")]
    CaseII,
    /// a_{m-1} = 0 and a_1/a_0 = c (m >= 2).
    #[serde(rename = "ii-variant")]
    CaseIIVariant,
}

impl std::fmt::Display for PrescriptionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PrescriptionCase::CaseI => "i",
            PrescriptionCase::CaseII => "ii",
            PrescriptionCase::CaseIIVariant => "ii-variant",
        })
    }
}

impl PrescriptionCase {
    pub fn family(self) -> SumFamily {
        match self {
            PrescriptionCase::CaseI => SumFamily::Cubic,
            _ => SumFamily::Kloosterman,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(PrescriptionCase::CaseI),
            "ii" => Ok(PrescriptionCase::CaseII),
            "ii-variant" => Ok(PrescriptionCase::CaseIIVariant),
            _ => Err(Error::Parse(format!("unknown case {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Prescription {
    pub case: PrescriptionCase,
    pub c: Elem,
    pub m: u32,
}

impl Prescription {
    pub fn validate(&self, base: &FieldContext) -> Result<()> {
        match self.case {
            PrescriptionCase::CaseI => {
                if base.p() != 2 {
                    return Err(Error::OutOfScope(
                        "case (i) requires characteristic 2".into(),
                    ));
                }
                if self.m < 3 {
                    return Err(Error::OutOfScope(
                        "case (i) needs m >= 3 for a_{m-3} to be a free coefficient".into(),
                    ));
                }
            }
            PrescriptionCase::CaseII | PrescriptionCase::CaseIIVariant => {
                if self.m < 2 {
                    return Err(Error::OutOfScope(
                        "case (ii) needs m >= 2; for m = 1 the prescribed slots collide".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Result of one polynomial-counting query.
#[derive(Debug, Serialize)]
pub struct CountRecord {
    pub p: u32,
    pub r: u32,
    pub m: u32,
    pub case: PrescriptionCase,
    pub c: String,
    #[serde(rename = "G", serialize_with = "crate::ser::bigint_as_string")]
    pub g: BigInt,
    #[serde(serialize_with = "crate::ser::bigint_as_string")]
    pub count: BigInt,
    pub method: String,
    pub crosschecks: Vec<crate::places::CrossCheck>,
}

/// Count the monic irreducible degree-m polynomials matching a prescription:
/// G_{c,d}(m)/m with d picked by the case. The reference-table value (when
/// the degree is covered) is attached as a crosscheck.
pub fn count_polynomials(
    base: &FieldContext,
    prescription: &Prescription,
) -> Result<CountRecord> {
    prescription.validate(base)?;
    let family = prescription.case.family();
    let g = g_count(base, prescription.m, prescription.c, family)?;
    if g.is_negative() {
        return Err(Error::CrosscheckMismatch(format!(
            "negative element count G = {g}"
        )));
    }
    let count = exact_div(&g, &BigInt::from(prescription.m), "orbit count")?;
    let mut crosschecks = Vec::new();
    if let Some(table) = FixtureTable::covering(base, prescription.c, family) {
        if prescription.m <= table.max_degree() {
            let printed = table.row_value(base, prescription.m)?;
            crosschecks.push(crate::places::CrossCheck {
                method: format!("table-{}", table.cli_name()),
                value: printed.clone(),
            });
            if printed != g {
                return Err(Error::CrosscheckMismatch(format!(
                    "pipeline G = {g} but the reference table row gives {printed} \
                     (p={} r={} m={} case {:?})",
                    base.p(),
                    base.r(),
                    prescription.m,
                    prescription.case
                )));
            }
        }
    }
    Ok(CountRecord {
        p: base.p(),
        r: base.r(),
        m: prescription.m,
        case: prescription.case,
        c: base.format_elem(prescription.c),
        g,
        count,
        method: "moebius".into(),
        crosschecks,
    })
}

// ---------------------------------------------------------------------------
// Frozen reference tables.
// ---------------------------------------------------------------------------

/// Exact evaluation environment for one (q, r): the row formulas below are
/// transcribed literally from the reference tables, with
/// `pm` = (-1)^r, `mp` = -(-1)^r, and for the even-r cubic table
/// `pms` = (-1)^(r/2), `mps` = -(-1)^(r/2).
struct RowEnv {
    p: u32,
    r: u32,
    q: BigRat,
}

impl RowEnv {
    fn new(base: &FieldContext) -> RowEnv {
        RowEnv {
            p: base.p(),
            r: base.r(),
            q: BigRat::from_integer(BigInt::from(base.q())),
        }
    }

    fn q(&self) -> BigRat {
        self.q.clone()
    }
    fn qp(&self, k: u32) -> BigRat {
        let mut acc = BigRat::one();
        for _ in 0..k {
            acc *= &self.q;
        }
        acc
    }
    /// q^(j/2), integral because these rows only apply for even r.
    fn qh(&self, j: u32) -> BigRat {
        assert!(self.r * j % 2 == 0);
        BigRat::from_integer(BigInt::from(self.p).pow(self.r * j / 2))
    }
    fn one(&self) -> BigRat {
        BigRat::one()
    }
    fn int(&self, k: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(k))
    }
    fn pm(&self) -> BigRat {
        self.int(if self.r % 2 == 0 { 1 } else { -1 })
    }
    fn mp(&self) -> BigRat {
        -self.pm()
    }
    fn pms(&self) -> BigRat {
        self.int(if (self.r / 2) % 2 == 0 { 1 } else { -1 })
    }
    fn mps(&self) -> BigRat {
        -self.pms()
    }
    fn t7(&self) -> BigRat {
        NamedSeq::T7.value(self.r)
    }
    fn t9(&self) -> BigRat {
        NamedSeq::T9.value(self.r)
    }
    fn t11(&self) -> BigRat {
        NamedSeq::T11.value(self.r)
    }
    fn u9(&self) -> BigRat {
        NamedSeq::U9.value(self.r)
    }
    fn u11(&self) -> BigRat {
        NamedSeq::U11.value(self.r)
    }
    fn tau2(&self) -> BigRat {
        NamedSeq::Tau2.value(self.r)
    }
    fn tau3(&self) -> BigRat {
        NamedSeq::Tau3.value(self.r)
    }
}

type RowFn = fn(&RowEnv) -> BigRat;

/// G_{0,-1}(m), q = 2^r, m = 1..=10.
const G0_KLOOSTERMAN_CHAR2: [RowFn; 10] = [
    |e| e.one(),
    |_| BigRat::zero(),
    |e| (e.one() + e.pm()) * (e.q() - e.one()),
    |_| BigRat::zero(),
    |e| e.qp(3) + (e.t7() + e.mp()) * e.q() * (e.q() - e.one()) - e.one(),
    |e| (e.q() - e.one()) * (e.qp(3) + e.pm() * e.q()),
    |e| e.qp(5) + e.qp(2) * (e.q() - e.one()) * (e.t9() - e.t7() + e.one()) - e.one(),
    |e| e.qp(6) - e.qp(4) + (e.one() + e.mp()) * e.qp(2) * (e.q() - e.one()),
    |e| {
        e.qp(7) + (e.q() - e.one()) * (e.qp(3) * (e.t11() - e.t9() - e.one()) - e.one() + e.mp())
            - e.one()
    },
    |e| e.qp(8) - e.qp(5) - e.qp(4) + e.qp(3) + (e.q() - e.one()) * e.tau2(),
];

/// G_{0,-1}(m), q = 3^r, m = 1..=10, exactly as printed. The m = 1 entry is
/// 0 on the page; every computed route (pipeline, element scan, and the
/// 2^r column of the same table) gives 1, so that single cell is treated as
/// a misprint by the fixture checker, which reports it rather than patching.
const G0_KLOOSTERMAN_CHAR3: [RowFn; 10] = [
    |_| BigRat::zero(),
    |e| e.q() - e.one(),
    |_| BigRat::zero(),
    |e| e.qp(2) - e.one(),
    |e| e.qp(3) + e.pm() * e.q() * (e.q() - e.one()) - e.one(),
    |e| e.q() * (e.q() - e.one()) * (e.qp(2) + e.q() - e.one() + e.pm()),
    |e| e.qp(5) + e.qp(2) * (e.q() - e.one()) * (e.u9() + e.mp()) - e.one(),
    |e| e.qp(6) + e.qp(3) - e.int(2) * e.qp(2) - e.q() + e.one(),
    |e| e.qp(7) + e.qp(3) * (e.q() - e.one()) * (e.u11() - e.u9()) - e.qp(3),
    |e| {
        e.qp(8) - e.qp(4) - (e.q() - e.one()) * (e.pm() * e.q() + e.one())
            + (e.q() - e.one()) * e.tau3()
    },
];

/// G_{c,-1}(m) for c != 0, q = 2^r, m = 1..=10.
const GC_KLOOSTERMAN_CHAR2: [RowFn; 10] = [
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.q() + e.mp(),
    |e| e.qp(2),
    |e| e.qp(3) - e.q() * (e.t7() + e.mp()),
    |e| e.qp(4) + e.mp() * e.q(),
    |e| e.qp(5) - e.qp(2) * (e.t9() - e.t7() + e.one()),
    |e| e.qp(6) + (-e.one() + e.pm()) * e.qp(2),
    |e| e.qp(7) - e.qp(3) * (e.t11() - e.t9() - e.one()) - e.q() + e.pm(),
    |e| e.qp(8) + e.qp(3) - e.tau2(),
];

/// G_{c,-1}(m) for c != 0, q = 3^r, m = 1..=10.
const GC_KLOOSTERMAN_CHAR3: [RowFn; 10] = [
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.q(),
    |e| e.qp(2) - e.one(),
    |e| e.qp(3) + e.mp() * e.q(),
    |e| e.qp(4) + e.mp() * e.q(),
    |e| e.qp(5) - e.qp(2) * (e.u9() + e.mp()),
    |e| e.qp(6) - e.int(2) * e.qp(2) + e.one(),
    |e| e.qp(7) - e.qp(3) * (e.u11() - e.u9()),
    |e| e.qp(8) + e.pm() * e.q() - e.tau3(),
];

/// G_{c,3}(m), q = 2^r with r even, c = 0, m = 1..=30.
const GC3_EVEN_R_C0: [RowFn; 30] = [
    |e| e.one(),
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.qp(3) + e.qp(2) - e.q() - e.one(),
    |e| e.qp(4) - e.int(2) * e.qp(3) + e.qp(2),
    |e| e.qp(5) + e.qp(3) - e.qp(2) - e.one(),
    |e| e.qp(6) - e.qp(4),
    |e| e.qp(7) - e.qp(4) + e.qp(3) - e.one(),
    |e| e.qp(8) - e.qp(4),
    |e| e.qp(9) + e.qp(5) - e.qp(4) - e.one(),
    |e| e.qp(10) - e.int(3) * e.qp(6) + e.int(2) * e.qp(5),
    |e| e.qp(11) + e.qp(6) - e.qp(5) - e.one(),
    |e| e.qp(12) - e.qp(6),
    |e| e.qp(13) - e.qp(7) + e.qp(6) - e.qp(3) - e.qp(2) + e.q(),
    |e| e.qp(14) - e.qp(8),
    |e| e.qp(15) + e.qp(8) - e.qp(7) - e.one(),
    |e| e.qp(16) - e.int(2) * e.qp(9) + e.qp(8) - e.qp(4) + e.int(2) * e.qp(3) - e.qp(2),
    |e| e.qp(17) + e.qp(9) - e.qp(8) - e.one(),
    |e| e.qp(18) - e.qp(10),
    |e| e.qp(19) - e.qp(10) + e.qp(9) - e.qp(5) - e.qp(3) + e.qp(2),
    |e| e.qp(20) - e.qp(10),
    |e| e.qp(21) + e.qp(11) - e.qp(10) - e.one(),
    |e| e.qp(22) - e.int(3) * e.qp(12) + e.int(2) * e.qp(11) - e.qp(6) + e.qp(4),
    |e| e.qp(23) + e.qp(12) - e.qp(11) - e.qp(3) - e.qp(2) + e.q(),
    |e| e.qp(24) - e.qp(12),
    |e| e.qp(25) - e.qp(13) + e.qp(12) - e.qp(7) + e.qp(4) - e.qp(3),
    |e| e.qp(26) - e.qp(14),
    |e| e.qp(27) + e.qp(14) - e.qp(13) - e.one(),
    |e| e.qp(28) - e.int(2) * e.qp(15) + e.qp(14) - e.qp(8) + e.int(2) * e.qp(3) - e.qp(2),
];

/// G_{c,3}(m), q = 2^r with r odd, c = 0, m = 1..=30.
const GC3_ODD_R_C0: [RowFn; 30] = [
    |e| e.one(),
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.qp(3) - e.qp(2) + e.q() - e.one(),
    |e| e.qp(4) - e.qp(2),
    |e| e.qp(5) + e.qp(3) - e.qp(2) - e.one(),
    |e| e.qp(6) - e.int(3) * e.qp(4) + e.int(2) * e.qp(3),
    |e| e.qp(7) + e.qp(4) - e.qp(3) - e.one(),
    |e| e.qp(8) - e.qp(4),
    |e| e.qp(9) - e.qp(5) + e.qp(4) - e.one(),
    |e| e.qp(10) - e.qp(6),
    |e| e.qp(11) - e.qp(6) + e.qp(5) - e.one(),
    |e| e.qp(12) - e.qp(6),
    |e| e.qp(13) + e.qp(7) - e.qp(6) - e.qp(3) + e.qp(2) - e.q(),
    |e| e.qp(14) - e.int(3) * e.qp(8) + e.int(2) * e.qp(7),
    |e| e.qp(15) + e.qp(8) - e.qp(7) - e.one(),
    |e| e.qp(16) - e.qp(8) - e.qp(4) + e.qp(2),
    |e| e.qp(17) - e.qp(9) + e.qp(8) - e.one(),
    |e| e.qp(18) - e.qp(10),
    |e| e.qp(19) - e.qp(10) + e.qp(9) - e.qp(5) - e.qp(3) + e.qp(2),
    |e| e.qp(20) - e.qp(10),
    |e| e.qp(21) + e.qp(11) - e.qp(10) - e.one(),
    |e| {
        e.qp(22) - e.int(3) * e.qp(12) + e.int(2) * e.qp(11) - e.qp(6) + e.int(3) * e.qp(4)
            - e.int(2) * e.qp(3)
    },
    |e| e.qp(23) + e.qp(12) - e.qp(11) - e.qp(3) + e.qp(2) - e.q(),
    |e| e.qp(24) - e.qp(12),
    |e| e.qp(25) - e.qp(13) + e.qp(12) - e.qp(7) - e.qp(4) + e.qp(3),
    |e| e.qp(26) - e.qp(14),
    |e| e.qp(27) - e.qp(14) + e.qp(13) - e.one(),
    |e| e.qp(28) - e.qp(14) - e.qp(8) + e.qp(2),
];

/// G_{c,3}(m), q = 2^r with r odd, c != 0, m = 1..=30.
const GC3_ODD_R_CNZ: [RowFn; 30] = [
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.q() + e.one(),
    |e| e.qp(2),
    |e| e.qp(3) + e.q(),
    |e| e.qp(4) - e.qp(2),
    |e| e.qp(5) - e.qp(2),
    |e| e.qp(6) + e.int(2) * e.qp(3),
    |e| e.qp(7) - e.qp(3) - e.q() - e.one(),
    |e| e.qp(8) - e.qp(4),
    |e| e.qp(9) + e.qp(4),
    |e| e.qp(10) - e.qp(2),
    |e| e.qp(11) + e.qp(5),
    |e| e.qp(12) - e.qp(6),
    |e| e.qp(13) - e.qp(6) - e.qp(3) - e.int(2) * e.q() - e.one(),
    |e| e.qp(14) + e.int(2) * e.qp(7),
    |e| e.qp(15) - e.qp(7),
    |e| e.qp(16) - e.qp(8) - e.qp(4) + e.qp(2),
    |e| e.qp(17) + e.qp(8),
    |e| e.qp(18) - e.qp(2),
    |e| e.qp(19) + e.qp(9) - e.qp(5) + e.qp(2) - e.q() - e.one(),
    |e| e.qp(20) - e.qp(10),
    |e| e.qp(21) - e.qp(10),
    |e| e.qp(22) + e.int(2) * e.qp(11) - e.qp(6) - e.int(2) * e.qp(3),
    |e| e.qp(23) - e.qp(11) - e.qp(3) - e.q(),
    |e| e.qp(24) - e.qp(12),
    |e| e.qp(25) + e.qp(12) - e.qp(7) + e.qp(3),
    |e| e.qp(26) - e.qp(2),
    |e| e.qp(27) + e.qp(13),
    |e| e.qp(28) - e.qp(14) - e.qp(8) + e.qp(2),
];

/// G_{c,3}(m), q = 2^r with r even, c != 0 a cube, m = 1..=30.
const GC3_EVEN_R_CUBE: [RowFn; 30] = [
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.q() + e.mps() * e.int(2) * e.qh(1) + e.one(),
    |e| e.qp(2) + e.pms() * e.int(2) * e.qh(3),
    |e| e.qp(3) - e.q(),
    |e| e.qp(4) + e.mps() * e.int(2) * e.qh(5) + e.qp(2),
    |e| e.qp(5) - e.qp(2),
    |e| e.qp(6) + e.pms() * e.int(2) * e.qh(7),
    |e| {
        e.qp(7) + e.mps() * e.int(2) * e.qh(7) + e.qp(3) - e.q() + e.pms() * e.int(2) * e.qh(1)
            - e.one()
    },
    |e| e.qp(8) - e.qp(4),
    |e| e.qp(9) - e.qp(4),
    |e| e.qp(10) + e.int(2) * e.qp(5) - e.qp(2) + e.mps() * e.int(2) * e.qh(3),
    |e| e.qp(11) - e.qp(5),
    |e| e.qp(12) - e.qp(6),
    |e| {
        e.qp(13) + e.mps() * e.int(2) * e.qh(13) + e.qp(6) - e.qp(3)
            + e.pms() * e.int(2) * e.qh(1)
            - e.one()
    },
    |e| e.qp(14) + e.pms() * e.int(2) * e.qh(15),
    |e| e.qp(15) - e.qp(7),
    |e| {
        e.qp(16) + e.mps() * e.int(2) * e.qh(17) + e.qp(8) - e.qp(4)
            + e.pms() * e.int(2) * e.qh(5)
            - e.qp(2)
    },
    |e| e.qp(17) - e.qp(8),
    |e| e.qp(18) + e.pms() * e.int(2) * e.qh(19) - e.qp(2) + e.mps() * e.int(2) * e.qh(3),
    |e| {
        e.qp(19) + e.mps() * e.int(2) * e.qh(19) + e.qp(9) - e.qp(5) + e.qp(2) - e.q()
            + e.pms() * e.int(2) * e.qh(1)
            - e.one()
    },
    |e| e.qp(20) - e.qp(10),
    |e| e.qp(21) - e.qp(10),
    |e| e.qp(22) + e.int(2) * e.qp(11) - e.qp(6) + e.mps() * e.int(2) * e.qh(7),
    |e| e.qp(23) - e.qp(11) - e.qp(3) + e.q(),
    |e| e.qp(24) - e.qp(12),
    |e| {
        e.qp(25) + e.mps() * e.int(2) * e.qh(25) + e.qp(12) - e.qp(7)
            + e.pms() * e.int(2) * e.qh(7)
            - e.qp(3)
    },
    |e| e.qp(26) + e.pms() * e.int(2) * e.qh(27) - e.qp(2) + e.mps() * e.int(2) * e.qh(3),
    |e| e.qp(27) - e.qp(13),
    |e| {
        e.qp(28) + e.mps() * e.int(2) * e.qh(29) + e.qp(14) - e.qp(8)
            + e.pms() * e.int(2) * e.qh(5)
            - e.qp(2)
    },
];

/// G_{c,3}(m), q = 2^r with r even, c != 0 not a cube, m = 1..=30.
const GC3_EVEN_R_NONCUBE: [RowFn; 30] = [
    |_| BigRat::zero(),
    |_| BigRat::zero(),
    |e| e.q() + e.pms() * e.qh(1) + e.one(),
    |e| e.qp(2) + e.mps() * e.qh(3),
    |e| e.qp(3) - e.q(),
    |e| e.qp(4) + e.pms() * e.qh(5) + e.qp(2),
    |e| e.qp(5) - e.qp(2),
    |e| e.qp(6) + e.mps() * e.qh(7),
    |e| e.qp(7) + e.pms() * e.qh(7) + e.qp(3) - e.q() + e.mps() * e.qh(1) - e.one(),
    |e| e.qp(8) - e.qp(4),
    |e| e.qp(9) - e.qp(4),
    |e| e.qp(10) + e.int(2) * e.qp(5) - e.qp(2) + e.pms() * e.qh(3),
    |e| e.qp(11) - e.qp(5),
    |e| e.qp(12) - e.qp(6),
    |e| e.qp(13) + e.pms() * e.qh(13) + e.qp(6) - e.qp(3) + e.mps() * e.qh(1) - e.one(),
    |e| e.qp(14) + e.mps() * e.qh(15),
    |e| e.qp(15) - e.qp(7),
    |e| e.qp(16) + e.pms() * e.qh(17) + e.qp(8) - e.qp(4) + e.mps() * e.qh(5) - e.qp(2),
    |e| e.qp(17) - e.qp(8),
    |e| e.qp(18) + e.mps() * e.qh(19) - e.qp(2) + e.pms() * e.qh(3),
    |e| {
        e.qp(19) + e.pms() * e.qh(19) + e.qp(9) - e.qp(5) + e.qp(2) - e.q() + e.mps() * e.qh(1)
            - e.one()
    },
    |e| e.qp(20) - e.qp(10),
    |e| e.qp(21) - e.qp(10),
    |e| e.qp(22) + e.int(2) * e.qp(11) - e.qp(6) + e.pms() * e.qh(7),
    |e| e.qp(23) - e.qp(11) - e.qp(3) + e.q(),
    |e| e.qp(24) - e.qp(12),
    |e| e.qp(25) + e.pms() * e.qh(25) + e.qp(12) - e.qp(7) + e.mps() * e.qh(7) - e.qp(3),
    |e| e.qp(26) + e.mps() * e.qh(27) - e.qp(2) + e.pms() * e.qh(3),
    |e| e.qp(27) - e.qp(13),
    |e| e.qp(28) + e.pms() * e.qh(29) + e.qp(14) - e.qp(8) + e.mps() * e.qh(5) - e.qp(2),
];

/// One column of a frozen reference table, addressed by the data that picks
/// it: the sum family, characteristic/parity of r, and the class of c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureTable {
    G0KloostermanChar2,
    G0KloostermanChar3,
    GcKloostermanChar2,
    GcKloostermanChar3,
    Gc3EvenC0,
    Gc3OddC0,
    Gc3OddNonzero,
    Gc3EvenCube,
    Gc3EvenNonCube,
}

impl FixtureTable {
    fn rows(self) -> &'static [RowFn] {
        match self {
            FixtureTable::G0KloostermanChar2 => &G0_KLOOSTERMAN_CHAR2,
            FixtureTable::G0KloostermanChar3 => &G0_KLOOSTERMAN_CHAR3,
            FixtureTable::GcKloostermanChar2 => &GC_KLOOSTERMAN_CHAR2,
            FixtureTable::GcKloostermanChar3 => &GC_KLOOSTERMAN_CHAR3,
            FixtureTable::Gc3EvenC0 => &GC3_EVEN_R_C0,
            FixtureTable::Gc3OddC0 => &GC3_ODD_R_C0,
            FixtureTable::Gc3OddNonzero => &GC3_ODD_R_CNZ,
            FixtureTable::Gc3EvenCube => &GC3_EVEN_R_CUBE,
            FixtureTable::Gc3EvenNonCube => &GC3_EVEN_R_NONCUBE,
        }
    }

    pub fn max_degree(self) -> u32 {
        self.rows().len() as u32
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            FixtureTable::G0KloostermanChar2 | FixtureTable::G0KloostermanChar3 => "g-0m1",
            FixtureTable::GcKloostermanChar2 | FixtureTable::GcKloostermanChar3 => "g-cm1",
            _ => "g-c3",
        }
    }

    /// The table column covering (base field, c, family), if any.
    pub fn covering(base: &FieldContext, c: Elem, family: SumFamily) -> Option<FixtureTable> {
        match family {
            SumFamily::Kloosterman => Some(match (base.p(), c == ZERO) {
                (2, true) => FixtureTable::G0KloostermanChar2,
                (2, false) => FixtureTable::GcKloostermanChar2,
                (_, true) => FixtureTable::G0KloostermanChar3,
                (_, false) => FixtureTable::GcKloostermanChar3,
            }),
            SumFamily::Cubic => {
                if base.p() != 2 {
                    return None;
                }
                Some(match (base.r() % 2, c == ZERO) {
                    (0, true) => FixtureTable::Gc3EvenC0,
                    (1, true) => FixtureTable::Gc3OddC0,
                    (1, false) => FixtureTable::Gc3OddNonzero,
                    _ => {
                        if base.is_cube(c).ok()? {
                            FixtureTable::Gc3EvenCube
                        } else {
                            FixtureTable::Gc3EvenNonCube
                        }
                    }
                })
            }
        }
    }

    /// The printed value of row m, evaluated exactly at this field.
    pub fn row_value(self, base: &FieldContext, m: u32) -> Result<BigInt> {
        let rows = self.rows();
        if m == 0 || m as usize > rows.len() {
            return Err(Error::OutOfScope(format!(
                "table {self:?} has rows 1..={}",
                rows.len()
            )));
        }
        let env = RowEnv::new(base);
        rat_to_int(&rows[m as usize - 1](&env), "reference table row")
    }
}

/// Result of checking one printed table row against the pipeline.
#[derive(Debug, Serialize)]
pub struct FixtureRowCheck {
    pub table: String,
    pub p: u32,
    pub r: u32,
    pub m: u32,
    #[serde(serialize_with = "crate::ser::bigint_as_string")]
    pub printed: BigInt,
    #[serde(serialize_with = "crate::ser::bigint_as_string")]
    pub pipeline: BigInt,
    pub pass: bool,
}

/// Evaluate every row of the table column that covers (base, c, family)
/// against the Moebius pipeline. Mismatches are reported per row, never
/// patched.
pub fn reference_table_check(
    base: &FieldContext,
    c: Elem,
    family: SumFamily,
    m_range: impl Iterator<Item = u32>,
) -> Result<Vec<FixtureRowCheck>> {
    let table = FixtureTable::covering(base, c, family).ok_or_else(|| {
        Error::OutOfScope("no reference table covers this parameter set".into())
    })?;
    let mut out = Vec::new();
    for m in m_range {
        if m == 0 || m > table.max_degree() {
            continue;
        }
        let printed = table.row_value(base, m)?;
        let pipeline = g_count(base, m, c, family)?;
        let pass = printed == pipeline;
        out.push(FixtureRowCheck {
            table: format!("{table:?}"),
            p: base.p(),
            r: base.r(),
            m,
            printed,
            pipeline,
            pass,
        });
    }
    Ok(out)
}

/// The one printed cell known to disagree with every computed route:
/// (table G_{0,-1}, characteristic 3 column, m = 1) prints 0 where the
/// pipeline, the element scan, and the matching 2^r cell all give 1.
pub fn known_errata() -> &'static [(FixtureTable, u32)] {
    &[(FixtureTable::G0KloostermanChar3, 1)]
}

/// Closing identity for the cubic family with r odd and c != 0 at m = 4s,
/// s an odd prime: G_{c,3}(4s) = q^(4s-2) - q^2.
pub fn final_remark_check(base: &FieldContext, s: u32, c: Elem) -> Result<bool> {
    if base.p() != 2 || base.r() % 2 == 0 {
        return Err(Error::OutOfScope("needs q = 2^r with r odd".into()));
    }
    if c == ZERO {
        return Err(Error::OutOfScope("needs c != 0".into()));
    }
    if s < 3 || s % 2 == 0 || !is_prime(s) {
        return Err(Error::OutOfScope("s must be an odd prime".into()));
    }
    let m = 4 * s;
    let g = g_count(base, m, c, SumFamily::Cubic)?;
    let q = BigInt::from(base.q());
    Ok(g == q.pow(m - 2) - q.pow(2))
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
