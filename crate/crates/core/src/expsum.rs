//! Exponential sums S_d^(m)(u, v) = sum_z e(uz + v z^d) for d = -1 (z over
//! F_{q^m}^*) and d = 3 (z over F_{q^m}), their Dickson lifts from level one
//! to level m, and the level-one value distribution and classification facts
//! the closed-form place counts rest on.
//!
//! The sums are defined for every (u, v) in F_q^2, including zeros; the
//! degenerate cells are needed by the distribution results.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::dickson;
use crate::error::{Error, Result};
use crate::field::{Elem, ExtContext, FieldContext, ZERO};
use crate::num::{exact_div, prime_divisors, CycInt};

/// Which exponent family a sum belongs to: d = -1 or d = 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumFamily {
    /// d = -1, the Kloosterman case; z ranges over the nonzero elements.
    Kloosterman,
    /// d = 3, the cubic case; z ranges over the whole field.
    Cubic,
}

impl SumFamily {
    pub fn d(self) -> i64 {
        match self {
            SumFamily::Kloosterman => -1,
            SumFamily::Cubic => 3,
        }
    }

    pub fn from_d(d: i64) -> Result<SumFamily> {
        match d {
            -1 => Ok(SumFamily::Kloosterman),
            3 => Ok(SumFamily::Cubic),
            _ => Err(Error::OutOfScope(format!("d = {d} not in {{-1, 3}}"))),
        }
    }

    /// The cubic family is restricted to characteristic 2 here (the defining
    /// results need p != 3, and this artifact covers p = 2, 3).
    pub fn check_char(self, p: u32) -> Result<()> {
        if self == SumFamily::Cubic && p == 3 {
            return Err(Error::OutOfScope(
                "d = 3 requires characteristic different from 3".into(),
            ));
        }
        Ok(())
    }
}

/// One exponential-sum evaluation request. `u` and `v` are base-field
/// elements.
pub struct SumSpec<'a> {
    pub ext: &'a ExtContext,
    pub family: SumFamily,
    pub u: Elem,
    pub v: Elem,
}

impl<'a> SumSpec<'a> {
    pub fn new(ext: &'a ExtContext, family: SumFamily, u: Elem, v: Elem) -> Result<Self> {
        family.check_char(ext.base().p())?;
        Ok(SumSpec { ext, family, u, v })
    }
}

/// Exact value of S_d^(m)(u, v), by its defining sum over the extension
/// field. The cyclotomic accumulation must come out real.
pub fn s_sum(spec: &SumSpec) -> Result<BigInt> {
    let ext = spec.ext;
    let u = ext.embed_base(spec.u);
    let v = ext.embed_base(spec.v);
    let mut acc = match spec.family {
        // z = 0 contributes e(0) = 1 to the full-field sum
        SumFamily::Cubic => CycInt::one(),
        SumFamily::Kloosterman => CycInt::zero(),
    };
    let g = ext.generator();
    let g_step = match spec.family {
        SumFamily::Cubic => ext.mul(ext.sqr(g), g),
        SumFamily::Kloosterman => ext.inv_or_zero(g),
    };
    let mut z = ext.one();
    let mut w = ext.one();
    for _ in 0..ext.order() - 1 {
        let arg = ext.add(ext.mul(u, z), ext.mul(v, w));
        acc.add_assign(&ext.char_e(arg));
        z = ext.mul(z, g);
        w = ext.mul(w, g_step);
    }
    Ok(acc.expect_real("s_sum"))
}

/// Level-one sum S_d(u, v) over the base field, as a machine integer
/// (|S| <= q always).
pub fn level1_sum(field: &FieldContext, family: SumFamily, u: Elem, v: Elem) -> i64 {
    let mut parts = [0i64; 3];
    for zi in 0..field.q() {
        let z = field.from_index(zi);
        if z == ZERO && family == SumFamily::Kloosterman {
            continue;
        }
        let zd = match family {
            SumFamily::Kloosterman => field.inv_or_zero(z),
            SumFamily::Cubic => field.mul(field.mul(z, z), z),
        };
        let arg = field.add(field.mul(u, z), field.mul(v, zd));
        parts[field.abs_trace(arg) as usize] += 1;
    }
    combine_real_parts(field.p(), parts, "level1_sum")
}

fn combine_real_parts(p: u32, parts: [i64; 3], what: &str) -> i64 {
    if p == 2 {
        parts[0] - parts[1]
    } else {
        assert_eq!(
            parts[1], parts[2],
            "{what}: value is not real (zeta parts {parts:?})"
        );
        parts[0] - parts[2]
    }
}

/// S_d^(m)(u, v) computed by evaluating the level-one sum exhaustively and
/// lifting through the Dickson recurrence:
/// S^(m) = (-1)^(m-1) D_m(S^(1), q).
///
/// Valid for v != 0 in the cubic family (for v = 0 the level-m sums vanish
/// identically while D_m(0, q) does not, so no lift exists), and for
/// u, v != 0 in the Kloosterman family.
pub fn dickson_lift(spec: &SumSpec) -> Result<BigInt> {
    let ext = spec.ext;
    match spec.family {
        SumFamily::Cubic => {
            if spec.v == ZERO {
                return Err(Error::OutOfScope("cubic lift requires v != 0".into()));
            }
        }
        SumFamily::Kloosterman => {
            if spec.u == ZERO || spec.v == ZERO {
                return Err(Error::OutOfScope(
                    "Kloosterman lift requires u, v != 0".into(),
                ));
            }
        }
    }
    let s1 = level1_sum(ext.base(), spec.family, spec.u, spec.v);
    let m = ext.m();
    let lifted = dickson::dickson_eval_int(m, &BigInt::from(s1), &BigInt::from(ext.base().q()));
    Ok(if m % 2 == 0 { -lifted } else { lifted })
}

// ---------------------------------------------------------------------------
// Joint trace scan engine.
// ---------------------------------------------------------------------------

/// One full scan of F_{q^m} bucketing every element by the pair
/// (tr z, tr z^d), with the convention 0^-1 = 0. All exponential sums at
/// level m, the place counts N_{m,d}(beta), and the trace-condition element
/// counts H and G are exact linear functionals of these buckets.
pub struct SumEngine {
    q: usize,
    p: u32,
    order: u64,
    family: SumFamily,
    /// counts[a*q + b] = #{z : tr z = a, tr z^d = b}, all z including 0.
    counts: Vec<u64>,
    /// Same, restricted to z of degree exactly m over F_q.
    counts_exact: Vec<u64>,
    /// Base-field index tables: product, sum, and absolute trace.
    mul_idx: Vec<u16>,
    add_idx: Vec<u16>,
    chi_exp: Vec<u8>,
}

impl SumEngine {
    pub fn new(ext: &ExtContext, family: SumFamily) -> SumEngine {
        SumEngine::with_workers(ext, family, crate::worker_count())
    }

    /// The scan partitions into index ranges of the multiplicative group;
    /// per-range bucket vectors are summed in range order, so the result is
    /// identical for every worker count.
    pub fn with_workers(ext: &ExtContext, family: SumFamily, workers: usize) -> SumEngine {
        let base = ext.base();
        let q = base.q() as usize;
        assert!(q <= 1 << 12, "engine index tables need a small base field");
        let order = ext.order();
        let m = ext.m();

        // Proper-subfield index moduli: z = g^i lies in F_{q^(m/l)} iff
        // (q^m - 1)/(q^(m/l) - 1) divides i.
        let subfield_mods: Vec<u64> = prime_divisors(m as u64)
            .iter()
            .map(|&l| (order - 1) / (base.q().pow(m / l as u32) - 1))
            .collect();

        let g = ext.generator();
        let g_step = match family {
            SumFamily::Cubic => ext.mul(ext.sqr(g), g),
            SumFamily::Kloosterman => ext.inv_or_zero(g),
        };

        let scan_range = |lo: u64, hi: u64| -> (Vec<u64>, Vec<u64>) {
            let mut counts = vec![0u64; q * q];
            let mut counts_exact = vec![0u64; q * q];
            let mut z = ext.pow(g, lo);
            let mut w = ext.pow(g_step, lo);
            for i in lo..hi {
                let a = ext.rel_trace_index(z) as usize;
                let b = ext.rel_trace_index(w) as usize;
                counts[a * q + b] += 1;
                if subfield_mods.iter().all(|&md| i % md != 0) {
                    counts_exact[a * q + b] += 1;
                }
                z = ext.mul(z, g);
                w = ext.mul(w, g_step);
            }
            (counts, counts_exact)
        };

        let group = order - 1;
        let workers = workers.clamp(1, 64).min(group.max(1) as usize);
        let (mut counts, mut counts_exact) = if workers <= 1 || group < 1 << 16 {
            scan_range(0, group)
        } else {
            let chunk = group.div_ceil(workers as u64);
            let parts: Vec<(Vec<u64>, Vec<u64>)> = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers as u64)
                    .map(|widx| {
                        let lo = widx * chunk;
                        let hi = ((widx + 1) * chunk).min(group);
                        let scan = &scan_range;
                        scope.spawn(move || scan(lo, hi.max(lo)))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            let mut counts = vec![0u64; q * q];
            let mut counts_exact = vec![0u64; q * q];
            for (c, ce) in parts {
                for (dst, src) in counts.iter_mut().zip(&c) {
                    *dst += src;
                }
                for (dst, src) in counts_exact.iter_mut().zip(&ce) {
                    *dst += src;
                }
            }
            (counts, counts_exact)
        };

        // z = 0: traces (0, 0) under either convention; degree 1 over F_q.
        counts[0] += 1;
        if m == 1 {
            counts_exact[0] += 1;
        }
        debug_assert_eq!(counts.iter().sum::<u64>(), order);

        let mut mul_idx = vec![0u16; q * q];
        let mut add_idx = vec![0u16; q * q];
        let mut chi_exp = vec![0u8; q];
        for ai in 0..q {
            let a = base.from_index(ai as u64);
            chi_exp[ai] = base.abs_trace(a);
            for bi in 0..q {
                let b = base.from_index(bi as u64);
                mul_idx[ai * q + bi] = base.index_of(base.mul(a, b)) as u16;
                add_idx[ai * q + bi] = base.index_of(base.add(a, b)) as u16;
            }
        }

        SumEngine {
            q,
            p: base.p(),
            order,
            family,
            counts,
            counts_exact,
            mul_idx,
            add_idx,
            chi_exp,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Bucket count for (tr z, tr z^d) = (a, b), all of F_{q^m}.
    pub fn count(&self, a: usize, b: usize) -> u64 {
        self.counts[a * self.q + b]
    }

    /// Bucket count restricted to elements of degree exactly m.
    pub fn exact_count(&self, a: usize, b: usize) -> u64 {
        self.counts_exact[a * self.q + b]
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_idx[a * self.q + b] as usize
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add_idx[a * self.q + b] as usize
    }

    /// S_d^(m)(u, v) for base-field indices (u, v), reduced from the buckets:
    /// sum over (a, b) of count * chi(u a + v b), dropping z = 0 for the
    /// Kloosterman family.
    pub fn s_level_m(&self, u: usize, v: usize) -> i64 {
        let q = self.q;
        let mut parts = [0i64; 3];
        for a in 0..q {
            let ua = self.mul(u, a);
            for b in 0..q {
                let n = self.counts[a * q + b];
                if n == 0 {
                    continue;
                }
                let t = self.chi_exp[self.add(ua, self.mul(v, b))];
                parts[t as usize] += n as i64;
            }
        }
        if self.family == SumFamily::Kloosterman {
            // remove z = 0, which contributed chi(0) = 1
            parts[0] -= 1;
        }
        combine_real_parts(self.p, parts, "s_level_m")
    }

    /// sum over u (u in F_q^* for d = -1, all of F_q for d = 3) of
    /// S_d^(m)(u, v), as zeta-exponent parts.
    fn sum_over_u_parts(&self, v: usize) -> [i128; 3] {
        let q = self.q;
        let mut parts = [0i128; 3];
        match self.family {
            SumFamily::Cubic => {
                // sum_{u in F_q} S = q * sum_b counts[0][b] chi(v b)
                for b in 0..q {
                    let n = self.counts[b]; // a = 0 row
                    if n == 0 {
                        continue;
                    }
                    let t = self.chi_exp[self.mul(v, b)];
                    parts[t as usize] += (n as i128) * (q as i128);
                }
            }
            SumFamily::Kloosterman => {
                // sum_{u != 0} S = q * sum_b counts'[0][b] chi(v b)
                //                - sum_{a,b} counts'[a][b] chi(v b)
                // with counts' excluding z = 0 (one unit in cell (0,0)).
                for b in 0..q {
                    let mut n = self.counts[b] as i128;
                    if b == 0 {
                        n -= 1;
                    }
                    let t = self.chi_exp[self.mul(v, b)];
                    parts[t as usize] += n * (q as i128);
                }
                for a in 0..q {
                    for b in 0..q {
                        let mut n = self.counts[a * q + b] as i128;
                        if a == 0 && b == 0 {
                            n -= 1;
                        }
                        let t = self.chi_exp[self.mul(v, b)];
                        parts[t as usize] -= n;
                    }
                }
            }
        }
        parts
    }

    /// N_{m,d}(beta) for any beta with tr(beta) = c:
    /// q^m + 1 + sum_{v != 0} chi(c v) sum_u S_d^(m)(u, v).
    pub fn n_place(&self, c: usize) -> BigInt {
        let mut parts = [0i128; 3];
        for v in 1..self.q {
            let pv = self.sum_over_u_parts(v);
            let shift = self.chi_exp[self.mul(c, v)] as usize;
            for (t, &x) in pv.iter().enumerate() {
                parts[(t + shift) % 3] += x;
            }
        }
        let dev = if self.p == 2 {
            parts[0] + parts[2] - parts[1]
        } else {
            assert_eq!(parts[1], parts[2], "n_place: value is not real");
            parts[0] - parts[2]
        };
        BigInt::from(self.order) + 1 + BigInt::from(dev)
    }

    /// H-style count: #{z : tr z = 0, tr z^d = c}.
    pub fn h_of(&self, c: usize) -> u64 {
        self.count(0, c)
    }

    /// G-style count: same, for z of degree exactly m.
    pub fn g_of(&self, c: usize) -> u64 {
        self.exact_count(0, c)
    }
}

// ---------------------------------------------------------------------------
// Level-one value distribution and classification (characteristic 2).
// ---------------------------------------------------------------------------

/// Exhaustive histogram of S_3(u, v) over all (u, v) in F_q^2, keyed by
/// exact value. Rows whose tabulated values coincide numerically (that
/// happens for q = 4, where q = 2 sqrt(q)) are merged.
pub fn s3_value_distribution(field: &FieldContext) -> Result<BTreeMap<i64, u64>> {
    if field.p() != 2 {
        return Err(Error::OutOfScope(
            "the cubic value distribution is stated for characteristic 2".into(),
        ));
    }
    let mut hist = BTreeMap::new();
    for ui in 0..field.q() {
        for vi in 0..field.q() {
            let s = level1_sum(
                field,
                SumFamily::Cubic,
                field.from_index(ui),
                field.from_index(vi),
            );
            *hist.entry(s).or_insert(0u64) += 1;
        }
    }
    Ok(hist)
}

/// The published distribution rows for S_3(u, v) over F_q^2, merged by value:
/// the (0,0) cell contributes the value q once, and the remaining mass sits
/// on 0, +-sqrt(q), +-2 sqrt(q) (r even) or 0, +-sqrt(2q) (r odd).
pub fn s3_expected_distribution(field: &FieldContext) -> Result<BTreeMap<i64, u64>> {
    if field.p() != 2 {
        return Err(Error::OutOfScope("characteristic 2 only".into()));
    }
    let q = field.q() as i64;
    let r = field.r();
    let mut rows: Vec<(i64, i64)> = Vec::new();
    rows.push((q, 1));
    if r % 2 == 0 {
        let s = 1i64 << (r / 2); // sqrt(q)
        rows.push((-2 * s, (q - 1) * (q - 2 * s) / 24));
        rows.push((-s, (q - 1) * (q - s) / 3));
        rows.push((0, (q - 1) * q / 4 + (q - 1)));
        rows.push((s, (q - 1) * (q + s) / 3));
        rows.push((2 * s, (q - 1) * (q + 2 * s) / 24));
        // the divisions above are exact; verify
        debug_assert_eq!((q - 1) * (q - 2 * s) % 24, 0);
        debug_assert_eq!((q - 1) * (q - s) % 3, 0);
    } else {
        let t = 1i64 << ((r + 1) / 2); // sqrt(2q)
        rows.push((-t, (q - 1) * (q - t) / 4));
        rows.push((0, (q - 1) * q / 2 + (q - 1)));
        rows.push((t, (q - 1) * (q + t) / 4));
        debug_assert_eq!((q - 1) * (q - t) % 4, 0);
    }
    let mut merged = BTreeMap::new();
    for (value, mult) in rows {
        if mult < 0 {
            return Err(Error::CrosscheckMismatch(format!(
                "negative expected multiplicity for value {value}"
            )));
        }
        if mult > 0 {
            *merged.entry(value).or_insert(0u64) += mult as u64;
        }
    }
    Ok(merged)
}

/// Classification of u -> S_3(u, v) for fixed v != 0 over F_q, r even:
/// the observed value set, the observed S_3(0, v), and the published
/// expectations for both.
#[derive(Debug)]
pub struct CarlitzRecord {
    pub v_is_cube: bool,
    pub values: std::collections::BTreeSet<i64>,
    pub expected_values: std::collections::BTreeSet<i64>,
    pub s3_at_zero: i64,
    pub expected_at_zero: i64,
}

impl CarlitzRecord {
    /// Value-set containment plus the closed form at u = 0. This is the part
    /// that holds for every q.
    pub fn holds(&self) -> bool {
        self.values.is_subset(&self.expected_values)
            && self.s3_at_zero == self.expected_at_zero
    }

    /// Whether every value of the published set is attained as u varies.
    /// For q = 4 the value -2 sqrt(q) has global multiplicity zero in the
    /// distribution rows, so full attainment is only possible for q >= 16.
    pub fn all_attained(&self) -> bool {
        self.values == self.expected_values
    }
}

pub fn carlitz_classify(field: &FieldContext, v: Elem) -> Result<CarlitzRecord> {
    if field.p() != 2 || field.r() % 2 != 0 {
        return Err(Error::OutOfScope(
            "classification needs q = 2^r with r even".into(),
        ));
    }
    if v == ZERO {
        return Err(Error::OutOfScope("classification needs v != 0".into()));
    }
    let v_is_cube = field.is_cube(v)?;
    let s = 1i64 << (field.r() / 2);
    let sign = if (field.r() / 2) % 2 == 0 { 1 } else { -1 };
    let expected_values: std::collections::BTreeSet<i64> = if v_is_cube {
        [0, 2 * s, -2 * s].into_iter().collect()
    } else {
        [s, -s].into_iter().collect()
    };
    let expected_at_zero = if v_is_cube { -sign * 2 * s } else { sign * s };
    let mut values = std::collections::BTreeSet::new();
    let mut s3_at_zero = 0;
    for ui in 0..field.q() {
        let u = field.from_index(ui);
        let val = level1_sum(field, SumFamily::Cubic, u, v);
        values.insert(val);
        if ui == 0 {
            s3_at_zero = val;
        }
    }
    Ok(CarlitzRecord {
        v_is_cube,
        values,
        expected_values,
        s3_at_zero,
        expected_at_zero,
    })
}

/// Weil bound |S| <= 2 q^(m/2), checked exactly as S^2 <= 4 q^m.
pub fn weil_bound_holds(s: &BigInt, q: u64, m: u32) -> bool {
    s * s <= BigInt::from(4) * BigInt::from(q).pow(m)
}

pub fn exact_u64_div(num: i64, den: i64) -> Result<i64> {
    exact_div(&BigInt::from(num), &BigInt::from(den), "row multiplicity")
        .map(|b| i64::try_from(b).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension, make_field};

    fn ext(p: u32, r: u32, m: u32) -> ExtContext {
        make_extension(&make_field(p, r, None).unwrap(), m, None).unwrap()
    }

    #[test]
    fn s_sum_level_one_examples() {
        // q = 2, m = 1: S_{-1}(1,1) = e(1 + 1) = e(0) = 1
        let e = ext(2, 1, 1);
        let one = e.base().one();
        let spec = SumSpec::new(&e, SumFamily::Kloosterman, one, one).unwrap();
        assert_eq!(s_sum(&spec).unwrap(), BigInt::from(1));
        // q = 2, m = 1, d = 3: e(0) + e(1 + 1) = 2
        let spec = SumSpec::new(&e, SumFamily::Cubic, one, one).unwrap();
        assert_eq!(s_sum(&spec).unwrap(), BigInt::from(2));
        // u = v = 0, d = 3: the sum of q ones
        let spec = SumSpec::new(&e, SumFamily::Cubic, ZERO, ZERO).unwrap();
        assert_eq!(s_sum(&spec).unwrap(), BigInt::from(2));
        // d = 3 is out of scope in characteristic 3
        let e3 = ext(3, 1, 1);
        assert!(SumSpec::new(&e3, SumFamily::Cubic, ZERO, ZERO).is_err());
    }

    #[test]
    fn dickson_lift_examples() {
        // m = 1 is the identity lift
        let e = ext(2, 2, 1);
        let one = e.base().one();
        let spec = SumSpec::new(&e, SumFamily::Cubic, one, one).unwrap();
        assert_eq!(dickson_lift(&spec).unwrap(), s_sum(&spec).unwrap());

        // q = 2, d = -1, u = v = 1, m = 3: S_1 = 1, lift = D_3(1,2) = -5
        let e = ext(2, 1, 3);
        let one = e.base().one();
        let spec = SumSpec::new(&e, SumFamily::Kloosterman, one, one).unwrap();
        let lift = dickson_lift(&spec).unwrap();
        assert_eq!(lift, BigInt::from(-5));
        assert_eq!(lift, s_sum(&spec).unwrap());

        // q = 4, d = 3, u = v = 1, m = 2: lift = -D_2(S_1, 4) = -(S_1^2 - 8)
        let e = ext(2, 2, 2);
        let one = e.base().one();
        let spec = SumSpec::new(&e, SumFamily::Cubic, one, one).unwrap();
        let s1 = level1_sum(e.base(), SumFamily::Cubic, one, one);
        let lift = dickson_lift(&spec).unwrap();
        assert_eq!(lift, BigInt::from(-(s1 * s1 - 8)));
        assert_eq!(lift, s_sum(&spec).unwrap());

        // preconditions
        let bad = SumSpec::new(&e, SumFamily::Cubic, one, ZERO).unwrap();
        assert!(dickson_lift(&bad).is_err());
        let bad = SumSpec::new(&e, SumFamily::Kloosterman, ZERO, one).unwrap();
        assert!(dickson_lift(&bad).is_err());
    }

    #[test]
    fn engine_matches_definitional_sums() {
        for (p, r, m) in [(2, 1, 1), (2, 1, 4), (2, 2, 2), (3, 1, 2), (3, 2, 1), (3, 1, 3)] {
            let e = ext(p, r, m);
            let families: &[SumFamily] = if p == 2 {
                &[SumFamily::Kloosterman, SumFamily::Cubic]
            } else {
                &[SumFamily::Kloosterman]
            };
            for &fam in families {
                let engine = SumEngine::new(&e, fam);
                let q = e.base().q();
                for ui in 0..q {
                    for vi in 0..q {
                        let spec = SumSpec::new(
                            &e,
                            fam,
                            e.base().from_index(ui),
                            e.base().from_index(vi),
                        )
                        .unwrap();
                        assert_eq!(
                            BigInt::from(engine.s_level_m(ui as usize, vi as usize)),
                            s_sum(&spec).unwrap(),
                            "p={p} r={r} m={m} {fam:?} u={ui} v={vi}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn engine_totals_and_zero_cell() {
        let e = ext(2, 2, 2);
        let engine = SumEngine::new(&e, SumFamily::Cubic);
        let q = 4usize;
        let total: u64 = (0..q * q).map(|i| engine.count(i / q, i % q)).sum();
        assert_eq!(total, e.order()); // every element of F_16 lands in one bucket
        // exact-degree buckets exclude the q = 4 subfield elements
        let exact: u64 = (0..q * q).map(|i| engine.exact_count(i / q, i % q)).sum();
        assert_eq!(exact, e.order() - 4);
    }

    #[test]
    fn scan_is_independent_of_worker_count() {
        // 2^18 elements: large enough to engage the chunked path
        let e = ext(2, 2, 9);
        for fam in [SumFamily::Kloosterman, SumFamily::Cubic] {
            let one = SumEngine::with_workers(&e, fam, 1);
            let four = SumEngine::with_workers(&e, fam, 4);
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(one.count(a, b), four.count(a, b));
                    assert_eq!(one.exact_count(a, b), four.exact_count(a, b));
                }
            }
        }
    }

    #[test]
    fn scaling_symmetry() {
        // S_d^(m)(u, v) = S_d^(m)(1, v u^-d) for u != 0
        for (p, r, m, fam) in [
            (2u32, 2u32, 2u32, SumFamily::Cubic),
            (2, 2, 2, SumFamily::Kloosterman),
            (3, 1, 2, SumFamily::Kloosterman),
        ] {
            let e = ext(p, r, m);
            let base = e.base();
            let engine = SumEngine::new(&e, fam);
            for ui in 1..base.q() {
                for vi in 0..base.q() {
                    let u = base.from_index(ui);
                    let v = base.from_index(vi);
                    let u_inv = base.inv_or_zero(u);
                    let ud = match fam {
                        SumFamily::Cubic => {
                            base.mul(base.mul(u_inv, u_inv), u_inv) // u^-3
                        }
                        SumFamily::Kloosterman => u, // u^-(-1) = u
                    };
                    let v2 = base.mul(v, ud);
                    assert_eq!(
                        engine.s_level_m(ui as usize, vi as usize),
                        engine.s_level_m(1, base.index_of(v2) as usize)
                    );
                }
            }
        }
    }

    #[test]
    fn distribution_small_cases() {
        // q = 4: merged rows (value 4 collects the q-row and the 2 sqrt q row)
        let f4 = make_field(2, 2, None).unwrap();
        let hist = s3_value_distribution(&f4).unwrap();
        let expect: BTreeMap<i64, u64> = [(-2, 2), (0, 6), (2, 6), (4, 2)].into_iter().collect();
        assert_eq!(hist, expect);
        assert_eq!(hist, s3_expected_distribution(&f4).unwrap());

        // q = 8 (r odd)
        let f8 = make_field(2, 3, None).unwrap();
        let hist = s3_value_distribution(&f8).unwrap();
        let expect: BTreeMap<i64, u64> =
            [(-4, 7), (0, 35), (4, 21), (8, 1)].into_iter().collect();
        assert_eq!(hist, expect);
        assert_eq!(hist, s3_expected_distribution(&f8).unwrap());

        // total multiplicity is q^2
        assert_eq!(hist.values().sum::<u64>(), 64);
    }

    #[test]
    fn carlitz_small_cases() {
        let f4 = make_field(2, 2, None).unwrap();
        // v = 1 is a cube: S_3(0, 1) = (-1)^(r/2+1) 2 sqrt(q) = +4
        let rec = carlitz_classify(&f4, f4.one()).unwrap();
        assert!(rec.v_is_cube);
        assert_eq!(rec.s3_at_zero, 4);
        assert!(rec.holds());
        // at q = 4 the value -4 has multiplicity zero in the distribution,
        // so it cannot be attained
        assert!(!rec.all_attained());
        // v = w is not a cube: S_3(0, w) = (-1)^(r/2) sqrt(q) = -2
        let w = f4.from_digits(&[0, 1]).unwrap();
        let rec = carlitz_classify(&f4, w).unwrap();
        assert!(!rec.v_is_cube);
        assert_eq!(rec.s3_at_zero, -2);
        assert!(rec.holds());
        assert!(rec.all_attained());

        // for q = 16 the full value set is attained for every v
        let f16 = make_field(2, 4, None).unwrap();
        for vi in 1..16 {
            let rec = carlitz_classify(&f16, f16.from_index(vi)).unwrap();
            assert!(rec.holds() && rec.all_attained(), "v = {vi}");
        }
    }

    #[test]
    fn substitution_symmetry_r_even() {
        // sum_u S_3^(m)(u, gamma^2) = sum_u S_3^(m)(u, gamma) for r even
        let e = ext(2, 2, 2);
        let base = e.base();
        let engine = SumEngine::new(&e, SumFamily::Cubic);
        let g = base.index_of(base.gamma()) as usize;
        let g2 = base.index_of(base.mul(base.gamma(), base.gamma())) as usize;
        let sum_at = |v: usize| -> i64 { (0..4).map(|u| engine.s_level_m(u, v)).sum() };
        assert_eq!(sum_at(g), sum_at(g2));
    }
}
