//! Independent brute-force ground truth: exhaustive irreducible-polynomial
//! enumeration over F_q and exhaustive element counts by trace conditions.
//!
//! Nothing in this module consults the closed-form machinery it is used to
//! validate; irreducibility is decided by a distinct-degree test and counts
//! come from plain scans.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expsum::{SumEngine, SumFamily};
use crate::field::{Elem, ExtContext, FieldContext, ZERO};

// ---------------------------------------------------------------------------
// Polynomials over the prime field F_p (used for modulus validation).
// ---------------------------------------------------------------------------

fn fp_trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(p: u32, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut r: Vec<u8> = a.to_vec();
    fp_trim(&mut r);
    let mut bb = b.to_vec();
    fp_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = match bb[db] {
        1 => 1u32,
        2 => 2, // 2 * 2 = 4 = 1 mod 3
        _ => unreachable!(),
    };
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u32 * lead_inv) % p;
        if c != 0 {
            for i in 0..=db {
                let t = (r[dr - db + i] as u32 + p - (c * bb[i] as u32) % p) % p;
                r[dr - db + i] = t as u8;
            }
        }
        r.pop();
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_gcd(p: u32, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(p, &x, &y);
        x = y;
        y = r;
    }
    x
}

fn fp_mulmod(p: u32, a: &[u8], b: &[u8], f: &[u8]) -> Vec<u8> {
    let mut prod = vec![0u16; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u16 * bj as u16) % p as u16;
        }
    }
    let prod: Vec<u8> = prod.iter().map(|&c| c as u8).collect();
    fp_rem(p, &prod, f)
}

/// Distinct-degree irreducibility test for a monic polynomial over F_p:
/// f of degree n is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= n/2.
pub fn fp_poly_is_irreducible(p: u32, f: &[u8]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u8, 1];
    let mut t = x.clone();
    for _ in 1..=n / 2 {
        // t <- t^p mod f
        let mut s = t.clone();
        for _ in 1..p {
            s = fp_mulmod(p, &s, &t, f);
        }
        t = s;
        // gcd(f, t - x)
        let mut diff = vec![0u8; t.len().max(2)];
        for (i, &c) in t.iter().enumerate() {
            diff[i] = c;
        }
        diff[1] = ((diff[1] as u32 + p - 1) % p) as u8;
        let g = fp_gcd(p, f, &diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomials over F_q.
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<Elem>) {
    while v.last() == Some(&ZERO) {
        v.pop();
    }
}

fn poly_rem(ctx: &FieldContext, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut r: Vec<Elem> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    debug_assert!(b[db] == ctx.one(), "divisor must be monic");
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr];
        if c != ZERO {
            for i in 0..=db {
                let t = ctx.sub(r[dr - db + i], ctx.mul(c, b[i]));
                r[dr - db + i] = t;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_make_monic(ctx: &FieldContext, v: &mut Vec<Elem>) {
    poly_trim(v);
    if let Some(&lead) = v.last() {
        if lead != ctx.one() {
            let inv = ctx.inv_or_zero(lead);
            for c in v.iter_mut() {
                *c = ctx.mul(*c, inv);
            }
        }
    }
}

fn poly_gcd(ctx: &FieldContext, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    poly_make_monic(ctx, &mut x);
    poly_make_monic(ctx, &mut y);
    while !y.is_empty() {
        let r = poly_rem(ctx, &x, &y);
        x = y;
        y = r;
        poly_make_monic(ctx, &mut y);
    }
    x
}

fn poly_mulmod(ctx: &FieldContext, a: &[Elem], b: &[Elem], f: &[Elem]) -> Vec<Elem> {
    let mut prod = vec![ZERO; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == ZERO {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != ZERO {
                prod[i + j] = ctx.add(prod[i + j], ctx.mul(ai, bj));
            }
        }
    }
    poly_rem(ctx, &prod, f)
}

// Bit-packed fast path over F_2: polynomials as u64 bitmasks.

fn gf2_mulmod(a: u64, b: u64, f: u64, n: u32) -> u64 {
    let mut acc = 0u64;
    let mut aa = a;
    let mut bb = b;
    while aa != 0 {
        if aa & 1 == 1 {
            acc ^= bb;
        }
        aa >>= 1;
        bb <<= 1;
    }
    let mut bit = 2 * n - 2;
    while bit >= n {
        if (acc >> bit) & 1 == 1 {
            acc ^= f << (bit - n);
        }
        if bit == 0 {
            break;
        }
        bit -= 1;
    }
    acc
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        // reduce a mod b by clearing leading bits
        let db = 63 - b.leading_zeros();
        loop {
            if a == 0 {
                break;
            }
            let da = 63 - a.leading_zeros();
            if da < db {
                break;
            }
            a ^= b << (da - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// `is_irreducible` specialised to F_2 with the polynomial packed into a u64
/// (bit i = coefficient of x^i). Same distinct-degree test.
fn gf2_is_irreducible(f: u64, n: u32) -> bool {
    if n == 1 {
        return true;
    }
    let mut t = 2u64; // the polynomial x
    for _ in 1..=n / 2 {
        t = gf2_mulmod(t, t, f, n);
        let g = gf2_gcd(f, t ^ 2);
        if g > 1 {
            return false;
        }
    }
    true
}

/// True iff the monic polynomial f (coefficients ascending, leading 1) is
/// irreducible over F_q: no factor of degree up to deg(f)/2, detected via
/// gcd(f, x^(q^i) - x) with modular exponentiation.
pub fn is_irreducible(ctx: &FieldContext, f: &[Elem]) -> bool {
    let n = f.len() - 1;
    debug_assert!(*f.last().unwrap() == ctx.one());
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if ctx.q() == 2 && n <= 31 {
        let mut packed = 0u64;
        for (i, &c) in f.iter().enumerate() {
            packed |= (c.0 & 1) << i;
        }
        return gf2_is_irreducible(packed, n as u32);
    }
    let x = vec![ZERO, ctx.one()];
    let mut t = x.clone();
    for _ in 1..=n / 2 {
        t = poly_powmod(ctx, &t, ctx.q(), f);
        // gcd(f, t - x)
        let mut diff = t.clone();
        if diff.len() < 2 {
            diff.resize(2, ZERO);
        }
        diff[1] = ctx.sub(diff[1], ctx.one());
        let g = poly_gcd(ctx, f, &diff);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_powmod(ctx: &FieldContext, base: &[Elem], mut e: u64, f: &[Elem]) -> Vec<Elem> {
    let mut acc = vec![ctx.one()];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(ctx, &acc, &b, f);
        }
        b = poly_mulmod(ctx, &b, &b, f);
        e >>= 1;
    }
    acc
}

/// Decode index -> monic polynomial of degree m: the low coefficients are the
/// base-q digits of the index, ascending, plus a leading 1.
pub fn poly_from_index(ctx: &FieldContext, m: u32, mut idx: u64) -> Vec<Elem> {
    let q = ctx.q();
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    for _ in 0..m {
        coeffs.push(ctx.from_index(idx % q));
        idx /= q;
    }
    coeffs.push(ctx.one());
    coeffs
}

/// Exact count of monic irreducible degree-m polynomials over F_q whose
/// coefficient vector satisfies `pred` (called with the full monic vector).
pub fn enumerate_and_count<F>(
    ctx: &FieldContext,
    m: u32,
    budget: u64,
    mut pred: F,
) -> Result<BigInt>
where
    F: FnMut(&[Elem]) -> bool,
{
    let total = checked_pow(ctx.q(), m, budget)?;
    let mut count: u64 = 0;
    for idx in 0..total {
        let f = poly_from_index(ctx, m, idx);
        if pred(&f) && is_irreducible(ctx, &f) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

fn checked_pow(q: u64, m: u32, budget: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..m {
        acc = acc.saturating_mul(q);
        if acc > budget {
            return Err(Error::BudgetExceeded {
                what: "polynomial enumeration",
                need: acc,
                budget,
            });
        }
    }
    Ok(acc)
}

/// Per-(case, coefficient) classification of all monic irreducible degree-m
/// polynomials, gathered in one enumeration pass.
pub struct IrreducibleProfile {
    pub q: usize,
    pub m: u32,
    pub total: u64,
    /// case (i): a_{m-1} = 0, counts keyed by a_{m-3}. Only for m >= 3.
    pub by_high: Vec<u64>,
    /// case (ii): a_1 = 0, counts keyed by a_{m-1}. Only for m >= 2.
    pub by_low: Vec<u64>,
    /// variant: a_{m-1} = 0, counts keyed by a_1 / a_0. Only for m >= 2.
    pub by_ratio: Vec<u64>,
}

pub fn irreducible_profile(ctx: &FieldContext, m: u32, budget: u64) -> Result<IrreducibleProfile> {
    let total_polys = checked_pow(ctx.q(), m, budget)?;
    let q = ctx.q() as usize;
    let mut prof = IrreducibleProfile {
        q,
        m,
        total: 0,
        by_high: vec![0; q],
        by_low: vec![0; q],
        by_ratio: vec![0; q],
    };
    for idx in 0..total_polys {
        let f = poly_from_index(ctx, m, idx);
        if !is_irreducible(ctx, &f) {
            continue;
        }
        prof.total += 1;
        let mm = m as usize;
        if mm >= 3 && f[mm - 1] == ZERO {
            prof.by_high[ctx.index_of(f[mm - 3]) as usize] += 1;
        }
        if mm >= 2 {
            if f[1] == ZERO {
                prof.by_low[ctx.index_of(f[mm - 1]) as usize] += 1;
            }
            if f[mm - 1] == ZERO {
                let ratio = ctx.mul(f[1], ctx.inv_or_zero(f[0]));
                prof.by_ratio[ctx.index_of(ratio) as usize] += 1;
            }
        }
    }
    Ok(prof)
}

// ---------------------------------------------------------------------------
// Element counts by trace conditions.
// ---------------------------------------------------------------------------

/// Exhaustive count of z in F_{q^m} with tr(z) = 0 and tr(z^d) = c, with the
/// convention 0^-1 = 0. With `degree_exact`, z is further required to
/// generate F_{q^m} over F_q (z = 0 only has degree 1), which matches the
/// published m = 1 table rows.
pub fn count_elements_by_traces(
    ext: &ExtContext,
    c: Elem,
    family: SumFamily,
    degree_exact: bool,
    budget: u64,
) -> Result<BigInt> {
    if ext.order() > budget {
        return Err(Error::BudgetExceeded {
            what: "element scan",
            need: ext.order(),
            budget,
        });
    }
    let engine = SumEngine::new(ext, family);
    let c_idx = ext.base().index_of(c) as usize;
    let v = if degree_exact {
        engine.exact_count(0, c_idx)
    } else {
        engine.count(0, c_idx)
    };
    Ok(BigInt::from(v))
}

/// Literal transcription of the place-count formula
/// N = q^m + 1 + sum_{v != 0} e(beta v) sum_u S_d^(m)(u, v),
/// with every exponential sum evaluated by its defining z-loop. Quadratic in
/// q times q^m, so only suitable as a small-case ground truth.
pub fn n_places_literal(ext: &ExtContext, family: SumFamily, beta: Elem) -> BigInt {
    let base = ext.base();
    let q = base.q();
    let mut acc = crate::num::CycInt::from_int(0);
    for vi in 1..q {
        let v = ext.embed_base(base.from_index(vi));
        let ebv = ext.char_e(ext.mul(beta, v));
        let u_start = match family {
            SumFamily::Kloosterman => 1,
            SumFamily::Cubic => 0,
        };
        for ui in u_start..q {
            let u = ext.embed_base(base.from_index(ui));
            let mut s = crate::num::CycInt::from_int(0);
            for zi in 0..ext.order() {
                let z = ext.from_index(zi);
                if z == ZERO && matches!(family, SumFamily::Kloosterman) {
                    continue;
                }
                let zd = match family {
                    SumFamily::Kloosterman => ext.inv_or_zero(z),
                    SumFamily::Cubic => ext.mul(ext.sqr(z), z),
                };
                let arg = ext.add(ext.mul(u, z), ext.mul(v, zd));
                s.add_assign(&ext.char_e(arg));
            }
            acc.add_assign(&ebv.mul(&s));
        }
    }
    let dev = acc.expect_real("place count literal sum");
    BigInt::from(ext.order()) + 1 + dev
}
