//! Dickson polynomials of the first kind over exact rationals, power-sum
//! sequences for the algebraic constants appearing in the small-degree place
//! counts, and the Ramanujan tau q-expansion with its power-sum identity.
//!
//! D_0 = 2, D_1 = t, D_m = t D_{m-1} - omega D_{m-2}, and for y != 0
//! D_m(y + omega/y, omega) = y^m + (omega/y)^m.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::num::{rat_to_int, BigRat};

/// D_m(t, omega) by the defining recurrence, exactly.
pub fn dickson_eval(m: u32, t: &BigRat, omega: &BigRat) -> BigRat {
    if m == 0 {
        return BigRat::from_integer(BigInt::from(2));
    }
    let mut prev = BigRat::from_integer(BigInt::from(2));
    let mut cur = t.clone();
    for _ in 1..m {
        let next = t * &cur - omega * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Integer-argument fast path of `dickson_eval`.
pub fn dickson_eval_int(m: u32, t: &BigInt, omega: &BigInt) -> BigInt {
    if m == 0 {
        return BigInt::from(2);
    }
    let mut prev = BigInt::from(2);
    let mut cur = t.clone();
    for _ in 1..m {
        let next = t * &cur - omega * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The closed coefficient expansion
/// D_m(t, omega) = sum_j m/(m-j) C(m-j, j) (-omega)^j t^(m-2j), m >= 1;
/// kept as an independent route for testing the recurrence.
pub fn dickson_closed_sum(m: u32, t: &BigRat, omega: &BigRat) -> BigRat {
    if m == 0 {
        return BigRat::from_integer(BigInt::from(2));
    }
    let mut acc = BigRat::zero();
    for j in 0..=m / 2 {
        let ratio = BigRat::new(BigInt::from(m), BigInt::from(m - j));
        let binom = BigRat::from_integer(binomial(m - j, j));
        let term = ratio
            * binom
            * pow_rat(&-omega.clone(), j)
            * pow_rat(t, m - 2 * j);
        acc += term;
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow_rat(x: &BigRat, e: u32) -> BigRat {
    let mut acc = BigRat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Functional-equation check: D_m(y + omega/y, omega) = y^m + omega^m / y^m,
/// exact over the rationals. Errors on y = 0.
pub fn dickson_functional_check(m: u32, y: &BigRat, omega: &BigRat) -> Result<bool> {
    if y.is_zero() {
        return Err(Error::OutOfScope("functional equation needs y != 0".into()));
    }
    let arg = y + omega / y;
    let lhs = dickson_eval(m, &arg, omega);
    let ym = pow_rat(y, m);
    let rhs = &ym + pow_rat(omega, m) / &ym;
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// Power-sum sequences.
// ---------------------------------------------------------------------------

/// Power sums a_k = sum of k-th powers of the roots of a monic polynomial
/// with rational coefficients, generated by Newton's identities and the
/// linear recurrence the polynomial defines.
#[derive(Clone, Debug)]
pub struct PowerSumSeq {
    /// Coefficients c_0..c_{n-1} of x^n + c_{n-1} x^(n-1) + ... + c_0.
    coeffs: Vec<BigRat>,
}

impl PowerSumSeq {
    pub fn new(coeffs: Vec<BigRat>) -> PowerSumSeq {
        assert!(!coeffs.is_empty());
        PowerSumSeq { coeffs }
    }

    /// Quadratic x^2 - s x + n from a trace and a norm.
    pub fn quadratic(trace: BigRat, norm: BigRat) -> PowerSumSeq {
        PowerSumSeq::new(vec![norm, -trace])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// a_r, exactly.
    pub fn power_sum(&self, r: u32) -> BigRat {
        let n = self.coeffs.len();
        let mut ps: Vec<BigRat> = Vec::with_capacity(r as usize + 1);
        ps.push(BigRat::from_integer(BigInt::from(n)));
        for k in 1..=r as usize {
            let mut acc = BigRat::zero();
            if k <= n {
                acc += BigRat::from_integer(BigInt::from(k)) * &self.coeffs[n - k];
            }
            for i in 1..k.min(n + 1) {
                if i <= n {
                    acc += &self.coeffs[n - i] * &ps[k - i];
                }
            }
            ps.push(-acc);
        }
        ps[r as usize].clone()
    }
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// The named constants: w^r + conj(w)^r sequences frozen from their minimal
/// polynomials. t11 is the quartic case, two conjugate pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSeq {
    T7,
    T9,
    T11,
    U9,
    U11,
    Tau2,
    Tau3,
}

impl NamedSeq {
    pub fn seq(self) -> PowerSumSeq {
        match self {
            NamedSeq::T7 => PowerSumSeq::quadratic(rat(1, 2), rat(1, 1)),
            NamedSeq::T9 => PowerSumSeq::quadratic(rat(-5, 4), rat(1, 1)),
            NamedSeq::U9 => PowerSumSeq::quadratic(rat(10, 9), rat(1, 1)),
            NamedSeq::U11 => PowerSumSeq::quadratic(rat(-2, 9), rat(1, 1)),
            NamedSeq::Tau2 => PowerSumSeq::quadratic(rat(-6, 1), rat(128, 1)),
            NamedSeq::Tau3 => PowerSumSeq::quadratic(rat(28, 1), rat(2187, 1)),
            // (x^2 - s+ x + 1)(x^2 - s- x + 1) with s+ + s- = -3/8 and
            // s+ s- = -31/16 expands to the quartic below.
            NamedSeq::T11 => PowerSumSeq::new(vec![
                rat(1, 1),
                rat(3, 8),
                rat(1, 16),
                rat(3, 8),
            ]),
        }
    }

    pub fn value(self, r: u32) -> BigRat {
        self.seq().power_sum(r)
    }
}

// ---------------------------------------------------------------------------
// Ramanujan tau.
// ---------------------------------------------------------------------------

/// Coefficients of x prod_{k>=1} (1 - x^k)^24 up to a bound, by 24 sparse
/// multiplications with the pentagonal-number series. Intermediate
/// coefficients stay far below i128 range for any practical bound.
pub struct TauTable {
    bound: usize,
    /// delta[n-1] = tau(n)
    coeffs: Vec<i128>,
}

pub const DEFAULT_TAU_BOUND: usize = 8192;

impl TauTable {
    pub fn new(bound: usize) -> TauTable {
        // pentagonal series prod (1 - x^k) = sum_j (-1)^j x^(j(3j-1)/2)
        let mut pent: Vec<(usize, i128)> = vec![(0, 1)];
        let mut j = 1i64;
        loop {
            let g1 = (j * (3 * j - 1) / 2) as usize;
            let g2 = (j * (3 * j + 1) / 2) as usize;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let mut any = false;
            if g1 < bound {
                pent.push((g1, sign));
                any = true;
            }
            if g2 < bound {
                pent.push((g2, sign));
                any = true;
            }
            if !any {
                break;
            }
            j += 1;
        }
        let mut acc = vec![0i128; bound];
        acc[0] = 1;
        for _ in 0..24 {
            let mut next = vec![0i128; bound];
            for (g, s) in &pent {
                for i in 0..bound - g {
                    if acc[i] != 0 {
                        next[i + g] += s * acc[i];
                    }
                }
            }
            acc = next;
        }
        TauTable { bound, coeffs: acc }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// tau(n): the coefficient of x^n in the expansion above.
    pub fn tau(&self, n: u64) -> Result<BigInt> {
        if n == 0 || n as usize > self.bound {
            return Err(Error::TauBound {
                need: n,
                bound: self.bound as u64,
            });
        }
        Ok(BigInt::from(self.coeffs[n as usize - 1]))
    }
}

/// The tau difference identity at q = p^r:
/// tau(q) - p^11 tau(q/p^2) = q^2 (mu_p^r + conj(mu_p)^r), with tau of a
/// non-integer argument read as zero (so the subtracted term vanishes for
/// r < 2). The power sum on the right is Tau2/Tau3.
pub fn tau_identity_check(p: u32, r: u32, table: &TauTable) -> Result<bool> {
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    if r == 0 {
        return Err(Error::OutOfScope("r must be positive".into()));
    }
    let q = (p as u64)
        .checked_pow(r)
        .filter(|&q| q <= table.bound() as u64)
        .ok_or(Error::TauBound {
            need: (p as u64).pow(r.min(40)),
            bound: table.bound() as u64,
        })?;
    let lhs = if r >= 2 {
        table.tau(q)? - BigInt::from(p).pow(11) * table.tau((p as u64).pow(r - 2))?
    } else {
        table.tau(q)?
    };
    let seq = if p == 2 { NamedSeq::Tau2 } else { NamedSeq::Tau3 };
    let rhs_rat = BigRational::from_integer(BigInt::from(q) * BigInt::from(q)) * seq.value(r);
    let rhs = rat_to_int(&rhs_rat, "tau identity right side")?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn int(n: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(n))
    }

    #[test]
    fn dickson_base_cases_and_values() {
        assert_eq!(dickson_eval(0, &int(7), &int(3)), int(2));
        assert_eq!(dickson_eval(1, &int(7), &int(3)), int(7));
        // D_2(t, w) = t^2 - 2w
        assert_eq!(dickson_eval(2, &int(5), &int(3)), int(19));
        // D_3(t, w) = t^3 - 3wt
        assert_eq!(dickson_eval(3, &int(1), &int(2)), int(-5));
        assert_eq!(
            dickson_eval_int(3, &BigInt::from(1), &BigInt::from(2)),
            BigInt::from(-5)
        );
    }

    #[test]
    fn recurrence_agrees_with_closed_sum() {
        let ts = [int(2), rat(1, 2), int(-3), rat(-7, 5)];
        let ws = [int(1), int(4), rat(2, 3)];
        for m in 0..=20 {
            for t in &ts {
                for w in &ws {
                    assert_eq!(
                        dickson_eval(m, t, w),
                        dickson_closed_sum(m, t, w),
                        "m={m} t={t} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn functional_equation() {
        assert!(dickson_functional_check(1, &int(5), &int(9)).unwrap());
        assert!(dickson_functional_check(5, &int(2), &int(3)).unwrap());
        assert!(dickson_functional_check(10, &rat(1, 2), &int(7)).unwrap());
        assert!(dickson_functional_check(3, &int(0), &int(1)).is_err());
    }

    #[test]
    fn dickson_special_values_at_sqrt_arguments() {
        // For integer sqrt(q): D_m(+-2 sqrt q, q) = 2 (+-sqrt q)^m;
        // D_m(0, q) = 0 (m odd) or 2 (-q)^(m/2) (m even);
        // D_m(+-sqrt q, q) follows the 6-periodic pattern
        // {2, +-1, -1, -+2, -1, +-1} q^(m/2).
        for s in [2i64, 3, 4] {
            let q = BigInt::from(s * s);
            for m in 0..=12u32 {
                let sq = BigInt::from(s);
                let plus = dickson_eval_int(m, &(BigInt::from(2) * &sq), &q);
                assert_eq!(plus, BigInt::from(2) * sq.pow(m));
                let minus = dickson_eval_int(m, &(BigInt::from(-2) * &sq), &q);
                assert_eq!(minus, BigInt::from(2) * (-&sq).pow(m));
                let zero = dickson_eval_int(m, &BigInt::from(0), &q);
                if m % 2 == 1 {
                    assert_eq!(zero, BigInt::from(0));
                } else {
                    assert_eq!(zero, BigInt::from(2) * (-&q).pow(m / 2));
                }
                if m % 2 == 0 {
                    let at_sqrt = dickson_eval_int(m, &sq, &q);
                    let coef = match m % 6 {
                        0 => 2,
                        2 | 4 => -1,
                        _ => unreachable!(),
                    };
                    assert_eq!(at_sqrt, BigInt::from(coef) * sq.pow(m));
                }
            }
        }
    }

    #[test]
    fn power_sum_base_values() {
        let t7 = NamedSeq::T7.seq();
        assert_eq!(t7.power_sum(0), int(2));
        assert_eq!(t7.power_sum(1), rat(1, 2));
        let tau2 = NamedSeq::Tau2.seq();
        assert_eq!(tau2.power_sum(1), int(-6));
        // Newton: a_2 = s a_1 - 2n = 36 - 256
        assert_eq!(tau2.power_sum(2), int(-220));
        // tau2/tau3 power sums are integers for every r
        for r in 0..=13 {
            assert!(NamedSeq::Tau2.value(r).is_integer(), "tau2 at {r}");
        }
        for r in 0..=8 {
            assert!(NamedSeq::Tau3.value(r).is_integer(), "tau3 at {r}");
        }
        // quartic: a_0 = 4, a_1 = -(3/8)
        let t11 = NamedSeq::T11.seq();
        assert_eq!(t11.power_sum(0), int(4));
        assert_eq!(t11.power_sum(1), rat(-3, 8));
    }

    #[test]
    fn power_sums_satisfy_their_recurrences() {
        // quadratic: a_r = s a_{r-1} - n a_{r-2}
        for seq in [NamedSeq::T7, NamedSeq::T9, NamedSeq::U9, NamedSeq::U11] {
            let s = seq.seq();
            let trace = -s.coeffs[1].clone();
            let norm = s.coeffs[0].clone();
            for r in 2..10u32 {
                assert_eq!(
                    s.power_sum(r),
                    &trace * s.power_sum(r - 1) - &norm * s.power_sum(r - 2)
                );
            }
        }
    }

    /// Re-derive the frozen t11 quartic from the nested radicals that define
    /// it: w+- = (-3 +- sqrt(505) + sqrt(-510 -+ 6 sqrt(505)))/32 must be a
    /// root of x^4 + (3/8)x^3 + (1/16)x^2 + (3/8)x + 1 to 30 digits.
    #[test]
    fn t11_quartic_matches_nested_radicals() {
        // sqrt(505) as a rational to ~40 digits by Newton iteration
        let sqrt505 = rat_sqrt(&int(505), 140);
        // pair sums s+- = (-3 +- sqrt505)/16 and products 1
        let s_plus = (&sqrt505 - int(3)) / int(16);
        let s_minus = (-&sqrt505 - int(3)) / int(16);
        let eps = BigRat::new(BigInt::one(), BigInt::from(10).pow(30));
        assert!((&s_plus + &s_minus - rat(-3, 8)).abs() < eps);
        assert!((&s_plus * &s_minus - rat(-31, 16)).abs() < eps);

        // complex root w+ = (a, b) with a = (-3 + sqrt505)/32,
        // b = sqrt(510 + 6 sqrt505)/32 (imaginary part)
        let a = (&sqrt505 - int(3)) / int(32);
        let inner = int(510) + int(6) * &sqrt505;
        let b = rat_sqrt(&inner, 140) / int(32);
        // evaluate the quartic at a + bi with exact rational complex arithmetic
        let c = [rat(1, 1), rat(3, 8), rat(1, 16), rat(3, 8), rat(1, 1)];
        let mut re = BigRat::zero();
        let mut im = BigRat::zero();
        for k in (0..=4).rev() {
            // (re + im i) * (a + b i) + c_k
            let nre = &re * &a - &im * &b + &c[k];
            let nim = &re * &b + &im * &a;
            re = nre;
            im = nim;
        }
        assert!(re.abs() < eps, "real residue {re}");
        assert!(im.abs() < eps, "imag residue {im}");
    }

    fn rat_sqrt(x: &BigRat, iters: u32) -> BigRat {
        let mut guess = x.clone();
        let half = rat(1, 2);
        let mut prev_precision = BigRat::zero();
        for _ in 0..iters {
            guess = &half * (&guess + x / &guess);
            // truncate the rational to keep numerators from exploding
            let scale = BigInt::from(10).pow(60);
            let scaled = (&guess * BigRat::from_integer(scale.clone())).to_integer();
            let truncated = BigRat::new(scaled, scale);
            if truncated == prev_precision {
                break;
            }
            prev_precision = truncated.clone();
            guess = truncated;
        }
        guess
    }

    #[test]
    fn tau_series_values() {
        let t = TauTable::new(64);
        let expect: [(u64, i64); 8] = [
            (1, 1),
            (2, -24),
            (3, 252),
            (4, -1472),
            (5, 4830),
            (6, -6048),
            (7, -16744),
            (8, 84480),
        ];
        for (n, v) in expect {
            assert_eq!(t.tau(n).unwrap(), BigInt::from(v), "tau({n})");
        }
        // multiplicativity on coprime arguments
        assert_eq!(
            t.tau(6).unwrap(),
            t.tau(2).unwrap() * t.tau(3).unwrap()
        );
        assert_eq!(
            t.tau(10).unwrap(),
            t.tau(2).unwrap() * t.tau(5).unwrap()
        );
        assert!(t.tau(0).is_err());
        assert!(t.tau(65).is_err());
    }

    #[test]
    fn tau_identity_small_cases() {
        let t = TauTable::new(1024);
        // r = 2: tau(4) - 2^11 tau(1) = 16 * (tau2 power sum at 2)
        assert!(tau_identity_check(2, 2, &t).unwrap());
        assert!(tau_identity_check(2, 3, &t).unwrap());
        assert!(tau_identity_check(3, 2, &t).unwrap());
        // r = 1 also holds with the vanishing convention
        assert!(tau_identity_check(2, 1, &t).unwrap());
        assert!(tau_identity_check(3, 1, &t).unwrap());
        // out of bound
        assert!(tau_identity_check(2, 11, &t).is_err());
    }
}
