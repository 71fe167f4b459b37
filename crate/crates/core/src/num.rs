//! Exact scalar types and small number-theory helpers shared across the crate.
//!
//! Every count, sum and sequence value in this crate is exact: big integers
//! for counts, big rationals for the power-sum constants, and elements of
//! Z[zeta_p] (p = 2, 3) for additive-character accumulations. No floating
//! point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision count.
pub type BigCount = BigInt;
/// Arbitrary-precision rational.
pub type BigRat = BigRational;

/// Element of Z[zeta_3] written as `a + b*zeta` with `zeta^2 = -1 - zeta`.
///
/// Character sums over fields of characteristic 2 only ever produce values
/// with `b = 0`; the same representation is used for both characteristics so
/// accumulation code is uniform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl CycInt {
    pub fn zero() -> Self {
        CycInt {
            a: BigInt::zero(),
            b: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        CycInt {
            a: BigInt::one(),
            b: BigInt::zero(),
        }
    }

    pub fn from_int(a: i64) -> Self {
        CycInt {
            a: BigInt::from(a),
            b: BigInt::zero(),
        }
    }

    /// zeta_p^t for the canonical additive character: p = 2 gives (-1)^t,
    /// p = 3 gives powers of zeta_3.
    pub fn root_of_unity_pow(p: u32, t: u32) -> Self {
        match p {
            2 => {
                if t % 2 == 0 {
                    CycInt::one()
                } else {
                    CycInt::from_int(-1)
                }
            }
            3 => match t % 3 {
                0 => CycInt::one(),
                1 => CycInt {
                    a: BigInt::zero(),
                    b: BigInt::one(),
                },
                _ => CycInt {
                    a: BigInt::from(-1),
                    b: BigInt::from(-1),
                },
            },
            _ => panic!("unsupported characteristic {p}"),
        }
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        CycInt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn add_assign(&mut self, other: &CycInt) {
        self.a += &other.a;
        self.b += &other.b;
    }

    /// (a + b z)(c + d z) with z^2 = -1 - z.
    pub fn mul(&self, other: &CycInt) -> CycInt {
        let ac = &self.a * &other.a;
        let bd = &self.b * &other.b;
        let ad_bc = &self.a * &other.b + &self.b * &other.a;
        CycInt {
            a: &ac - &bd,
            b: ad_bc - bd,
        }
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational-integer value of a sum known to be real.
    pub fn expect_real(&self, what: &str) -> BigInt {
        assert!(
            self.is_real(),
            "{what}: cyclotomic value {self:?} has a nonzero zeta component"
        );
        self.a.clone()
    }
}

/// Trial-division factorization, adequate for the u64 sizes in this crate.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Moebius function of `n`.
pub fn moebius(n: u64) -> i64 {
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact integer division; an inexact quotient signals an upstream bug and
/// is reported as an error rather than truncated.
pub fn exact_div(num: &BigInt, den: &BigInt, context: &'static str) -> Result<BigInt> {
    if den.is_zero() || !(num % den).is_zero() {
        return Err(Error::NonExactDivision {
            context,
            num: num.to_string(),
            den: den.to_string(),
        });
    }
    Ok(num / den)
}

/// A rational known to be an integer; errors if it is not.
pub fn rat_to_int(x: &BigRat, context: &'static str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::NonExactDivision {
            context,
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        });
    }
    Ok(x.to_integer())
}

pub fn bigint_abs(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_multiplication_table() {
        let z = CycInt::root_of_unity_pow(3, 1);
        let z2 = CycInt::root_of_unity_pow(3, 2);
        assert_eq!(z.mul(&z), z2);
        assert_eq!(z.mul(&z2), CycInt::one());
        // 1 + z + z^2 = 0
        let mut s = CycInt::one();
        s.add_assign(&z);
        s.add_assign(&z2);
        assert_eq!(s, CycInt::zero());
    }

    #[test]
    fn divisors_and_moebius() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
        assert_eq!(factorize(2u64.pow(24) - 1), vec![(3, 2), (5, 1), (7, 1), (13, 1), (17, 1), (241, 1)]);
    }

    #[test]
    fn exact_division_guards() {
        let a = BigInt::from(10);
        let b = BigInt::from(5);
        assert_eq!(exact_div(&a, &b, "test").unwrap(), BigInt::from(2));
        assert!(exact_div(&a, &BigInt::from(4), "test").is_err());
    }
}
