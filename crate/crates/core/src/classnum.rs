//! Class numbers of negative discriminants by exhaustive reduced-form
//! enumeration, and the Kronecker class number used by the class-number
//! place-count form.
//!
//! The Kronecker convention used here is the plain unweighted sum of
//! ordinary (primitive, positive-definite) class numbers over square
//! divisors; it is the convention that makes the class-number place counts
//! agree exactly with direct evaluation, which the verification suite pins.

use crate::error::{Error, Result};

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    gcd(gcd(a, b), c)
}

/// h(D): the number of reduced primitive positive-definite binary quadratic
/// forms (a, b, c) with b^2 - 4ac = D, |b| <= a <= c, gcd(a, b, c) = 1, and
/// b >= 0 whenever |b| = a or a = c. Requires D < 0 and D = 0 or 1 mod 4.
pub fn form_class_number(d: i64) -> Result<u64> {
    if d >= 0 {
        return Err(Error::OutOfScope(format!("discriminant {d} must be negative")));
    }
    if d.rem_euclid(4) > 1 {
        return Err(Error::OutOfScope(format!(
            "discriminant {d} must be 0 or 1 mod 4"
        )));
    }
    let abs_d = (-d) as u64;
    let mut count = 0u64;
    let a_max = (abs_d / 3).isqrt();
    for a in 1..=a_max {
        for b in -(a as i64)..=(a as i64) {
            if b.rem_euclid(2) != d.rem_euclid(2) {
                continue;
            }
            let num = (b * b - d) as u64; // b^2 + |D| > 0
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (b.unsigned_abs() == a || a == c) {
                continue;
            }
            if gcd3(a, b.unsigned_abs(), c) != 1 {
                continue;
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Kronecker class number H(D) = sum of h(D / f^2) over f with f^2 | D and
/// D / f^2 = 0 or 1 mod 4. Unweighted; see the module note.
pub fn kronecker_class_number(d: i64) -> Result<u64> {
    if d >= 0 {
        return Err(Error::OutOfScope(format!("discriminant {d} must be negative")));
    }
    let abs_d = (-d) as u64;
    let mut total = 0u64;
    let mut f = 1u64;
    while f * f <= abs_d {
        if abs_d % (f * f) == 0 {
            let d2 = d / (f * f) as i64;
            if d2.rem_euclid(4) <= 1 {
                total += form_class_number(d2)?;
            }
        }
        f += 1;
    }
    if total == 0 {
        return Err(Error::OutOfScope(format!(
            "discriminant {d} admits no valid square divisor"
        )));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_numbers() {
        assert_eq!(form_class_number(-3).unwrap(), 1); // only (1,1,1)
        assert_eq!(form_class_number(-4).unwrap(), 1);
        assert_eq!(form_class_number(-7).unwrap(), 1);
        assert_eq!(form_class_number(-15).unwrap(), 2); // (1,1,4), (2,1,2)
        assert_eq!(form_class_number(-23).unwrap(), 3);
        // (2,2,2) is not primitive, so h(-12) = 1
        assert_eq!(form_class_number(-12).unwrap(), 1);
        assert!(form_class_number(-5).is_err()); // 3 mod 4
        assert!(form_class_number(4).is_err());
    }

    #[test]
    fn heegner_discriminants_have_class_number_one() {
        for d in [-3, -4, -7, -8, -11, -19, -43, -67, -163] {
            assert_eq!(form_class_number(d).unwrap(), 1, "D = {d}");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_class_number(-7).unwrap(), 1);
        assert_eq!(kronecker_class_number(-15).unwrap(), 2);
        // f in {1, 2}: h(-12) + h(-3) = 1 + 1
        assert_eq!(kronecker_class_number(-12).unwrap(), 2);
        // f in {1, 2}: h(-32) + h(-8) = 2 + 1
        assert_eq!(kronecker_class_number(-32).unwrap(), 3);
        assert_eq!(kronecker_class_number(-20).unwrap(), 2);
        assert!(kronecker_class_number(-1).is_err()); // 3 mod 4, no divisor helps
    }

    #[test]
    fn every_valid_discriminant_has_a_form() {
        let mut d: i64 = -3;
        while d > -200 {
            if d.rem_euclid(4) <= 1 {
                assert!(form_class_number(d).unwrap() >= 1, "D = {d}");
            }
            d -= 1;
        }
    }
}
