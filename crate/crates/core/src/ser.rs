//! Serde helpers: big integers serialize as decimal strings so counts above
//! 64 bits survive JSON round trips losslessly.

use num_bigint::BigInt;
use serde::Serializer;

pub fn bigint_as_string<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}
