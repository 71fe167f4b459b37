//! Exact counting of monic irreducible polynomials over F_q (q = 2^r or 3^r)
//! with two prescribed coefficients, through the chain
//! exponential sums -> Dickson lifts -> rational place counts -> Moebius
//! inversion, with every closed form cross-checked against brute-force
//! ground truth. All arithmetic is exact; nothing in the crate draws
//! randomness.

pub mod classnum;
pub mod dickson;
pub mod error;
pub mod expsum;
pub mod field;
pub mod irrcount;
pub mod num;
pub mod oracle;
pub mod places;
pub(crate) mod ser;
pub mod verify;

pub use error::{Error, Result};
pub use expsum::SumFamily;
pub use field::{make_extension, make_field, Elem, ExtContext, FieldContext};

/// Worker count for the partitionable scans: the IRRPOLY_WORKERS environment
/// variable when set, otherwise the available parallelism. Results are
/// byte-identical for every worker count.
pub fn worker_count() -> usize {
    std::env::var("IRRPOLY_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}
