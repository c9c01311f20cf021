//! Multiprecision real and complex scalars.

mod complex;
mod format;
mod parse;
mod precision;

pub use complex::{arith, pi, ArithOp, MpComplex, MpReal};
pub use format::{format_complex, format_real, DEFAULT_OUTPUT_DIGITS};
pub use parse::{parse_complex, parse_complex_with_prec, parse_real_with_prec};
pub use precision::{default_precision, set_default_precision, MIN_PRECISION};

pub(crate) use format::visible_parts;
pub(crate) use precision::check_precision;

use rand::RngCore;
use rug::{Float, Integer};

/// Uniform value in `[-1, 1)` with every significand bit drawn from `rng`.
pub fn random_real<R: RngCore + ?Sized>(rng: &mut R, prec: u32) -> MpReal {
    let words = prec.div_ceil(64) as usize + 1;
    let mut n = Integer::new();
    for _ in 0..words {
        n <<= 64;
        n += rng.next_u64();
    }
    let u = Float::with_val(prec, &n) >> (64 * words as u32) as i32;
    Float::with_val(prec, u * 2u32) - 1u32
}

/// Both parts independently uniform in `[-1, 1)`.
pub fn random_complex<R: RngCore + ?Sized>(rng: &mut R, prec: u32) -> MpComplex {
    let re = random_real(rng, prec);
    let im = random_real(rng, prec);
    MpComplex::from_parts(re, im)
}
