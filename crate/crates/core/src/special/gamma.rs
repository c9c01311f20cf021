use rug::float::Constant;
use rug::{Assign, Float};

use super::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::scalar::{check_precision, pi, MpComplex};

/// Arguments are shifted until |z| reaches this before the Stirling series.
const SHIFT_THRESHOLD_LOG2: i32 = 10;
/// Series truncation target relative to the requested precision.
const SERIES_GUARD: u32 = 16;
/// Extra bits carried through the logarithm and shift products.
const WORK_GUARD: u32 = 32;

/// Γ(z) with relative error at most 2^-(prec-8).
///
/// Uses reflection for Re z < 0, an upward shift to |z| ≥ 2^10, and the
/// Stirling series truncated by Spira's remainder bound.
pub fn gamma(z: &MpComplex, prec: u32) -> Result<MpComplex> {
    check_precision(prec)?;
    if z.im.is_zero() && z.re <= 0 && z.re.is_integer() {
        return Err(Error::Pole(z.to_string()));
    }
    let wp = prec + WORK_GUARD;
    let zw = z.clone().with_prec(wp);
    let g = if zw.re.is_sign_negative() && !zw.re.is_zero() {
        reflected(&zw, prec, wp)?
    } else {
        gamma_right(&zw, prec, wp)?
    };
    Ok(g.with_prec(prec))
}

/// Γ(z) = -π / [(-z) Γ(-z) sin(-πz)].
fn reflected(z: &MpComplex, prec: u32, wp: u32) -> Result<MpComplex> {
    // sin(πz) near a pole loses bits in proportion to |z|/dist; carry more.
    let wp = wp + 16;
    let z = z.clone().with_prec(wp);
    let neg = -&z;
    let g = gamma_right(&neg, prec + 16, wp)?;
    let s = neg.scale(&pi(wp)).sin();
    let denom = &(&neg * &g) * &s;
    MpComplex::from_real(-pi(wp)).div(&denom)
}

/// Γ(z) for Re z ≥ 0.
fn gamma_right(z: &MpComplex, prec: u32, wp: u32) -> Result<MpComplex> {
    let k = shift_count(z, wp);
    let mut w = z.clone();
    let mut prod = MpComplex::one(wp);
    for _ in 0..k {
        prod = &prod * &w;
        w.re += 1u32;
    }
    let lg = stirling_ln_gamma(&w, prec, wp)?;
    lg.exp().div(&prod)
}

/// Smallest k ≥ 0 with |z + k| ≥ 2^10.
fn shift_count(z: &MpComplex, wp: u32) -> u64 {
    let r = 2f64.powi(SHIFT_THRESHOLD_LOG2);
    let (a, b) = z.to_f64_parts();
    let mut k = if b.abs() >= r {
        0
    } else {
        ((r * r - b * b).sqrt() - a).ceil().max(0.0) as u64
    };
    let limit = Float::with_val(wp, Float::u_exp(1, 2 * SHIFT_THRESHOLD_LOG2));
    loop {
        let shifted = MpComplex::from_parts(Float::with_val(wp, &z.re + k), z.im.clone());
        if shifted.norm_sqr() >= limit {
            return k;
        }
        k += 1;
    }
}

/// Number of series terms L such that Spira's bound
/// |B_2L| / (2L-1) · |w|^(1-2L) falls below 2^-(prec+16).
fn series_length(w_abs: &Float, prec: u32) -> Result<usize> {
    let target = -f64::from(prec + SERIES_GUARD);
    let log2_w = Float::with_val(64, w_abs.log2_ref()).to_f64();
    for l in 1..=prec as usize {
        let b = bernoulli(2 * l);
        let log2_b = Float::with_val(64, &b).abs().log2().to_f64();
        let bound = log2_b - ((2 * l - 1) as f64).log2() + (1.0 - 2.0 * l as f64) * log2_w;
        if bound < target {
            return Ok(l);
        }
    }
    Err(Error::InvalidArgument(format!(
        "Stirling series did not reach 2^-{} within {prec} terms",
        prec + SERIES_GUARD
    )))
}

/// ln Γ(w) = (w - 1/2) ln w - w + ln(2π)/2 + Σ B_2j / (2j(2j-1) w^(2j-1)).
fn stirling_ln_gamma(w: &MpComplex, prec: u32, wp: u32) -> Result<MpComplex> {
    let l = series_length(&w.abs(), prec)?;
    let ln_w = w.ln()?;
    let mut half = w.clone();
    half.re -= 0.5f64;
    let mut acc = &(&half * &ln_w) - w;
    let mut ln_2pi = Float::with_val(wp, Constant::Pi);
    ln_2pi *= 2u32;
    ln_2pi.ln_mut();
    ln_2pi /= 2u32;
    acc.re += &ln_2pi;

    let inv = w.recip()?;
    let inv2 = &inv * &inv;
    let mut power = inv;
    let mut coef = Float::new(wp);
    for j in 1..=l {
        let b = bernoulli(2 * j);
        coef.assign(&b);
        coef /= (2 * j * (2 * j - 1)) as u64;
        acc.add_mul_real(&power, &coef);
        power = &power * &inv2;
    }
    Ok(acc)
}
