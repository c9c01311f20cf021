use rug::float::Constant;
use rug::Float;

use super::SampleSeries;
use crate::error::{Error, Result};
use crate::scalar::{MpComplex, MpReal};

/// Unnormalised forward transform X_k = Σ x_n e^{-2πi nk/N}; the output
/// step is 1/(N·dt). Power-of-two lengths go through [`fft`], others
/// through [`dft_direct`].
pub fn dft(s: &SampleSeries) -> SampleSeries {
    if s.len().is_power_of_two() {
        fft(s)
    } else {
        dft_direct(s)
    }
}

fn guard_bits(n: usize) -> u32 {
    2 * (usize::BITS - n.leading_zeros()) + 8
}

/// e^{-2πi k/N} for k in 0..N, built from one octant by symmetry.
fn twiddles(n: usize, prec: u32) -> Vec<MpComplex> {
    let mut tw = vec![MpComplex::zero(prec); n];
    if n == 0 {
        return tw;
    }
    let mut two_pi_n = Float::with_val(prec, Constant::Pi);
    two_pi_n *= 2u32;
    two_pi_n /= n as u64;
    if !n.is_multiple_of(8) {
        for (k, t) in tw.iter_mut().enumerate() {
            let (s, c) = Float::with_val(prec, &two_pi_n * k as u64).sin_cos(Float::new(prec));
            *t = MpComplex::from_parts(c, -s);
        }
        return tw;
    }
    let q = n / 4;
    let o = n / 8;
    // angle θ_k = 2πk/N; cos/sin on 0..=N/8, mirrored around π/4
    let mut cs = Vec::with_capacity(o + 1);
    for k in 0..=o {
        let (s, c) = Float::with_val(prec, &two_pi_n * k as u64).sin_cos(Float::new(prec));
        cs.push((c, s));
    }
    let cos_sin = |k: usize| -> (Float, Float) {
        // k in 0..=N/4
        if k <= o {
            cs[k].clone()
        } else {
            let (c, s) = &cs[q - k];
            (s.clone(), c.clone())
        }
    };
    for (k, t) in tw.iter_mut().enumerate() {
        let quadrant = k / q;
        let r = k % q;
        let (c, s) = cos_sin(r);
        let (c, s) = match quadrant {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        };
        *t = MpComplex::from_parts(c, -s);
    }
    tw
}

/// Direct O(N²) evaluation with guard bits, rounded once at the end.
pub fn dft_direct(s: &SampleSeries) -> SampleSeries {
    let n = s.len();
    let prec = s.prec();
    let wp = prec + guard_bits(n);
    let tw = twiddles(n, wp);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = MpComplex::zero(wp);
        for (j, x) in s.samples.iter().enumerate() {
            acc.add_mul(x, &tw[(j * k) % n]);
        }
        out.push(acc.with_prec(prec));
    }
    SampleSeries {
        samples: out,
        step: output_step(s),
    }
}

fn output_step(s: &SampleSeries) -> MpReal {
    let prec = s.step.prec().max(s.prec());
    let mut step = Float::with_val(prec, &s.step * s.len() as u64);
    step.recip_mut();
    step
}

/// Iterative radix-2 transform for power-of-two lengths, same result as
/// [`dft_direct`] to within rounding at the output precision.
pub fn fft(s: &SampleSeries) -> SampleSeries {
    let n = s.len();
    assert!(
        n.is_power_of_two(),
        "fft needs a power-of-two length, got {n}"
    );
    let prec = s.prec();
    let wp = prec + guard_bits(n);
    let bits = n.trailing_zeros();
    let mut a: Vec<MpComplex> = vec![MpComplex::zero(wp); n];
    for (j, x) in s.samples.iter().enumerate() {
        let r = if bits == 0 {
            0
        } else {
            j.reverse_bits() >> (usize::BITS - bits)
        };
        a[r] = x.clone().with_prec(wp);
    }
    let tw = twiddles(n, wp);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for j in 0..half {
                let w = &tw[j * stride];
                let (lo, hi) = a.split_at_mut(start + half);
                let u = &mut lo[start + j];
                let v = &mut hi[j];
                let t = &*v * w;
                *v = &*u - &t;
                *u += &t;
            }
        }
        len *= 2;
    }
    SampleSeries {
        samples: a.into_iter().map(|z| z.with_prec(prec)).collect(),
        step: output_step(s),
    }
}

/// Appends zeros up to `new_len`.
pub fn zero_padding(s: &SampleSeries, new_len: usize) -> Result<SampleSeries> {
    if new_len < s.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot pad {} samples down to {new_len}",
            s.len()
        )));
    }
    let prec = s.prec();
    let mut samples = s.samples.clone();
    samples.resize(new_len, MpComplex::zero(prec));
    Ok(SampleSeries {
        samples,
        step: s.step.clone(),
    })
}

/// Smallest power of two not below `x`.
pub fn unp2(x: &MpReal) -> Result<u64> {
    if x.is_nan() || x.is_sign_negative() || x.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "unp2 needs a positive value, got {x}"
        )));
    }
    if *x <= 1 {
        return Ok(1);
    }
    // x = f·2^e with f in [0.5, 1)
    let e = x.get_exp().expect("finite positive value");
    let exact = Float::with_val(x.prec(), Float::u_exp(1, e - 1)) == *x;
    let j = if exact { e - 1 } else { e };
    if j >= 64 {
        return Err(Error::InvalidArgument(format!("unp2({x}) exceeds 2^63")));
    }
    Ok(1u64 << j)
}
