use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::MpComplex;

/// Sweep limit per unit of dimension for the QR iteration.
const SWEEPS_PER_ROW: usize = 30;

/// Eigenvalues of a Hermitian matrix, descending, computed at `prec` bits
/// by Householder reduction and shifted QR.
pub(crate) fn tridiagonal_eigenvalues(a: &Matrix, prec: u32) -> Result<Vec<Float>> {
    let (mut d, mut e) = householder(a, prec);
    implicit_qr(&mut d, &mut e, prec)?;
    d.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    Ok(d)
}

/// Reduces `a` to a real symmetric tridiagonal (diagonal, off-diagonal).
/// Off-diagonal phases are absorbed by a diagonal unitary, which leaves
/// the spectrum unchanged.
fn householder(a: &Matrix, prec: u32) -> (Vec<Float>, Vec<Float>) {
    let n = a.rows();
    let mut m: Vec<MpComplex> = a
        .as_slice()
        .iter()
        .map(|z| z.clone().with_prec(prec))
        .collect();
    let at = |i: usize, j: usize| i * n + j;
    for k in 0..n.saturating_sub(2) {
        let r = n - k - 1;
        let tail = (k + 2..n).fold(Float::new(prec), |acc, i| acc + m[at(i, k)].norm_sqr());
        if tail.is_zero() {
            continue;
        }
        let x0 = m[at(k + 1, k)].clone();
        let xnorm = Float::with_val(prec, &tail + x0.norm_sqr()).sqrt();
        let phase = if x0.is_zero() {
            MpComplex::one(prec)
        } else {
            x0.unscale(&x0.abs()).expect("nonzero")
        };
        // v = x + phase·|x|·e1, reflecting x onto -phase·|x|·e1
        let mut v: Vec<MpComplex> = (k + 1..n).map(|i| m[at(i, k)].clone()).collect();
        v[0] += &phase.scale(&xnorm);
        let vnorm2 = v.iter().fold(Float::new(prec), |acc, z| acc + z.norm_sqr());
        let tau = Float::with_val(prec, 2u32) / &vnorm2;

        // p = tau·B·v on the trailing block B
        let mut p = vec![MpComplex::zero(prec); r];
        for (ii, pi) in p.iter_mut().enumerate() {
            let row = &m[at(k + 1 + ii, k + 1)..at(k + 1 + ii, n)];
            for (bij, vj) in row.iter().zip(&v) {
                pi.add_mul(bij, vj);
            }
            *pi = pi.scale(&tau);
        }
        // w = p - (tau/2)(v†p) v
        let mut vp = MpComplex::zero(prec);
        for (vi, pi) in v.iter().zip(&p) {
            vp.add_mul_conj(pi, vi);
        }
        let half_tau = Float::with_val(prec, &tau / 2u32);
        let kf = vp.scale(&half_tau);
        let w: Vec<MpComplex> = p.iter().zip(&v).map(|(pi, vi)| pi - &(&kf * vi)).collect();
        // B -= v w† + w v†
        for ii in 0..r {
            for jj in 0..r {
                let z = &mut m[at(k + 1 + ii, k + 1 + jj)];
                z.sub_mul(&v[ii], &w[jj].conj());
                z.sub_mul(&w[ii], &v[jj].conj());
            }
        }
        let alpha = -phase.scale(&xnorm);
        m[at(k + 1, k)] = alpha.clone();
        m[at(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            m[at(i, k)] = MpComplex::zero(prec);
            m[at(k, i)] = MpComplex::zero(prec);
        }
    }
    let d = (0..n).map(|i| m[at(i, i)].re.clone()).collect();
    let e = (0..n.saturating_sub(1))
        .map(|i| m[at(i + 1, i)].abs())
        .collect();
    (d, e)
}

/// Diagonalises a symmetric tridiagonal in place with Wilkinson-shifted
/// implicit QR steps; `d` ends up holding the eigenvalues.
fn implicit_qr(d: &mut [Float], e: &mut [Float], prec: u32) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    let cap = SWEEPS_PER_ROW * n;
    let mut sweeps = 0;
    let mut h = n - 1;
    let mut scale = Float::new(prec);
    while h > 0 {
        for i in 0..h {
            if e[i].is_zero() {
                continue;
            }
            scale.assign(d[i].abs_ref());
            if d[i + 1].is_sign_negative() {
                scale -= &d[i + 1];
            } else {
                scale += &d[i + 1];
            }
            scale >>= prec as i32;
            if e[i].cmp_abs(&scale) != Some(std::cmp::Ordering::Greater) {
                e[i] = Float::new(prec);
            }
        }
        if e[h - 1].is_zero() {
            h -= 1;
            continue;
        }
        let mut l = h - 1;
        while l > 0 && !e[l - 1].is_zero() {
            l -= 1;
        }
        if sweeps >= cap {
            return Err(Error::QrFailure { iterations: sweeps });
        }
        qr_step(d, e, l, h, prec);
        sweeps += 1;
    }
    Ok(())
}

/// Trailing 2x2 eigenvalue nearer d[h]; an exact tie takes the smaller.
fn wilkinson_shift(d: &[Float], e: &[Float], h: usize, prec: u32) -> Float {
    let delta = Float::with_val(prec, &d[h - 1] - &d[h]) / 2u32;
    let e2 = Float::with_val(prec, e[h - 1].square_ref());
    let root = Float::with_val(prec, delta.hypot_ref(&e[h - 1]));
    let denom = if delta.is_sign_negative() && !delta.is_zero() {
        delta - root
    } else {
        delta + root
    };
    Float::with_val(prec, &d[h] - Float::with_val(prec, e2 / denom))
}

/// One bulge-chasing sweep over the unreduced block l..=h.
fn qr_step(d: &mut [Float], e: &mut [Float], l: usize, h: usize, prec: u32) {
    let mu = wilkinson_shift(d, e, h, prec);
    let mut x = Float::with_val(prec, &d[l] - &mu);
    let mut y = e[l].clone();
    for k in l..h {
        let r = Float::with_val(prec, x.hypot_ref(&y));
        let (c, s) = if r.is_zero() {
            (Float::with_val(prec, 1), Float::new(prec))
        } else {
            (
                Float::with_val(prec, &x / &r),
                Float::with_val(prec, &y / &r),
            )
        };
        if k > l {
            e[k - 1] = r;
        }
        let (ak, ak1, bk) = (d[k].clone(), d[k + 1].clone(), e[k].clone());
        let cc = Float::with_val(prec, c.square_ref());
        let ss = Float::with_val(prec, s.square_ref());
        let cs = Float::with_val(prec, &c * &s);
        let csb2 = Float::with_val(prec, &cs * &bk) * 2u32;
        d[k] = Float::with_val(prec, cc.mul_add_mul_ref(&ak, &ss, &ak1)) + &csb2;
        d[k + 1] = Float::with_val(prec, ss.mul_add_mul_ref(&ak, &cc, &ak1)) - &csb2;
        let diff = Float::with_val(prec, &ak1 - &ak);
        let cmss = Float::with_val(prec, &cc - &ss);
        e[k] = Float::with_val(prec, cs.mul_add_mul_ref(&diff, &cmss, &bk));
        if k + 1 < h {
            x = e[k].clone();
            y = Float::with_val(prec, &s * &e[k + 1]);
            e[k + 1] *= &c;
        }
    }
}
